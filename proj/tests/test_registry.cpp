// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include "subtyping.hpp"
#include "support.hpp"

using namespace hashcl;
using namespace hashcl::testing;

namespace {

ErrorCode load_error(const std::vector<std::string>& sources)
{
    try {
        registry_of(sources);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("registry unexpectedly built");
    return ErrorCode::IoError;
}

}  // namespace

TEST_SUITE("registry")
{
    TEST_CASE("channel universe from a manifest")
    {
        Registry reg = Registry::load(corpus("channel/impl4"));
        CHECK(reg.abstract_names().size() == 5);
        CHECK(reg.concrete_names() == std::vector<std::string>{"ChannelImpl4"});
        CHECK(reg.hierarchy_edges() == 2);
        CHECK(reg.kind_tops().size() == 7);
        CHECK(reg.parent_of("MPIFull") == std::optional<std::string>("MPIBasic"));
        CHECK(reg.concrete_for("Channel")->config.name == "ChannelImpl4");
    }

    TEST_CASE("empty registry")
    {
        Registry reg = Registry::empty();
        CHECK(reg.abstract_names().empty());
        CHECK(reg.concrete_names().empty());
        CHECK(reg.kind_tops().size() == 7);
    }

    TEST_CASE("directory loading and canonical text")
    {
        Registry a = Registry::load(corpus("matvec"));
        Registry b = Registry::load(corpus("matvec/registry.manifest"));
        CHECK(a.canonical() == b.canonical());
        CHECK(a.canonical().find("MatVecProductImplForDouble") != std::string::npos);
    }

    TEST_CASE("load errors")
    {
        auto base = channel_sources();
        auto dup = channel_sources({1, 2});
        CHECK(load_error(dup) == ErrorCode::DuplicateImplementation);
        CHECK_THROWS_AS(Registry::load(corpus("channel/duplicate")), Error);

        CHECK(load_error({"data A extends B begin unit u end", "data B extends A begin unit u end"}) ==
              ErrorCode::CycleInHierarchy);
        CHECK(load_error({"data A begin unit u end", "environment B extends A begin unit u end"}) ==
              ErrorCode::ShapeInconsistentExtends);
        CHECK(load_error({"data A begin unit u end", "data B extends A begin unit v end"}) ==
              ErrorCode::ShapeInconsistentExtends);
        CHECK(load_error({"data A [T: Data] begin unit u end", "data B extends A begin unit u end"}) ==
              ErrorCode::ShapeInconsistentExtends);
        CHECK(load_error({"data B extends Missing begin unit u end"}) == ErrorCode::UnknownConfig);
        CHECK(load_error({"data A begin unit u end", "data A begin unit u end"}) == ErrorCode::ManifestError);

        CHECK_THROWS_AS(Registry::load(corpus("does-not-exist")), Error);
    }

    TEST_CASE("highest version of a concrete wins")
    {
        Registry reg = registry_of({"data D begin unit u end",
                                    "data DI implements D version 1.2.0.0 begin unit u begin end end",
                                    "data DI implements D version 1.10.0.0 begin unit u begin end end"});
        CHECK(reg.find_concrete("DI")->config.version.str() == "1.10.0.0");
    }

    TEST_CASE("every edge is structurally sound")
    {
        for (const auto* dir : {"matvec", "sharedenv", "channel/impl1"}) {
            Registry reg = Registry::load(corpus(dir));
            for (const auto& name : reg.abstract_names()) {
                auto parent = reg.parent_of(name);
                if (!parent) continue;
                const Shape* c = shape_of(reg.abstract_type(name), Context{});
                const Shape* p = shape_of(reg.abstract_type(*parent), Context{});
                REQUIRE(c);
                REQUIRE(p);
                CHECK(shape_subtype(Context{}, *c, *p, reg).holds);
            }
        }
    }

    TEST_CASE("least proper supertype")
    {
        Registry mv = Registry::load(corpus("matvec"));
        CHECK(render_nominal(least_proper_supertype(demand(mv, "MPIFull[GNUCluster]"), mv)) ==
              "MPIBasic <| [GNUCluster]");
        Registry ch = registry_of(channel_sources());
        CHECK(render_nominal(least_proper_supertype(demand(ch, "Vector"), ch)) == "Data");
        CHECK(least_proper_supertype(demand(ch, "Data"), ch) == ComponentType::top(Kind::Data));
    }

    TEST_CASE("implementation lookup")
    {
        Registry four = registry_of(channel_sources({4}));
        auto hit = implementation_of(demand(four, "Channel[MPIBasic, Data]"), four);
        REQUIRE(hit);
        CHECK(hit->entry->config.name == "ChannelImpl4");
        hit = implementation_of(demand(four, "Channel[MPIFull, Vector]"), four);
        REQUIRE(hit);
        CHECK(hit->entry->config.name == "ChannelImpl4");

        Registry none = registry_of(channel_sources());
        CHECK_FALSE(implementation_of(demand(none, "Channel[MPIFull, Vector]"), none));
    }
}
