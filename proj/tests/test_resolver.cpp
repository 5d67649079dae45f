// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include "resolver.hpp"
#include "subtyping.hpp"
#include "support.hpp"

using namespace hashcl;
using namespace hashcl::testing;

namespace {

std::vector<std::string> visited(const ResolveOutcome& o)
{
    std::vector<std::string> out;
    for (const auto& t : o.visited) out.push_back(render_nominal(t));
    return out;
}

}  // namespace

TEST_SUITE("resolver")
{
    TEST_CASE("parameter chain is leaf first")
    {
        Registry ch = registry_of(channel_sources());
        auto chain = sort_parameters(demand(ch, "Channel[MPIFull, Vector]"));
        REQUIRE(chain.size() == 2);
        CHECK(chain[0].label == "E");
        CHECK(chain[1].label == "D");

        Registry mv = Registry::load(corpus("matvec"));
        auto nested = sort_parameters(demand(mv, "Matrix[Double]"));
        REQUIRE(nested.size() == 1);
        CHECK(nested[0].label == "T");

        auto deep = sort_parameters(
            demand(mv, "MatVecProduct[Double, GNUCluster, MPIFull[GNUCluster], ByRows, Replicate, Replicate]"));
        std::vector<std::string> labels;
        for (const auto& n : deep) labels.push_back(n.label);
        auto pos = [&](const std::string& l) { return std::find(labels.begin(), labels.end(), l) - labels.begin(); };
        CHECK(pos("E.C") < pos("E"));

        CHECK(sort_parameters(demand(ch, "Vector")).empty());
    }

    TEST_CASE("generalization order without implementations")
    {
        Registry none = registry_of(channel_sources());
        auto o = explore(demand(none, "Channel[MPIFull, Vector]"), none);
        CHECK_FALSE(o.found());
        CHECK(visited(o) == std::vector<std::string>{"Channel <| [MPIFull, Vector]", "Channel <| [MPIBasic, Vector]",
                                                     "Channel <| [MPIFull, Data]", "Channel <| [MPIBasic, Data]"});
        CHECK_THROWS_AS(resolve(demand(none, "Channel[MPIFull, Vector]"), none), Error);
    }

    TEST_CASE("each candidate is found on the first visit")
    {
        for (int i = 1; i <= 4; ++i) {
            Registry reg = registry_of(channel_sources({i}));
            auto o = resolve(demand(reg, "Channel[MPIFull, Vector]"), reg);
            REQUIRE(o.found());
            CHECK(o.implementation->entry->config.name == "ChannelImpl" + std::to_string(i));
            CHECK(o.visited.size() == 1);
        }
    }

    TEST_CASE("generalized demands are subtypes of the original")
    {
        Registry reg = registry_of(
            {"environment E0 begin unit p end", "environment E1 extends E0 begin unit p end",
             "data D0 begin unit v end", "data D1 extends D0 begin unit v end",
             "synchronizer S [E: E0, D: D0] begin unit run end",
             "synchronizer SI [E: E1] implements S[E, D0] version 1.0.0.0 begin unit run begin end end"});
        auto o = resolve(demand(reg, "S[E1, D1]"), reg);
        REQUIRE(o.found());
        CHECK(o.implementation->entry->config.name == "SI");
        CHECK(visited(o) == std::vector<std::string>{"S <| [E1, D1]"});
        CHECK(render_explanation(o).find("found: SI 1.0.0.0") != std::string::npos);

        Registry none = registry_of(channel_sources());
        auto e = explore(demand(none, "Channel[MPIFull, Vector]"), none);
        for (const auto& t : e.visited) CHECK(is_subtype(Context{}, t, e.demand, none).holds);
    }

    TEST_CASE("chain hierarchy is bounded by depth")
    {
        for (int d = 1; d <= 6; ++d) {
            std::vector<std::string> src{"synchronizer S [X: Data] begin unit run end", "data L0 begin unit v end"};
            for (int i = 1; i <= d; ++i)
                src.push_back("data L" + std::to_string(i) + " extends L" + std::to_string(i - 1) +
                              " begin unit v end");
            Registry reg = registry_of(src);
            auto o = explore(demand(reg, "S[L" + std::to_string(d) + "]"), reg);
            CHECK_FALSE(o.found());
            CHECK(o.visited.size() <= static_cast<std::size_t>(d) + 2);
            // Brute force: every visited demand is a distinct generalization of the original.
            std::set<std::string> seen;
            for (const auto& t : o.visited) {
                CHECK(is_subtype(Context{}, t, o.demand, reg).holds);
                CHECK(seen.insert(render(t)).second);
            }
        }
    }

    TEST_CASE("parameterless demand")
    {
        Registry reg = registry_of({"data D begin unit u end", "data DI implements D version 1.0.0.0 begin unit u "
                                                              "begin end end"});
        auto o = resolve(demand(reg, "D"), reg);
        REQUIRE(o.found());
        CHECK(o.chain.empty());
        CHECK(o.implementation->entry->config.name == "DI");
    }

    TEST_CASE("visit limit")
    {
        Registry none = registry_of(channel_sources());
        try {
            explore(demand(none, "Channel[MPIFull, Vector]"), none, 2);
            FAIL("expected the visit limit to trigger");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ResolutionLimit);
        }
    }

    TEST_CASE("random universes terminate deterministically")
    {
        std::mt19937 rng(2024);
        int resolved = 0;
        for (int i = 0; i < 40; ++i) {
            auto u = random_universe(rng);
            Registry reg = registry_of(u.sources);
            for (const auto& d : u.demands) {
                CAPTURE(d);
                auto t = demand(reg, d);
                auto a = explore(t, reg);
                auto b = explore(t, reg);
                CHECK(a.visited == b.visited);
                CHECK(a.visits <= kDefaultVisitLimit);
                if (a.found()) {
                    ++resolved;
                    REQUIRE(a.generalized);
                    CHECK(is_subtype(Context{}, a.implementation->type, *a.generalized, reg).holds);
                }
            }
        }
        CHECK(resolved > 0);
    }
}
