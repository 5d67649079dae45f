// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include "support.hpp"
#include "typing.hpp"
#include "wellformed.hpp"

using namespace hashcl;
using namespace hashcl::testing;

TEST_SUITE("typing")
{
    TEST_CASE("channel abstract type")
    {
        Registry reg = registry_of(channel_sources());
        auto t = type_abstract(parse_abstract(read_text(corpus("channel/hcl/Channel.hcl"))), Context{}, reg).type;
        REQUIRE(t.is_abstract());
        const auto& a = t.as_abstract();
        REQUIRE(a.bounds.size() == 2);
        CHECK(a.bounds[0].var == "E");
        CHECK(a.bounds[0].bound == ComponentType::top(Kind::Environment));
        CHECK(render_nominal(a.bounds[1].bound) == "Data");
        CHECK(a.shape.kind == Kind::Synchronizer);
        CHECK(a.shape.public_inners.empty());
        CHECK(a.shape.private_inners.empty());
        REQUIRE(a.shape.units.size() == 2);
        CHECK(a.shape.units[0].sigma.empty());
        CHECK(a.shape.units[0].trace.render() == "Σ*");
    }

    TEST_CASE("matvec abstract type")
    {
        Registry reg = Registry::load(corpus("matvec"));
        auto t = reg.abstract_type("MatVecProduct");
        REQUIRE(t.is_abstract());
        const auto& a = t.as_abstract();
        CHECK(a.bounds.size() == 6);
        REQUIRE(a.shape.public_inners.size() == 3);
        CHECK(a.shape.private_inners.empty());
        REQUIRE(a.shape.units.size() == 1);
        const auto& sigma = a.shape.units[0].sigma;
        CHECK(sigma.size() == 3);
        CHECK(sigma.at("a_slice") == SliceTarget{"a", "matrix"});
        CHECK(sigma.at("x_slice") == SliceTarget{"x", "vector"});
        CHECK(sigma.at("v_slice") == SliceTarget{"v", "vector"});
        CHECK(render_nominal(a.shape.public_inners[0].type) == "PData <| [Matrix <| [T], C, E, Da]");
    }

    TEST_CASE("parameterless abstract types as a shape")
    {
        auto t = type_abstract(parse_abstract("data D begin unit u end"), Context{}, EmptyLookup{}).type;
        CHECK(t.is_shape());
        CHECK(t.as_shape().units.size() == 1);
    }

    TEST_CASE("application")
    {
        Registry reg = registry_of(channel_sources());
        auto r = type_apply(parse_type_expression("Channel[MPIFull, Vector]"), Context{}, reg);
        CHECK(render_nominal(r.type) == "Channel <| [MPIFull, Vector]");
        REQUIRE(r.obligations.size() == 2);
        CHECK(r.obligations[0].origin == "argument 1 of Channel");
        CHECK(r.obligations[0].render() == "MPIFull <: Top_environment");
        CHECK(r.obligations[1].render() == "Vector <: Data");

        Context g({{"E", ComponentType::top(Kind::Environment)}, {"D", reg.abstract_type("Data")}});
        auto open = type_apply(parse_type_expression("Channel[E, D]"), g, reg).type;
        CHECK(free_vars(open) == std::set<std::string>{"D", "E"});

        try {
            type_apply(parse_type_expression("Channel[Vector, MPIFull]"), Context{}, reg);
            FAIL("expected a bound violation");
        } catch (const BoundViolationError& e) {
            CHECK(e.index() == 1);
            CHECK(e.code() == ErrorCode::BoundViolation);
        }
        CHECK_THROWS_AS(type_apply(parse_type_expression("Channel[MPIFull]"), Context{}, reg), Error);
        CHECK_THROWS_AS(type_apply(parse_type_expression("Nope[MPIFull]"), Context{}, reg), Error);
        CHECK_THROWS_AS(type_ref(parse_type_expression("X"), Context{}, reg), Error);
    }

    TEST_CASE("supply")
    {
        Registry reg = Registry::load(corpus("sharedenv"));
        Context g({{"C", reg.abstract_type("Cluster")}});
        g.push({"E", demand_type(parse_type_expression("Environment[Cluster]"), reg)});
        g.push({"N", reg.abstract_type("Number")});
        g.push({"Da", reg.abstract_type("VecPartition")});
        auto target = parse_type_expression("PData[C, E, Matrix[N], Da]");
        auto plain = type_apply(target, g, reg).type;
        auto none = type_supply(target, {}, g, reg).type;
        CHECK(none == plain);

        auto supplied = type_supply(target, {TypeRef::variable("E")}, g, reg).type;
        REQUIRE(supplied.is_hash());
        REQUIRE(supplied.as_hash().supplied.size() == 1);
        CHECK(supplied.as_hash().supplied[0].label == "env");
        const Shape* s = shape_of(supplied, g);
        REQUIRE(s != nullptr);
        CHECK(s->public_inners.empty());
        REQUIRE(s->private_inners.size() == 1);
        CHECK(s->private_inners[0].type == ComponentType::var("E"));

        // A supplied type of the wrong kind fails the premise.
        CHECK_THROWS_AS(type_supply(target, {TypeRef::application("Number")}, g, reg), BoundViolationError);
        CHECK_THROWS_AS(type_supply(target, {TypeRef::variable("E"), TypeRef::variable("E")}, g, reg), Error);
    }

    TEST_CASE("concrete types")
    {
        Registry mv = Registry::load(corpus("matvec"));
        auto t = mv.find_concrete("MatVecProductImplForDouble")->type;
        CHECK(render_nominal(t) ==
              "MatVecProduct <| [Double, GNUCluster, MPIFull <| [GNUCluster], ByRows, Replicate, Replicate]");

        Registry ch = registry_of(channel_sources({4}));
        CHECK(render_nominal(ch.find_concrete("ChannelImpl4")->type) == "Channel <| [MPIBasic, Data]");

        Registry simple = registry_of({"data D begin unit u end", "data DImpl implements D version 1.0.0.0 "
                                                                  "begin unit u begin end end"});
        auto d = simple.find_concrete("DImpl")->type;
        REQUIRE(d.is_hash());
        CHECK(d.as_hash().args.empty());
    }

    TEST_CASE("concrete errors")
    {
        Registry ch = registry_of(channel_sources());
        auto wrong_kind = parse_concrete(
            "data C1 [E: MPIBasic, D: Data] implements Channel[E, D] version 1.0.0.0 begin unit send begin end "
            "unit recv begin end end");
        CHECK_THROWS_AS(type_concrete(wrong_kind, ch), Error);
        auto bad_unit = parse_concrete(
            "synchronizer C1 [E: MPIBasic, D: Data] implements Channel[E, D] version 1.0.0.0 begin unit send "
            "begin end unit other begin end end");
        CHECK_THROWS_AS(type_concrete(bad_unit, ch), Error);
        auto bound = parse_concrete(
            "synchronizer C1 [E: Data, D: Data] implements Channel[E, D] version 1.0.0.0 begin unit send begin "
            "end unit recv begin end end");
        CHECK_THROWS_AS(type_concrete(bound, ch), BoundViolationError);
        auto not_abstract = parse_concrete(
            "synchronizer C1 implements Top_synchronizer version 1.0.0.0 begin unit send begin end end");
        CHECK_THROWS_AS(type_concrete(not_abstract, ch), Error);
    }

    TEST_CASE("specialized target")
    {
        auto c = parse_concrete(read_text(corpus("sharedenv/MatVecProductImplForNumber.hcl")));
        CHECK(print_typeref(specialized_target(c)) ==
              "MatVecProduct[GNUCluster, MPIFull[GNUCluster], Number, ByRows, Replicate, Replicate]");
    }
}

TEST_SUITE("wellformed")
{
    TEST_CASE("matvec corpus is well formed")
    {
        Registry reg = Registry::load(corpus("matvec"));
        for (const auto& name : reg.abstract_names()) {
            CAPTURE(name);
            CHECK(check_wellformed(*reg.find_abstract(name), reg).empty());
        }
        CHECK(check_wellformed(reg.find_concrete("MatVecProductImplForDouble")->config, reg).empty());
    }

    TEST_CASE("exactly-once rule")
    {
        Registry reg = Registry::load(corpus("matvec"));
        auto cfg = parse_abstract(read_text(corpus("matvec/MatVecProduct.hcl")));

        auto deleted = cfg;
        deleted.units[0].slices.erase(deleted.units[0].slices.begin() + 2);
        auto d = check_wellformed(deleted, reg);
        REQUIRE(d.size() == 1);
        CHECK(d[0].code == DiagCode::UnslicedInnerUnit);
        CHECK(d[0].message == "v.vector is not a slice of any unit");

        auto dup = cfg;
        auto extra = dup.units[0].slices[0];
        extra.id = "again";
        dup.units[0].slices.push_back(extra);
        d = check_wellformed(dup, reg);
        REQUIRE(d.size() == 1);
        CHECK(d[0].code == DiagCode::DuplicateSliceTarget);
    }

    TEST_CASE("other diagnostics")
    {
        Registry reg = registry_of(channel_sources());
        auto codes = [&](std::string_view src) {
            std::vector<DiagCode> out;
            for (const auto& d : check_wellformed(parse(src), reg)) out.push_back(d.code);
            return out;
        };
        using V = std::vector<DiagCode>;
        CHECK(codes("data X (q) begin data a : Data unit u begin slice s from a.element end end") ==
              V{DiagCode::PublicInnerNotDeclared});
        CHECK(codes("data X [T: Y] begin unit u end") == V{DiagCode::UnknownConfig});
        CHECK(codes("data X [T: Data, T: Data] begin unit u end") == V{DiagCode::DuplicateName});
        CHECK(codes("data X begin data a : Q unit u begin slice s from a.element end end") ==
              V{DiagCode::UnknownConfig});
        CHECK(codes("synchronizer X [E: Channel[F, D], D: Data, F: Environment] begin unit u end") ==
              V{DiagCode::FreeVariable, DiagCode::FreeVariable});
        CHECK(codes("data X begin data a : Data unit u begin slice s from b.element end end") ==
              V{DiagCode::UnknownInner, DiagCode::UnslicedInnerUnit});
        CHECK(codes("data X begin data a : Data unit u begin slice s from a.nope end end") ==
              V{DiagCode::UnknownUnit, DiagCode::UnslicedInnerUnit});
        CHECK(codes("data X begin environment a : Data unit u begin slice s from a.element end end") ==
              V{DiagCode::InnerKindMismatch});
        CHECK(codes("data X begin data a : Data unit u begin slice s from a.element action s t end end") ==
              V{DiagCode::ActionSymbolNotSliced});
        CHECK(codes("data X begin synchronizer a : Channel[MPIFull] unit u begin slice s from a.send slice t from "
                    "a.recv end end") == V{DiagCode::TypeError});
        CHECK(codes("synchronizer CI [E: MPIBasic, D: Data] implements Channel[E, D] version 1.0.0.0 begin "
                    "unit send begin end end") == V{DiagCode::UnitMismatch});
    }
}
