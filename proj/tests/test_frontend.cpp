// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include "expand.hpp"
#include "support.hpp"

using namespace hashcl;
using namespace hashcl::testing;

TEST_SUITE("frontend")
{
    TEST_CASE("matvec abstract parses into the expected structure")
    {
        auto cfg = parse_abstract(read_text(corpus("matvec/MatVecProduct.hcl")));
        CHECK(cfg.name == "MatVecProduct");
        CHECK(cfg.kind == Kind::Computation);
        CHECK(cfg.replication == std::optional<std::string>("N"));
        REQUIRE(cfg.params.size() == 6);
        std::vector<std::string> vars, bounds;
        for (const auto& p : cfg.params) {
            vars.push_back(p.var);
            bounds.push_back(print_typeref(p.bound));
        }
        CHECK(vars == std::vector<std::string>{"T", "C", "E", "Da", "Dx", "Dv"});
        CHECK(bounds ==
              std::vector<std::string>{"Number", "Architecture", "Environment[C]", "MatPartition", "VecPartition",
                                       "VecPartition"});
        CHECK(cfg.public_inners == std::vector<std::string>{"a", "x", "v"});
        CHECK(cfg.inners.size() == 3);
        REQUIRE(cfg.units.size() == 1);
        CHECK(cfg.units[0].name == "calculate");
        CHECK(cfg.units[0].index == std::optional<std::string>("k"));
        CHECK(cfg.units[0].slices.size() == 3);
        CHECK(print_typeref(cfg.inners[0].type) == "PData<N>[Matrix[T], C, E, Da]");
    }

    TEST_CASE("matvec concrete parses target and version")
    {
        auto cfg = parse_concrete(read_text(corpus("matvec/MatVecProductImplForDouble.hcl")));
        CHECK(cfg.name == "MatVecProductImplForDouble");
        CHECK(print_typeref(cfg.implements) ==
              "MatVecProduct<N>[Double, GNUCluster, MPIFull[GNUCluster], ByRows, Replicate, Replicate]");
        CHECK(cfg.version.str() == "2.2.2.1");
    }

    TEST_CASE("channel one-liner")
    {
        auto cfg = parse_abstract("synchronizer Channel [E: Environment, D: Data] begin unit send unit recv end");
        CHECK(cfg.units.size() == 2);
        CHECK(cfg.inners.empty());
        CHECK(cfg.public_inners.empty());
        CHECK(cfg.params.size() == 2);
    }

    TEST_CASE("printing is a fixpoint of parse")
    {
        for (const auto* rel : {"matvec/MatVecProduct.hcl", "matvec/MatVecProductImplForDouble.hcl",
                                "matvec/PData.hcl", "sharedenv/MatVecProduct.hcl", "sharedenv/PData.hcl",
                                "sharedenv/MatVecProductImplForNumber.hcl", "channel/hcl/Channel.hcl",
                                "channel/hcl/ChannelImpl3.hcl"}) {
            CAPTURE(rel);
            Config first = parse(read_text(corpus(rel)));
            std::string printed = print_config(first);
            Config second = parse(printed);
            CHECK(print_config(second) == printed);
            CHECK(config_name(first) == config_name(second));
        }
    }

    TEST_CASE("actions parse and print")
    {
        auto cfg = parse_abstract(
            "computation P (a) [T: Data] begin data a : T unit u begin slice s from a.value slice t from a.value "
            "action (s t)* | eps end end");
        REQUIRE(cfg.units[0].action.has_value());
        auto again = parse_abstract(print_config(cfg));
        CHECK(again.units[0].action == cfg.units[0].action);
    }

    TEST_CASE("mutated sources either parse or raise positioned syntax errors")
    {
        std::string base = read_text(corpus("matvec/MatVecProduct.hcl"));
        std::mt19937 rng(7);
        const std::string junk = "[](){}<>:;,.=*|x9 ";
        int errors = 0;
        for (int i = 0; i < 400; ++i) {
            std::string s = base;
            std::uniform_int_distribution<std::size_t> at(0, s.size() - 1);
            switch (i % 3) {
            case 0: s.erase(at(rng), 1); break;
            case 1: s.insert(at(rng), 1, junk[at(rng) % junk.size()]); break;
            default: s[at(rng)] = junk[at(rng) % junk.size()]; break;
            }
            try {
                Config c = parse(s);
                CHECK(print_config(parse(print_config(c))) == print_config(c));
            } catch (const Error& e) {
                ++errors;
                CHECK(e.pos().known());
            }
        }
        CHECK(errors > 0);
    }

    TEST_CASE("syntax errors carry position and expectations")
    {
        try {
            parse("data X [T: ] begin unit u end");
            FAIL("expected a syntax error");
        } catch (const SyntaxError& e) {
            CHECK(e.pos().line == 1);
            CHECK(e.pos().column == 12);
            CHECK_FALSE(e.expected().empty());
        }
        CHECK_THROWS_AS(parse("widget X begin unit u end"), Error);
        CHECK_THROWS_AS(parse("data X begin end"), Error);
        CHECK_THROWS_AS(parse("data begin begin unit u end"), Error);
        CHECK_THROWS_AS(parse("data X implements Y version 1.0 begin unit u begin end end"), Error);
    }

    TEST_CASE("type expressions")
    {
        CHECK(print_typeref(parse_type_expression("Channel[MPIFull,Vector]")) == "Channel[MPIFull, Vector]");
        CHECK(print_typeref(parse_type_expression(" A [ B [ C ] ] ")) == "A[B[C]]");
        CHECK_THROWS_AS(parse_type_expression("A[B"), Error);
        CHECK_THROWS_AS(parse_type_expression("A B"), Error);
    }

    TEST_CASE("iterator expansion")
    {
        auto mvp = parse_abstract(read_text(corpus("matvec/MatVecProduct.hcl")));
        auto one = expand_iterators(mvp, 1);
        REQUIRE(one.units.size() == 1);
        CHECK(one.units[0].name == "calculate_0");

        auto four = expand_iterators(mvp, 4);
        REQUIRE(four.units.size() == 4);
        for (unsigned i = 0; i < 4; ++i) {
            CHECK(four.units[i].name == instance_name("calculate", i));
            CHECK(four.units[i].slices.size() == 3);
            CHECK(four.units[i].slices[0].unit == "matrix_" + std::to_string(i));
        }

        auto channel = parse_abstract(read_text(corpus("channel/hcl/Channel.hcl")));
        CHECK(expand_iterators(channel, 5) == channel);
    }
}
