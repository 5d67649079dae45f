// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include "codegen.hpp"
#include "csharp_scan.hpp"
#include "support.hpp"

using namespace hashcl;
using namespace hashcl::testing;

namespace {

using Pairs = std::vector<std::pair<std::string, std::string>>;

const StubFile& only(const std::vector<StubFile>& files, const std::string& path)
{
    for (const auto& f : files)
        if (f.path == path) return f;
    FAIL("missing stub " << path);
    return files.front();
}

}  // namespace

TEST_SUITE("codegen")
{
    TEST_CASE("naming")
    {
        CHECK(pascal_case("par_data") == "ParData");
        CHECK(pascal_case("calculate") == "Calculate");
        CHECK(interface_name("parData") == "IParData");
        CHECK(class_name("calculate") == "HCalculate");
        CHECK(kind_interface(Kind::Computation) == "IComputationKind");
    }

    TEST_CASE("interface for the shared-environment product")
    {
        Registry reg = Registry::load(corpus("sharedenv"));
        auto files = gen_interface(*reg.find_abstract("MatVecProduct"), reg);
        auto decls = cs_declarations(only(files, "MatVecProduct/ICalculate.cs").text);
        REQUIRE(decls.size() == 1);
        const auto& d = decls[0];
        CHECK(d.keyword == "interface");
        CHECK(d.name == "ICalculate");
        CHECK(d.type_params == std::vector<std::string>{"C", "E", "N", "Da", "Dx", "Dv"});
        CHECK(d.bases == std::vector<std::string>{"IComputationKind"});
        CHECK(d.constraints == Pairs{{"C", "ICluster"},
                                     {"E", "IEnvironment<C>"},
                                     {"N", "INumber"},
                                     {"Da", "IVecPartition"},
                                     {"Dx", "IVecPartition"},
                                     {"Dv", "IVecPartition"}});
        CHECK(d.set_properties == Pairs{{"E", "Env"},
                                        {"IParData<C, E, IMatrix<N>, Da>", "A"},
                                        {"IParData<C, E, IVector<N>, Dx>", "X"},
                                        {"IParData<C, E, IVector<N>, Dv>", "V"}});
    }

    TEST_CASE("class for the shared-environment product")
    {
        Registry reg = Registry::load(corpus("sharedenv"));
        auto files = gen_class(reg.find_concrete("MatVecProductImplForNumber")->config, reg);
        const auto& stub = only(files, "MatVecProductImplForNumber/HCalculate.cs");
        auto decls = cs_declarations(stub.text);
        REQUIRE(decls.size() == 1);
        const auto& d = decls[0];
        CHECK(d.keyword == "class");
        CHECK(d.name == "HCalculate");
        CHECK(d.bases == std::vector<std::string>{"Unit", "MatVecProduct.ICalculate<C, E, N, Da, Dx, Dv>"});
        CHECK(d.constraints == Pairs{{"C", "IGNUCluster"},
                                     {"E", "IMPIFull<C>"},
                                     {"N", "INumber"},
                                     {"Da", "IByRows"},
                                     {"Dx", "IReplicate"},
                                     {"Dv", "IReplicate"}});
        std::vector<std::string> props;
        for (const auto& [_, name] : d.set_properties) props.push_back(name);
        CHECK(props == std::vector<std::string>{"Env", "A", "X", "V"});
        CHECK(std::count(d.methods.begin(), d.methods.end(), "createSlices") == 1);
        CHECK(std::count(d.methods.begin(), d.methods.end(), "compute") == 1);
        // Env cascades into the inners it was supplied to.
        for (const auto* line : {"a.Env = value;", "x.Env = value;", "v.Env = value;"})
            CHECK(stub.text.find(line) != std::string::npos);
    }

    TEST_CASE("channel stubs")
    {
        Registry reg = Registry::load(corpus("channel/impl4"));
        auto ifaces = gen_interface(*reg.find_abstract("Channel"), reg);
        for (const auto* unit : {"ISend", "IRecv"}) {
            auto d = cs_declarations(only(ifaces, std::string("Channel/") + unit + ".cs").text).at(0);
            CHECK(d.type_params == std::vector<std::string>{"E", "D"});
            CHECK(d.set_properties.empty());
            CHECK(d.bases == std::vector<std::string>{"ISynchronizerKind"});
        }
        auto classes = gen_class(reg.find_concrete("ChannelImpl4")->config, reg);
        for (const auto* unit : {"HSend", "HRecv"}) {
            auto d = cs_declarations(only(classes, std::string("ChannelImpl4/") + unit + ".cs").text).at(0);
            CHECK(d.constraints == Pairs{{"E", "IMPIBasic"}, {"D", "IData"}});
            CHECK(d.set_properties.empty());
        }
    }

    TEST_CASE("private inners do not become properties")
    {
        Registry reg = registry_of({"data D begin unit u end"});
        auto cfg = parse_abstract("computation P begin data p : D unit run begin slice s from p.u end end");
        auto d = cs_declarations(gen_interface(cfg, reg).at(0).text).at(0);
        CHECK(d.set_properties.empty());
        CHECK(d.type_params.empty());
    }

    TEST_CASE("interface constraints follow slice reachability")
    {
        Registry reg = registry_of({"data D begin unit value end", "data W [T: D] begin unit value end"});
        auto cfg = parse_abstract(
            "computation P (a) [T: D, U: D, V: W[U]] begin data a : T data b : V unit u begin slice s from a.value "
            "end unit w begin slice t from b.value end unit z end");
        auto files = gen_interface(cfg, reg);
        auto u = cs_declarations(only(files, "P/IU.cs").text).at(0);
        CHECK(u.type_params == std::vector<std::string>{"T", "U", "V"});
        CHECK(u.constraints == Pairs{{"T", "ID"}});
        CHECK(u.set_properties == Pairs{{"T", "S"}});
        auto w = cs_declarations(only(files, "P/IW.cs").text).at(0);
        CHECK(w.constraints == Pairs{{"U", "ID"}, {"V", "IW<U>"}});
        CHECK(w.set_properties.empty());
        CHECK(cs_declarations(only(files, "P/IZ.cs").text).at(0).constraints.empty());
    }

    TEST_CASE("generation is deterministic")
    {
        Registry reg = Registry::load(corpus("sharedenv"));
        auto a = gen_class(reg.find_concrete("MatVecProductImplForNumber")->config, reg);
        auto b = gen_class(reg.find_concrete("MatVecProductImplForNumber")->config, reg);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].text == b[i].text);
    }

    TEST_CASE("parameterless concrete gives a non-generic class")
    {
        Registry reg = registry_of({"data D begin unit u end", "data DI implements D version 1.0.0.0 begin unit u "
                                                              "begin end end"});
        auto d = cs_declarations(gen_class(reg.find_concrete("DI")->config, reg).at(0).text).at(0);
        CHECK(d.type_params.empty());
        CHECK(d.constraints.empty());
    }

    TEST_CASE("prelude and headers")
    {
        auto p = gen_prelude();
        auto decls = cs_declarations(p.text);
        CHECK(decls.size() == 9);
        Registry reg = Registry::load(corpus("sharedenv"));
        for (const auto& f : gen_interface(*reg.find_abstract("PData"), reg))
            CHECK(f.text.rfind("// Generated by hashcl. Do not edit.", 0) == 0);
    }

    TEST_CASE("interpretation")
    {
        Registry reg = registry_of(channel_sources({4}));
        CHECK(emit_interpretation(reg.abstract_type("Channel")) ==
              "λX1<:Environment. λX2<:Data. ∀Y1<:X1. ∀Y2<:X2. {∃E<:Environment; ∃D<:Data; shape(Channel)}");
        CHECK(emit_interpretation(reg.find_concrete("ChannelImpl4")->type) ==
              "λY1<:MPIBasic. λY2<:Data. ({*Y1; *Y2; t} as {∃E<:Environment; ∃D<:Data; shape(Channel)})");
        Registry one = registry_of({"data D begin unit u end", "data W [T: D] begin unit u end"});
        CHECK(emit_interpretation(one.abstract_type("W")) == "λX<:D. ∀Y<:X. {∃T<:D; shape(W)}");
        CHECK(emit_interpretation(one.abstract_type("D")) == "shape(D)");
    }
}
