// SPDX-License-Identifier: Apache-2.0
#include "codegen.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "typing.hpp"

namespace hashcl {

std::string pascal_case(const std::string& name)
{
    std::string out;
    bool upper = true;
    for (char ch : name) {
        if (ch == '_') {
            upper = true;
            continue;
        }
        out += upper ? static_cast<char>(std::toupper(static_cast<unsigned char>(ch))) : ch;
        upper = false;
    }
    return out;
}

std::string interface_name(const std::string& unit) { return "I" + pascal_case(unit); }
std::string class_name(const std::string& unit) { return "H" + pascal_case(unit); }
std::string kind_interface(Kind kind) { return "I" + std::string(kind_title(kind)) + "Kind"; }

namespace {

const char* kHeader = "// Generated by hashcl. Do not edit.\n";

// A type reference as a generic type expression: variables by name,
// configurations as their I-prefixed interface, Tops as kind interfaces.
std::string type_expr(const TypeRef& ref, const ConfigLookup& lookup)
{
    if (ref.is_variable()) return ref.name;
    if (!lookup.find_abstract(ref.name) && ref.args.empty()) {
        if (auto k = parse_top_reference(ref.name)) return kind_interface(*k);
    }
    std::string out = "I" + ref.name;
    if (!ref.args.empty()) {
        out += '<';
        for (std::size_t i = 0; i < ref.args.size(); ++i) {
            if (i) out += ", ";
            out += type_expr(ref.args[i], lookup);
        }
        out += '>';
    }
    return out;
}

std::string type_args(const std::vector<TypeRef>& args, const ConfigLookup& lookup)
{
    if (args.empty()) return {};
    std::string out = "<";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ", ";
        out += type_expr(args[i], lookup);
    }
    return out + '>';
}

std::string generic_params(const std::vector<Param>& params)
{
    if (params.empty()) return {};
    std::string out = "<";
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) out += ", ";
        out += params[i].var;
    }
    return out + '>';
}

void collect_vars(const TypeRef& ref, std::set<std::string>& out)
{
    if (ref.is_variable()) {
        out.insert(ref.name);
        return;
    }
    for (const auto& a : ref.args) collect_vars(a, out);
}

const Param* find_param(const std::vector<Param>& params, const std::string& var)
{
    for (const auto& p : params) {
        if (p.var == var) return &p;
    }
    return nullptr;
}

void close_over_bounds(const std::vector<Param>& params, std::set<std::string>& vars)
{
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& v : std::set<std::string>(vars)) {
            const Param* p = find_param(params, v);
            if (!p) continue;
            std::set<std::string> more;
            collect_vars(p->bound, more);
            for (const auto& m : more) grew |= vars.insert(m).second;
        }
    }
}

// Variables of `cfg` reached from the slices of `unit`: those in the types
// of the sliced inners and of the inners they are supplied with, closed
// under the variables of their bounds.
std::set<std::string> reachable_vars(const AbstractConfig& cfg, const UnitDecl& unit)
{
    std::set<std::string> vars;
    for (const auto& slice : unit.slices) {
        const InnerDecl* inner = cfg.find_inner(slice.inner);
        if (!inner) continue;
        collect_vars(inner->type, vars);
        for (const auto& sup : inner->supplied) {
            if (const InnerDecl* s = cfg.find_inner(sup)) collect_vars(s->type, vars);
        }
    }
    close_over_bounds(cfg.params, vars);
    return vars;
}

const AbstractConfig* config_of(const TypeRef& ref, const std::vector<Param>& params, const ConfigLookup& lookup,
                                int depth = 0)
{
    if (depth > 64) return nullptr;
    if (ref.is_variable()) {
        const Param* p = find_param(params, ref.name);
        return p ? config_of(p->bound, params, lookup, depth + 1) : nullptr;
    }
    return lookup.find_abstract(ref.name);
}

// Type of the slice member: the variable itself for variable-typed inners,
// otherwise the interface of the sliced unit applied to the inner's arguments.
std::string slice_type(const AbstractConfig& cfg, const SliceDecl& slice, const ConfigLookup& lookup,
                       const std::map<std::string, TypeRef>& instantiate = {})
{
    const InnerDecl* inner = cfg.find_inner(slice.inner);
    if (!inner) return "object";
    auto apply = [&](const TypeRef& ref) {
        auto go = [&](const auto& self, const TypeRef& r) -> TypeRef {
            if (r.is_variable()) {
                auto it = instantiate.find(r.name);
                return it == instantiate.end() ? r : it->second;
            }
            TypeRef out = r;
            for (auto& a : out.args) a = self(self, a);
            return out;
        };
        return go(go, ref);
    };
    if (inner->type.is_variable()) return type_expr(apply(inner->type), lookup);
    return interface_name(slice.unit) + type_args(apply(inner->type).args, lookup);
}

struct Cascade {
    std::string slice;     // receiving slice field
    std::string property;  // its property set by the cascade
};

// Slices of `unit` whose inners take the inner of `source` as a supplied
// public inner, with the property of the receiving unit that slices it.
std::vector<Cascade> cascades(const AbstractConfig& cfg, const UnitDecl& unit, const SliceDecl& source,
                              const ConfigLookup& lookup)
{
    std::vector<Cascade> out;
    for (const auto& other : unit.slices) {
        if (other.id == source.id) continue;
        const InnerDecl* receiver = cfg.find_inner(other.inner);
        if (!receiver) continue;
        for (std::size_t p = 0; p < receiver->supplied.size(); ++p) {
            if (receiver->supplied[p] != source.inner) continue;
            const AbstractConfig* target = config_of(receiver->type, cfg.params, lookup);
            if (!target || p >= target->public_inners.size()) continue;
            const UnitDecl* v = target->find_unit(other.unit);
            if (!v) continue;
            for (const auto& s : v->slices) {
                if (s.inner == target->public_inners[p]) out.push_back({other.id, pascal_case(s.id)});
            }
        }
    }
    return out;
}

}  // namespace

std::vector<StubFile> gen_interface(const AbstractConfig& cfg, const ConfigLookup& lookup)
{
    type_abstract(cfg, Context{}, lookup);
    std::vector<StubFile> out;
    for (const auto& unit : cfg.units) {
        std::ostringstream s;
        s << kHeader << "namespace " << cfg.name << "\n{\n";
        s << "    public interface " << interface_name(unit.name) << generic_params(cfg.params) << " : "
          << kind_interface(cfg.kind) << '\n';
        auto vars = reachable_vars(cfg, unit);
        for (const auto& p : cfg.params) {
            if (vars.count(p.var)) s << "        where " << p.var << " : " << type_expr(p.bound, lookup) << '\n';
        }
        s << "    {\n";
        for (const auto& slice : unit.slices) {
            if (!cfg.is_public(slice.inner)) continue;
            s << "        " << slice_type(cfg, slice, lookup) << ' ' << pascal_case(slice.id) << " { set; }\n";
        }
        s << "    }\n}\n";
        out.push_back({cfg.name + "/" + interface_name(unit.name) + ".cs", s.str(), StubFile::Role::Interface});
    }
    return out;
}

std::vector<StubFile> gen_class(const ConcreteConfig& cfg, const ConfigLookup& lookup)
{
    type_concrete(cfg, lookup);
    const AbstractConfig& abs = *lookup.find_abstract(cfg.implements.name);

    std::map<std::string, TypeRef> instantiate;
    for (std::size_t i = 0; i < abs.params.size() && i < cfg.implements.args.size(); ++i) {
        instantiate.insert_or_assign(abs.params[i].var, cfg.implements.args[i]);
    }

    std::vector<StubFile> out;
    for (const auto& unit : abs.units) {
        const std::string cls = class_name(unit.name);
        std::ostringstream s;
        s << kHeader << "namespace " << cfg.name << "\n{\n";
        s << "    public class " << cls << generic_params(cfg.params) << " : Unit, " << abs.name << '.'
          << interface_name(unit.name) << type_args(cfg.implements.args, lookup) << '\n';
        for (const auto& p : cfg.params) s << "        where " << p.var << " : " << type_expr(p.bound, lookup) << '\n';
        s << "    {\n";

        auto member = [&](const SliceDecl& slice, const char* visibility) {
            std::string type = slice_type(abs, slice, lookup, instantiate);
            s << "        private " << type << ' ' << slice.id << " = null;\n";
            s << "        " << visibility << ' ' << type << ' ' << pascal_case(slice.id) << "\n";
            s << "        {\n            set\n            {\n";
            s << "                this." << slice.id << " = value;\n";
            for (const auto& c : cascades(abs, unit, slice, lookup)) {
                s << "                " << c.slice << '.' << c.property << " = value;\n";
            }
            s << "            }\n        }\n";
        };

        s << "        // private slices\n";
        for (const auto& slice : unit.slices) {
            if (!abs.is_public(slice.inner)) member(slice, "private");
        }
        s << "\n        // public slices\n";
        for (const auto& slice : unit.slices) {
            if (abs.is_public(slice.inner)) member(slice, "public");
        }

        s << "\n        public " << cls << "()\n        {\n        }\n";
        s << "\n        // creation of private slices\n";
        s << "        public override void createSlices()\n        {\n            base.createSlices();\n";
        for (const auto& slice : unit.slices) {
            if (abs.is_public(slice.inner)) continue;
            std::string type = slice_type(abs, slice, lookup, instantiate);
            s << "            this." << pascal_case(slice.id) << " = (" << type << ") BackEnd.createSlice(this, \""
              << slice.id << "\");\n";
        }
        s << "        }\n";
        if (cfg.kind == Kind::Computation) {
            s << "\n        public void compute()\n        {\n";
            s << "            // Generic parameters are invariant: create values of a type parameter\n";
            s << "            // from its runtime type, e.g. Activator.CreateInstance(typeof(N)),\n";
            s << "            // never from a fixed implementation of its bound.\n";
            s << "        }\n";
        }
        s << "    }\n}\n";
        out.push_back({cfg.name + "/" + cls + ".cs", s.str(), StubFile::Role::Class});
    }
    return out;
}

StubFile gen_prelude()
{
    std::ostringstream s;
    s << kHeader;
    s << "public abstract class Unit\n{\n    public virtual void createSlices()\n    {\n    }\n}\n\n";
    s << "public static class BackEnd\n{\n";
    s << "    public static object createSlice(Unit owner, string slice)\n    {\n        return null;\n    }\n}\n";
    for (Kind k : kAllKinds) {
        s << "\npublic interface " << kind_interface(k) << "\n{\n";
        if (k == Kind::Computation) s << "    void compute();\n";
        s << "}\n";
    }
    return {"prelude/Prelude.cs", s.str(), StubFile::Role::Prelude};
}

namespace {

std::string fresh(const std::string& base, const std::set<std::string>& taken)
{
    std::string name = base;
    while (taken.count(name)) name += "'";
    return name;
}

std::set<std::string> names_in(const AbstractType& a)
{
    std::set<std::string> out = free_vars(ComponentType::abstract(a));
    for (const auto& b : a.bounds) out.insert(b.var);
    return out;
}

// Tops read as the kind they stand for.
std::string interp_name(const ComponentType& t)
{
    return t.is_top() ? std::string(kind_title(t.top_kind())) : render_nominal(t);
}

std::string shape_ref(const Shape& s)
{
    return "shape(" + (s.origin.empty() ? render_shape(s) : s.origin) + ")";
}

std::string existential(const AbstractType& a)
{
    std::string out = "{";
    for (const auto& b : a.bounds) out += "∃" + b.var + "<:" + interp_name(b.bound) + "; ";
    return out + shape_ref(a.shape) + "}";
}

}  // namespace

std::string emit_interpretation(const ComponentType& t)
{
    if (t.is_shape()) return shape_ref(t.as_shape());
    if (t.is_abstract()) {
        const AbstractType& a = t.as_abstract();
        auto taken = names_in(a);
        const bool single = a.bounds.size() == 1;
        std::string lambdas;
        std::string foralls;
        Substitution outer;
        for (std::size_t i = 0; i < a.bounds.size(); ++i) {
            std::string idx = single ? "" : std::to_string(i + 1);
            std::string x = fresh("X" + idx, taken);
            std::string y = fresh("Y" + idx, taken);
            lambdas += "λ" + x + "<:" + interp_name(substitute(a.bounds[i].bound, outer)) + ". ";
            outer.insert_or_assign(a.bounds[i].var, ComponentType::var(x));
            foralls += "∀" + y + "<:" + x + ". ";
        }
        return lambdas + foralls + existential(a);
    }
    if (t.is_hash()) {
        const HashType& h = t.as_hash();
        if (!h.base.is_abstract()) return "(t as " + shape_ref(h.base.as_shape()) + ")";
        const AbstractType& a = h.base.as_abstract();
        auto taken = names_in(a);
        const bool single = h.args.size() == 1;
        std::string lambdas;
        std::string packed;
        for (std::size_t i = 0; i < h.args.size(); ++i) {
            std::string y = fresh(single ? "Y" : "Y" + std::to_string(i + 1), taken);
            lambdas += "λ" + y + "<:" + interp_name(h.args[i]) + ". ";
            packed += "*" + y + "; ";
        }
        return lambdas + "({" + packed + "t} as " + existential(a) + ")";
    }
    return interp_name(t);
}

void write_stubs(const std::vector<StubFile>& files, const std::filesystem::path& out_dir)
{
    for (const auto& f : files) {
        std::filesystem::path path = out_dir / f.path;
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw Error(ErrorCode::IoError, "cannot create '" + path.parent_path().string() + "': " + ec.message());
        std::ofstream o(path, std::ios::binary);
        if (!o) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
        o << f.text;
        if (!o) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
    }
}

}  // namespace hashcl
