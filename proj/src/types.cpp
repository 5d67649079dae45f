// SPDX-License-Identifier: Apache-2.0
#include "types.hpp"

#include <sstream>

#include "diagnostics.hpp"

namespace hashcl {

ComponentType ComponentType::var(std::string name) { return ComponentType(Node(Var{std::move(name)})); }
ComponentType ComponentType::top(Kind kind) { return ComponentType(Node(Top{kind})); }

ComponentType ComponentType::shape(Shape s)
{
    return ComponentType(Node(std::make_shared<const Shape>(std::move(s))));
}

ComponentType ComponentType::abstract(AbstractType a)
{
    return ComponentType(Node(std::make_shared<const AbstractType>(std::move(a))));
}

ComponentType ComponentType::hash(HashType h)
{
    return ComponentType(Node(std::make_shared<const HashType>(std::move(h))));
}

const std::string& ComponentType::origin() const
{
    static const std::string none;
    switch (node_.index()) {
        case 2: return as_shape().origin;
        case 3: return as_abstract().shape.origin;
        case 4: return as_hash().base.origin();
        default: return none;
    }
}

bool operator==(const ComponentType& a, const ComponentType& b)
{
    if (a.node_.index() != b.node_.index()) return false;
    switch (a.node_.index()) {
        case 0: return std::get<0>(a.node_) == std::get<0>(b.node_);
        case 1: return std::get<1>(a.node_) == std::get<1>(b.node_);
        case 2: return std::get<2>(a.node_) == std::get<2>(b.node_) || a.as_shape() == b.as_shape();
        case 3: return std::get<3>(a.node_) == std::get<3>(b.node_) || a.as_abstract() == b.as_abstract();
        case 4: return std::get<4>(a.node_) == std::get<4>(b.node_) || a.as_hash() == b.as_hash();
    }
    return false;
}

const InnerSlot* Shape::find_inner(const std::string& label) const
{
    for (const auto& i : public_inners) {
        if (i.label == label) return &i;
    }
    for (const auto& i : private_inners) {
        if (i.label == label) return &i;
    }
    return nullptr;
}

bool Shape::is_public(const std::string& label) const
{
    for (const auto& i : public_inners) {
        if (i.label == label) return true;
    }
    return false;
}

const UnitSig* Shape::find_unit(const std::string& unit_name) const
{
    for (const auto& u : units) {
        if (u.name == unit_name) return &u;
    }
    return nullptr;
}

const ComponentType* Context::lookup(const std::string& var) const
{
    for (auto it = bindings_.rbegin(); it != bindings_.rend(); ++it) {
        if (it->var == var) return &it->bound;
    }
    return nullptr;
}

Context Context::extended(const std::vector<Bound>& more) const
{
    Context out = *this;
    for (const auto& b : more) out.bindings_.push_back(b);
    return out;
}

namespace {

void collect_free(const ComponentType& t, std::set<std::string>& out);

void collect_shape(const Shape& s, std::set<std::string>& out)
{
    for (const auto& i : s.public_inners) collect_free(i.type, out);
    for (const auto& i : s.private_inners) collect_free(i.type, out);
}

void collect_free(const ComponentType& t, std::set<std::string>& out)
{
    if (t.is_var()) {
        out.insert(t.var_name());
    } else if (t.is_shape()) {
        collect_shape(t.as_shape(), out);
    } else if (t.is_abstract()) {
        const auto& a = t.as_abstract();
        std::set<std::string> bound;
        for (const auto& b : a.bounds) {
            std::set<std::string> inner;
            collect_free(b.bound, inner);
            for (const auto& v : inner) {
                if (!bound.count(v)) out.insert(v);
            }
            bound.insert(b.var);
        }
        std::set<std::string> body;
        collect_shape(a.shape, body);
        for (const auto& v : body) {
            if (!bound.count(v)) out.insert(v);
        }
    } else if (t.is_hash()) {
        const auto& h = t.as_hash();
        collect_free(h.base, out);
        for (const auto& a : h.args) collect_free(a, out);
        for (const auto& s : h.supplied) collect_free(s.type, out);
    }
}

Shape substitute_shape(const Shape& s, const Substitution& sub)
{
    Shape out = s;
    for (auto& i : out.public_inners) i.type = substitute(i.type, sub);
    for (auto& i : out.private_inners) i.type = substitute(i.type, sub);
    return out;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid)
{
    std::string name = base + "'";
    while (avoid.count(name)) name += "'";
    return name;
}

}  // namespace

std::set<std::string> free_vars(const ComponentType& t)
{
    std::set<std::string> out;
    collect_free(t, out);
    return out;
}

ComponentType substitute(const ComponentType& t, const Substitution& s)
{
    if (s.empty() || t.is_top()) return t;
    if (t.is_var()) {
        auto it = s.find(t.var_name());
        return it == s.end() ? t : it->second;
    }

    // Only keys that actually occur free matter; skip untouched subtrees.
    auto fv = free_vars(t);
    Substitution active;
    for (const auto& [k, v] : s) {
        if (fv.count(k)) active.emplace(k, v);
    }
    if (active.empty()) return t;

    if (t.is_shape()) return ComponentType::shape(substitute_shape(t.as_shape(), active));
    if (t.is_hash()) {
        HashType h = t.as_hash();
        h.base = substitute(h.base, active);
        for (auto& a : h.args) a = substitute(a, active);
        for (auto& sup : h.supplied) sup.type = substitute(sup.type, active);
        return ComponentType::hash(std::move(h));
    }

    const AbstractType& a = t.as_abstract();
    std::set<std::string> replacement_vars;
    for (const auto& [k, v] : active) {
        auto vs = free_vars(v);
        replacement_vars.insert(vs.begin(), vs.end());
    }
    std::set<std::string> avoid = replacement_vars;
    avoid.insert(fv.begin(), fv.end());
    for (const auto& b : a.bounds) avoid.insert(b.var);

    AbstractType out;
    Substitution current = active;
    for (const auto& b : a.bounds) {
        Bound nb{b.var, substitute(b.bound, current)};
        current.erase(b.var);
        if (replacement_vars.count(b.var)) {
            nb.var = fresh_name(b.var, avoid);
            avoid.insert(nb.var);
            current.insert_or_assign(b.var, ComponentType::var(nb.var));
        }
        out.bounds.push_back(std::move(nb));
    }
    out.shape = substitute_shape(a.shape, current);
    return ComponentType::abstract(std::move(out));
}

namespace {

constexpr int kMaxPromotions = 10000;

}  // namespace

const Shape* shape_of(const ComponentType& t, const Context& gamma)
{
    const ComponentType* cur = &t;
    for (int steps = 0; steps < kMaxPromotions; ++steps) {
        if (cur->is_var()) {
            const ComponentType* bound = gamma.lookup(cur->var_name());
            if (!bound) throw Error(ErrorCode::UnboundVariable, "unbound type variable '" + cur->var_name() + "'");
            cur = bound;
            continue;
        }
        if (cur->is_top()) return nullptr;
        if (cur->is_shape()) return &cur->as_shape();
        if (cur->is_abstract()) return &cur->as_abstract().shape;
        cur = &cur->as_hash().base;
    }
    throw Error(ErrorCode::UnboundVariable, "variable bounds do not reach a component type");
}

Kind kind_of(const ComponentType& t, const Context& gamma)
{
    const ComponentType* cur = &t;
    for (int steps = 0; steps < kMaxPromotions; ++steps) {
        if (cur->is_var()) {
            const ComponentType* bound = gamma.lookup(cur->var_name());
            if (!bound) throw Error(ErrorCode::UnboundVariable, "unbound type variable '" + cur->var_name() + "'");
            cur = bound;
            continue;
        }
        if (cur->is_top()) return cur->top_kind();
        const Shape* s = shape_of(*cur, gamma);
        return s->kind;
    }
    throw Error(ErrorCode::UnboundVariable, "variable bounds do not reach a component type");
}

bool is_h_form(const ComponentType& t)
{
    return t.is_var() || t.is_top() || t.is_hash() || t.is_shape();
}

std::string top_name(Kind kind) { return "Top_" + std::string(kind_keyword(kind)); }

namespace {

void render_into(std::ostream& out, const ComponentType& t, bool nominal);

void render_slots(std::ostream& out, const std::vector<InnerSlot>& slots)
{
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (i) out << ", ";
        out << slots[i].label << ": ";
        render_into(out, slots[i].type, true);
    }
}

void render_shape_into(std::ostream& out, const Shape& s)
{
    out << kind_keyword(s.kind) << " • <";
    render_slots(out, s.public_inners);
    out << "> -> <";
    render_slots(out, s.private_inners);
    out << ';';
    for (std::size_t u = 0; u < s.units.size(); ++u) {
        const auto& unit = s.units[u];
        out << (u ? ", " : " ") << unit.name << ": <{";
        bool first = true;
        for (const auto& [slice, target] : unit.sigma) {
            if (!first) out << ", ";
            out << slice << " -> " << target.inner << '.' << target.unit;
            first = false;
        }
        out << "}, " << unit.trace.render() << '>';
    }
    out << '>';
}

void render_into(std::ostream& out, const ComponentType& t, bool nominal)
{
    if (t.is_var()) {
        out << t.var_name();
    } else if (t.is_top()) {
        out << top_name(t.top_kind());
    } else if (t.is_shape()) {
        const Shape& s = t.as_shape();
        if (nominal && !s.origin.empty()) {
            out << s.origin;
        } else if (nominal) {
            out << '(';
            render_shape_into(out, s);
            out << ')';
        } else {
            render_shape_into(out, s);
        }
    } else if (t.is_abstract()) {
        const AbstractType& a = t.as_abstract();
        if (nominal && !a.shape.origin.empty()) {
            out << a.shape.origin;
            return;
        }
        if (nominal) out << '(';
        out << '[';
        for (std::size_t i = 0; i < a.bounds.size(); ++i) {
            if (i) out << ", ";
            out << a.bounds[i].var << " <: ";
            render_into(out, a.bounds[i].bound, true);
        }
        out << "] |> ";
        render_shape_into(out, a.shape);
        if (nominal) out << ')';
    } else {
        const HashType& h = t.as_hash();
        render_into(out, h.base, true);
        out << " <| [";
        for (std::size_t i = 0; i < h.args.size(); ++i) {
            if (i) out << ", ";
            render_into(out, h.args[i], true);
        }
        out << ']';
        if (!h.supplied.empty()) {
            out << " (";
            for (std::size_t i = 0; i < h.supplied.size(); ++i) {
                if (i) out << ", ";
                out << h.supplied[i].label << " := ";
                render_into(out, h.supplied[i].type, true);
            }
            out << ')';
        }
    }
}

}  // namespace

std::string render(const ComponentType& t)
{
    std::ostringstream out;
    render_into(out, t, false);
    return out.str();
}

std::string render_nominal(const ComponentType& t)
{
    std::ostringstream out;
    render_into(out, t, true);
    return out.str();
}

std::string render_shape(const Shape& s)
{
    std::ostringstream out;
    render_shape_into(out, s);
    return out.str();
}

}  // namespace hashcl

namespace hashcl {

namespace {

Shape move_to_private(Shape s, const std::string& label, const ComponentType& type)
{
    for (auto it = s.public_inners.begin(); it != s.public_inners.end(); ++it) {
        if (it->label == label) {
            s.public_inners.erase(it);
            s.private_inners.insert(s.private_inners.begin(), InnerSlot{label, type});
            return s;
        }
    }
    throw Error(ErrorCode::UnknownInner, "'" + label + "' is not a public inner of " +
                                             (s.origin.empty() ? std::string("the component") : s.origin));
}

}  // namespace

ComponentType supply_inner(const ComponentType& base, const std::string& label, const ComponentType& type)
{
    if (base.is_shape()) return ComponentType::shape(move_to_private(base.as_shape(), label, type));
    if (!base.is_abstract()) {
        throw Error(ErrorCode::UnknownInner, "cannot supply inner '" + label + "' to " + render_nominal(base));
    }
    const AbstractType& a = base.as_abstract();
    auto incoming = free_vars(type);
    std::set<std::string> avoid = incoming;
    for (const auto& b : a.bounds) avoid.insert(b.var);

    AbstractType out;
    Substitution renaming;
    for (const auto& b : a.bounds) {
        Bound nb{b.var, substitute(b.bound, renaming)};
        if (incoming.count(b.var)) {
            nb.var = fresh_name(b.var, avoid);
            avoid.insert(nb.var);
            renaming.insert_or_assign(b.var, ComponentType::var(nb.var));
        }
        out.bounds.push_back(std::move(nb));
    }
    Shape shape = a.shape;
    if (!renaming.empty()) {
        for (auto& i : shape.public_inners) i.type = substitute(i.type, renaming);
        for (auto& i : shape.private_inners) i.type = substitute(i.type, renaming);
    }
    out.shape = move_to_private(std::move(shape), label, type);
    return ComponentType::abstract(std::move(out));
}

}  // namespace hashcl
