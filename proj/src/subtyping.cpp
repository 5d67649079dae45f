// SPDX-License-Identifier: Apache-2.0
#include "subtyping.hpp"

#include <set>
#include <sstream>

#include "diagnostics.hpp"

namespace hashcl {

ComponentType EmptyLookup::abstract_type(const std::string& name) const
{
    throw Error(ErrorCode::UnknownConfig, "unknown configuration '" + name + "'");
}

std::string SubtypeTrace::render() const
{
    std::ostringstream out;
    auto walk = [&](const auto& self, const SubtypeTrace& node, int depth) -> void {
        out << std::string(static_cast<std::size_t>(depth) * 2, ' ') << '[' << node.rule << "] " << node.conclusion;
        if (!node.holds) out << "  FAILED: " << node.reason;
        out << '\n';
        for (const auto& p : node.premises) self(self, p, depth + 1);
    };
    walk(walk, *this, 0);
    return out.str();
}

std::optional<ComponentType> promote_nominal(const ComponentType& t, const ConfigLookup& lookup)
{
    if (t.is_var() || t.is_top()) return std::nullopt;
    const std::string& name = t.origin();
    if (name.empty()) return std::nullopt;
    auto parent = lookup.parent_of(name);
    if (!parent) {
        const Shape* s = t.is_hash() ? nullptr : (t.is_shape() ? &t.as_shape() : &t.as_abstract().shape);
        if (!s) {
            const ComponentType* base = &t.as_hash().base;
            s = base->is_shape() ? &base->as_shape() : &base->as_abstract().shape;
        }
        return ComponentType::top(s->kind);
    }
    ComponentType parent_type = lookup.abstract_type(*parent);
    if (!t.is_hash()) return parent_type;
    const HashType& h = t.as_hash();
    HashType out{parent_type, h.args, h.supplied};
    for (const auto& sup : h.supplied) out.base = supply_inner(out.base, sup.label, sup.type);
    return ComponentType::hash(std::move(out));
}

namespace {

constexpr int kMaxDepth = 4096;

class Checker {
public:
    Checker(const ConfigLookup& lookup, bool tracing) : lookup_(lookup), tracing_(tracing) {}

    bool sub(const Context& gamma, const ComponentType& s, const ComponentType& t, SubtypeTrace* out, int depth);
    bool shape(const Context& gamma, const Shape& s1, const Shape& s2, SubtypeTrace* out, int depth);

private:
    void conclude(SubtypeTrace* out, const char* rule, const std::string& conclusion)
    {
        if (out) {
            out->rule = rule;
            out->conclusion = conclusion;
        }
    }
    bool fail(SubtypeTrace* out, std::string reason)
    {
        if (out) {
            out->holds = false;
            out->reason = std::move(reason);
        }
        return false;
    }
    SubtypeTrace* premise(SubtypeTrace* out)
    {
        if (!out) return nullptr;
        out->premises.emplace_back();
        return &out->premises.back();
    }
    std::string judgement(const ComponentType& s, const ComponentType& t) const
    {
        return tracing_ ? render_nominal(s) + " <: " + render_nominal(t) : std::string();
    }
    std::string shape_name(const Shape& s) const
    {
        return s.origin.empty() ? "(" + render_shape(s) + ")" : s.origin;
    }

    const ConfigLookup& lookup_;
    bool tracing_;
};

bool Checker::sub(const Context& gamma, const ComponentType& s, const ComponentType& t, SubtypeTrace* out,
                  int depth)
{
    if (depth > kMaxDepth) throw Error(ErrorCode::MalformedConfig, "subtyping derivation too deep");
    if (s == t) {
        conclude(out, "Reflexive", judgement(s, t));
        return true;
    }
    if (t.is_top()) {
        conclude(out, "Top", judgement(s, t));
        Kind k = kind_of(s, gamma);
        if (k == t.top_kind()) return true;
        return fail(out, "kind " + std::string(kind_keyword(k)) + " is not " + std::string(kind_keyword(t.top_kind())));
    }
    if (s.is_var()) {
        const ComponentType* bound = gamma.lookup(s.var_name());
        if (!bound) throw Error(ErrorCode::UnboundVariable, "unbound type variable '" + s.var_name() + "'");
        conclude(out, "Promote", judgement(s, t));
        if (sub(gamma, *bound, t, premise(out), depth + 1)) return true;
        return fail(out, "bound of " + s.var_name() + " is not a subtype");
    }
    if (s.is_top()) {
        conclude(out, "Top", judgement(s, t));
        return fail(out, "a Top type is only a subtype of itself");
    }
    if (t.is_var()) {
        if (!gamma.contains(t.var_name())) {
            throw Error(ErrorCode::UnboundVariable, "unbound type variable '" + t.var_name() + "'");
        }
        conclude(out, "Reflexive", judgement(s, t));
        return fail(out, "only " + t.var_name() + " itself is below the variable " + t.var_name());
    }

    const std::string& ns = s.origin();
    const std::string& nt = t.origin();
    if (!ns.empty() && !nt.empty() && ns != nt) {
        conclude(out, "Hierarchy", judgement(s, t));
        if (!lookup_.parent_of(ns)) {
            return fail(out, ns + " does not extend " + nt);
        }
        auto up = promote_nominal(s, lookup_);
        if (sub(gamma, *up, t, premise(out), depth + 1)) return true;
        return fail(out, "parent of " + ns + " is not a subtype");
    }

    // Parameterless applications compare through their base.
    if (s.is_hash() && !t.is_hash() && s.as_hash().args.empty()) {
        conclude(out, "#-Component", judgement(s, t));
        if (sub(gamma, s.as_hash().base, t, premise(out), depth + 1)) return true;
        return fail(out, "base is not a subtype");
    }
    if (t.is_hash() && !s.is_hash() && t.as_hash().args.empty()) {
        conclude(out, "#-Component", judgement(s, t));
        if (sub(gamma, s, t.as_hash().base, premise(out), depth + 1)) return true;
        return fail(out, "base is not a subtype");
    }

    if (s.is_hash() && t.is_hash()) {
        const HashType& hs = s.as_hash();
        const HashType& ht = t.as_hash();
        conclude(out, "#-Component", judgement(s, t));
        if (hs.args.size() != ht.args.size()) {
            return fail(out, "argument counts differ (" + std::to_string(hs.args.size()) + " vs " +
                                 std::to_string(ht.args.size()) + ")");
        }
        if (!sub(gamma, hs.base, ht.base, premise(out), depth + 1)) return fail(out, "bases are not related");
        for (std::size_t i = 0; i < hs.args.size(); ++i) {
            if (!sub(gamma, ht.args[i], hs.args[i], premise(out), depth + 1)) {
                return fail(out, "argument " + std::to_string(i + 1) + " violates contravariance");
            }
        }
        return true;
    }
    if (s.is_abstract() && t.is_abstract()) {
        const AbstractType& as = s.as_abstract();
        const AbstractType& at = t.as_abstract();
        conclude(out, "Abstract Component", judgement(s, t));
        if (as.bounds != at.bounds) return fail(out, "bound lists differ");
        Context inner = gamma.extended(as.bounds);
        if (shape(inner, as.shape, at.shape, premise(out), depth + 1)) return true;
        return fail(out, "shapes are not related");
    }
    if (s.is_shape() && t.is_shape()) return shape(gamma, s.as_shape(), t.as_shape(), out, depth);

    conclude(out, "Shape", judgement(s, t));
    return fail(out, "incompatible type forms");
}

bool Checker::shape(const Context& gamma, const Shape& s1, const Shape& s2, SubtypeTrace* out, int depth)
{
    if (out) {
        out->rule = "Shape";
        if (tracing_) out->conclusion = shape_name(s1) + " <: " + shape_name(s2);
    }
    if (s1.kind != s2.kind) {
        return fail(out, "kinds differ: " + std::string(kind_keyword(s1.kind)) + " vs " +
                             std::string(kind_keyword(s2.kind)));
    }

    auto labels = [](const std::vector<InnerSlot>& slots) {
        std::set<std::string> out;
        for (const auto& s : slots) out.insert(s.label);
        return out;
    };
    auto pub1 = labels(s1.public_inners);
    auto pub2 = labels(s2.public_inners);
    if (pub1 != pub2) return fail(out, "public inner labels differ");

    auto all1 = pub1;
    auto priv1 = labels(s1.private_inners);
    all1.insert(priv1.begin(), priv1.end());
    for (const auto& slot : s2.private_inners) {
        if (!all1.count(slot.label)) return fail(out, "inner '" + slot.label + "' missing in subtype");
    }

    if (s1.units.size() != s2.units.size()) return fail(out, "unit counts differ");
    for (const auto& u2 : s2.units) {
        const UnitSig* u1 = s1.find_unit(u2.name);
        if (!u1) return fail(out, "unit '" + u2.name + "' missing in subtype");
        Alphabet dom2;
        for (const auto& [slice, target] : u2.sigma) {
            dom2.insert(slice);
            auto it = u1->sigma.find(slice);
            if (it == u1->sigma.end() || it->second != target) {
                return fail(out, "unit '" + u2.name + "': slice '" + slice + "' -> " + target.inner + "." +
                                     target.unit + " not present in subtype");
            }
        }
        auto cex = inclusion_counterexample(project(u1->trace, dom2), u2.trace);
        if (cex) {
            return fail(out, "unit '" + u2.name + "': trace " + render_word(*cex) + " not allowed by supertype");
        }
    }

    for (const auto& slot2 : s2.public_inners) {
        const InnerSlot* slot1 = s1.find_inner(slot2.label);
        if (!sub(gamma, slot2.type, slot1->type, premise(out), depth + 1)) {
            return fail(out, "public inner '" + slot2.label + "' violates contravariance");
        }
    }
    for (const auto& slot2 : s2.private_inners) {
        const InnerSlot* slot1 = s1.find_inner(slot2.label);
        if (s1.is_public(slot2.label)) return fail(out, "inner '" + slot2.label + "' changes visibility");
        if (!sub(gamma, slot1->type, slot2.type, premise(out), depth + 1)) {
            return fail(out, "private inner '" + slot2.label + "' is not covariant");
        }
    }
    return true;
}

}  // namespace

SubtypeResult is_subtype(const Context& gamma, const ComponentType& left, const ComponentType& right,
                         const ConfigLookup& lookup)
{
    SubtypeResult r;
    Checker c(lookup, true);
    r.holds = c.sub(gamma, left, right, &r.trace, 0);
    return r;
}

bool check_subtype(const Context& gamma, const ComponentType& left, const ComponentType& right,
                   const ConfigLookup& lookup)
{
    Checker c(lookup, false);
    return c.sub(gamma, left, right, nullptr, 0);
}

SubtypeResult shape_subtype(const Context& gamma, const Shape& s1, const Shape& s2, const ConfigLookup& lookup)
{
    SubtypeResult r;
    Checker c(lookup, true);
    r.holds = c.shape(gamma, s1, s2, &r.trace, 0);
    return r;
}

}  // namespace hashcl
