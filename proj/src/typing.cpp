// SPDX-License-Identifier: Apache-2.0
#include "typing.hpp"

#include <map>
#include <set>

namespace hashcl {

std::string Obligation::render() const { return render_nominal(sub) + " <: " + render_nominal(sup); }

BoundViolationError::BoundViolationError(std::string message, std::size_t index, SubtypeTrace trace, SourcePos pos)
    : Error(ErrorCode::BoundViolation, std::move(message), pos), index_(index), trace_(std::move(trace))
{
}

namespace {

void append(std::vector<Obligation>& into, std::vector<Obligation>&& from)
{
    for (auto& o : from) into.push_back(std::move(o));
}

const AbstractConfig& require_abstract(const TypeRef& ref, const ConfigLookup& lookup)
{
    const AbstractConfig* cfg = lookup.find_abstract(ref.name);
    if (!cfg) throw Error(ErrorCode::UnknownConfig, "unknown configuration '" + ref.name + "'", ref.pos);
    return *cfg;
}

}  // namespace

TypingResult type_ref(const TypeRef& ref, const Context& gamma, const ConfigLookup& lookup)
{
    if (ref.is_variable()) {
        if (!gamma.contains(ref.name)) {
            throw Error(ErrorCode::FreeVariable, "variable '" + ref.name + "' is not bound in this context", ref.pos);
        }
        return {ComponentType::var(ref.name), {}};
    }
    // Standalone expressions carry no scope: a bare name bound in gamma is that variable.
    if (ref.args.empty() && !ref.replication && gamma.contains(ref.name)) return {ComponentType::var(ref.name), {}};
    if (const AbstractConfig* cfg = lookup.find_abstract(ref.name)) {
        if (cfg->params.size() != ref.args.size()) {
            throw Error(ErrorCode::ArityMismatch,
                        ref.name + " expects " + std::to_string(cfg->params.size()) + " argument(s), got " +
                            std::to_string(ref.args.size()),
                        ref.pos);
        }
        if (cfg->params.empty()) return {lookup.abstract_type(ref.name), {}};
        return type_apply(ref, gamma, lookup);
    }
    if (ref.args.empty()) {
        if (auto k = parse_top_reference(ref.name)) return {ComponentType::top(*k), {}};
    }
    throw Error(ErrorCode::UnknownConfig, "unknown configuration '" + ref.name + "'", ref.pos);
}

TypingResult type_apply(const TypeRef& target, const Context& gamma, const ConfigLookup& lookup)
{
    if (target.is_variable()) {
        throw Error(ErrorCode::NotAnAbstractTarget, "'" + target.name + "' is a variable, not a configuration",
                    target.pos);
    }
    const AbstractConfig& cfg = require_abstract(target, lookup);
    if (cfg.params.size() != target.args.size()) {
        throw Error(ErrorCode::ArityMismatch,
                    target.name + " expects " + std::to_string(cfg.params.size()) + " argument(s), got " +
                        std::to_string(target.args.size()),
                    target.pos);
    }
    ComponentType base = lookup.abstract_type(target.name);
    TypingResult out{base, {}};
    if (!base.is_abstract()) {
        out.type = ComponentType::hash(HashType{base, {}, {}});
        return out;
    }
    const AbstractType& abs = base.as_abstract();

    HashType h{base, {}, {}};
    Substitution earlier;
    for (std::size_t i = 0; i < abs.bounds.size(); ++i) {
        TypingResult arg = type_ref(target.args[i], gamma, lookup);
        append(out.obligations, std::move(arg.obligations));
        ComponentType bound = substitute(abs.bounds[i].bound, earlier);
        SubtypeResult r = is_subtype(gamma, arg.type, bound, lookup);
        if (!r.holds) {
            throw BoundViolationError("argument " + std::to_string(i + 1) + " of " + target.name + ": " +
                                          render_nominal(arg.type) + " is not a subtype of " + render_nominal(bound),
                                      i + 1, std::move(r.trace), target.args[i].pos);
        }
        out.obligations.push_back({"argument " + std::to_string(i + 1) + " of " + target.name, arg.type, bound});
        earlier.insert_or_assign(abs.bounds[i].var, arg.type);
        h.args.push_back(std::move(arg.type));
    }
    out.type = ComponentType::hash(std::move(h));
    return out;
}

namespace {

TypingResult supply_types(const TypeRef& target, const std::vector<ComponentType>& supplied,
                          const std::vector<SourcePos>& positions, const Context& gamma, const ConfigLookup& lookup)
{
    const AbstractConfig& cfg = require_abstract(target, lookup);
    TypingResult out = type_apply(target, gamma, lookup);
    if (supplied.empty()) return out;
    if (supplied.size() != cfg.public_inners.size()) {
        throw Error(ErrorCode::SupplyArityMismatch,
                    target.name + " has " + std::to_string(cfg.public_inners.size()) + " public inner(s), " +
                        std::to_string(supplied.size()) + " supplied",
                    target.pos);
    }
    HashType h = out.type.as_hash();

    // Inner types of the applied component, seen from the current context.
    Substitution actuals;
    if (h.base.is_abstract()) {
        const auto& bounds = h.base.as_abstract().bounds;
        for (std::size_t i = 0; i < bounds.size(); ++i) actuals.insert_or_assign(bounds[i].var, h.args[i]);
    }
    const Shape* shape = shape_of(h.base, Context{});
    for (std::size_t i = 0; i < supplied.size(); ++i) {
        const std::string& label = cfg.public_inners[i];
        const InnerSlot* slot = shape->find_inner(label);
        ComponentType expected = substitute(slot->type, actuals);
        SubtypeResult r = is_subtype(gamma, supplied[i], expected, lookup);
        if (!r.holds) {
            throw BoundViolationError("supplied inner " + std::to_string(i + 1) + " (" + label + ") of " +
                                          target.name + ": " + render_nominal(supplied[i]) +
                                          " is not a subtype of " + render_nominal(expected),
                                      i + 1, std::move(r.trace), i < positions.size() ? positions[i] : target.pos);
        }
        out.obligations.push_back({"supplied inner " + label + " of " + target.name, supplied[i], expected});
    }
    for (std::size_t i = 0; i < supplied.size(); ++i) {
        h.base = supply_inner(h.base, cfg.public_inners[i], supplied[i]);
        h.supplied.push_back({cfg.public_inners[i], supplied[i]});
    }
    out.type = ComponentType::hash(std::move(h));
    return out;
}

}  // namespace

TypingResult type_supply(const TypeRef& target, const std::vector<TypeRef>& supplied, const Context& gamma,
                         const ConfigLookup& lookup)
{
    std::vector<ComponentType> types;
    std::vector<SourcePos> positions;
    std::vector<Obligation> pending;
    for (const auto& s : supplied) {
        TypingResult r = type_ref(s, gamma, lookup);
        append(pending, std::move(r.obligations));
        types.push_back(std::move(r.type));
        positions.push_back(s.pos);
    }
    TypingResult out = supply_types(target, types, positions, gamma, lookup);
    pending.insert(pending.end(), out.obligations.begin(), out.obligations.end());
    out.obligations = std::move(pending);
    return out;
}

TypingResult type_abstract(const AbstractConfig& cfg, const Context& gamma, const ConfigLookup& lookup)
{
    TypingResult out{ComponentType::top(cfg.kind), {}};
    Context inner_ctx = gamma;
    std::vector<Bound> bounds;
    std::set<std::string> seen_vars;
    for (const auto& p : cfg.params) {
        if (!seen_vars.insert(p.var).second) {
            throw Error(ErrorCode::MalformedConfig, "duplicate context parameter '" + p.var + "'", p.pos);
        }
        TypingResult b = type_ref(p.bound, inner_ctx, lookup);
        append(out.obligations, std::move(b.obligations));
        inner_ctx.push({p.var, b.type});
        bounds.push_back({p.var, b.type});
    }

    Shape shape;
    shape.origin = cfg.name;
    shape.kind = cfg.kind;

    std::map<std::string, ComponentType> inner_types;
    for (const auto& inner : cfg.inners) {
        if (inner_types.count(inner.id)) {
            throw Error(ErrorCode::MalformedConfig, "duplicate inner component '" + inner.id + "'", inner.pos);
        }
        TypingResult t = [&] {
            if (inner.supplied.empty()) return type_ref(inner.type, inner_ctx, lookup);
            if (inner.type.is_variable()) {
                throw Error(ErrorCode::NotAnAbstractTarget,
                            "inner '" + inner.id + "' supplies inners to a variable type", inner.pos);
            }
            std::vector<TypeRef> supplied;
            for (const auto& id : inner.supplied) {
                const InnerDecl* sibling = cfg.find_inner(id);
                if (!sibling || id == inner.id) {
                    throw Error(ErrorCode::UnknownInner,
                                "inner '" + inner.id + "' supplies unknown inner '" + id + "'", inner.pos);
                }
                supplied.push_back(sibling->type);
            }
            return type_supply(inner.type, supplied, inner_ctx, lookup);
        }();
        Kind k = kind_of(t.type, inner_ctx);
        if (k != inner.kind) {
            throw Error(ErrorCode::KindMismatch,
                        "inner '" + inner.id + "' is declared " + std::string(kind_keyword(inner.kind)) +
                            " but its type has kind " + std::string(kind_keyword(k)),
                        inner.pos);
        }
        append(out.obligations, std::move(t.obligations));
        inner_types.insert_or_assign(inner.id, t.type);
    }

    for (const auto& id : cfg.public_inners) {
        auto it = inner_types.find(id);
        if (it == inner_types.end()) {
            throw Error(ErrorCode::UnknownInner, "public inner '" + id + "' is not declared", cfg.pos);
        }
        shape.public_inners.push_back({id, it->second});
    }
    for (const auto& inner : cfg.inners) {
        if (!cfg.is_public(inner.id)) shape.private_inners.push_back({inner.id, inner_types.at(inner.id)});
    }

    std::set<std::string> covered;
    std::set<std::string> unit_names;
    for (const auto& unit : cfg.units) {
        if (!unit_names.insert(unit.name).second) {
            throw Error(ErrorCode::MalformedConfig, "duplicate unit '" + unit.name + "'", unit.pos);
        }
        UnitSig sig{unit.name, {}, TraceLang::universal({})};
        Alphabet dom;
        for (const auto& slice : unit.slices) {
            auto it = inner_types.find(slice.inner);
            if (it == inner_types.end()) {
                throw Error(ErrorCode::UnknownInner,
                            "slice '" + slice.id + "' refers to undeclared inner '" + slice.inner + "'", slice.pos);
            }
            const Shape* target = shape_of(it->second, inner_ctx);
            if (!target || !target->find_unit(slice.unit)) {
                throw Error(ErrorCode::UnknownUnit,
                            "'" + slice.unit + "' is not a unit of inner '" + slice.inner + "' (" +
                                render_nominal(it->second) + ")",
                            slice.pos);
            }
            if (!sig.sigma.emplace(slice.id, SliceTarget{slice.inner, slice.unit}).second) {
                throw Error(ErrorCode::MalformedConfig, "duplicate slice '" + slice.id + "' in unit " + unit.name,
                            slice.pos);
            }
            dom.insert(slice.id);
            covered.insert(slice.inner);
        }
        if (unit.action) {
            for (const auto& sym : unit.action->occurring_symbols()) {
                if (!dom.count(sym)) {
                    throw Error(ErrorCode::MalformedConfig,
                                "action of unit '" + unit.name + "' mentions '" + sym + "', which is not a slice",
                                unit.pos);
                }
            }
            sig.trace = TraceLang(*unit.action, dom);
        } else {
            sig.trace = TraceLang::universal(dom);
        }
        shape.units.push_back(std::move(sig));
    }
    for (const auto& inner : cfg.inners) {
        if (!covered.count(inner.id)) {
            throw Error(ErrorCode::UncoveredInner, "inner '" + inner.id + "' is not sliced by any unit", inner.pos);
        }
    }

    if (bounds.empty()) {
        out.type = ComponentType::shape(std::move(shape));
    } else {
        out.type = ComponentType::abstract(AbstractType{std::move(bounds), std::move(shape)});
    }
    return out;
}

namespace {

TypeRef specialize(const TypeRef& ref, const std::map<std::string, TypeRef>& bounds)
{
    if (ref.is_variable()) {
        auto it = bounds.find(ref.name);
        return it == bounds.end() ? ref : it->second;
    }
    TypeRef out = ref;
    for (auto& a : out.args) a = specialize(a, bounds);
    return out;
}

}  // namespace

TypeRef specialized_target(const ConcreteConfig& cfg)
{
    std::map<std::string, TypeRef> bounds;
    for (const auto& p : cfg.params) bounds.insert_or_assign(p.var, specialize(p.bound, bounds));
    return specialize(cfg.implements, bounds);
}

TypingResult type_concrete(const ConcreteConfig& cfg, const ConfigLookup& lookup)
{
    if (cfg.implements.is_variable() || !lookup.find_abstract(cfg.implements.name)) {
        throw Error(ErrorCode::NotAnAbstractTarget,
                    "'" + cfg.implements.name + "' is not a registered abstract configuration", cfg.implements.pos);
    }
    const AbstractConfig& target = *lookup.find_abstract(cfg.implements.name);
    if (target.kind != cfg.kind) {
        throw Error(ErrorCode::KindMismatch,
                    cfg.name + " is " + std::string(kind_keyword(cfg.kind)) + " but implements " + target.name +
                        " of kind " + std::string(kind_keyword(target.kind)),
                    cfg.pos);
    }

    // Parameter bounds must themselves be well typed.
    Context gamma;
    std::set<std::string> seen;
    std::vector<Obligation> obligations;
    for (const auto& p : cfg.params) {
        if (!seen.insert(p.var).second) {
            throw Error(ErrorCode::MalformedConfig, "duplicate context parameter '" + p.var + "'", p.pos);
        }
        TypingResult b = type_ref(p.bound, gamma, lookup);
        append(obligations, std::move(b.obligations));
        gamma.push({p.var, b.type});
    }
    for (const auto& a : cfg.implements.args) type_ref(a, gamma, lookup);

    std::set<std::string> abstract_units;
    for (const auto& u : target.units) abstract_units.insert(u.name);
    std::set<std::string> concrete_units;
    for (const auto& u : cfg.units) {
        if (!abstract_units.count(u.name)) {
            throw Error(ErrorCode::UnknownUnit, "'" + u.name + "' is not a unit of " + target.name, u.pos);
        }
        concrete_units.insert(u.name);
    }
    for (const auto& name : abstract_units) {
        if (!concrete_units.count(name)) {
            throw Error(ErrorCode::MalformedConfig, cfg.name + " does not implement unit '" + name + "'", cfg.pos);
        }
    }

    TypingResult out = type_apply(specialized_target(cfg), Context{}, lookup);
    obligations.insert(obligations.end(), out.obligations.begin(), out.obligations.end());
    out.obligations = std::move(obligations);
    return out;
}

}  // namespace hashcl
