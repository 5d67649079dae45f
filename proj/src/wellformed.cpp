// SPDX-License-Identifier: Apache-2.0
#include "wellformed.hpp"

#include <map>
#include <optional>
#include <set>
#include <tuple>

namespace hashcl {

namespace {

class Checker {
public:
    Checker(const std::vector<Param>& params, const ConfigLookup& lookup) : params_(params), lookup_(lookup) {}

    void report(DiagCode code, std::string message, SourcePos pos)
    {
        diags_.push_back({code, Severity::Error, std::move(message), pos});
    }

    // Variables must be parameters declared before `limit` (all when npos).
    void check_ref(const TypeRef& ref, std::size_t limit)
    {
        if (ref.is_variable()) {
            std::size_t idx = param_index(ref.name);
            if (idx == npos || (limit != npos && idx >= limit)) {
                report(DiagCode::FreeVariable, "variable '" + ref.name + "' is not a declared context parameter",
                       ref.pos);
            }
            return;
        }
        if (const AbstractConfig* target = lookup_.find_abstract(ref.name)) {
            if (target->params.size() != ref.args.size()) {
                report(DiagCode::TypeError,
                       ref.name + " expects " + std::to_string(target->params.size()) + " argument(s), got " +
                           std::to_string(ref.args.size()),
                       ref.pos);
            }
        } else if (!(ref.args.empty() && parse_top_reference(ref.name))) {
            report(DiagCode::UnknownConfig, "unknown configuration '" + ref.name + "'", ref.pos);
        }
        for (const auto& a : ref.args) check_ref(a, limit);
    }

    // Kind and unit names of the configuration a reference denotes.
    std::optional<Kind> kind_of_ref(const TypeRef& ref, int depth = 0) const
    {
        if (depth > 64) return std::nullopt;
        if (ref.is_variable()) {
            std::size_t idx = param_index(ref.name);
            if (idx == npos) return std::nullopt;
            return kind_of_ref(params_[idx].bound, depth + 1);
        }
        if (const AbstractConfig* target = lookup_.find_abstract(ref.name)) return target->kind;
        if (ref.args.empty()) return parse_top_reference(ref.name);
        return std::nullopt;
    }

    const AbstractConfig* config_of_ref(const TypeRef& ref, int depth = 0) const
    {
        if (depth > 64) return nullptr;
        if (ref.is_variable()) {
            std::size_t idx = param_index(ref.name);
            return idx == npos ? nullptr : config_of_ref(params_[idx].bound, depth + 1);
        }
        return lookup_.find_abstract(ref.name);
    }

    std::vector<Diagnostic> take() { return std::move(diags_); }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    std::size_t param_index(const std::string& var) const
    {
        for (std::size_t i = 0; i < params_.size(); ++i) {
            if (params_[i].var == var) return i;
        }
        return npos;
    }

    const std::vector<Param>& params_;
    const ConfigLookup& lookup_;
    std::vector<Diagnostic> diags_;
};

void check_params(Checker& c, const std::vector<Param>& params)
{
    std::set<std::string> vars;
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (!vars.insert(params[i].var).second) {
            c.report(DiagCode::DuplicateName, "context parameter '" + params[i].var + "' declared twice",
                     params[i].pos);
        }
        c.check_ref(params[i].bound, i);
    }
}

}  // namespace

std::vector<Diagnostic> check_wellformed(const AbstractConfig& cfg, const ConfigLookup& lookup)
{
    Checker c(cfg.params, lookup);
    check_params(c, cfg.params);

    std::map<std::string, const InnerDecl*> inners;
    for (const auto& inner : cfg.inners) {
        if (!inners.emplace(inner.id, &inner).second) {
            c.report(DiagCode::DuplicateName, "inner component '" + inner.id + "' declared twice", inner.pos);
        }
    }
    std::set<std::string> publics;
    for (const auto& id : cfg.public_inners) {
        if (!publics.insert(id).second) c.report(DiagCode::DuplicateName, "public inner '" + id + "' listed twice", cfg.pos);
        if (!inners.count(id)) {
            c.report(DiagCode::PublicInnerNotDeclared, "public inner '" + id + "' is not a declared inner component",
                     cfg.pos);
        }
    }

    for (const auto& inner : cfg.inners) {
        c.check_ref(inner.type, Checker::npos);
        if (auto k = c.kind_of_ref(inner.type); k && *k != inner.kind) {
            c.report(DiagCode::InnerKindMismatch,
                     "inner '" + inner.id + "' is declared " + std::string(kind_keyword(inner.kind)) +
                         " but its type has kind " + std::string(kind_keyword(*k)),
                     inner.pos);
        }
        if (inner.supplied.empty()) continue;
        const AbstractConfig* target = inner.type.is_variable() ? nullptr : lookup.find_abstract(inner.type.name);
        if (target && target->public_inners.size() != inner.supplied.size()) {
            c.report(DiagCode::SupplyArityMismatch,
                     "inner '" + inner.id + "' supplies " + std::to_string(inner.supplied.size()) + " inner(s), " +
                         target->name + " has " + std::to_string(target->public_inners.size()) + " public inner(s)",
                     inner.pos);
        }
        for (std::size_t j = 0; j < inner.supplied.size(); ++j) {
            const std::string& id = inner.supplied[j];
            auto sibling = inners.find(id);
            if (sibling == inners.end() || id == inner.id) {
                c.report(DiagCode::UnknownInner, "inner '" + inner.id + "' supplies unknown inner '" + id + "'",
                         inner.pos);
                continue;
            }
            if (!target || j >= target->public_inners.size()) continue;
            const InnerDecl* expected = target->find_inner(target->public_inners[j]);
            if (expected && expected->kind != sibling->second->kind) {
                c.report(DiagCode::SupplyKindMismatch,
                         "inner '" + id + "' (" + std::string(kind_keyword(sibling->second->kind)) + ") supplied for " +
                             target->name + "." + expected->id + " (" + std::string(kind_keyword(expected->kind)) +
                             ")",
                         inner.pos);
            }
        }
    }

    // Exactly-once rule, counted per (inner, unit, index).
    std::map<std::tuple<std::string, std::string, std::string>, int> uses;
    std::set<std::string> unit_names;
    for (const auto& unit : cfg.units) {
        if (!unit_names.insert(unit.name).second) {
            c.report(DiagCode::DuplicateName, "unit '" + unit.name + "' declared twice", unit.pos);
        }
        std::set<std::string> slice_ids;
        for (const auto& slice : unit.slices) {
            if (!slice_ids.insert(slice.id).second) {
                c.report(DiagCode::DuplicateName, "slice '" + slice.id + "' declared twice in unit " + unit.name,
                         slice.pos);
            }
            auto inner = inners.find(slice.inner);
            if (inner == inners.end()) {
                c.report(DiagCode::UnknownInner,
                         "slice '" + slice.id + "' refers to undeclared inner '" + slice.inner + "'", slice.pos);
                continue;
            }
            const AbstractConfig* target = c.config_of_ref(inner->second->type);
            if (!target && !c.kind_of_ref(inner->second->type)) continue;
            if (!target || !target->find_unit(slice.unit)) {
                c.report(DiagCode::UnknownUnit,
                         "'" + slice.unit + "' is not a unit of inner '" + slice.inner + "'", slice.pos);
                continue;
            }
            auto key = std::make_tuple(slice.inner, slice.unit, slice.index.value_or(""));
            if (++uses[key] == 2) {
                c.report(DiagCode::DuplicateSliceTarget,
                         slice.inner + "." + slice.unit + (slice.index ? "[" + *slice.index + "]" : "") +
                             " is sliced more than once",
                         slice.pos);
            }
        }
        if (unit.action) {
            for (const auto& sym : unit.action->occurring_symbols()) {
                if (!slice_ids.count(sym)) {
                    c.report(DiagCode::ActionSymbolNotSliced,
                             "action of unit '" + unit.name + "' mentions '" + sym + "', which is not a slice",
                             unit.pos);
                }
            }
        }
    }
    for (const auto& inner : cfg.inners) {
        const AbstractConfig* target = c.config_of_ref(inner.type);
        if (!target) continue;
        for (const auto& u : target->units) {
            bool used = false;
            for (const auto& [key, n] : uses) {
                if (std::get<0>(key) == inner.id && std::get<1>(key) == u.name) used = true;
            }
            if (!used) {
                c.report(DiagCode::UnslicedInnerUnit, inner.id + "." + u.name + " is not a slice of any unit",
                         inner.pos);
            }
        }
    }
    return c.take();
}

std::vector<Diagnostic> check_wellformed(const ConcreteConfig& cfg, const ConfigLookup& lookup)
{
    Checker c(cfg.params, lookup);
    check_params(c, cfg.params);
    c.check_ref(cfg.implements, Checker::npos);
    if (cfg.implements.is_variable()) return c.take();
    const AbstractConfig* target = lookup.find_abstract(cfg.implements.name);
    if (!target) return c.take();

    std::set<std::string> expected;
    for (const auto& u : target->units) expected.insert(u.name);
    std::set<std::string> seen;
    for (const auto& u : cfg.units) {
        if (!seen.insert(u.name).second) {
            c.report(DiagCode::DuplicateName, "unit '" + u.name + "' implemented twice", u.pos);
        }
        if (!expected.count(u.name)) {
            c.report(DiagCode::UnitMismatch, "'" + u.name + "' is not a unit of " + target->name, u.pos);
        }
    }
    for (const auto& name : expected) {
        if (!seen.count(name)) {
            c.report(DiagCode::UnitMismatch, "unit '" + name + "' of " + target->name + " is not implemented",
                     cfg.pos);
        }
    }
    return c.take();
}

std::vector<Diagnostic> check_wellformed(const Config& cfg, const ConfigLookup& lookup)
{
    return std::visit([&](const auto& c) { return check_wellformed(c, lookup); }, cfg);
}

}  // namespace hashcl
