// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "lookup.hpp"
#include "types.hpp"

namespace hashcl {

// Derivation tree of a subtyping query. A failed node carries the reason of
// the first violated premise.
struct SubtypeTrace {
    std::string rule;
    std::string conclusion;
    bool holds = true;
    std::string reason;
    std::vector<SubtypeTrace> premises;

    // One rule per line, premises indented by two spaces.
    std::string render() const;
};

struct SubtypeResult {
    bool holds = false;
    SubtypeTrace trace;

    explicit operator bool() const { return holds; }
};

// Γ ⊢ left <: right. Variables are promoted to their bounds, differing
// configuration names are related through declared extends edges,
// application arguments are contravariant. Throws UnboundVariable and
// UnknownConfig.
SubtypeResult is_subtype(const Context& gamma, const ComponentType& left, const ComponentType& right,
                         const ConfigLookup& lookup);

// Same decision without building a derivation.
bool check_subtype(const Context& gamma, const ComponentType& left, const ComponentType& right,
                   const ConfigLookup& lookup);

SubtypeResult shape_subtype(const Context& gamma, const Shape& s1, const Shape& s2, const ConfigLookup& lookup);

// The type one hierarchy step above a named component type: the parent
// configuration applied to the same arguments (with the same supplied
// inners), or the Top of its kind for roots. nullopt for variables and Tops.
std::optional<ComponentType> promote_nominal(const ComponentType& t, const ConfigLookup& lookup);

}  // namespace hashcl
