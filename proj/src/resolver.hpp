// SPDX-License-Identifier: Apache-2.0
#pragma once

// Deterministic resolution of a demanded component type against the
// registry by generalizing its context parameters along the hierarchy.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "registry.hpp"

namespace hashcl {

// Position of a parameter node: argument indices from the demand's root.
using NodePath = std::vector<std::size_t>;

struct ChainNode {
    NodePath path;
    std::string label;  // parameter names along the path, e.g. "E.C"
};

// Parameter nodes in marking order: children before parents, arguments in
// declaration order. The demand itself (marked last) is not included.
// Generalization consumes the chain from the back.
std::vector<ChainNode> sort_parameters(const ComponentType& ctop);

inline constexpr std::size_t kDefaultVisitLimit = 1000000;

struct ResolveOutcome {
    ComponentType demand;                  // the original demand
    std::vector<ChainNode> chain;
    std::vector<ComponentType> visited;    // distinct successive demands examined
    std::size_t visits = 0;                // candidate demands examined, repeats included
    std::optional<Implementation> implementation;
    std::optional<ComponentType> generalized;  // working demand at success

    bool found() const { return implementation.has_value(); }
};

// Runs the traversal; never throws NoImplementation. Throws
// ResolutionLimit when more than `limit` candidates are examined, and
// InvalidArgument when `ctop` is not an application of an abstract
// component.
ResolveOutcome explore(const ComponentType& ctop, const Registry& reg, std::size_t limit = kDefaultVisitLimit);

// As explore, but throws NoImplementation on failure.
ResolveOutcome resolve(const ComponentType& ctop, const Registry& reg, std::size_t limit = kDefaultVisitLimit);

// Parameterless demands arrive as named shapes; wraps them as applications.
ComponentType as_demand(const ComponentType& t);

// Text for --explain.
std::string render_explanation(const ResolveOutcome& outcome);

}  // namespace hashcl
