// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "ast.hpp"
#include "lookup.hpp"

namespace hashcl {

// Structural checks that precede typing: distinct names, declared public
// inners, no free variables, consistent supply lists and inner kinds, and
// every unit of every inner folded into exactly one slice.
std::vector<Diagnostic> check_wellformed(const AbstractConfig& cfg, const ConfigLookup& lookup);

// Concrete configurations: known target, no free variables, and unit names
// equal to those of the implemented abstract configuration.
std::vector<Diagnostic> check_wellformed(const ConcreteConfig& cfg, const ConfigLookup& lookup);

std::vector<Diagnostic> check_wellformed(const Config& cfg, const ConfigLookup& lookup);

}  // namespace hashcl
