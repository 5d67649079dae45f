// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ast.hpp"

namespace hashcl {

// Replaces every unit family u[k] (k ranging over 0..N-1, N the replication
// symbol) with n instances u_0 .. u_{n-1}; indexed slice targets are
// instantiated at each index. Configurations without replication come back
// unchanged. Throws IteratorBoundMismatch when an iterator range does not
// reduce to 0..n-1, and InvalidArgument for n == 0.
AbstractConfig expand_iterators(const AbstractConfig& cfg, unsigned n);

std::string instance_name(const std::string& family, unsigned index);

}  // namespace hashcl
