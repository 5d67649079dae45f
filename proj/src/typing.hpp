// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ast.hpp"
#include "lookup.hpp"
#include "subtyping.hpp"
#include "types.hpp"

namespace hashcl {

// A subtyping premise discharged while computing a type.
struct Obligation {
    std::string origin;  // e.g. "argument 3 of MatVecProduct"
    ComponentType sub;
    ComponentType sup;

    std::string render() const;
};

struct TypingResult {
    ComponentType type;
    std::vector<Obligation> obligations;
};

// BoundViolation, raised with the failed derivation.
class BoundViolationError : public Error {
public:
    BoundViolationError(std::string message, std::size_t index, SubtypeTrace trace, SourcePos pos = {});

    std::size_t index() const { return index_; }  // 1-based argument or supply position
    const SubtypeTrace& trace() const { return trace_; }

private:
    std::size_t index_;
    SubtypeTrace trace_;
};

// Variables, applications, parameterless names and Top references.
TypingResult type_ref(const TypeRef& ref, const Context& gamma, const ConfigLookup& lookup);

TypingResult type_abstract(const AbstractConfig& cfg, const Context& gamma, const ConfigLookup& lookup);

// target must be an application of a registered abstract configuration.
TypingResult type_apply(const TypeRef& target, const Context& gamma, const ConfigLookup& lookup);

// Applies target and supplies its public inners, in declaration order.
TypingResult type_supply(const TypeRef& target, const std::vector<TypeRef>& supplied, const Context& gamma,
                         const ConfigLookup& lookup);

TypingResult type_concrete(const ConcreteConfig& cfg, const ConfigLookup& lookup);

// The implements clause with every parameter replaced by its declared bound.
TypeRef specialized_target(const ConcreteConfig& cfg);

}  // namespace hashcl
