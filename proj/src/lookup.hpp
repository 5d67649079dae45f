// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include "ast.hpp"
#include "types.hpp"

namespace hashcl {

// Read access to the abstract configurations known to a registry, as needed
// by typing and subtyping.
class ConfigLookup {
public:
    virtual ~ConfigLookup() = default;

    virtual const AbstractConfig* find_abstract(const std::string& name) const = 0;

    // Type of a registered abstract configuration under the empty context.
    // Throws UnknownConfig for names that are not registered.
    virtual ComponentType abstract_type(const std::string& name) const = 0;

    virtual std::optional<std::string> parent_of(const std::string& name) const = 0;
};

// A lookup with nothing registered.
class EmptyLookup final : public ConfigLookup {
public:
    const AbstractConfig* find_abstract(const std::string&) const override { return nullptr; }
    ComponentType abstract_type(const std::string& name) const override;
    std::optional<std::string> parent_of(const std::string&) const override { return std::nullopt; }
};

}  // namespace hashcl
