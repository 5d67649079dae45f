// SPDX-License-Identifier: Apache-2.0
#pragma once

// Deployed components: a single-inheritance forest of abstract
// configurations and at most one concrete implementation per abstract.

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ast.hpp"
#include "lookup.hpp"
#include "typing.hpp"

namespace hashcl {

struct AbstractEntry {
    AbstractConfig config;
    std::optional<std::string> parent;
    std::string file;
};

struct ConcreteEntry {
    ConcreteConfig config;
    std::string file;
    ComponentType type;
};

class Registry final : public ConfigLookup {
public:
    class Builder;

    // Accepts the registry root directory or the manifest file itself.
    static Registry load(const std::filesystem::path& path);
    static Registry empty();

    const AbstractConfig* find_abstract(const std::string& name) const override;
    ComponentType abstract_type(const std::string& name) const override;
    std::optional<std::string> parent_of(const std::string& name) const override;

    const AbstractEntry* abstract_entry(const std::string& name) const;
    // The implementation registered for an abstract configuration.
    const ConcreteEntry* concrete_for(const std::string& abstract_name) const;
    const ConcreteEntry* find_concrete(const std::string& concrete_name) const;

    std::vector<std::string> abstract_names() const;
    std::vector<std::string> concrete_names() const;
    std::size_t hierarchy_edges() const;

    // Kind tops are implicit; this lists them for completeness.
    std::vector<ComponentType> kind_tops() const;

    // One line per entry, sorted; equal registries render equally.
    std::string canonical() const;

    const std::filesystem::path& root() const { return root_; }

private:
    Registry() = default;
    void link();

    std::map<std::string, AbstractEntry> abstracts_;
    std::map<std::string, ConcreteEntry> concretes_;  // keyed by abstract name
    std::filesystem::path root_;

    mutable std::map<std::string, ComponentType> types_;
    mutable std::set<std::string> typing_;
};

// In-memory registry construction, used by the loader and by tests.
class Registry::Builder {
public:
    // Adds a configuration. Repeated concrete names keep the highest version.
    Builder& add(Config cfg, std::string file = {});
    // Parses and adds HCL source.
    Builder& add_source(std::string_view source, std::string file = {});

    // Links, types and validates. Throws CycleInHierarchy,
    // DuplicateImplementation, ShapeInconsistentExtends, typing errors.
    Registry build() const;

    void set_root(std::filesystem::path root) { root_ = std::move(root); }

private:
    std::vector<std::pair<Config, std::string>> entries_;
    std::filesystem::path root_;
};

// The parent configuration applied to the same arguments, or Top of the
// kind at a root. Throws UnknownConfig, InvalidArgument for variables/Tops.
ComponentType least_proper_supertype(const ComponentType& t, const Registry& reg);

struct Implementation {
    const ConcreteEntry* entry;
    ComponentType type;
};

// The concrete registered for the demand's head whose type is a subtype of
// the demand.
std::optional<Implementation> implementation_of(const ComponentType& demand, const Registry& reg);

// Types a type expression in the empty context ("Channel[MPIFull, Vector]").
ComponentType demand_type(const TypeRef& ref, const Registry& reg);

}  // namespace hashcl
