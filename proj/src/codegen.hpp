// SPDX-License-Identifier: Apache-2.0
#pragma once

// Object-oriented stub emission: one generic interface per unit of an
// abstract configuration, one class per unit of a concrete configuration,
// plus a static prelude with the runtime skeleton the stubs refer to.

#include <filesystem>
#include <string>
#include <vector>

#include "ast.hpp"
#include "lookup.hpp"
#include "types.hpp"

namespace hashcl {

struct StubFile {
    enum class Role { Interface, Class, Prelude, Interpretation };

    std::string path;  // relative to the output directory
    std::string text;
    Role role;
};

std::vector<StubFile> gen_interface(const AbstractConfig& cfg, const ConfigLookup& lookup);
std::vector<StubFile> gen_class(const ConcreteConfig& cfg, const ConfigLookup& lookup);
StubFile gen_prelude();

// Bounded-quantification reading of an abstract type, or the package
// reading of an application.
std::string emit_interpretation(const ComponentType& t);

// Creates directories as needed. Throws IoError.
void write_stubs(const std::vector<StubFile>& files, const std::filesystem::path& out_dir);

std::string pascal_case(const std::string& name);
std::string interface_name(const std::string& unit);
std::string class_name(const std::string& unit);
std::string kind_interface(Kind kind);

}  // namespace hashcl
