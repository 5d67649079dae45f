// SPDX-License-Identifier: Apache-2.0
#pragma once

// Syntax tree of HCL configurations. Every node keeps its source position;
// positions are ignored by the defaulted equality operators (see SourcePos).

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "diagnostics.hpp"
#include "kind.hpp"
#include "tracelang.hpp"

namespace hashcl {

// A reference to a configuration: either a context variable or a
// configuration applied to arguments (the cFunApp production).
struct TypeRef {
    enum class Form { Variable, Application };

    Form form = Form::Application;
    std::string name;                        // variable or configuration name
    std::optional<std::string> replication;  // the <N> annotation, kept syntactically
    std::vector<TypeRef> args;
    SourcePos pos;

    bool is_variable() const { return form == Form::Variable; }

    static TypeRef variable(std::string name, SourcePos pos = {});
    static TypeRef application(std::string name, std::vector<TypeRef> args = {}, SourcePos pos = {});

    friend bool operator==(const TypeRef&, const TypeRef&) = default;
};

// Iterator bound: an optional symbol plus a constant offset ("N-1", "0").
struct IterExpr {
    std::optional<std::string> symbol;
    long offset = 0;

    friend bool operator==(const IterExpr&, const IterExpr&) = default;
};

struct IteratorDecl {
    std::string name;
    IterExpr from;
    IterExpr to;
    SourcePos pos;

    friend bool operator==(const IteratorDecl&, const IteratorDecl&) = default;
};

struct Param {
    std::string var;
    TypeRef bound;
    SourcePos pos;

    friend bool operator==(const Param&, const Param&) = default;
};

struct InnerDecl {
    Kind kind = Kind::Data;
    std::string id;
    TypeRef type;
    std::vector<std::string> supplied;  // public inners of `type` supplied by sibling inners
    SourcePos pos;

    friend bool operator==(const InnerDecl&, const InnerDecl&) = default;
};

struct SliceDecl {
    std::string id;
    std::string inner;
    std::string unit;
    std::optional<std::string> index;
    SourcePos pos;

    friend bool operator==(const SliceDecl&, const SliceDecl&) = default;
};

struct UnitDecl {
    std::string name;
    std::optional<std::string> index;  // iterator variable of a unit family
    std::vector<SliceDecl> slices;
    std::optional<Regex> action;
    SourcePos pos;

    friend bool operator==(const UnitDecl&, const UnitDecl&) = default;
};

struct AbstractConfig {
    std::string name;
    Kind kind = Kind::Computation;
    std::optional<std::string> replication;
    std::vector<Param> params;
    std::vector<std::string> public_inners;
    std::optional<std::string> extends;
    std::vector<IteratorDecl> iterators;
    std::vector<InnerDecl> inners;
    std::vector<UnitDecl> units;
    SourcePos pos;

    const InnerDecl* find_inner(const std::string& id) const;
    const UnitDecl* find_unit(const std::string& name) const;
    bool is_public(const std::string& inner_id) const;

    friend bool operator==(const AbstractConfig&, const AbstractConfig&) = default;
};

struct Version {
    std::array<unsigned long, 4> parts{};

    std::string str() const;
    friend auto operator<=>(const Version&, const Version&) = default;
};

struct ConcreteUnit {
    std::string name;
    std::optional<std::string> index;
    std::string body;  // host-language source, kept opaque
    SourcePos pos;

    friend bool operator==(const ConcreteUnit&, const ConcreteUnit&) = default;
};

struct ConcreteConfig {
    std::string name;
    Kind kind = Kind::Computation;
    std::optional<std::string> replication;
    std::vector<Param> params;
    TypeRef implements;
    Version version;
    std::vector<IteratorDecl> iterators;
    std::vector<ConcreteUnit> units;
    SourcePos pos;

    friend bool operator==(const ConcreteConfig&, const ConcreteConfig&) = default;
};

using Config = std::variant<AbstractConfig, ConcreteConfig>;

const std::string& config_name(const Config& cfg);
Kind config_kind(const Config& cfg);

}  // namespace hashcl
