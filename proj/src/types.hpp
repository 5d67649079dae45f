// SPDX-License-Identifier: Apache-2.0
#pragma once

// Configuration types: abstract component types [X <: H] |> shape, their
// applications A <| [H...], type variables and the per-kind Top types.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "kind.hpp"
#include "tracelang.hpp"

namespace hashcl {

struct Shape;
struct AbstractType;
struct HashType;

class ComponentType {
public:
    struct Var {
        std::string name;
        friend bool operator==(const Var&, const Var&) = default;
    };
    struct Top {
        Kind kind;
        friend bool operator==(const Top&, const Top&) = default;
    };

    static ComponentType var(std::string name);
    static ComponentType top(Kind kind);
    static ComponentType shape(Shape s);
    static ComponentType abstract(AbstractType a);
    static ComponentType hash(HashType h);

    bool is_var() const { return std::holds_alternative<Var>(node_); }
    bool is_top() const { return std::holds_alternative<Top>(node_); }
    bool is_shape() const { return node_.index() == 2; }
    bool is_abstract() const { return node_.index() == 3; }
    bool is_hash() const { return node_.index() == 4; }

    const std::string& var_name() const { return std::get<Var>(node_).name; }
    Kind top_kind() const { return std::get<Top>(node_).kind; }
    const Shape& as_shape() const { return *std::get<2>(node_); }
    const AbstractType& as_abstract() const { return *std::get<3>(node_); }
    const HashType& as_hash() const { return *std::get<4>(node_); }

    // Shape, AbstractType and HashType carry the name of the configuration
    // they were computed from; empty for variables, Tops and anonymous shapes.
    const std::string& origin() const;

    friend bool operator==(const ComponentType& a, const ComponentType& b);

private:
    using Node = std::variant<Var, Top, std::shared_ptr<const Shape>, std::shared_ptr<const AbstractType>,
                              std::shared_ptr<const HashType>>;
    explicit ComponentType(Node node) : node_(std::move(node)) {}
    Node node_;
};

struct InnerSlot {
    std::string label;
    ComponentType type;
    friend bool operator==(const InnerSlot&, const InnerSlot&) = default;
};

struct SliceTarget {
    std::string inner;
    std::string unit;
    friend auto operator<=>(const SliceTarget&, const SliceTarget&) = default;
};

using SliceMap = std::map<std::string, SliceTarget>;

struct UnitSig {
    std::string name;
    SliceMap sigma;
    TraceLang trace;
    friend bool operator==(const UnitSig&, const UnitSig&) = default;
};

struct Shape {
    std::string origin;
    Kind kind = Kind::Data;
    std::vector<InnerSlot> public_inners;
    std::vector<InnerSlot> private_inners;
    std::vector<UnitSig> units;

    const InnerSlot* find_inner(const std::string& label) const;
    bool is_public(const std::string& label) const;
    const UnitSig* find_unit(const std::string& name) const;

    friend bool operator==(const Shape&, const Shape&) = default;
};

struct Bound {
    std::string var;
    ComponentType bound;
    friend bool operator==(const Bound&, const Bound&) = default;
};

struct AbstractType {
    std::vector<Bound> bounds;
    Shape shape;
    friend bool operator==(const AbstractType&, const AbstractType&) = default;
};

// A public inner of the base that was supplied (and thereby consumed) when
// the type was formed; kept for rendering, the base already reflects it.
struct SuppliedInner {
    std::string label;
    ComponentType type;
    friend bool operator==(const SuppliedInner&, const SuppliedInner&) = default;
};

struct HashType {
    ComponentType base;  // AbstractType, or a Shape for parameterless components
    std::vector<ComponentType> args;
    std::vector<SuppliedInner> supplied;
    friend bool operator==(const HashType&, const HashType&) = default;
};

// Ordered bindings X <: bound; lookup finds the innermost binding.
class Context {
public:
    Context() = default;
    explicit Context(std::vector<Bound> bindings) : bindings_(std::move(bindings)) {}

    const ComponentType* lookup(const std::string& var) const;
    bool contains(const std::string& var) const { return lookup(var) != nullptr; }

    Context extended(const std::vector<Bound>& more) const;
    void push(Bound b) { bindings_.push_back(std::move(b)); }

    const std::vector<Bound>& bindings() const { return bindings_; }

private:
    std::vector<Bound> bindings_;
};

using Substitution = std::map<std::string, ComponentType>;

std::set<std::string> free_vars(const ComponentType& t);

// Simultaneous, capture-avoiding substitution. Bound variables of nested
// abstract types that would capture a free variable of a replacement are
// renamed with trailing primes.
ComponentType substitute(const ComponentType& t, const Substitution& s);

// Kind of the shape reached through the head of `t`. Throws UnboundVariable.
Kind kind_of(const ComponentType& t, const Context& gamma);

// Shape reached through the head (variables promoted to their bounds);
// nullptr for Top types.
const Shape* shape_of(const ComponentType& t, const Context& gamma);

// True for the forms admitted as bounds and arguments: variables, Tops,
// applications and parameterless shapes.
bool is_h_form(const ComponentType& t);

// Canonical rendering. Nested named components are rendered by name.
std::string render(const ComponentType& t);
std::string render_nominal(const ComponentType& t);
std::string render_shape(const Shape& s);
std::string top_name(Kind kind);

}  // namespace hashcl

namespace hashcl {

// Retypes the public inner `label` of `base` (an abstract type or shape) at
// `type` and moves it to the private row. Bound variables of `base` that
// occur free in `type` are renamed first. Throws UnknownInner when `label`
// is not a public inner of `base`.
ComponentType supply_inner(const ComponentType& base, const std::string& label, const ComponentType& type);

}  // namespace hashcl
