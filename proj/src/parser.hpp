// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ast.hpp"

namespace hashcl {

class SyntaxError : public Error {
public:
    SyntaxError(std::string message, SourcePos pos, std::vector<std::string> expected);

    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::vector<std::string> expected_;
};

// Parses one HCL compilation unit. Throws SyntaxError, or Error with
// LexError / UnknownKind.
Config parse(std::string_view source);

// A type expression in cFunApp syntax, e.g. "Channel[MPIFull, Vector]".
// Names are never treated as variables.
TypeRef parse_type_expression(std::string_view source);

// A trace regex in action syntax, e.g. "(send recv)*".
Regex parse_regex(std::string_view source);

// Canonical HCL text; parse(print_config(c)) == c.
std::string print_config(const Config& cfg);
std::string print_typeref(const TypeRef& ref);

bool is_reserved_word(std::string_view word);

}  // namespace hashcl
