// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hashcl {

// Source position. Positions never take part in structural equality of AST
// nodes, so every pair of positions compares equal.
struct SourcePos {
    int line = 0;
    int column = 0;

    bool known() const { return line > 0; }
    friend bool operator==(const SourcePos&, const SourcePos&) { return true; }
};

enum class ErrorCode {
    LexError,
    SyntaxError,
    UnknownKind,
    IteratorBoundMismatch,
    InvalidArgument,
    UnknownConfig,
    UnboundVariable,
    FreeVariable,
    ArityMismatch,
    SupplyArityMismatch,
    BoundViolation,
    UnknownUnit,
    UnknownInner,
    UncoveredInner,
    KindMismatch,
    NotAnAbstractTarget,
    MalformedConfig,
    ManifestError,
    CycleInHierarchy,
    DuplicateImplementation,
    ShapeInconsistentExtends,
    NoImplementation,
    ResolutionLimit,
    IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message, SourcePos pos = {});

    ErrorCode code() const { return code_; }
    const SourcePos& pos() const { return pos_; }
    const std::string& message() const { return message_; }

private:
    ErrorCode code_;
    SourcePos pos_;
    std::string message_;
};

enum class DiagCode {
    UnslicedInnerUnit,
    DuplicateSliceTarget,
    UnknownInner,
    UnknownUnit,
    FreeVariable,
    UnknownConfig,
    DuplicateName,
    PublicInnerNotDeclared,
    SupplyArityMismatch,
    SupplyKindMismatch,
    InnerKindMismatch,
    ActionSymbolNotSliced,
    UnitMismatch,
    TypeError,
};

const char* diag_code_name(DiagCode code);

enum class Severity { Error, Warning };

struct Diagnostic {
    DiagCode code;
    Severity severity = Severity::Error;
    std::string message;
    SourcePos pos;
};

// Renders "file:line:col: severity: message".
std::string render_diagnostic(const std::string& file, const Diagnostic& diag);
std::string render_error(const std::string& file, const Error& err);

}  // namespace hashcl
