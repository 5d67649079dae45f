// SPDX-License-Identifier: Apache-2.0
#include "diagnostics.hpp"

#include <sstream>

namespace hashcl {

const char* error_code_name(ErrorCode code)
{
    switch (code) {
        case ErrorCode::LexError: return "LexError";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::UnknownKind: return "UnknownKind";
        case ErrorCode::IteratorBoundMismatch: return "IteratorBoundMismatch";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::UnknownConfig: return "UnknownConfig";
        case ErrorCode::UnboundVariable: return "UnboundVariable";
        case ErrorCode::FreeVariable: return "FreeVariable";
        case ErrorCode::ArityMismatch: return "ArityMismatch";
        case ErrorCode::SupplyArityMismatch: return "SupplyArityMismatch";
        case ErrorCode::BoundViolation: return "BoundViolation";
        case ErrorCode::UnknownUnit: return "UnknownUnit";
        case ErrorCode::UnknownInner: return "UnknownInner";
        case ErrorCode::UncoveredInner: return "UncoveredInner";
        case ErrorCode::KindMismatch: return "KindMismatch";
        case ErrorCode::NotAnAbstractTarget: return "NotAnAbstractTarget";
        case ErrorCode::MalformedConfig: return "MalformedConfig";
        case ErrorCode::ManifestError: return "ManifestError";
        case ErrorCode::CycleInHierarchy: return "CycleInHierarchy";
        case ErrorCode::DuplicateImplementation: return "DuplicateImplementation";
        case ErrorCode::ShapeInconsistentExtends: return "ShapeInconsistentExtends";
        case ErrorCode::NoImplementation: return "NoImplementation";
        case ErrorCode::ResolutionLimit: return "ResolutionLimit";
        case ErrorCode::IoError: return "IoError";
    }
    return "Error";
}

Error::Error(ErrorCode code, std::string message, SourcePos pos)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code), pos_(pos), message_(std::move(message))
{
}

const char* diag_code_name(DiagCode code)
{
    switch (code) {
        case DiagCode::UnslicedInnerUnit: return "UnslicedInnerUnit";
        case DiagCode::DuplicateSliceTarget: return "DuplicateSliceTarget";
        case DiagCode::UnknownInner: return "UnknownInner";
        case DiagCode::UnknownUnit: return "UnknownUnit";
        case DiagCode::FreeVariable: return "FreeVariable";
        case DiagCode::UnknownConfig: return "UnknownConfig";
        case DiagCode::DuplicateName: return "DuplicateName";
        case DiagCode::PublicInnerNotDeclared: return "PublicInnerNotDeclared";
        case DiagCode::SupplyArityMismatch: return "SupplyArityMismatch";
        case DiagCode::SupplyKindMismatch: return "SupplyKindMismatch";
        case DiagCode::InnerKindMismatch: return "InnerKindMismatch";
        case DiagCode::ActionSymbolNotSliced: return "ActionSymbolNotSliced";
        case DiagCode::UnitMismatch: return "UnitMismatch";
        case DiagCode::TypeError: return "TypeError";
    }
    return "Diagnostic";
}

namespace {

std::string render_at(const std::string& file, SourcePos pos, const char* severity,
                      const std::string& text)
{
    std::ostringstream out;
    out << (file.empty() ? "<input>" : file) << ':' << pos.line << ':' << pos.column << ": "
        << severity << ": " << text;
    return out.str();
}

}  // namespace

std::string render_diagnostic(const std::string& file, const Diagnostic& diag)
{
    const char* sev = diag.severity == Severity::Error ? "error" : "warning";
    return render_at(file, diag.pos, sev,
                     std::string(diag_code_name(diag.code)) + ": " + diag.message);
}

std::string render_error(const std::string& file, const Error& err)
{
    return render_at(file, err.pos(), "error", err.what());
}

}  // namespace hashcl
