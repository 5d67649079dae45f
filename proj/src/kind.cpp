// SPDX-License-Identifier: Apache-2.0
#include "kind.hpp"

namespace hashcl {

std::string_view kind_keyword(Kind kind)
{
    switch (kind) {
        case Kind::Application: return "application";
        case Kind::Computation: return "computation";
        case Kind::Synchronizer: return "synchronizer";
        case Kind::Data: return "data";
        case Kind::Environment: return "environment";
        case Kind::Architecture: return "architecture";
        case Kind::Qualifier: return "qualifier";
    }
    return "?";
}

std::string_view kind_title(Kind kind)
{
    switch (kind) {
        case Kind::Application: return "Application";
        case Kind::Computation: return "Computation";
        case Kind::Synchronizer: return "Synchronizer";
        case Kind::Data: return "Data";
        case Kind::Environment: return "Environment";
        case Kind::Architecture: return "Architecture";
        case Kind::Qualifier: return "Qualifier";
    }
    return "?";
}

std::optional<Kind> parse_kind_keyword(std::string_view text)
{
    for (Kind k : kAllKinds) {
        if (kind_keyword(k) == text) return k;
    }
    return std::nullopt;
}

std::optional<Kind> parse_top_reference(std::string_view text)
{
    constexpr std::string_view prefix = "Top_";
    if (text.substr(0, prefix.size()) == prefix) return parse_kind_keyword(text.substr(prefix.size()));
    for (Kind k : kAllKinds) {
        if (kind_title(k) == text) return k;
    }
    return std::nullopt;
}

}  // namespace hashcl
