// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace hashcl {

// The seven component kinds. Each kind has its own Top type.
enum class Kind {
    Application,
    Computation,
    Synchronizer,
    Data,
    Environment,
    Architecture,
    Qualifier,
};

inline constexpr std::array<Kind, 7> kAllKinds = {
    Kind::Application, Kind::Computation,  Kind::Synchronizer, Kind::Data,
    Kind::Environment, Kind::Architecture, Kind::Qualifier,
};

// Lower-case keyword as written in HCL headers ("computation").
std::string_view kind_keyword(Kind kind);

// Capitalized name ("Computation"), used for Top references and kind interfaces.
std::string_view kind_title(Kind kind);

std::optional<Kind> parse_kind_keyword(std::string_view text);

// Accepts "Environment" and "Top_environment" style references to a kind's Top.
std::optional<Kind> parse_top_reference(std::string_view text);

}  // namespace hashcl
