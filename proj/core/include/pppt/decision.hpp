#pragma once

#include <string_view>

namespace pppt {

enum class Decision { No, Yes };

constexpr std::string_view to_string(Decision d) noexcept { return d == Decision::Yes ? "Yes" : "No"; }

constexpr Decision decision_from(bool yes) noexcept { return yes ? Decision::Yes : Decision::No; }

}  // namespace pppt
