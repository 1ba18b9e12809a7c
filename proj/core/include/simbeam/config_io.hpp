// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "simbeam/config.hpp"

namespace simbeam {

/// Reads a JSON config with optional sections `system`, `geometry`, `channel`, `optimizer` and
/// `sweep`. Keys mirror SimConfig field names; absent keys keep their defaults. Unknown keys,
/// wrong types and invariant violations raise ConfigError with the dotted field path.
SimConfig load_config(const std::filesystem::path& path);
SimConfig parse_config(std::string_view text);

/// Writes every field, including resolved defaults, in the same schema.
std::string serialize_config(const SimConfig& config);

}  // namespace simbeam
