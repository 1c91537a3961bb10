#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "mabcs/fl_sim.hpp"

namespace mabcs {

/// Parses flat `key = value` text ('#' starts a comment). Keys not present
/// keep their defaults. Unknown keys, unparsable values and violated
/// invariants throw ConfigError naming the key and line.
///
/// `eta = none` selects the no-fluctuation mode.
RunConfig parse_config_text(std::string_view text);
RunConfig parse_config(const std::filesystem::path& path);

/// Writes every key in the format parse_config_text accepts; parsing the
/// output reproduces `cfg` exactly.
void write_config(const RunConfig& cfg, std::ostream& out);
void write_config(const RunConfig& cfg, const std::filesystem::path& path);

}  // namespace mabcs
