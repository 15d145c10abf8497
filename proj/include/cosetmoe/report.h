// Copyright 2026 The cosetmoe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COSETMOE_REPORT_H
#define COSETMOE_REPORT_H

#include <string>
#include <vector>

#include "json.hpp"

namespace cosetmoe {

inline constexpr const char *kVersion = "0.1.0";

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string &data);

/// Copy with every float rounded to 12 significant digits.
nlohmann::json round_floats(const nlohmann::json &j);
/// Number formatted with 12 significant digits.
std::string format_number(double v);

/// Canonical serialisation: sorted keys, rounded floats, no whitespace.
std::string canonical_dump(const nlohmann::json &j);

/// {version, command, config, config_hash, seed, result}.
nlohmann::json make_envelope(const std::string &command, const nlohmann::json &config,
                             uint64_t seed, const nlohmann::json &result);

/// Pretty JSON with rounded floats and a trailing newline.
std::string render_json(const nlohmann::json &j);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<nlohmann::json>> rows;

    std::string render() const;
};

/// Writes to `path`, or to stdout when path is empty or "-". Throws on failure.
void write_output(const std::string &path, const std::string &content);

}  // namespace cosetmoe

#endif
