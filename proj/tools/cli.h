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

#ifndef COSETMOE_TOOLS_CLI_H
#define COSETMOE_TOOLS_CLI_H

#include <ostream>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace cosetmoe::cli {

/// Bad configuration or arguments; maps to exit code 2.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Default configuration of a subcommand; every key is also a flag.
nlohmann::json default_config(const std::string &command);

/// defaults <- file <- overrides, rejecting unknown keys and mistyped values.
nlohmann::json merge_config(const std::string &command, const nlohmann::json &file,
                            const nlohmann::json &overrides);

/// Runs one experiment subcommand on a merged config. The result carries a
/// "summary" object used by sweeps.
nlohmann::json run_command(const std::string &command, const nlohmann::json &config,
                           uint64_t seed, int threads);

/// Full command line handling; returns the process exit code.
int dispatch(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace cosetmoe::cli

#endif
