// SPDX-License-Identifier: Apache-2.0
//
// mediumband: link-level simulation of mediumband wireless channels
// Copyright (C) 2026 The mediumband authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "mediumband/experiments.hpp"

namespace mediumband::cli {

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitRuntime = 3 };

/// Flat settings, key -> textual value. Lists are comma separated.
using Settings = std::map<std::string, std::string>;

/// Every key understood by resolve_config.
const std::vector<std::string>& known_keys();

/// Settings describing the built-in defaults (seed excluded).
Settings default_settings();

/// Parses "key = value" lines; '#' starts a comment. Throws ConfigError on
/// malformed lines or unknown keys.
Settings parse_settings(std::string_view text);

/// Reads a flat key-value file, or a JSON run manifest (its "config" object).
Settings read_settings_file(const std::filesystem::path& path);

std::string format_settings(const Settings& settings);

/// Builds and validates a SimConfig. Throws ConfigError.
SimConfig resolve_config(const Settings& settings);

/// Runs one command line (args excludes the program name). Diagnostics go to
/// `err`, the list of written files to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace mediumband::cli
