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

#include <stdexcept>
#include <string>

namespace mediumband {

/// Invalid experiment or channel configuration (bad N, negative delay spread, ...).
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Statistical-model parameters outside the valid region.
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// Detection was asked to decide against a zero desired fading factor.
class DegenerateChannelError : public std::domain_error {
public:
    explicit DegenerateChannelError(const std::string& what) : std::domain_error(what) {}
};

} // namespace mediumband
