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

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace mediumband {

using Rng = std::mt19937_64;

/// Mixes a parent seed with a tag into a child seed (splitmix64 finaliser).
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag) noexcept;

/// Stable 64-bit tag for a label, so seed trees can be addressed by name.
std::uint64_t label_tag(std::string_view label) noexcept;

/// Tag for a real-valued key (e.g. a PDS value); equal doubles give equal tags.
std::uint64_t value_tag(double value) noexcept;

/// Walks the seed tree master -> path[0] -> path[1] ... and returns the leaf seed.
std::uint64_t seed_path(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept;

/// Independent generator for one node of the seed tree.
inline Rng make_stream(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    return Rng(seed_path(master, path));
}

} // namespace mediumband
