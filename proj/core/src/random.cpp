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

#include "mediumband/random.hpp"

#include <bit>
#include <cmath>

namespace mediumband {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag) noexcept {
    return splitmix64(splitmix64(parent) ^ (tag * 0xd6e8feb86659fd93ULL + 0x2545f4914f6cdd1dULL));
}

std::uint64_t label_tag(std::string_view label) noexcept {
    // FNV-1a
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t value_tag(double value) noexcept {
    if (value == 0.0) value = 0.0; // fold -0.0
    return std::bit_cast<std::uint64_t>(value);
}

std::uint64_t seed_path(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept {
    std::uint64_t s = master;
    for (const auto tag : path) s = derive_seed(s, tag);
    return s;
}

} // namespace mediumband
