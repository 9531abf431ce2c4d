// Copyright 2026 The nlsat Authors
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

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nlsat {

/// Index into a state vector. Bit k holds the value of qubit k.
using BasisIndex = std::uint64_t;

/// One byte (0 or 1) per wire or variable. Element k is bit k.
using Bits = std::vector<std::uint8_t>;

constexpr BasisIndex bit_mask(unsigned qubit) noexcept {
    return BasisIndex{1} << qubit;
}

constexpr bool test_bit(BasisIndex index, unsigned qubit) noexcept {
    return ((index >> qubit) & 1U) != 0;
}

Bits decode_basis(BasisIndex index, unsigned width);
BasisIndex encode_basis(std::span<const std::uint8_t> bits);

/// Printed with element 0 first, so "101" means bit0=1, bit1=0, bit2=1.
std::string bits_to_string(std::span<const std::uint8_t> bits);
std::string basis_to_string(BasisIndex index, unsigned width);

/// Inverse of bits_to_string. Throws std::invalid_argument on characters other than 0/1.
Bits parse_bits(std::string_view text);

/// Collects the bits of `index` found at `wires` into a packed value (wires[k] -> bit k).
BasisIndex gather_bits(BasisIndex index, std::span<const unsigned> wires) noexcept;

}  // namespace nlsat
