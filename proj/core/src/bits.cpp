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

#include "nlsat/bits.hpp"

#include <stdexcept>

namespace nlsat {

Bits decode_basis(BasisIndex index, unsigned width) {
    if (width > 64) {
        throw std::invalid_argument("decode_basis: width above 64");
    }
    Bits bits(width);
    for (unsigned k = 0; k < width; ++k) {
        bits[k] = test_bit(index, k) ? 1 : 0;
    }
    return bits;
}

BasisIndex encode_basis(std::span<const std::uint8_t> bits) {
    if (bits.size() > 64) {
        throw std::invalid_argument("encode_basis: more than 64 bits");
    }
    BasisIndex index = 0;
    for (std::size_t k = 0; k < bits.size(); ++k) {
        if (bits[k] != 0) {
            index |= bit_mask(static_cast<unsigned>(k));
        }
    }
    return index;
}

std::string bits_to_string(std::span<const std::uint8_t> bits) {
    std::string out;
    out.reserve(bits.size());
    for (auto b : bits) {
        out.push_back(b != 0 ? '1' : '0');
    }
    return out;
}

std::string basis_to_string(BasisIndex index, unsigned width) {
    return bits_to_string(decode_basis(index, width));
}

Bits parse_bits(std::string_view text) {
    Bits bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bitstring may only contain '0' and '1': " + std::string(text));
        }
        bits.push_back(c == '1' ? 1 : 0);
    }
    return bits;
}

BasisIndex gather_bits(BasisIndex index, std::span<const unsigned> wires) noexcept {
    BasisIndex out = 0;
    for (std::size_t k = 0; k < wires.size(); ++k) {
        if (test_bit(index, wires[k])) {
            out |= bit_mask(static_cast<unsigned>(k));
        }
    }
    return out;
}

}  // namespace nlsat
