// Copyright 2026 The photonec authors
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
#include <string>
#include <tuple>

#include "photonec/state.hpp"

namespace photonec {

/// Which auxiliary degree of freedom carries the backup entanglement.
enum class Protocol : uint8_t { Spatial, Frequency };

enum class Sign : uint8_t { Plus, Minus };

inline constexpr int kMaxParties = 64;  // bitstrings are packed into uint64_t

/// Party-0-first bitstring helpers. Bit l of the packed word is party l, and
/// character l of the printed string is party l, so "100" means party 0
/// carries a 1.
uint64_t bit_mask(int n_parties);
std::string bits_to_string(uint64_t bits, int n_parties);
uint64_t bits_from_string(const std::string &s);  // throws Shape on non-binary chars

/// Canonical GHZ basis element: encodes (|b> + sign*|b_bar>)/sqrt(2) in
/// polarization, with b_bar the bitwise complement of b. The representative
/// is normalized so bit 0 of b is 0: complementing b names the same physical
/// state (exactly for Plus, up to a global sign for Minus), so a canonical
/// key keeps mixtures free of double counting.
struct GhzPolState {
    uint64_t bits = 0;
    int n_parties = 0;
    Sign sign = Sign::Plus;

    /// Canonicalizes: complements bits when bit 0 is set, keeps the sign,
    /// records no phase. Throws InvalidArity for n < 2, Shape if bits do not
    /// fit in n bits.
    static GhzPolState canonical(uint64_t bits, int n_parties, Sign sign);

    /// Parses "100" / "+" style fields.
    static GhzPolState parse(const std::string &bits, const std::string &sign);

    uint64_t complement_bits() const { return ~bits & bit_mask(n_parties); }
    std::string bits_string() const { return bits_to_string(bits, n_parties); }
    char sign_char() const { return sign == Sign::Plus ? '+' : '-'; }

    auto operator<=>(const GhzPolState &o) const {
        return std::tie(n_parties, bits, sign) <=> std::tie(o.n_parties, o.bits, o.sign);
    }
    bool operator==(const GhzPolState &o) const = default;
};

/// (|b> + sign*|b_bar>)/sqrt(2) in polarization, every photon at Fiber with
/// frequency Erased. The input b is canonicalized first.
SparseKet make_ghz(int n_parties, uint64_t bits, Sign sign);
SparseKet make_ghz(int n_parties, const std::string &bits, Sign sign);
SparseKet make_ghz(const GhzPolState &g);

/// Tensors (|Mode1>^N + |Mode2>^N)/sqrt(2) onto the spatial labels. Requires
/// every photon at Fiber with frequency Erased (the two backup degrees of
/// freedom are alternatives, not companions); term count doubles.
SparseKet attach_spatial_entanglement(const SparseKet &state);

/// Tensors (|w1>^N + |w2>^N)/sqrt(2) onto the frequency labels. Requires
/// every photon at Fiber with frequency Erased.
SparseKet attach_frequency_entanglement(const SparseKet &state);

}  // namespace photonec
