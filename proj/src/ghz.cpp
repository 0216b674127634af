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

#include "photonec/ghz.hpp"

#include <cmath>

namespace photonec {

uint64_t bit_mask(int n_parties) {
    return n_parties >= 64 ? ~uint64_t{0} : (uint64_t{1} << n_parties) - 1;
}

std::string bits_to_string(uint64_t bits, int n_parties) {
    std::string s(static_cast<size_t>(n_parties), '0');
    for (int l = 0; l < n_parties; ++l) {
        if ((bits >> l) & 1) s[static_cast<size_t>(l)] = '1';
    }
    return s;
}

uint64_t bits_from_string(const std::string &s) {
    if (s.empty() || s.size() > kMaxParties) {
        throw Error(ErrorKind::Shape, "bitstring length " + std::to_string(s.size()) +
                                          " outside [1, " + std::to_string(kMaxParties) + "]");
    }
    uint64_t bits = 0;
    for (size_t l = 0; l < s.size(); ++l) {
        if (s[l] == '1') {
            bits |= uint64_t{1} << l;
        } else if (s[l] != '0') {
            throw Error(ErrorKind::Shape, "bitstring character '" + std::string(1, s[l]) +
                                              "' is not 0 or 1");
        }
    }
    return bits;
}

GhzPolState GhzPolState::canonical(uint64_t bits, int n_parties, Sign sign) {
    if (n_parties < 2) {
        throw Error(ErrorKind::InvalidArity,
                    "GHZ states need at least 2 parties, got " + std::to_string(n_parties));
    }
    if (n_parties > kMaxParties) {
        throw Error(ErrorKind::InvalidArity,
                    "party count " + std::to_string(n_parties) + " exceeds " +
                        std::to_string(kMaxParties));
    }
    if (bits & ~bit_mask(n_parties)) {
        throw Error(ErrorKind::Shape, "bitstring does not fit in " + std::to_string(n_parties) +
                                          " parties");
    }
    GhzPolState g;
    g.n_parties = n_parties;
    g.bits = (bits & 1) ? (~bits & bit_mask(n_parties)) : bits;
    g.sign = sign;
    return g;
}

GhzPolState GhzPolState::parse(const std::string &bits, const std::string &sign) {
    Sign s;
    if (sign == "+") {
        s = Sign::Plus;
    } else if (sign == "-") {
        s = Sign::Minus;
    } else {
        throw Error(ErrorKind::Shape, "sign must be \"+\" or \"-\", got \"" + sign + "\"");
    }
    uint64_t b = bits_from_string(bits);
    return canonical(b, static_cast<int>(bits.size()), s);
}

SparseKet make_ghz(int n_parties, uint64_t bits, Sign sign) {
    GhzPolState g = GhzPolState::canonical(bits, n_parties, sign);
    return make_ghz(g);
}

SparseKet make_ghz(int n_parties, const std::string &bits, Sign sign) {
    if (static_cast<int>(bits.size()) != n_parties) {
        throw Error(ErrorKind::Shape, "bitstring \"" + bits + "\" has length " +
                                          std::to_string(bits.size()) + ", expected " +
                                          std::to_string(n_parties));
    }
    return make_ghz(n_parties, bits_from_string(bits), sign);
}

SparseKet make_ghz(const GhzPolState &g) {
    auto ket_for = [&](uint64_t bits) {
        std::vector<PhotonLabel> labels(static_cast<size_t>(g.n_parties));
        for (int l = 0; l < g.n_parties; ++l) {
            labels[static_cast<size_t>(l)].pol = static_cast<uint8_t>((bits >> l) & 1);
        }
        return BasisKet(std::move(labels));
    };
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    SparseKet::TermMap terms;
    terms[ket_for(g.bits)] = amplitude_t{inv_sqrt2, 0.0};
    terms[ket_for(g.complement_bits())] =
        amplitude_t{g.sign == Sign::Plus ? inv_sqrt2 : -inv_sqrt2, 0.0};
    return SparseKet::from_terms(static_cast<size_t>(g.n_parties), std::move(terms));
}

namespace {

void require_unrouted(const SparseKet &state, const char *op) {
    for (const auto &[key, amp] : state.terms()) {
        for (size_t l = 0; l < key.size(); ++l) {
            if (key[l].spatial != Spatial::Fiber) {
                throw Error(ErrorKind::StageOrder,
                            std::string(op) + ": photon " + std::to_string(l) +
                                " is already routed off the fiber");
            }
            if (key[l].freq != Freq::Erased) {
                throw Error(ErrorKind::StageOrder,
                            std::string(op) + ": photon " + std::to_string(l) +
                                " already carries a frequency mode");
            }
        }
    }
}

}  // namespace

SparseKet attach_spatial_entanglement(const SparseKet &state) {
    require_unrouted(state, "attach_spatial_entanglement");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    SparseKet::TermMap terms;
    for (const auto &[key, amp] : state.terms()) {
        BasisKet arm1 = key, arm2 = key;
        for (size_t l = 0; l < key.size(); ++l) {
            arm1[l].spatial = Spatial::Mode1;
            arm2[l].spatial = Spatial::Mode2;
        }
        terms[arm1] += amp * inv_sqrt2;
        terms[arm2] += amp * inv_sqrt2;
    }
    return SparseKet::from_terms(state.n_photons(), std::move(terms));
}

SparseKet attach_frequency_entanglement(const SparseKet &state) {
    require_unrouted(state, "attach_frequency_entanglement");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    SparseKet::TermMap terms;
    for (const auto &[key, amp] : state.terms()) {
        BasisKet w1 = key, w2 = key;
        for (size_t l = 0; l < key.size(); ++l) {
            w1[l].freq = Freq::Omega1;
            w2[l].freq = Freq::Omega2;
        }
        terms[w1] += amp * inv_sqrt2;
        terms[w2] += amp * inv_sqrt2;
    }
    return SparseKet::from_terms(state.n_photons(), std::move(terms));
}

}  // namespace photonec
