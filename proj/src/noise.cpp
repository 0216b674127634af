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

#include "photonec/noise.hpp"

#include <cmath>

namespace photonec {

namespace {

constexpr int kMaxEnumerableParties = 20;  // 2^N mixture entries

Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }

}  // namespace

GhzPolState apply_pauli(const GhzPolState &g, int party, PauliOp op) {
    if (party < 0 || party >= g.n_parties) {
        throw Error(ErrorKind::InvalidArity, "party " + std::to_string(party) +
                                                 " out of range for " +
                                                 std::to_string(g.n_parties) + " parties");
    }
    uint64_t bits = g.bits;
    Sign sign = g.sign;
    switch (op) {
        case PauliOp::I: break;
        case PauliOp::X: bits ^= uint64_t{1} << party; break;
        case PauliOp::Y:
            bits ^= uint64_t{1} << party;
            sign = flip(sign);
            break;
        case PauliOp::Z: sign = flip(sign); break;
    }
    return GhzPolState::canonical(bits, g.n_parties, sign);
}

GhzMixture GhzMixture::from_weights(
    const std::vector<std::pair<GhzPolState, double>> &weights) {
    if (weights.empty()) {
        throw Error(ErrorKind::InvalidInput, "mixture has no entries");
    }
    GhzMixture mix;
    mix.n_parties_ = weights.front().first.n_parties;
    double total = 0.0;
    for (const auto &[state, p] : weights) {
        if (state.n_parties != mix.n_parties_) {
            throw Error(ErrorKind::Shape, "mixture mixes party counts " +
                                              std::to_string(mix.n_parties_) + " and " +
                                              std::to_string(state.n_parties));
        }
        if (p < 0.0) {
            throw Error(ErrorKind::InvalidInput,
                        "negative weight " + std::to_string(p) + " on state " +
                            state.bits_string());
        }
        GhzPolState key = GhzPolState::canonical(state.bits, state.n_parties, state.sign);
        mix.weights_[key] += p;
        total += p;
    }
    if (std::abs(total - 1.0) > kWeightTolerance) {
        throw Error(ErrorKind::InvalidInput,
                    "mixture weights sum to " + std::to_string(total) + ", expected 1");
    }
    return mix;
}

GhzMixture GhzMixture::uniform(int n_parties) {
    if (n_parties < 2) {
        throw Error(ErrorKind::InvalidArity, "mixtures need at least 2 parties");
    }
    if (n_parties > kMaxEnumerableParties) {
        throw Error(ErrorKind::InvalidInput, "uniform mixture over 2^" +
                                                 std::to_string(n_parties) +
                                                 " states is too large to enumerate");
    }
    std::vector<std::pair<GhzPolState, double>> weights;
    const double p = std::ldexp(1.0, -n_parties);  // 2^-N
    const uint64_t half = uint64_t{1} << (n_parties - 1);
    for (uint64_t b = 0; b < half; ++b) {
        // Canonical strings have bit 0 clear: even b, shifted left one place.
        weights.emplace_back(GhzPolState::canonical(b << 1, n_parties, Sign::Plus), p);
        weights.emplace_back(GhzPolState::canonical(b << 1, n_parties, Sign::Minus), p);
    }
    return from_weights(weights);
}

GhzPolState GhzMixture::sample(Rng &rng) const {
    if (weights_.empty()) {
        throw Error(ErrorKind::InvalidInput, "cannot sample from an empty mixture");
    }
    double u = rng.next_unit();
    double acc = 0.0;
    const GhzPolState *last = nullptr;
    for (const auto &[state, p] : weights_) {
        acc += p;
        last = &state;
        if (u < acc) return state;
    }
    return *last;  // u landed in the rounding slack at the top
}

GhzPolState sample_ghz(const GhzMixture &mix, Rng &rng) { return mix.sample(rng); }

PauliChannel::PauliChannel(std::vector<PauliProbs> per_party) : per_party_(std::move(per_party)) {
    if (per_party_.size() < 2) {
        throw Error(ErrorKind::InvalidArity, "channel needs at least 2 parties");
    }
    for (size_t l = 0; l < per_party_.size(); ++l) {
        const PauliProbs &q = per_party_[l];
        if (q.i < 0 || q.x < 0 || q.y < 0 || q.z < 0) {
            throw Error(ErrorKind::InvalidInput,
                        "negative Pauli probability on party " + std::to_string(l));
        }
        double sum = q.i + q.x + q.y + q.z;
        if (std::abs(sum - 1.0) > kWeightTolerance) {
            throw Error(ErrorKind::InvalidInput, "Pauli probabilities on party " +
                                                     std::to_string(l) + " sum to " +
                                                     std::to_string(sum) + ", expected 1");
        }
    }
}

GhzPolState PauliChannel::sample(const GhzPolState &input, Rng &rng) const {
    if (input.n_parties != n_parties()) {
        throw Error(ErrorKind::Shape, "channel has " + std::to_string(n_parties()) +
                                          " parties, input has " +
                                          std::to_string(input.n_parties));
    }
    GhzPolState g = input;
    for (int l = 0; l < n_parties(); ++l) {
        const PauliProbs &q = per_party_[static_cast<size_t>(l)];
        double u = rng.next_unit();
        PauliOp op;
        if (u < q.i) {
            op = PauliOp::I;
        } else if (u < q.i + q.x) {
            op = PauliOp::X;
        } else if (u < q.i + q.x + q.y) {
            op = PauliOp::Y;
        } else {
            op = PauliOp::Z;
        }
        g = apply_pauli(g, l, op);
    }
    return g;
}

GhzMixture pauli_to_ghz_mixture(const PauliChannel &ch, const GhzPolState &input) {
    if (input.n_parties != ch.n_parties()) {
        throw Error(ErrorKind::Shape, "channel has " + std::to_string(ch.n_parties()) +
                                          " parties, input has " +
                                          std::to_string(input.n_parties));
    }
    if (ch.n_parties() > kMaxEnumerableParties) {
        throw Error(ErrorKind::InvalidInput,
                    "exact mixture over 2^" + std::to_string(ch.n_parties()) +
                        " states is too large; sample the channel instead");
    }
    // Convolve per-party contributions over (flip mask, sign-flip parity).
    std::map<std::pair<uint64_t, int>, double> dist;
    dist[{0, 0}] = 1.0;
    for (int l = 0; l < ch.n_parties(); ++l) {
        const PauliProbs &q = ch.per_party()[static_cast<size_t>(l)];
        const uint64_t bit = uint64_t{1} << l;
        std::map<std::pair<uint64_t, int>, double> next;
        for (const auto &[key, p] : dist) {
            const auto &[mask, parity] = key;
            if (q.i > 0) next[{mask, parity}] += p * q.i;
            if (q.x > 0) next[{mask ^ bit, parity}] += p * q.x;
            if (q.y > 0) next[{mask ^ bit, parity ^ 1}] += p * q.y;
            if (q.z > 0) next[{mask, parity ^ 1}] += p * q.z;
        }
        dist = std::move(next);
    }
    std::vector<std::pair<GhzPolState, double>> weights;
    weights.reserve(dist.size());
    for (const auto &[key, p] : dist) {
        const auto &[mask, parity] = key;
        Sign sign = parity ? flip(input.sign) : input.sign;
        weights.emplace_back(GhzPolState::canonical(input.bits ^ mask, input.n_parties, sign), p);
    }
    return GhzMixture::from_weights(weights);
}

SparseKet apply_noise_sample(Protocol protocol, const GhzPolState &g) {
    SparseKet pol = make_ghz(g);
    return protocol == Protocol::Spatial ? attach_spatial_entanglement(pol)
                                         : attach_frequency_entanglement(pol);
}

std::optional<GhzPolState> classify_ghz(const SparseKet &state, double tol) {
    if (state.term_count() != 2) return std::nullopt;
    auto it = state.terms().begin();
    const auto &[ket_a, amp_a] = *it;
    ++it;
    const auto &[ket_b, amp_b] = *it;
    const size_t n = state.n_photons();
    if (n < 2) return std::nullopt;
    for (size_t l = 0; l < n; ++l) {
        if (ket_a[l].pol == ket_b[l].pol) return std::nullopt;  // not complementary
        if (ket_a[l].spatial != ket_b[l].spatial || ket_a[l].freq != ket_b[l].freq) {
            return std::nullopt;  // not a pure polarization factor
        }
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    if (std::abs(std::abs(amp_a) - inv_sqrt2) > tol) return std::nullopt;
    if (std::abs(std::abs(amp_b) - inv_sqrt2) > tol) return std::nullopt;
    amplitude_t ratio = amp_b / amp_a;
    Sign sign;
    if (std::abs(ratio - 1.0) <= tol) {
        sign = Sign::Plus;
    } else if (std::abs(ratio + 1.0) <= tol) {
        sign = Sign::Minus;
    } else {
        return std::nullopt;
    }
    // Map ordering puts the ket whose party-0 bit is 0 first, which is the
    // canonical representative.
    return GhzPolState::canonical(ket_a.pol_bits(), static_cast<int>(n), sign);
}

}  // namespace photonec
