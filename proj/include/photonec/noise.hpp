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

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "photonec/ghz.hpp"
#include "photonec/rng.hpp"

namespace photonec {

// Channel noise acts on polarization only; the spatial / frequency factor
// stays pure. Per-photon Pauli noise keeps the GHZ basis closed:
//   X on party l flips bit l of the index string,
//   Z on any party flips the relative sign,
//   Y does both,
// global phases dropped throughout. A GHZ-diagonal mixture therefore
// captures every noise realization exactly, and running the protocol on
// sampled pure GHZ-basis states is exact for this noise class.

enum class PauliOp : uint8_t { I, X, Y, Z };

/// The GHZ basis state reached by one single-party Pauli, re-canonicalized.
GhzPolState apply_pauli(const GhzPolState &g, int party, PauliOp op);

/// Probability distribution over canonical GHZ basis states.
class GhzMixture {
  public:
    static constexpr double kWeightTolerance = 1e-9;

    /// Canonicalizes keys, merges duplicates, validates: weights >= 0,
    /// sum = 1 within kWeightTolerance, all keys same party count.
    static GhzMixture from_weights(const std::vector<std::pair<GhzPolState, double>> &weights);

    /// Equal weight 2^-N on every GHZ basis state (completely mixed
    /// polarization). n_parties <= 20.
    static GhzMixture uniform(int n_parties);

    const std::map<GhzPolState, double> &weights() const { return weights_; }
    int n_parties() const { return n_parties_; }

    /// Inverse-CDF draw over the key order; deterministic given the stream.
    GhzPolState sample(Rng &rng) const;

  private:
    std::map<GhzPolState, double> weights_;
    int n_parties_ = 0;
};

GhzPolState sample_ghz(const GhzMixture &mix, Rng &rng);

/// One (p_I, p_X, p_Y, p_Z) quadruple; nonnegative, sums to 1 within 1e-9.
struct PauliProbs {
    double i = 1.0, x = 0.0, y = 0.0, z = 0.0;
};

/// Independent per-photon Pauli channel: one quadruple per party.
class PauliChannel {
  public:
    static constexpr double kWeightTolerance = 1e-9;

    explicit PauliChannel(std::vector<PauliProbs> per_party);

    int n_parties() const { return static_cast<int>(per_party_.size()); }
    const std::vector<PauliProbs> &per_party() const { return per_party_; }

    /// Draws one Pauli per party and applies the closure rules. O(N) per
    /// draw; this is the Monte Carlo path for any party count.
    GhzPolState sample(const GhzPolState &input, Rng &rng) const;

  private:
    std::vector<PauliProbs> per_party_;
};

/// Exact output distribution of the channel on one GHZ basis input, by
/// convolving per-party (bit-flip, sign-flip) contributions. The result has
/// up to 2^N entries; party counts above 20 are rejected.
GhzMixture pauli_to_ghz_mixture(const PauliChannel &ch, const GhzPolState &input);

/// Post-channel pure state fed to a protocol run: the sampled polarization
/// factor tensored with the intact spatial or frequency factor.
SparseKet apply_noise_sample(Protocol protocol, const GhzPolState &g);

/// Diagnostic inverse of make_ghz: recognizes a polarization SparseKet as a
/// GHZ basis element (support {b, b_bar}, amplitudes 1/sqrt(2) with relative
/// sign +-1, all within tol), nullopt otherwise.
std::optional<GhzPolState> classify_ghz(const SparseKet &state, double tol = 1e-12);

}  // namespace photonec
