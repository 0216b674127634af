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
#include <vector>

#include "photonec/protocol.hpp"

namespace photonec {

/// Brute-force reference engine: a dense state vector over the full
/// 30^N label space (2 polarizations x 5 spatial x 3 frequency per photon).
/// Completely separate storage and code path from SparseKet; element ops
/// walk every index. Intended for cross-checks at N <= 4.
class DenseState {
  public:
    static constexpr int kMaxParties = 4;
    static constexpr int kLabelsPerPhoton = 30;

    /// The four-term expanded initial state for one noise realization:
    /// polarization factor from g tensored with the intact spatial or
    /// frequency factor.
    static DenseState prepare(Protocol protocol, const GhzPolState &g);

    int n_parties() const { return n_; }
    const std::vector<amplitude_t> &amplitudes() const { return amps_; }

    void apply_hwp(int party);
    void apply_pbs(int party);
    void apply_wdm(int party);
    void apply_fs(int party);
    void apply_pauli_x(int party);
    void apply_pauli_z(int party);

    double norm_squared() const;

    /// Probability of each full port pattern; throws StageOrder if any
    /// occupied index has a photon away from the outports.
    std::map<uint64_t, double> port_pattern_probs() const;

    /// Renormalized polarization factor of one branch after the pattern's
    /// bit-flip corrections, indexed by packed polarization bits (party l at
    /// bit l; size 2^N).
    std::vector<amplitude_t> corrected_pol_factor(uint64_t pattern) const;

    /// Mirror of a sparse state in dense indexing, for comparisons.
    static std::vector<amplitude_t> from_sparse(const SparseKet &state);

    /// Mirror of a polarization-only sparse state (spatial Fiber, frequency
    /// Erased) as a packed 2^N polarization vector.
    static std::vector<amplitude_t> pol_vector_from_sparse(const SparseKet &state);

    static int label_index(const PhotonLabel &label);

  private:
    explicit DenseState(int n_parties);

    int n_ = 0;
    size_t dim_ = 0;
    std::vector<amplitude_t> amps_;
};

/// True when y = phase * x elementwise for a unit-modulus phase, within tol.
bool dense_equal_up_to_phase(const std::vector<amplitude_t> &x,
                             const std::vector<amplitude_t> &y, double tol = 1e-12);

}  // namespace photonec
