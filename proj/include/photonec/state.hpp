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

#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "photonec/errors.hpp"

namespace photonec {

using amplitude_t = std::complex<double>;

/// Where a photon currently sits along the optical train. Fiber is the
/// transmission channel; Mode1/Mode2 are the two interferometer arms;
/// Port0/Port1 are the two outputs of a polarizing beam splitter.
enum class Spatial : uint8_t { Fiber, Mode1, Mode2, Port0, Port1 };

/// Frequency mode of a photon. Erased means the frequency carries no
/// which-path information: either the experiment never used the frequency
/// degree of freedom, or a frequency shifter removed the distinguishability.
enum class Freq : uint8_t { Omega1, Omega2, Erased };

/// Basis state of one photon: polarization bit (0 = |H>, 1 = |V>), spatial
/// location, and frequency mode.
struct PhotonLabel {
    uint8_t pol = 0;
    Spatial spatial = Spatial::Fiber;
    Freq freq = Freq::Erased;

    auto operator<=>(const PhotonLabel &) const = default;
};

/// Ordered list of N photon labels; position l belongs to party l
/// (party 0 = Alice, party 1 = Bob, ...).
struct BasisKet {
    std::vector<PhotonLabel> labels;

    BasisKet() = default;
    explicit BasisKet(std::vector<PhotonLabel> l) : labels(std::move(l)) {}

    size_t size() const { return labels.size(); }
    PhotonLabel &operator[](size_t i) { return labels[i]; }
    const PhotonLabel &operator[](size_t i) const { return labels[i]; }

    auto operator<=>(const BasisKet &) const = default;

    /// Polarization bits packed with party l at bit l.
    uint64_t pol_bits() const;

    /// One token per photon, e.g. "V.m2.w1" or "H.f.-".
    std::string to_string() const;
};

/// Finite superposition over N-photon basis labels. The protocol states
/// stay tiny (at most four terms), so terms live in an ordered map keyed by
/// BasisKet; the ordering also makes every iteration deterministic.
///
/// Invariants, enforced at construction:
///   - every key has exactly n_photons labels,
///   - amplitudes below kPruneThreshold are dropped,
///   - the squared norm is 1 within kNormTolerance.
class SparseKet {
  public:
    using TermMap = std::map<BasisKet, amplitude_t>;

    static constexpr double kPruneThreshold = 1e-15;
    static constexpr double kNormTolerance = 1e-12;
    static constexpr double kPhaseTolerance = 1e-12;

    SparseKet() = default;

    /// Builds a normalized state from raw terms. Throws Shape if a key has
    /// the wrong arity, InvalidInput if the pruned state is not normalized.
    static SparseKet from_terms(size_t n_photons, TermMap terms);

    size_t n_photons() const { return n_photons_; }
    const TermMap &terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }

    /// Amplitude of one basis ket, 0 if absent.
    amplitude_t amplitude(const BasisKet &k) const;

    double norm_squared() const;

    std::string to_string() const;

  private:
    size_t n_photons_ = 0;
    TermMap terms_;
};

/// <x|y> over the orthonormal label basis. Throws Shape on arity mismatch.
amplitude_t inner_product(const SparseKet &x, const SparseKet &y);

/// True when y = phase * x for some unit-modulus phase, amplitude-wise
/// within tol. This is the only state equality the engine defines: the
/// interferometer algebra moves global signs around freely.
bool equal_up_to_phase(const SparseKet &x, const SparseKet &y,
                       double tol = SparseKet::kPhaseTolerance);

/// |<Phi+_N|state>|^2 where |Phi+_N> = (|HH..H> + |VV..V>)/sqrt(2) carries
/// the state's own (uniform) spatial/frequency labels. Throws Factorization
/// if the non-polarization labels differ between terms; measure first.
double fidelity_to_ghz_plus(const SparseKet &state);

}  // namespace photonec
