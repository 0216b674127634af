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

#include "photonec/state.hpp"

#include <cmath>
#include <sstream>

namespace photonec {

namespace {

const char *spatial_token(Spatial s) {
    switch (s) {
        case Spatial::Fiber: return "f";
        case Spatial::Mode1: return "m1";
        case Spatial::Mode2: return "m2";
        case Spatial::Port0: return "p0";
        case Spatial::Port1: return "p1";
    }
    return "?";
}

const char *freq_token(Freq f) {
    switch (f) {
        case Freq::Omega1: return "w1";
        case Freq::Omega2: return "w2";
        case Freq::Erased: return "-";
    }
    return "?";
}

}  // namespace

uint64_t BasisKet::pol_bits() const {
    uint64_t bits = 0;
    for (size_t l = 0; l < labels.size(); ++l) {
        if (labels[l].pol) bits |= uint64_t{1} << l;
    }
    return bits;
}

std::string BasisKet::to_string() const {
    std::ostringstream out;
    for (size_t l = 0; l < labels.size(); ++l) {
        if (l) out << ' ';
        out << (labels[l].pol ? 'V' : 'H') << '.' << spatial_token(labels[l].spatial) << '.'
            << freq_token(labels[l].freq);
    }
    return out.str();
}

SparseKet SparseKet::from_terms(size_t n_photons, TermMap terms) {
    for (auto it = terms.begin(); it != terms.end();) {
        if (it->first.size() != n_photons) {
            throw Error(ErrorKind::Shape, "basis ket has " + std::to_string(it->first.size()) +
                                              " photons, expected " + std::to_string(n_photons));
        }
        if (std::abs(it->second) < kPruneThreshold) {
            it = terms.erase(it);
        } else {
            ++it;
        }
    }
    SparseKet ket;
    ket.n_photons_ = n_photons;
    ket.terms_ = std::move(terms);
    double n2 = ket.norm_squared();
    if (std::abs(n2 - 1.0) > kNormTolerance) {
        throw Error(ErrorKind::InvalidInput,
                    "state is not normalized: |psi|^2 = " + std::to_string(n2));
    }
    return ket;
}

amplitude_t SparseKet::amplitude(const BasisKet &k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? amplitude_t{0.0, 0.0} : it->second;
}

double SparseKet::norm_squared() const {
    double n2 = 0.0;
    for (const auto &[key, amp] : terms_) n2 += std::norm(amp);
    return n2;
}

std::string SparseKet::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (const auto &[key, amp] : terms_) {
        if (!first) out << " + ";
        out << "(" << amp.real() << (amp.imag() < 0 ? "-" : "+") << std::abs(amp.imag())
            << "i)|" << key.to_string() << ">";
        first = false;
    }
    return out.str();
}

amplitude_t inner_product(const SparseKet &x, const SparseKet &y) {
    if (x.n_photons() != y.n_photons()) {
        throw Error(ErrorKind::Shape, "inner product of states with different photon counts");
    }
    // Iterate the smaller support.
    const SparseKet &small = x.term_count() <= y.term_count() ? x : y;
    const SparseKet &large = x.term_count() <= y.term_count() ? y : x;
    bool conj_small = (&small == &x);
    amplitude_t acc{0.0, 0.0};
    for (const auto &[key, amp] : small.terms()) {
        amplitude_t other = large.amplitude(key);
        acc += conj_small ? std::conj(amp) * other : std::conj(other) * amp;
    }
    return acc;
}

bool equal_up_to_phase(const SparseKet &x, const SparseKet &y, double tol) {
    if (x.n_photons() != y.n_photons()) return false;
    // Anchor the relative phase on x's largest term.
    const BasisKet *anchor = nullptr;
    double best = 0.0;
    for (const auto &[key, amp] : x.terms()) {
        double m = std::abs(amp);
        if (m > best) {
            best = m;
            anchor = &key;
        }
    }
    if (anchor == nullptr) return y.term_count() == 0;
    amplitude_t ya = y.amplitude(*anchor);
    if (std::abs(ya) < tol) return false;
    amplitude_t phase = ya / x.amplitude(*anchor);
    if (std::abs(std::abs(phase) - 1.0) > tol) return false;
    for (const auto &[key, amp] : x.terms()) {
        if (std::abs(y.amplitude(key) - phase * amp) > tol) return false;
    }
    for (const auto &[key, amp] : y.terms()) {
        if (std::abs(amp - phase * x.amplitude(key)) > tol) return false;
    }
    return true;
}

double fidelity_to_ghz_plus(const SparseKet &state) {
    if (state.term_count() == 0) return 0.0;
    const BasisKet &ref = state.terms().begin()->first;
    for (const auto &[key, amp] : state.terms()) {
        for (size_t l = 0; l < key.size(); ++l) {
            if (key[l].spatial != ref[l].spatial || key[l].freq != ref[l].freq) {
                throw Error(ErrorKind::Factorization,
                            "state has non-uniform spatial/frequency labels; "
                            "measure those degrees of freedom first");
            }
        }
    }
    // Target terms |HH..H> and |VV..V> carrying the state's own labels.
    BasisKet all_h = ref, all_v = ref;
    for (size_t l = 0; l < ref.size(); ++l) {
        all_h[l].pol = 0;
        all_v[l].pol = 1;
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    amplitude_t overlap = inv_sqrt2 * (state.amplitude(all_h) + state.amplitude(all_v));
    return std::norm(overlap);
}

}  // namespace photonec
