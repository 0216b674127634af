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

#include "photonec/dense_oracle.hpp"

#include <cmath>

namespace photonec {

namespace {

// Per-photon label digit: (pol * 5 + spatial) * 3 + freq, photon l is digit
// l of the base-30 index (least significant first).
struct LabelParts {
    int pol;
    Spatial spatial;
    Freq freq;
};

LabelParts decode_label(int digit) {
    LabelParts p;
    p.freq = static_cast<Freq>(digit % 3);
    digit /= 3;
    p.spatial = static_cast<Spatial>(digit % 5);
    p.pol = digit / 5;
    return p;
}

int encode_label(int pol, Spatial spatial, Freq freq) {
    return (pol * 5 + static_cast<int>(spatial)) * 3 + static_cast<int>(freq);
}

size_t pow30(int n) {
    size_t d = 1;
    for (int i = 0; i < n; ++i) d *= DenseState::kLabelsPerPhoton;
    return d;
}

}  // namespace

int DenseState::label_index(const PhotonLabel &label) {
    return encode_label(label.pol, label.spatial, label.freq);
}

DenseState::DenseState(int n_parties) : n_(n_parties), dim_(pow30(n_parties)) {
    if (n_parties < 2 || n_parties > kMaxParties) {
        throw Error(ErrorKind::InvalidArity, "dense reference supports 2.." +
                                                 std::to_string(kMaxParties) + " parties, got " +
                                                 std::to_string(n_parties));
    }
    amps_.assign(dim_, amplitude_t{0.0, 0.0});
}

DenseState DenseState::prepare(Protocol protocol, const GhzPolState &g) {
    DenseState state(g.n_parties);
    // Index of the basis ket with polarization string `bits`, every photon
    // on the fiber, and the degree-of-freedom branch `dof` (0 or 1).
    auto index_for = [&](uint64_t bits, int dof) {
        size_t idx = 0;
        size_t stride = 1;
        for (int l = 0; l < g.n_parties; ++l) {
            int pol = static_cast<int>((bits >> l) & 1);
            Spatial spatial = Spatial::Fiber;
            Freq freq = Freq::Erased;
            if (protocol == Protocol::Frequency) {
                freq = dof == 0 ? Freq::Omega1 : Freq::Omega2;
            }
            idx += stride * static_cast<size_t>(encode_label(pol, spatial, freq));
            stride *= kLabelsPerPhoton;
        }
        return idx;
    };
    // For the spatial protocol the entangled factor lives on the spatial
    // labels instead.
    auto index_for_spatial = [&](uint64_t bits, int dof) {
        size_t idx = 0;
        size_t stride = 1;
        for (int l = 0; l < g.n_parties; ++l) {
            int pol = static_cast<int>((bits >> l) & 1);
            Spatial spatial = dof == 0 ? Spatial::Mode1 : Spatial::Mode2;
            idx += stride * static_cast<size_t>(encode_label(pol, spatial, Freq::Erased));
            stride *= kLabelsPerPhoton;
        }
        return idx;
    };
    const double half = 0.5;
    const double s = g.sign == Sign::Plus ? 1.0 : -1.0;
    const uint64_t b = g.bits;
    const uint64_t bc = g.complement_bits();
    for (int dof = 0; dof < 2; ++dof) {
        size_t i_b = protocol == Protocol::Spatial ? index_for_spatial(b, dof) : index_for(b, dof);
        size_t i_c =
            protocol == Protocol::Spatial ? index_for_spatial(bc, dof) : index_for(bc, dof);
        state.amps_[i_b] += amplitude_t{half, 0.0};
        state.amps_[i_c] += amplitude_t{s * half, 0.0};
    }
    return state;
}

double DenseState::norm_squared() const {
    double n2 = 0.0;
    for (const amplitude_t &a : amps_) n2 += std::norm(a);
    return n2;
}

// All element ops share this walk: for every occupied index, rewrite the
// party's label digit and accumulate into the target index.
template <typename F>
static void dense_map_party(std::vector<amplitude_t> &amps, size_t dim, int n, int party, F f) {
    if (party < 0 || party >= n) {
        throw Error(ErrorKind::InvalidArity, "party out of range");
    }
    size_t stride = pow30(party);
    std::vector<amplitude_t> next(dim, amplitude_t{0.0, 0.0});
    for (size_t i = 0; i < dim; ++i) {
        if (amps[i] == amplitude_t{0.0, 0.0}) continue;
        int digit = static_cast<int>((i / stride) % DenseState::kLabelsPerPhoton);
        LabelParts parts = decode_label(digit);
        double phase = f(parts);
        int new_digit = encode_label(parts.pol, parts.spatial, parts.freq);
        size_t j = i - static_cast<size_t>(digit) * stride + static_cast<size_t>(new_digit) * stride;
        next[j] += amps[i] * phase;
    }
    amps = std::move(next);
}

void DenseState::apply_hwp(int party) {
    dense_map_party(amps_, dim_, n_, party, [](LabelParts &p) {
        if (p.spatial != Spatial::Mode1 && p.spatial != Spatial::Mode2) {
            throw Error(ErrorKind::StageOrder, "HWP needs the photon in an interferometer arm");
        }
        if (p.spatial == Spatial::Mode2) p.pol ^= 1;
        return 1.0;
    });
}

void DenseState::apply_pbs(int party) {
    dense_map_party(amps_, dim_, n_, party, [](LabelParts &p) {
        if (p.spatial == Spatial::Mode1) {
            p.spatial = p.pol ? Spatial::Port0 : Spatial::Port1;
        } else if (p.spatial == Spatial::Mode2) {
            p.spatial = p.pol ? Spatial::Port1 : Spatial::Port0;
        } else {
            throw Error(ErrorKind::StageOrder, "PBS needs the photon in an interferometer arm");
        }
        return 1.0;
    });
}

void DenseState::apply_wdm(int party) {
    dense_map_party(amps_, dim_, n_, party, [](LabelParts &p) {
        if (p.spatial != Spatial::Fiber) {
            throw Error(ErrorKind::StageOrder, "WDM needs the photon on the fiber");
        }
        if (p.freq == Freq::Erased) {
            throw Error(ErrorKind::MissingDof, "WDM needs a frequency mode to route by");
        }
        p.spatial = p.freq == Freq::Omega1 ? Spatial::Mode1 : Spatial::Mode2;
        return 1.0;
    });
}

void DenseState::apply_fs(int party) {
    dense_map_party(amps_, dim_, n_, party, [](LabelParts &p) {
        if (p.spatial != Spatial::Mode1 && p.spatial != Spatial::Mode2) {
            throw Error(ErrorKind::StageOrder,
                        "frequency shifter needs the photon in an interferometer arm");
        }
        p.freq = Freq::Erased;
        return 1.0;
    });
}

void DenseState::apply_pauli_x(int party) {
    dense_map_party(amps_, dim_, n_, party, [](LabelParts &p) {
        p.pol ^= 1;
        return 1.0;
    });
}

void DenseState::apply_pauli_z(int party) {
    dense_map_party(amps_, dim_, n_, party, [](LabelParts &p) { return p.pol ? -1.0 : 1.0; });
}

std::map<uint64_t, double> DenseState::port_pattern_probs() const {
    std::map<uint64_t, double> probs;
    for (size_t i = 0; i < dim_; ++i) {
        if (amps_[i] == amplitude_t{0.0, 0.0}) continue;
        uint64_t pattern = 0;
        size_t rest = i;
        for (int l = 0; l < n_; ++l) {
            LabelParts p = decode_label(static_cast<int>(rest % kLabelsPerPhoton));
            rest /= kLabelsPerPhoton;
            if (p.spatial == Spatial::Port1) {
                pattern |= uint64_t{1} << l;
            } else if (p.spatial != Spatial::Port0) {
                throw Error(ErrorKind::StageOrder,
                            "port measurement needs every photon at an outport");
            }
        }
        probs[pattern] += std::norm(amps_[i]);
    }
    return probs;
}

std::vector<amplitude_t> DenseState::corrected_pol_factor(uint64_t pattern) const {
    const size_t pol_dim = size_t{1} << n_;
    std::vector<amplitude_t> pol(pol_dim, amplitude_t{0.0, 0.0});
    double prob = 0.0;
    for (size_t i = 0; i < dim_; ++i) {
        if (amps_[i] == amplitude_t{0.0, 0.0}) continue;
        uint64_t bits = 0;
        bool matches = true;
        size_t rest = i;
        for (int l = 0; l < n_; ++l) {
            LabelParts p = decode_label(static_cast<int>(rest % kLabelsPerPhoton));
            rest /= kLabelsPerPhoton;
            uint64_t want = (pattern >> l) & 1;
            Spatial port = want ? Spatial::Port1 : Spatial::Port0;
            if (p.spatial != port) {
                matches = false;
                break;
            }
            if (p.pol) bits |= uint64_t{1} << l;
        }
        if (!matches) continue;
        prob += std::norm(amps_[i]);
        // X on every pattern-1 party: amplitude lands on the flipped string.
        pol[bits ^ pattern] += amps_[i];
    }
    if (prob <= 0.0) {
        throw Error(ErrorKind::InvalidInput, "branch has zero probability");
    }
    const double scale = 1.0 / std::sqrt(prob);
    for (amplitude_t &a : pol) a *= scale;
    return pol;
}

std::vector<amplitude_t> DenseState::from_sparse(const SparseKet &state) {
    const int n = static_cast<int>(state.n_photons());
    if (n < 2 || n > kMaxParties) {
        throw Error(ErrorKind::InvalidArity, "dense mirror supports 2.." +
                                                 std::to_string(kMaxParties) + " parties");
    }
    std::vector<amplitude_t> amps(pow30(n), amplitude_t{0.0, 0.0});
    for (const auto &[key, amp] : state.terms()) {
        size_t idx = 0;
        size_t stride = 1;
        for (int l = 0; l < n; ++l) {
            idx += stride * static_cast<size_t>(label_index(key[static_cast<size_t>(l)]));
            stride *= kLabelsPerPhoton;
        }
        amps[idx] += amp;
    }
    return amps;
}

std::vector<amplitude_t> DenseState::pol_vector_from_sparse(const SparseKet &state) {
    const int n = static_cast<int>(state.n_photons());
    std::vector<amplitude_t> pol(size_t{1} << n, amplitude_t{0.0, 0.0});
    for (const auto &[key, amp] : state.terms()) {
        for (size_t l = 0; l < key.size(); ++l) {
            if (key[l].spatial != Spatial::Fiber || key[l].freq != Freq::Erased) {
                throw Error(ErrorKind::Factorization,
                            "expected a bare polarization state (Fiber, Erased)");
            }
        }
        pol[key.pol_bits()] += amp;
    }
    return pol;
}

bool dense_equal_up_to_phase(const std::vector<amplitude_t> &x,
                             const std::vector<amplitude_t> &y, double tol) {
    if (x.size() != y.size()) return false;
    size_t anchor = 0;
    double best = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        double m = std::abs(x[i]);
        if (m > best) {
            best = m;
            anchor = i;
        }
    }
    if (best == 0.0) {
        for (const amplitude_t &a : y) {
            if (std::abs(a) > tol) return false;
        }
        return true;
    }
    if (std::abs(y[anchor]) < tol) return false;
    amplitude_t phase = y[anchor] / x[anchor];
    if (std::abs(std::abs(phase) - 1.0) > tol) return false;
    for (size_t i = 0; i < x.size(); ++i) {
        if (std::abs(y[i] - phase * x[i]) > tol) return false;
    }
    return true;
}

}  // namespace photonec
