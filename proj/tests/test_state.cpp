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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>

#include "photonec/ghz.hpp"
#include "photonec/state.hpp"
#include "test_util.hpp"

using namespace photonec;
using namespace photonec::test;

TEST_CASE("polarization bits pack party 0 at bit 0") {
    CHECK(ket("VHH").pol_bits() == 0b001);
    CHECK(ket("HVV").pol_bits() == 0b110);
    CHECK(ket("HHHH").pol_bits() == 0);
}

TEST_CASE("bitstring helpers use party-0-first strings") {
    CHECK(bits_from_string("100") == 0b001);
    CHECK(bits_from_string("011") == 0b110);
    CHECK(bits_to_string(0b001, 3) == "100");
    CHECK(bits_to_string(0, 4) == "0000");
    CHECK_THROWS_AS(bits_from_string("0a1"), Error);
}

TEST_CASE("from_terms rejects mismatched arity") {
    SparseKet::TermMap terms;
    terms[ket("HH")] = kInvSqrt2;
    terms[ket("VVV")] = kInvSqrt2;
    try {
        SparseKet::from_terms(2, std::move(terms));
        FAIL("expected a shape error");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::Shape);
    }
}

TEST_CASE("from_terms rejects non-normalized states") {
    SparseKet::TermMap terms;
    terms[ket("HH")] = 0.5;
    terms[ket("VV")] = 0.5;
    try {
        SparseKet::from_terms(2, std::move(terms));
        FAIL("expected an invalid-input error");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::InvalidInput);
    }
}

TEST_CASE("from_terms prunes amplitude dust") {
    SparseKet::TermMap terms;
    terms[ket("HH")] = 1.0;
    terms[ket("VV")] = 1e-16;
    SparseKet s = SparseKet::from_terms(2, std::move(terms));
    CHECK(s.term_count() == 1);
    CHECK(close(s.norm_squared(), 1.0));
}

TEST_CASE("ghz of all zeros is |HH..H> plus |VV..V>") {
    SparseKet s = make_ghz(3, "000", Sign::Plus);
    CHECK(s.term_count() == 2);
    CHECK(close(s.amplitude(ket("HHH")).real(), kInvSqrt2));
    CHECK(close(s.amplitude(ket("VVV")).real(), kInvSqrt2));
}

TEST_CASE("ghz of 100 has support {VHH, HVV}") {
    SparseKet s = make_ghz(3, "100", Sign::Plus);
    CHECK(close(s.amplitude(ket("VHH")).real(), kInvSqrt2));
    CHECK(close(s.amplitude(ket("HVV")).real(), kInvSqrt2));
    CHECK(s.amplitude(ket("HHH")) == amplitude_t{0.0});
}

TEST_CASE("complement bitstring names the same state") {
    SUBCASE("plus sign: exactly equal") {
        CHECK(make_ghz(3, "100", Sign::Plus).terms() == make_ghz(3, "011", Sign::Plus).terms());
    }
    SUBCASE("minus sign: equal up to a global sign only") {
        SparseKet a = make_ghz(3, "100", Sign::Minus);
        SparseKet b = make_ghz(3, "011", Sign::Minus);
        CHECK(equal_up_to_phase(a, b));
        // The hand-written (|VHH> - |HVV>)/sqrt(2) is the negative of the
        // canonical form; phase-sensitive comparison must not be used here.
        SparseKet::TermMap terms;
        terms[ket("VHH")] = kInvSqrt2;
        terms[ket("HVV")] = -kInvSqrt2;
        SparseKet hand = SparseKet::from_terms(3, std::move(terms));
        CHECK(equal_up_to_phase(a, hand));
        CHECK(inner_product(a, hand) != amplitude_t{1.0});
    }
}

TEST_CASE("ghz construction rejects bad shapes") {
    CHECK_THROWS_AS(make_ghz(1, "0", Sign::Plus), Error);
    try {
        make_ghz(3, "0100", Sign::Plus);
        FAIL("expected a shape error");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::Shape);
    }
}

TEST_CASE("canonical representative keeps bit 0 clear") {
    GhzPolState g = GhzPolState::parse("110", "-");
    CHECK(g.bits_string() == "001");
    CHECK(g.sign == Sign::Minus);
    CHECK(g.complement_bits() == bits_from_string("110"));
    CHECK(GhzPolState::parse("001", "-") == g);
}

TEST_CASE("attach_spatial_entanglement matches the hand expansion") {
    SparseKet s = attach_spatial_entanglement(make_ghz(3, "000", Sign::Plus));
    CHECK(s.term_count() == 4);
    CHECK(close(s.norm_squared(), 1.0));
    CHECK(close(s.amplitude(ket("HHH", Spatial::Mode1)).real(), 0.5));
    CHECK(close(s.amplitude(ket("HHH", Spatial::Mode2)).real(), 0.5));
    CHECK(close(s.amplitude(ket("VVV", Spatial::Mode1)).real(), 0.5));
    CHECK(close(s.amplitude(ket("VVV", Spatial::Mode2)).real(), 0.5));
}

TEST_CASE("attach_frequency_entanglement matches the hand expansion") {
    SparseKet s = attach_frequency_entanglement(make_ghz(2, "00", Sign::Plus));
    CHECK(s.term_count() == 4);
    CHECK(close(s.amplitude(ket("HH", Spatial::Fiber, Freq::Omega1)).real(), 0.5));
    CHECK(close(s.amplitude(ket("HH", Spatial::Fiber, Freq::Omega2)).real(), 0.5));
    CHECK(close(s.amplitude(ket("VV", Spatial::Fiber, Freq::Omega1)).real(), 0.5));
    CHECK(close(s.amplitude(ket("VV", Spatial::Fiber, Freq::Omega2)).real(), 0.5));
}

TEST_CASE("the two backup entanglements are alternatives, not companions") {
    SparseKet pol = make_ghz(2, "00", Sign::Plus);
    SparseKet spatial = attach_spatial_entanglement(pol);
    SparseKet freq = attach_frequency_entanglement(pol);
    CHECK_THROWS_AS(attach_spatial_entanglement(spatial), Error);
    CHECK_THROWS_AS(attach_frequency_entanglement(freq), Error);
    try {
        attach_spatial_entanglement(freq);
        FAIL("expected a stage-order error");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::StageOrder);
    }
    CHECK_THROWS_AS(attach_frequency_entanglement(spatial), Error);
}

TEST_CASE("inner product on the ghz family") {
    SparseKet p = make_ghz(3, "000", Sign::Plus);
    CHECK(close(std::abs(inner_product(p, p)), 1.0));
    CHECK(close(std::abs(inner_product(p, make_ghz(3, "000", Sign::Minus))), 0.0));
    CHECK(close(std::abs(inner_product(p, make_ghz(3, "100", Sign::Plus))), 0.0));
    CHECK_THROWS_AS(inner_product(p, make_ghz(4, "0000", Sign::Plus)), Error);
}

TEST_CASE("ghz basis is orthonormal for up to five parties") {
    for (int n = 2; n <= 5; ++n) {
        std::vector<SparseKet> basis;
        for (uint64_t b = 0; b < (uint64_t{1} << (n - 1)); ++b) {
            basis.push_back(make_ghz(n, b << 1, Sign::Plus));
            basis.push_back(make_ghz(n, b << 1, Sign::Minus));
        }
        REQUIRE(basis.size() == (size_t{1} << n));
        for (size_t i = 0; i < basis.size(); ++i) {
            for (size_t j = 0; j < basis.size(); ++j) {
                double expected = i == j ? 1.0 : 0.0;
                CHECK(close(std::abs(inner_product(basis[i], basis[j])), expected));
            }
        }
    }
}

TEST_CASE("equality up to phase ignores a global phase and nothing else") {
    SparseKet s = make_ghz(3, "010", Sign::Plus);
    SparseKet::TermMap flipped;
    for (const auto &[k, a] : s.terms()) flipped[k] = -a;
    CHECK(equal_up_to_phase(s, SparseKet::from_terms(3, std::move(flipped))));

    std::complex<double> phase = std::polar(1.0, 0.7);
    SparseKet::TermMap rotated;
    for (const auto &[k, a] : s.terms()) rotated[k] = phase * a;
    CHECK(equal_up_to_phase(s, SparseKet::from_terms(3, std::move(rotated))));

    CHECK_FALSE(equal_up_to_phase(s, make_ghz(3, "010", Sign::Minus)));
    CHECK_FALSE(equal_up_to_phase(s, make_ghz(3, "000", Sign::Plus)));
}

TEST_CASE("fidelity against the all-equal ghz state") {
    CHECK(close(fidelity_to_ghz_plus(make_ghz(3, "000", Sign::Plus)), 1.0));
    CHECK(close(fidelity_to_ghz_plus(make_ghz(3, "000", Sign::Minus)), 0.0));
    CHECK(close(fidelity_to_ghz_plus(make_ghz(3, "100", Sign::Plus)), 0.0));
}

TEST_CASE("fidelity refuses states with a live routing factor") {
    SparseKet s = attach_spatial_entanglement(make_ghz(2, "00", Sign::Plus));
    try {
        fidelity_to_ghz_plus(s);
        FAIL("expected a factorization error");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::Factorization);
    }
}

TEST_CASE("normalization holds after construction and attachment") {
    for (int n = 2; n <= 6; ++n) {
        for (uint64_t b = 0; b < (uint64_t{1} << (n - 1)); ++b) {
            for (Sign s : {Sign::Plus, Sign::Minus}) {
                SparseKet pol = make_ghz(n, b << 1, s);
                CHECK(close(pol.norm_squared(), 1.0));
                CHECK(close(attach_spatial_entanglement(pol).norm_squared(), 1.0));
                CHECK(close(attach_frequency_entanglement(pol).norm_squared(), 1.0));
            }
        }
    }
}
