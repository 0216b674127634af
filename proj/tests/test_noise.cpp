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

#include <cmath>
#include <map>

#include "photonec/elements.hpp"
#include "photonec/noise.hpp"
#include "test_util.hpp"

using namespace photonec;
using namespace photonec::test;

namespace {

// Binomial 4-sigma acceptance band for `count` successes out of `total`
// draws at probability p. Zero-probability bins must stay empty.
bool within_4sigma(uint64_t count, uint64_t total, double p) {
    if (p == 0.0) return count == 0;
    double expected = static_cast<double>(total) * p;
    double sigma = std::sqrt(static_cast<double>(total) * p * (1.0 - p));
    return std::abs(static_cast<double>(count) - expected) <= 4.0 * sigma;
}

GhzPolState g(const std::string &bits, const std::string &sign) {
    return GhzPolState::parse(bits, sign);
}

}  // namespace

TEST_CASE("single pauli moves within the ghz basis") {
    CHECK(apply_pauli(g("000", "+"), 0, PauliOp::X) == g("100", "+"));
    CHECK(apply_pauli(g("000", "+"), 2, PauliOp::X) == g("001", "+"));
    CHECK(apply_pauli(g("000", "+"), 1, PauliOp::Z) == g("000", "-"));
    CHECK(apply_pauli(g("000", "+"), 0, PauliOp::Y) == g("100", "-"));
    CHECK(apply_pauli(g("011", "-"), 1, PauliOp::X) == g("001", "-"));
    CHECK(apply_pauli(g("011", "-"), 0, PauliOp::I) == g("011", "-"));
}

TEST_CASE("pauli closure is exhaustive for up to four parties") {
    // Every single-party Pauli maps a basis state to a basis state, agreeing
    // with the state-vector calculation done with the element gates.
    for (int n = 2; n <= 4; ++n) {
        for (uint64_t b = 0; b < (uint64_t{1} << n); b += 2) {
            for (Sign sign : {Sign::Plus, Sign::Minus}) {
                GhzPolState in = GhzPolState::canonical(b, n, sign);
                for (int party = 0; party < n; ++party) {
                    for (PauliOp op : {PauliOp::I, PauliOp::X, PauliOp::Y, PauliOp::Z}) {
                        GhzPolState out = apply_pauli(in, party, op);
                        SparseKet expected = make_ghz(out);

                        SparseKet sv = make_ghz(in);
                        if (op == PauliOp::X || op == PauliOp::Y) {
                            sv = apply_pauli_x(sv, party);
                        }
                        if (op == PauliOp::Z || op == PauliOp::Y) {
                            sv = apply_pauli_z(sv, party);
                        }
                        CHECK(equal_up_to_phase(sv, expected));
                    }
                }
            }
        }
    }
}

TEST_CASE("mixture construction canonicalizes and merges") {
    GhzMixture m = GhzMixture::from_weights({
        {g("000", "+"), 0.25},
        {GhzPolState{bits_from_string("111"), 3, Sign::Plus}, 0.25},  // same state as 000+
        {g("010", "-"), 0.5},
    });
    REQUIRE(m.weights().size() == 2);
    CHECK(close(m.weights().at(g("000", "+")), 0.5));
    CHECK(close(m.weights().at(g("010", "-")), 0.5));
}

TEST_CASE("mixture construction rejects bad weights") {
    try {
        GhzMixture::from_weights({{g("000", "+"), 0.5}, {g("010", "+"), 0.4}});
        FAIL("expected rejection of sum 0.9");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::InvalidInput);
    }
    CHECK_THROWS_AS(GhzMixture::from_weights({{g("000", "+"), 1.2}, {g("010", "+"), -0.2}}),
                    Error);
    CHECK_THROWS_AS(GhzMixture::from_weights({{g("000", "+"), 0.5}, {g("00", "+"), 0.5}}),
                    Error);
    CHECK_THROWS_AS(GhzMixture::from_weights({}), Error);
}

TEST_CASE("point mass always samples its only state") {
    GhzMixture m = GhzMixture::from_weights({{g("000", "+"), 1.0}});
    Rng rng = Rng::for_trial(7, 0);
    for (int i = 0; i < 100; ++i) CHECK(sample_ghz(m, rng) == g("000", "+"));
}

TEST_CASE("uniform mixture covers every basis state evenly") {
    GhzMixture m = GhzMixture::uniform(3);
    REQUIRE(m.weights().size() == 8);
    for (const auto &[state, p] : m.weights()) CHECK(close(p, 0.125));

    std::map<GhzPolState, uint64_t> histogram;
    const uint64_t trials = 100000;
    for (uint64_t t = 0; t < trials; ++t) {
        Rng rng = Rng::for_trial(20260816, t);
        histogram[m.sample(rng)] += 1;
    }
    CHECK(histogram.size() == 8);
    for (const auto &[state, count] : histogram) {
        CHECK(within_4sigma(count, trials, 0.125));
    }
}

TEST_CASE("sampling is reproducible per trial stream") {
    GhzMixture m = GhzMixture::uniform(4);
    for (uint64_t t : {uint64_t{0}, uint64_t{3}, uint64_t{999}}) {
        Rng a = Rng::for_trial(5, t);
        Rng b = Rng::for_trial(5, t);
        CHECK(m.sample(a) == m.sample(b));
    }
}

TEST_CASE("channel construction validates quadruples") {
    CHECK_THROWS_AS(PauliChannel({{1.0, 0.0, 0.0, 0.0}}), Error);  // one party only
    CHECK_THROWS_AS(PauliChannel({{0.5, 0.4, 0.0, 0.0}, {1.0, 0.0, 0.0, 0.0}}), Error);
    CHECK_THROWS_AS(PauliChannel({{1.2, -0.2, 0.0, 0.0}, {1.0, 0.0, 0.0, 0.0}}), Error);
    PauliChannel ok({{0.9, 0.1, 0.0, 0.0}, {0.9, 0.1, 0.0, 0.0}});
    CHECK(ok.n_parties() == 2);
}

TEST_CASE("identity channel is a point mass") {
    PauliChannel id({{1.0, 0.0, 0.0, 0.0}, {1.0, 0.0, 0.0, 0.0}, {1.0, 0.0, 0.0, 0.0}});
    GhzMixture out = pauli_to_ghz_mixture(id, g("000", "+"));
    REQUIRE(out.weights().size() == 1);
    CHECK(close(out.weights().at(g("000", "+")), 1.0));
}

TEST_CASE("single-party bit flip splits the point mass") {
    // q on party 0 of a two-party channel: bitstring 10 canonicalizes to 01.
    double q = 0.3;
    PauliChannel ch({{1.0 - q, q, 0.0, 0.0}, {1.0, 0.0, 0.0, 0.0}});
    GhzMixture out = pauli_to_ghz_mixture(ch, g("00", "+"));
    REQUIRE(out.weights().size() == 2);
    CHECK(close(out.weights().at(g("00", "+")), 1.0 - q));
    CHECK(close(out.weights().at(g("01", "+")), q));
}

TEST_CASE("channel mixtures conserve probability") {
    PauliChannel ch({{0.7, 0.1, 0.1, 0.1}, {0.25, 0.25, 0.25, 0.25}, {0.4, 0.3, 0.2, 0.1}});
    for (uint64_t b = 0; b < 8; b += 2) {
        for (Sign s : {Sign::Plus, Sign::Minus}) {
            GhzMixture out = pauli_to_ghz_mixture(ch, GhzPolState::canonical(b, 3, s));
            double sum = 0.0;
            for (const auto &[state, p] : out.weights()) sum += p;
            CHECK(close(sum, 1.0, 1e-12));
        }
    }
}

TEST_CASE("sampled channel matches its analytic mixture") {
    PauliChannel ch({{0.7, 0.1, 0.1, 0.1}, {0.8, 0.0, 0.2, 0.0}, {0.6, 0.0, 0.0, 0.4}});
    GhzPolState input = g("010", "+");
    GhzMixture expected = pauli_to_ghz_mixture(ch, input);

    std::map<GhzPolState, uint64_t> histogram;
    const uint64_t trials = 100000;
    for (uint64_t t = 0; t < trials; ++t) {
        Rng rng = Rng::for_trial(99, t);
        histogram[ch.sample(input, rng)] += 1;
    }
    for (uint64_t b = 0; b < 8; b += 2) {
        for (Sign s : {Sign::Plus, Sign::Minus}) {
            GhzPolState state = GhzPolState::canonical(b, 3, s);
            auto it = expected.weights().find(state);
            double p = it == expected.weights().end() ? 0.0 : it->second;
            uint64_t count = histogram.count(state) ? histogram.at(state) : 0;
            CHECK(within_4sigma(count, trials, p));
        }
    }
}

TEST_CASE("noise sample carries the intact backup factor") {
    SparseKet spatial = apply_noise_sample(Protocol::Spatial, g("000", "+"));
    CHECK(spatial.terms() == attach_spatial_entanglement(make_ghz(3, "000", Sign::Plus)).terms());

    SparseKet freq = apply_noise_sample(Protocol::Frequency, g("100", "-"));
    CHECK(freq.terms() ==
          attach_frequency_entanglement(make_ghz(3, "100", Sign::Minus)).terms());
    CHECK(close(freq.norm_squared(), 1.0));
}

TEST_CASE("classification inverts construction") {
    for (int n = 2; n <= 4; ++n) {
        for (uint64_t b = 0; b < (uint64_t{1} << n); b += 2) {
            for (Sign s : {Sign::Plus, Sign::Minus}) {
                GhzPolState in = GhzPolState::canonical(b, n, s);
                auto out = classify_ghz(make_ghz(in));
                REQUIRE(out.has_value());
                CHECK(*out == in);
            }
        }
    }
    // Not a GHZ basis element: product state |HH>.
    SparseKet::TermMap terms;
    terms[ket("HH")] = 1.0;
    CHECK_FALSE(classify_ghz(SparseKet::from_terms(2, std::move(terms))).has_value());
}
