// Copyright 2026 The magiclab Authors
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
#include <random>

#include <gtest/gtest.h>

#include "magiclab/pauli.hpp"
#include "magiclab/states.hpp"
#include "oracles.hpp"

using magiclab::PauliOp;

namespace {

PauliOp random_pauli(int n, std::mt19937_64 &rng) {
    magiclab::BitVector x(static_cast<std::size_t>(n)), z(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        x.set(static_cast<std::size_t>(j), rng() & 1u);
        z.set(static_cast<std::size_t>(j), rng() & 1u);
    }
    return PauliOp(x, z, static_cast<int>(rng() % 4));
}

}  // namespace

TEST(Pauli, LabelsMatchDenseMatrices) {
    for (const std::string label : {"X", "Y", "Z", "XIZ", "YYX", "IZYX"}) {
        const auto p = PauliOp::from_label(label);
        EXPECT_TRUE(p.is_hermitian());
        EXPECT_EQ(p.label(), label);
        EXPECT_LT(magiclab::max_abs_diff(magiclab::to_dense(p), oracle::pauli(label)), 1e-14) << label;
    }
    EXPECT_LT(magiclab::max_abs_diff(magiclab::to_dense(PauliOp::from_label("-XZ")), -oracle::pauli("XZ")), 1e-14);
    EXPECT_THROW(PauliOp::from_label("XQ"), std::invalid_argument);
}

TEST(Pauli, ProductMatchesDenseProduct) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const auto a = random_pauli(n, rng);
        const auto b = random_pauli(n, rng);
        const auto ab = magiclab::multiply(a, b);
        ASSERT_LT(magiclab::max_abs_diff(magiclab::to_dense(ab), magiclab::to_dense(a) * magiclab::to_dense(b)), 1e-12);
    }
}

TEST(Pauli, SymplecticFormDetectsCommutation) {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 200; ++t) {
        const auto a = random_pauli(3, rng);
        const auto b = random_pauli(3, rng);
        const auto da = magiclab::to_dense(a);
        const auto db = magiclab::to_dense(b);
        const bool commute = (da * db - db * da).norm() < 1e-12;
        ASSERT_EQ(magiclab::chi(a, b), commute ? 1 : -1);
    }
}

TEST(Pauli, TransposeSignMatchesDenseTrace) {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 100; ++t) {
        const auto p = random_pauli(2, rng);
        const auto d = magiclab::to_dense(p);
        const double want = (d * d.transpose()).trace().real() / 4.0;
        ASSERT_EQ(magiclab::xi(p), static_cast<int>(std::lround(want)));
    }
    EXPECT_EQ(magiclab::xi(PauliOp::from_label("Y")), -1);
    EXPECT_EQ(magiclab::xi(PauliOp::from_label("YY")), 1);
}

TEST(Pauli, ApplyMatchesDenseAction) {
    std::mt19937_64 rng(14);
    const auto psi = magiclab::haar_state(3, rng);
    for (int t = 0; t < 50; ++t) {
        const auto p = random_pauli(3, rng);
        ASSERT_LT((magiclab::apply_pauli(p, psi.amps()) - magiclab::to_dense(p) * psi.amps()).norm(), 1e-12);
    }
}

TEST(Pauli, SpectrumMatchesDenseExpectations) {
    const auto psi = magiclab::haar_state(3, std::uint64_t{15});
    const auto spec = magiclab::pauli_spectrum(psi);
    ASSERT_EQ(spec.size(), 64u);
    for (std::uint64_t i = 0; i < spec.size(); ++i) {
        const auto p = magiclab::pauli_from_index(3, i);
        const double want = psi.amps().dot(magiclab::to_dense(p) * psi.amps()).real();
        ASSERT_NEAR(spec[i], want, 1e-12) << p.label();
        ASSERT_NEAR(magiclab::expectation(psi, p), want, 1e-12);
    }
    EXPECT_NEAR(spec[0], 1.0, 1e-14);
}

TEST(Pauli, ExpectationRejectsNonHermitian) {
    const auto psi = magiclab::basis_zero(1);
    EXPECT_THROW(magiclab::expectation(psi, PauliOp::from_label("iX")), std::invalid_argument);
}

TEST(Pauli, SpectrumRespectsQubitCap) {
    const auto psi = magiclab::basis_zero(4);
    EXPECT_THROW(magiclab::pauli_spectrum(psi, 3), magiclab::ResourceError);
}
