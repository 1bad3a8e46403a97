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
#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "magiclab/genpurity.hpp"
#include "magiclab/sre.hpp"
#include "magiclab/states.hpp"
#include "oracles.hpp"

using magiclab::StateVec;

TEST(StabilizerPurity, KnownValues) {
    EXPECT_NEAR(magiclab::stabilizer_purity(magiclab::basis_zero(3), 2), 1.0, 1e-14);
    EXPECT_NEAR(magiclab::stabilizer_purity(magiclab::t_state(), 2), 0.75, 1e-14);
    EXPECT_NEAR(magiclab::stabilizer_purity(magiclab::t_state(), 3), 0.625, 1e-14);
    EXPECT_NEAR(magiclab::stabilizer_purity(magiclab::tensor_power(magiclab::t_state(), 2), 2), 9.0 / 16.0, 1e-14);
}

TEST(StabilizerPurity, MatchesDensePauliSum) {
    std::mt19937_64 rng(31);
    for (int n = 1; n <= 3; ++n) {
        const auto psi = magiclab::haar_state(n, rng);
        for (int a = 2; a <= 4; ++a) {
            EXPECT_NEAR(magiclab::stabilizer_purity(psi, a), oracle::stabilizer_purity(psi, a), 1e-12);
        }
    }
}

TEST(StabilizerPurity, RejectsSmallAlpha) {
    EXPECT_THROW(magiclab::stabilizer_purity(magiclab::t_state(), 1), std::invalid_argument);
    EXPECT_THROW(magiclab::purity_via_omega(magiclab::t_state(), 1), std::invalid_argument);
}

TEST(StabilizerEntropy, KnownValuesAndAdditivity) {
    EXPECT_EQ(magiclab::stabilizer_entropy(magiclab::basis_zero(2), 2), 0.0);
    EXPECT_NEAR(magiclab::stabilizer_entropy(magiclab::t_state(), 2), std::log2(4.0 / 3.0), 1e-12);
    EXPECT_NEAR(magiclab::stabilizer_entropy(magiclab::tensor_power(magiclab::t_state(), 2), 2), 2 * std::log2(4.0 / 3.0),
                1e-12);
    const auto a = magiclab::haar_state(1, std::uint64_t{1});
    const auto b = magiclab::haar_state(2, std::uint64_t{2});
    for (int alpha = 2; alpha <= 4; ++alpha) {
        EXPECT_NEAR(magiclab::stabilizer_entropy(magiclab::tensor(a, b), alpha),
                    magiclab::stabilizer_entropy(a, alpha) + magiclab::stabilizer_entropy(b, alpha), 1e-10);
    }
}

TEST(StabilizerEntropy, ReportIsConsistent) {
    const magiclab::PurityCalculator calc(magiclab::haar_state(2, std::uint64_t{3}));
    for (int a = 2; a <= 4; ++a) {
        const auto r = calc.report(a);
        EXPECT_NEAR(r.entropy, -std::log2(r.purity) / (a - 1), 1e-12);
        EXPECT_LE(r.purity, 1.0);
        EXPECT_GE(r.entropy, 0.0);
    }
}

TEST(StabilizerEntropy, TStateClosedForm) {
    for (int a = 2; a <= 5; ++a) {
        EXPECT_NEAR(magiclab::t_state_entropy(a), magiclab::stabilizer_entropy(magiclab::t_state(), a), 1e-12);
    }
}

TEST(StabilizerEntropy, CliffordInvariance) {
    std::mt19937_64 rng(32);
    for (int t = 0; t < 10; ++t) {
        const auto psi = magiclab::haar_state(3, rng);
        const auto moved = magiclab::apply_clifford(magiclab::random_clifford(3, rng), psi);
        for (int a = 2; a <= 3; ++a) {
            EXPECT_NEAR(magiclab::stabilizer_entropy(moved, a), magiclab::stabilizer_entropy(psi, a), 1e-10);
        }
    }
}

TEST(StabilizerEntropy, DetectsStabilizerStates) {
    for (std::uint64_t s = 0; s < 5; ++s) {
        EXPECT_TRUE(magiclab::is_stabilizer_state(magiclab::random_stabilizer_state(3, s)));
    }
    EXPECT_FALSE(magiclab::is_stabilizer_state(magiclab::t_state()));
}

TEST(PurityHierarchy, HoldsOnRandomStates) {
    std::mt19937_64 rng(33);
    double worst = 1.0;
    for (int t = 0; t < 200; ++t) {
        const auto psi = magiclab::haar_state(1 + static_cast<int>(t % 3), rng);
        const magiclab::PurityCalculator calc(psi);
        for (int a = 2; a <= 4; ++a) {
            const double pa = calc.purity(a);
            const double pb = calc.purity(a + 1);
            worst = std::min({worst, pb - std::pow(pa, a / (a - 1.0)), pa - pb});
        }
    }
    EXPECT_GE(worst, -1e-10);
}

TEST(PurityViaOmega, AgreesWithSpectrum) {
    EXPECT_NEAR(magiclab::purity_via_omega(magiclab::basis_zero(1), 2), 1.0, 1e-12);
    EXPECT_NEAR(magiclab::purity_via_omega(magiclab::t_state(), 3), 0.625, 1e-12);
    const auto psi = magiclab::haar_state(2, std::uint64_t{34});
    for (int a = 2; a <= 3; ++a) {
        EXPECT_NEAR(magiclab::purity_via_omega(psi, a), magiclab::stabilizer_purity(psi, a), 1e-9);
    }
}

TEST(DistillationBound, Examples) {
    EXPECT_NEAR(magiclab::distillation_rate_bound(magiclab::t_state(), 2), 1.0, 1e-12);
    EXPECT_NEAR(magiclab::distillation_rate_bound(magiclab::tensor_power(magiclab::t_state(), 2), 2), 2.0, 1e-12);
    EXPECT_EQ(magiclab::distillation_rate_bound(magiclab::basis_zero(1), 2), 0.0);
}
