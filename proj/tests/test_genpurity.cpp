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
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "magiclab/commutant.hpp"
#include "magiclab/genpurity.hpp"
#include "magiclab/states.hpp"
#include "oracles.hpp"

using magiclab::CMatrix;
using magiclab::CVector;
using magiclab::StateVec;

namespace {

// <psi^{(x)k}| omega^{(x)n} |psi^{(x)k}> with omega^{(x)n} built qubit-major by kron
// and psi^{(x)k} reordered to match by explicit index shuffling.
magiclab::cplx dense_expectation(const StateVec &psi, const CMatrix &omega, int k) {
    const int n = psi.n();
    const CMatrix big = oracle::kron_power(omega, n);
    const std::uint64_t dim = std::uint64_t{1} << (n * k);
    CVector v(static_cast<Eigen::Index>(dim));
    for (std::uint64_t idx = 0; idx < dim; ++idx) {
        // idx is qubit-major: qubit j's k-bit block, copy 0 most significant in the block.
        magiclab::cplx amp = 1.0;
        for (int a = 0; a < k; ++a) {
            std::uint64_t b = 0;
            for (int j = 0; j < n; ++j) {
                const int bit = (n - 1 - j) * k + (k - 1 - a);
                b |= ((idx >> bit) & 1u) << (n - 1 - j);
            }
            amp *= psi[static_cast<Eigen::Index>(b)];
        }
        v[static_cast<Eigen::Index>(idx)] = amp;
    }
    return v.dot(big * v);
}

}  // namespace

TEST(GeneralizedPurity, MatchesDenseExpectation) {
    std::mt19937_64 rng(51);
    for (int t = 0; t < 30; ++t) {
        const int k = 2 + static_cast<int>(rng() % 4);
        const int n = 1 + static_cast<int>(rng() % 2);
        const auto w = magiclab::random_monomial(k, rng);
        const auto psi = magiclab::haar_state(n, rng);
        const auto got = magiclab::generalized_expectation(psi, w);
        const auto want = dense_expectation(psi, oracle::monomial_factor(w), k);
        ASSERT_NEAR(std::abs(got - want), 0.0, 1e-10) << k << " " << n;
    }
}

TEST(GeneralizedPurity, KnownValues) {
    EXPECT_NEAR(magiclab::generalized_purity(magiclab::t_state(), magiclab::primitive(6)), 0.625, 1e-12);
    EXPECT_NEAR(magiclab::generalized_purity(magiclab::t_state(), magiclab::primitive(4)), 0.75, 1e-12);
    EXPECT_LT(magiclab::generalized_purity(magiclab::golden_state(), magiclab::omega_4444()), 1e-12);
    EXPECT_NEAR(magiclab::generalized_purity(magiclab::golden_state(), magiclab::primitive(4)),
                magiclab::stabilizer_purity(magiclab::golden_state(), 2), 1e-12);
}

TEST(GeneralizedPurity, StabilizerStatesSaturate) {
    for (int k = 2; k <= 4; ++k) {
        const auto basis = magiclab::enumerate_monomials(k);
        for (std::uint64_t s = 0; s < 3; ++s) {
            const auto sigma = magiclab::random_stabilizer_state(2, s);
            for (const auto &w : basis.elements) {
                ASSERT_NEAR(magiclab::generalized_purity(sigma, w), 1.0, 1e-10);
            }
        }
    }
}

TEST(GeneralizedPurity, MultiplicativeAndCliffordInvariant) {
    std::mt19937_64 rng(52);
    for (int t = 0; t < 10; ++t) {
        const auto w = magiclab::random_monomial(2 + static_cast<int>(rng() % 4), rng);
        const auto a = magiclab::haar_state(1, rng);
        const auto b = magiclab::haar_state(2, rng);
        EXPECT_NEAR(magiclab::generalized_purity(magiclab::tensor(a, b), w),
                    magiclab::generalized_purity(a, w) * magiclab::generalized_purity(b, w), 1e-10);
    }
    // Clifford invariance needs commutant elements, not arbitrary monomials.
    for (int k = 4; k <= 5; ++k) {
        const auto basis = magiclab::enumerate_monomials(k);
        for (int t = 0; t < 10; ++t) {
            const auto &w = basis.elements[rng() % basis.size()];
            const auto b = magiclab::haar_state(2, rng);
            const auto moved = magiclab::apply_clifford(magiclab::random_clifford(2, rng), b);
            EXPECT_NEAR(magiclab::generalized_purity(moved, w), magiclab::generalized_purity(b, w), 1e-10);
        }
    }
}

TEST(GeneralizedPurity, OmegaFormMatchesSpectrum) {
    std::mt19937_64 rng(53);
    const auto psi = magiclab::haar_state(2, rng);
    for (int a = 2; a <= 4; ++a) {
        EXPECT_NEAR(magiclab::purity_via_omega(psi, a), magiclab::stabilizer_purity(psi, a), 1e-10);
    }
}

TEST(CopyPermutations, DetectedExactly) {
    for (int k = 2; k <= 4; ++k) {
        std::vector<int> perm(static_cast<std::size_t>(k));
        std::iota(perm.begin(), perm.end(), 0);
        do {
            EXPECT_TRUE(magiclab::is_copy_permutation(oracle::copy_permutation(perm), k));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    EXPECT_FALSE(magiclab::is_copy_permutation(magiclab::single_qubit_factor(magiclab::primitive(4)), 4));
    EXPECT_FALSE(magiclab::is_copy_permutation(magiclab::single_qubit_factor(magiclab::primitive(6)), 6));
    for (int k = 2; k <= 5; ++k) {
        const auto basis = magiclab::enumerate_monomials(k);
        std::size_t perms = 0;
        for (const auto &f : basis.factors) {
            perms += magiclab::is_copy_permutation(f, k) ? 1 : 0;
        }
        std::size_t factorial = 1;
        for (int i = 2; i <= k; ++i) {
            factorial *= static_cast<std::size_t>(i);
        }
        EXPECT_EQ(perms, factorial) << k;
    }
}

TEST(CopyPermutations, ClassesShareValues) {
    const auto basis = magiclab::enumerate_monomials(4);
    const auto classes = magiclab::copy_permutation_classes(basis);
    std::size_t total = 0;
    const auto psi = magiclab::haar_state(2, std::uint64_t{54});
    for (const auto &c : classes) {
        total += c.members.size();
        const double ref = magiclab::generalized_purity(psi, basis.elements[c.representative]);
        for (auto i : c.members) {
            ASSERT_NEAR(magiclab::generalized_purity(psi, basis.elements[i]), ref, 1e-10);
        }
    }
    EXPECT_EQ(total, basis.size());
    EXPECT_LT(classes.size(), basis.size());
}

TEST(Dominance, NoViolationsOnRandomStates) {
    std::mt19937_64 rng(55);
    for (int k : {4, 5, 6}) {
        const auto basis = magiclab::enumerate_monomials(k);
        std::vector<magiclab::PauliMonomial> reps;
        for (const auto &c : magiclab::copy_permutation_classes(basis)) {
            reps.push_back(basis.elements[c.representative]);
        }
        for (int t = 0; t < 5; ++t) {
            const auto report = magiclab::check_p4_dominance(magiclab::haar_state(2, rng), reps);
            ASSERT_EQ(report.violations(), 0u) << k;
            ASSERT_LE(report.max_difference(), magiclab::kDominanceTolerance);
        }
    }
}

TEST(Dominance, PermutationsAreExemptNotFlagged) {
    const auto basis = magiclab::enumerate_monomials(3);
    const auto report = magiclab::check_p4_dominance(magiclab::t_state(), basis.elements);
    EXPECT_EQ(report.violations(), 0u);
    for (const auto &e : report.entries) {
        EXPECT_TRUE(e.permutation);
        EXPECT_NEAR(e.value, 1.0, 1e-12);
    }
}

TEST(PovmPair, ReconstructsExpectation) {
    std::mt19937_64 rng(56);
    for (int t = 0; t < 40; ++t) {
        const auto w = magiclab::random_monomial(2 + static_cast<int>(rng() % 5), rng);
        const auto pair = magiclab::measurement_povm_pair(w);
        // Both elements are effects: 0 <= Pi <= I.
        for (const CMatrix *p : {&pair.real_part, &pair.imag_part}) {
            Eigen::SelfAdjointEigenSolver<CMatrix> es(*p);
            ASSERT_GE(es.eigenvalues().minCoeff(), -1e-10);
            ASSERT_LE(es.eigenvalues().maxCoeff(), 1.0 + 1e-10);
        }
        const auto r = magiclab::povm_reconstruction(magiclab::haar_state(1, rng), w, pair);
        ASSERT_NEAR(std::abs(r.direct - r.reconstructed), 0.0, 1e-10);
    }
    EXPECT_THROW(magiclab::povm_reconstruction(magiclab::haar_state(2, std::uint64_t{1}), magiclab::primitive(4),
                                               magiclab::measurement_povm_pair(magiclab::primitive(4))),
                 std::invalid_argument);
}
