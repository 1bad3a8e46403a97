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
#include <random>

#include <gtest/gtest.h>

#include "magiclab/commutant.hpp"
#include "magiclab/proptest.hpp"
#include "magiclab/states.hpp"
#include "oracles.hpp"

using magiclab::CMatrix;
using magiclab::RMatrix;

TEST(Commutant, CountsMatchProductFormula) {
    const std::vector<std::uint64_t> want{2, 6, 30, 270, 4590};
    for (int k = 2; k <= 6; ++k) {
        EXPECT_EQ(magiclab::commutant_size(k), want[static_cast<std::size_t>(k - 2)]);
        const auto basis = magiclab::enumerate_monomials(k);
        EXPECT_EQ(basis.size(), want[static_cast<std::size_t>(k - 2)]);
        EXPECT_EQ(basis.factors.size(), basis.size());
    }
}

TEST(Commutant, RejectsOutOfRangeK) {
    EXPECT_THROW(magiclab::enumerate_monomials(1), std::invalid_argument);
    EXPECT_THROW(magiclab::enumerate_monomials(7), magiclab::ResourceError);
}

TEST(Commutant, SmallKAreCopyPermutations) {
    const auto two = magiclab::enumerate_monomials(2);
    std::vector<CMatrix> perms{oracle::copy_permutation({0, 1}), oracle::copy_permutation({1, 0})};
    for (const auto &p : perms) {
        EXPECT_TRUE(std::any_of(two.factors.begin(), two.factors.end(),
                                [&](const CMatrix &f) { return magiclab::max_abs_diff(f, p) < 1e-12; }));
    }
    const auto three = magiclab::enumerate_monomials(3);
    for (const auto &f : three.factors) {
        EXPECT_TRUE(magiclab::is_copy_permutation(f, 3));
    }
}

TEST(Commutant, ElementsAreValidAndDistinct) {
    const auto basis = magiclab::enumerate_monomials(5);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        ASSERT_TRUE(magiclab::validate(basis.elements[i]).empty());
        ASSERT_LT(basis.elements[i].m(), 5);
        ASSERT_LT(magiclab::max_abs_diff(basis.factors[i], oracle::monomial_factor(basis.elements[i])), 1e-12);
    }
    const auto g = magiclab::single_qubit_gram(basis);
    for (Eigen::Index a = 0; a < g.rows(); ++a) {
        for (Eigen::Index b = a + 1; b < g.cols(); ++b) {
            ASSERT_LT(g(a, b), g(a, a));  // distinct unit-norm-scaled operators
        }
    }
}

TEST(Commutant, CommutesWithCliffordTensorPowers) {
    const int n = 2;
    const int k = 4;
    const auto basis = magiclab::enumerate_monomials(k);
    std::mt19937_64 rng(61);
    for (int t = 0; t < 20; ++t) {
        const CMatrix c = magiclab::clifford_unitary(magiclab::random_clifford(n, rng));
        const CMatrix ck = oracle::kron_power(c, k);
        for (std::size_t i = 0; i < basis.size(); i += 3) {
            const CMatrix op = magiclab::monomial_operator(basis.factors[i], k, n);
            ASSERT_LT(magiclab::max_abs_diff(ck * op, op * ck), 1e-10);
        }
    }
}

TEST(Gram, TwoCopiesClosedForm) {
    const auto basis = magiclab::enumerate_monomials(2);
    for (int n = 1; n <= 4; ++n) {
        const double d = std::pow(2.0, n);
        const auto g = magiclab::gram_matrix(basis, n);
        EXPECT_EQ(g.W(0, 0), d * d);
        EXPECT_EQ(g.W(1, 1), d * d);
        EXPECT_EQ(g.W(0, 1), d);
        const auto wg = magiclab::weingarten(basis, n);
        const double s = 1.0 / (d * d * d * d - d * d);
        EXPECT_NEAR(wg.Winv(0, 0), s * d * d, 1e-14);
        EXPECT_NEAR(wg.Winv(0, 1), -s * d, 1e-14);
    }
}

TEST(Gram, MatchesDenseTraces) {
    const int n = 2;
    const auto basis = magiclab::enumerate_monomials(3);
    const auto g = magiclab::gram_matrix(basis, n);
    for (std::size_t a = 0; a < basis.size(); ++a) {
        const CMatrix oa = magiclab::monomial_operator(basis.factors[a], 3, n);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const CMatrix ob = magiclab::monomial_operator(basis.factors[b], 3, n);
            ASSERT_NEAR(g.W(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)), (oa.adjoint() * ob).trace().real(),
                        1e-9);
        }
    }
}

TEST(Gram, IndependenceThreshold) {
    const auto b4 = magiclab::enumerate_monomials(4);
    EXPECT_FALSE(magiclab::independence_check(b4, 1));
    EXPECT_FALSE(magiclab::independence_check(b4, 2));
    EXPECT_TRUE(magiclab::independence_check(b4, 3));
    EXPECT_EQ(magiclab::gram_matrix(b4, 2).rank, 29u);
    EXPECT_EQ(magiclab::gram_matrix(b4, 3).rank, 30u);
    EXPECT_THROW(magiclab::weingarten(b4, 1), std::domain_error);
    const auto b3 = magiclab::enumerate_monomials(3);
    EXPECT_TRUE(magiclab::independence_check(b3, 2));
}

TEST(Gram, WeingartenInvertsGram) {
    const auto basis = magiclab::enumerate_monomials(4);
    const auto g = magiclab::weingarten(basis, 5);
    ASSERT_TRUE(g.invertible);
    const RMatrix prod = g.W * g.Winv;
    EXPECT_LT((prod - RMatrix::Identity(prod.rows(), prod.cols())).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Twirl, ProjectsOntoCommutant) {
    std::mt19937_64 rng(62);
    for (int k = 2; k <= 4; ++k) {
        const auto basis = magiclab::enumerate_monomials(k);
        const auto psi = magiclab::haar_state(2, rng);
        const auto rho = magiclab::state_moment(psi, k);
        const auto once = magiclab::clifford_twirl(rho, basis);
        const auto twice = magiclab::clifford_twirl(once, basis);
        EXPECT_LT(magiclab::max_abs_diff(once.op, twice.op), 1e-10) << k;
        EXPECT_NEAR(once.op.trace().real(), 1.0, 1e-10);
        const auto orbit = magiclab::orbit_moment(psi, k, magiclab::OrbitMode::enumerate);
        EXPECT_LT(magiclab::max_abs_diff(once.op, orbit.op), 1e-10) << k;
        const auto haar = magiclab::haar_moment(2, k);
        EXPECT_LT(magiclab::max_abs_diff(magiclab::clifford_twirl(haar, basis).op, haar.op), 1e-10);
    }
    EXPECT_THROW(magiclab::clifford_twirl(magiclab::haar_moment(1, 2), magiclab::enumerate_monomials(3)),
                 std::invalid_argument);
}

TEST(HaarMoment, Properties) {
    const auto one = magiclab::haar_moment(1, 1);
    EXPECT_LT(magiclab::max_abs_diff(one.op, CMatrix::Identity(2, 2) / 2.0), 1e-15);
    for (int n = 1; n <= 2; ++n) {
        for (int k = 2; k <= 4; ++k) {
            const auto h = magiclab::haar_moment(n, k);
            EXPECT_NEAR(h.op.trace().real(), 1.0, 1e-12);
            Eigen::SelfAdjointEigenSolver<CMatrix> es(h.op);
            EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12);
            const double nonzero = static_cast<double>((es.eigenvalues().array() > 1e-9).count());
            EXPECT_EQ(nonzero, magiclab::symmetric_dimension(n, k));
        }
    }
    EXPECT_DOUBLE_EQ(magiclab::symmetric_dimension(1, 6), 7.0);
}

TEST(HaarMoment, AveragePurityMatchesSampling) {
    // tr(Omega_6 Pi_sym)/tr(Pi_sym) is the Haar average of P_3 on one qubit.
    const auto h = magiclab::haar_moment(1, 6);
    const double exact = (magiclab::single_qubit_factor(magiclab::primitive(6)) * h.op).trace().real();
    std::mt19937_64 rng(63);
    double mc = 0.0;
    const int samples = 40000;
    for (int t = 0; t < samples; ++t) {
        mc += magiclab::stabilizer_purity(magiclab::haar_state(1, rng), 3);
    }
    mc /= samples;
    EXPECT_NEAR(exact, mc, 0.01);
    // (1 + 3 E[x^6]) / 2 with E[x^6] = 1/7 on the Bloch sphere.
    EXPECT_NEAR(exact, 5.0 / 7.0, 1e-12);
}

TEST(Commutant, JsonExport) {
    const auto basis = magiclab::enumerate_monomials(3);
    const auto j = magiclab::basis_to_json(basis);
    EXPECT_EQ(j.at("count").get<std::size_t>(), 6u);
    ASSERT_EQ(j.at("elements").size(), 6u);
    for (std::size_t i = 0; i < 6; ++i) {
        EXPECT_TRUE(magiclab::same_operator(magiclab::monomial_from_json(j.at("elements")[i]), basis.elements[i]));
    }
}
