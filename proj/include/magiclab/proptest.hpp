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

// Design error of Clifford orbits, stabilizer testing success probabilities,
// Helstrom discrimination and shot-level simulation of the Omega_6 test.

#ifndef MAGICLAB_PROPTEST_HPP
#define MAGICLAB_PROPTEST_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "magiclab/commutant.hpp"
#include "magiclab/common.hpp"
#include "magiclab/genpurity.hpp"
#include "magiclab/sre.hpp"
#include "magiclab/states.hpp"
#include "magiclab/statevec.hpp"

namespace magiclab {

/// Tolerance on unit trace and hermiticity of moment operators.
inline constexpr double kMomentTolerance = 1e-8;

/// 1/2 + 1/4 ||rho0 - rho1||_1.
inline double helstrom(const MomentOp &rho0, const MomentOp &rho1) {
    if (rho0.op.rows() != rho1.op.rows() || rho0.op.cols() != rho1.op.cols()) {
        throw std::invalid_argument("helstrom: dimension mismatch");
    }
    for (const auto *r : {&rho0, &rho1}) {
        if (std::abs(r->op.trace() - cplx(1.0)) > kMomentTolerance) {
            throw std::invalid_argument("helstrom: operator '" + r->label + "' is not unit trace");
        }
    }
    const CMatrix diff = rho0.op - rho1.op;
    const CMatrix herm = 0.5 * (diff + diff.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
    return 0.5 + 0.25 * es.eigenvalues().cwiseAbs().sum();
}

/// |psi><psi|^{(x) k} in copy-major layout.
inline MomentOp state_moment(const StateVec &psi, int k) {
    require_qubits(psi.n() * k, kMaxMomentQubits, "state_moment");
    CVector v = tensor_power(psi, k).amps();
    return {psi.n(), k, v * v.adjoint(), "state"};
}

enum class OrbitMode { enumerate, sample, weingarten };

namespace detail {

// Mean of v^{(x)k} v^{(x)k}^dagger over the supplied Cliffords, batched into GEMMs.
template <typename Next>
CMatrix orbit_average(const StateVec &psi, int k, std::size_t count, Next next) {
    const Eigen::Index dim = Eigen::Index{1} << (psi.n() * k);
    const std::size_t batch = 512;
    CMatrix acc = CMatrix::Zero(dim, dim);
    CMatrix cols(dim, static_cast<Eigen::Index>(batch));
    std::size_t filled = 0;
    auto flush = [&] {
        if (filled > 0) {
            const auto b = cols.leftCols(static_cast<Eigen::Index>(filled));
            acc.noalias() += b * b.adjoint();
            filled = 0;
        }
    };
    for (std::size_t i = 0; i < count; ++i) {
        cols.col(static_cast<Eigen::Index>(filled++)) = tensor_power(apply_clifford(next(), psi), k).amps();
        if (filled == batch) {
            flush();
        }
    }
    flush();
    return acc / static_cast<double>(count);
}

}  // namespace detail

/// Average of (C psi)(C psi)^dagger^{(x) k} over the Clifford group.
///
/// enumerate: all Cliffords, n <= 2. sample: `samples` uniform tableaux from `seed`.
/// weingarten: clifford_twirl of psi^{(x) k}.
inline MomentOp orbit_moment(const StateVec &psi, int k, OrbitMode mode, std::size_t samples = 0,
                             std::uint64_t seed = 0) {
    if (k < 1) {
        throw std::invalid_argument("orbit_moment requires k >= 1");
    }
    const int n = psi.n();
    require_qubits(n * k, kMaxMomentQubits, "orbit_moment");
    switch (mode) {
        case OrbitMode::enumerate: {
            if (n > 2) {
                throw std::invalid_argument("orbit_moment: enumeration needs n <= 2, use sample or weingarten");
            }
            const auto group = enumerate_clifford(n);
            std::size_t i = 0;
            return {n, k, detail::orbit_average(psi, k, group.size(), [&] { return group[i++]; }), "orbit:enumerate"};
        }
        case OrbitMode::sample: {
            if (samples == 0) {
                throw std::invalid_argument("orbit_moment: sample mode needs samples > 0");
            }
            std::mt19937_64 rng(seed);
            return {n, k, detail::orbit_average(psi, k, samples, [&] { return random_clifford(n, rng); }),
                    "orbit:sample"};
        }
        case OrbitMode::weingarten: {
            if (k == 1) {
                // The Clifford group is irreducible on one copy.
                const Eigen::Index d = Eigen::Index{1} << n;
                return {n, 1, CMatrix::Identity(d, d) / static_cast<double>(d), "orbit:weingarten"};
            }
            MomentOp out = clifford_twirl(state_moment(psi, k), enumerate_monomials(k));
            out.label = "orbit:weingarten";
            return out;
        }
    }
    throw std::invalid_argument("unknown orbit mode");
}

/// Delta = 1/2 ||orbit moment - Haar moment||_1, exact: enumeration for n <= 2,
/// the Weingarten twirl otherwise.
inline double design_error(const StateVec &psi, int k) {
    require_qubits(psi.n() * k, kMaxMomentQubits, "design_error");
    const OrbitMode mode = psi.n() <= 2 ? OrbitMode::enumerate : OrbitMode::weingarten;
    const MomentOp orbit = orbit_moment(psi, k, mode);
    const MomentOp haar = haar_moment(psi.n(), k);
    return 2.0 * (helstrom(orbit, haar) - 0.5);
}

struct DesignBounds {
    double lower = 0.0;            // P_6 - 1/d - 16/d^2, on Delta
    double upper = 0.0;            // 2^{k^2/2} P_4 + 2^{2k^2}/d, on Delta
    double q_lower = 0.0;          // 1/2 + lower/2
    double q_upper = 0.0;          // 1/2 + upper/2
    double q_lower_statement = 0;  // 1/2 + P_6/2 - 1/d, the headline form
    bool upper_binding = true;     // false when upper >= 1 (vacuous)
    bool lower_binding = true;     // false when lower <= 0 (vacuous)
};

/// Bounds on Delta from the stabilizer entropies, with 2^{-M_2} = P_4 and 2^{-2 M_3} = P_6.
inline DesignBounds design_error_bounds(const StateVec &psi, int k) {
    const PurityCalculator calc(psi);
    const double d = std::pow(2.0, psi.n());
    const double p4 = calc.purity(2);
    const double p6 = calc.purity(3);
    DesignBounds b;
    b.lower = p6 - 1.0 / d - 16.0 / (d * d);
    b.upper = std::pow(2.0, k * k / 2.0) * p4 + std::pow(2.0, 2.0 * k * k) / d;
    b.q_lower = 0.5 + 0.5 * b.lower;
    b.q_upper = 0.5 + 0.5 * b.upper;
    b.q_lower_statement = 0.5 + 0.5 * p6 - 1.0 / d;
    b.upper_binding = b.upper < 1.0;
    b.lower_binding = b.lower > 0.0;
    return b;
}

/// Success probability of the optimal single-shot Omega_6 test: 1/2 + 1/4 (1 - P_6).
inline double stab_test_success6(const StateVec &psi) { return 0.5 + 0.25 * (1.0 - stabilizer_purity(psi, 3)); }

struct SuccessBounds {
    double lower = 0.5;
    double upper = 0.5;
    double C = 0.0;
};

inline constexpr double kDefaultTolerantConstant = 116.0;

/// Amplified lower bound 1 - 1/2 ((1 + P_6)/2)^{floor(k/6)} (1/2 when k < 6), and
/// the upper bound 1/2 + 1/2 sqrt(1 - P_6^{k/C}).
inline SuccessBounds stab_test_success_bounds(const StateVec &psi, int k, double C = kDefaultTolerantConstant) {
    if (k < 1) {
        throw std::invalid_argument("stab_test_success_bounds requires k >= 1");
    }
    if (!(C > 0.0)) {
        throw std::invalid_argument("the constant C must be positive");
    }
    const double p6 = stabilizer_purity(psi, 3);
    SuccessBounds b;
    b.C = C;
    b.lower = k < 6 ? 0.5 : 1.0 - 0.5 * std::pow(0.5 * (1.0 + p6), k / 6);
    b.upper = 0.5 + 0.5 * std::sqrt(std::max(0.0, 1.0 - std::pow(p6, k / C)));
    return b;
}

/// Exact optimal success probability of telling the k-copy Clifford orbit of psi
/// from k copies of a uniformly random stabilizer state (n <= 2, by enumeration).
inline double stab_test_helstrom(const StateVec &psi, int k) {
    const MomentOp stab = orbit_moment(basis_zero(psi.n()), k, OrbitMode::enumerate);
    const MomentOp orbit = orbit_moment(psi, k, OrbitMode::enumerate);
    return helstrom(stab, orbit);
}

struct PovmSimulation {
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    std::uint64_t successes = 0;
    double rate = 0.0;
    double expected = 0.0;  // 1/2 + 1/4 (1 - P_6) from the simulated outcome probabilities
    double sigma = 0.0;     // binomial standard deviation of the rate
};

/// Shot-level simulation of {(I + Omega_6)/2, (I - Omega_6)/2}.
///
/// Each shot picks an arm with a fair coin: psi^{(x)6}, or sigma^{(x)6} for a random
/// stabilizer sigma. Outcome + means "stabilizer". Stabilizer states come from a
/// pool of 16 sampled states, each with its own computed outcome probability.
inline PovmSimulation simulate_povm_test(const StateVec &psi, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) {
        throw std::invalid_argument("simulate_povm_test needs shots > 0");
    }
    if (psi.n() * 6 > 26) {
        throw ResourceError("simulate_povm_test needs 6n <= 26 qubits");
    }
    const PauliMonomial w6 = primitive(6);
    const double p_plus_psi = 0.5 * (1.0 + generalized_expectation(psi, w6).real());
    std::mt19937_64 rng(seed);
    std::vector<double> p_plus_stab;
    for (int i = 0; i < 16; ++i) {
        const StateVec s = apply_clifford(random_clifford(psi.n(), rng), basis_zero(psi.n()));
        p_plus_stab.push_back(0.5 * (1.0 + generalized_expectation(s, w6).real()));
    }
    double mean_stab = 0.0;
    for (double p : p_plus_stab) {
        mean_stab += p;
    }
    mean_stab /= static_cast<double>(p_plus_stab.size());

    PovmSimulation out;
    out.shots = shots;
    out.seed = seed;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const bool stab_arm = uniform01(rng) < 0.5;
        if (stab_arm) {
            const double p = p_plus_stab[rng() % p_plus_stab.size()];
            out.successes += uniform01(rng) < p ? 1 : 0;
        } else {
            out.successes += uniform01(rng) < p_plus_psi ? 0 : 1;
        }
    }
    out.rate = static_cast<double>(out.successes) / static_cast<double>(shots);
    out.expected = 0.5 * mean_stab + 0.5 * (1.0 - p_plus_psi);
    out.sigma = std::sqrt(out.expected * (1.0 - out.expected) / static_cast<double>(shots));
    return out;
}

/// Combined report for one state and copy number.
struct TestReport {
    std::string state;
    std::string method;
    int n = 0;
    int k = 0;
    double M2 = 0.0;
    double M3 = 0.0;
    double p6 = 0.0;  // stab_test_success6
    bool has_delta = false;
    double delta = 0.0;
    DesignBounds design;
    SuccessBounds stab;
    std::vector<std::string> flags;

    // success_prob / lower_bound / upper_bound of the chosen task
    double success_prob = 0.5;
    double lower_bound = 0.5;
    double upper_bound = 1.0;
};

/// task "design": Delta and its bounds at k. task "stab": p6 and the amplified bounds at k with constant C.
inline TestReport run_property_test(const StateVec &psi, const std::string &state_label, int k, const std::string &task,
                                    double C = kDefaultTolerantConstant) {
    TestReport r;
    r.state = state_label;
    r.n = psi.n();
    r.k = k;
    const PurityCalculator calc(psi);
    r.M2 = calc.entropy(2);
    r.M3 = calc.entropy(3);
    r.p6 = 0.5 + 0.25 * (1.0 - calc.purity(3));
    if (task == "design") {
        r.method = psi.n() <= 2 ? "enumerate" : "weingarten";
        r.design = design_error_bounds(psi, k);
        r.delta = design_error(psi, k);
        r.has_delta = true;
        r.success_prob = 0.5 + 0.5 * r.delta;
        r.lower_bound = r.design.q_lower;
        r.upper_bound = r.design.q_upper;
        if (!r.design.upper_binding) {
            r.flags.emplace_back("upper bound non-binding at this scale");
        }
        if (!r.design.lower_binding) {
            r.flags.emplace_back("lower bound non-binding at this scale");
        }
        if (r.delta + 1e-9 < r.design.lower) {
            r.flags.emplace_back("lower bound violated");
        }
    } else if (task == "stab") {
        if (k < 6) {
            r.flags.emplace_back("k < 6: amplified lower bound undefined, reported as 1/2");
        }
        r.method = "formula";
        r.stab = stab_test_success_bounds(psi, k, C);
        r.success_prob = r.p6;
        r.lower_bound = r.stab.lower;
        r.upper_bound = r.stab.upper;
        r.flags.emplace_back("upper bound uses user-supplied constant C");
        if (r.stab.lower > r.stab.upper + 1e-12) {
            r.flags.emplace_back("lower exceeds upper for this C");
        }
    } else {
        throw std::invalid_argument("unknown test task '" + task + "' (expected design or stab)");
    }
    return r;
}

inline nlohmann::json report_to_json(const TestReport &r) {
    nlohmann::json j;
    j["state"] = r.state;
    j["n"] = r.n;
    j["k"] = r.k;
    j["method"] = r.method;
    j["M2"] = r.M2;
    j["M3"] = r.M3;
    j["p6"] = r.p6;
    j["delta"] = r.has_delta ? nlohmann::json(r.delta) : nlohmann::json(nullptr);
    j["q_lower"] = r.has_delta ? nlohmann::json(r.design.q_lower) : nlohmann::json(nullptr);
    j["q_upper"] = r.has_delta ? nlohmann::json(r.design.q_upper) : nlohmann::json(nullptr);
    j["q_lower_statement"] = r.has_delta ? nlohmann::json(r.design.q_lower_statement) : nlohmann::json(nullptr);
    const bool stab = r.method == "formula";
    j["p_lower"] = stab ? nlohmann::json(r.stab.lower) : nlohmann::json(nullptr);
    j["p_upper"] = stab ? nlohmann::json(r.stab.upper) : nlohmann::json(nullptr);
    j["C"] = stab ? nlohmann::json(r.stab.C) : nlohmann::json(nullptr);
    j["success_prob"] = r.success_prob;
    j["lower_bound"] = r.lower_bound;
    j["upper_bound"] = r.upper_bound;
    j["flags"] = r.flags;
    return j;
}

}  // namespace magiclab

#endif
