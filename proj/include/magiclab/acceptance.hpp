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

// The end-to-end verification suite shared by `magiclab verify` and the
// acceptance test binary. Each criterion is a self-contained numerical check.

#ifndef MAGICLAB_ACCEPTANCE_HPP
#define MAGICLAB_ACCEPTANCE_HPP

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "magiclab/commutant.hpp"
#include "magiclab/genpurity.hpp"
#include "magiclab/monomial.hpp"
#include "magiclab/proptest.hpp"
#include "magiclab/sre.hpp"
#include "magiclab/states.hpp"

namespace magiclab::acceptance {

inline constexpr int kCriterionCount = 12;

struct Options {
    bool fast = false;
    std::set<int> only;  // empty: all
    std::set<int> skip;
    std::optional<StateVec> golden;  // replaces the Golden state in criterion 3
};

struct Result {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct LabeledState {
    std::string label;
    StateVec psi;
};

/// States shared by the hierarchy and primitive-equivalence checks.
inline std::vector<LabeledState> corpus(bool fast) {
    std::vector<LabeledState> out;
    const int nmax = fast ? 3 : 4;
    for (int n = 1; n <= nmax; ++n) {
        const std::string sn = std::to_string(n);
        out.push_back({"basis0:n=" + sn, basis_zero(n)});
        out.push_back({"t:n=" + sn, tensor_power(t_state(), n)});
        out.push_back({"golden:n=" + sn, tensor_power(golden_state(), n)});
        out.push_back({"stab:n=" + sn + ",seed=" + sn, random_stabilizer_state(n, static_cast<std::uint64_t>(n))});
        for (std::uint64_t s = 1; s <= (fast ? 1u : 3u); ++s) {
            out.push_back({"haar:n=" + sn + ",seed=" + std::to_string(s), haar_state(n, s)});
        }
    }
    return out;
}

namespace detail {

inline std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

class Timer {
   public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

   private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace detail

inline Result check_counting(const Options &) {
    Result r{1, "monomial count formula", true, "", 0.0};
    std::ostringstream os;
    for (int k = 2; k <= 6; ++k) {
        const auto got = enumerate_monomials(k).size();
        const auto want = commutant_size(k);
        os << "k=" << k << ":" << got << (k < 6 ? " " : "");
        r.pass = r.pass && got == want;
    }
    r.detail = os.str();
    return r;
}

inline Result check_dominance(const Options &opt) {
    Result r{2, "P_Omega <= P_4 dominance", true, "", 0.0};
    // One representative per copy-permutation class; permutations themselves are exempt.
    struct Level {
        int k;
        std::vector<CMatrix> reps;
    };
    std::vector<Level> levels;
    std::size_t total = 0;
    for (int k = 2; k <= 6; ++k) {
        const CommutantBasis basis = enumerate_monomials(k);
        Level lv{k, {}};
        for (const auto &cls : copy_permutation_classes(basis)) {
            const CMatrix &f = basis.factors[cls.representative];
            if (!is_copy_permutation(f, k)) {
                lv.reps.push_back(f);
                total += cls.members.size();
            }
        }
        levels.push_back(std::move(lv));
    }

    std::vector<LabeledState> states;
    const int haar2 = opt.fast ? 20 : 200;
    const int haar3 = opt.fast ? 5 : 50;
    for (int i = 0; i < haar2; ++i) {
        states.push_back({"haar2", haar_state(2, 1000 + static_cast<std::uint64_t>(i))});
    }
    for (int i = 0; i < haar3; ++i) {
        states.push_back({"haar3", haar_state(3, 5000 + static_cast<std::uint64_t>(i))});
    }
    for (int n = 1; n <= 3; ++n) {
        states.push_back({"t", tensor_power(t_state(), n)});
        states.push_back({"golden", tensor_power(golden_state(), n)});
    }

    std::size_t violations = 0;
    double worst = -1.0;
    for (const auto &s : states) {
        const double p4 = stabilizer_purity(s.psi, 2);
        for (const auto &lv : levels) {
            const CopyStack stack(s.psi, lv.k);
            for (const auto &f : lv.reps) {
                const double diff = std::abs(generalized_expectation(stack, FactorAction(f))) - p4;
                worst = std::max(worst, diff);
                violations += diff > kDominanceTolerance ? 1 : 0;
            }
        }
    }
    r.pass = violations == 0;
    r.detail = std::to_string(states.size()) + " states x " + std::to_string(total) +
               " non-permutation monomials (k<=6), violations=" + std::to_string(violations) +
               ", max(P_Omega-P_4)=" + detail::fmt(worst);
    return r;
}

inline Result check_golden(const Options &opt) {
    Result r{3, "Golden-state counterexample", false, "", 0.0};
    const StateVec g = opt.golden ? *opt.golden : golden_state();
    if (g.n() != 1) {
        r.detail = "Golden-state override must be a single-qubit state";
        return r;
    }
    const double p_omega = generalized_purity(g, omega_4444());
    const double p4 = stabilizer_purity(g, 2);
    r.pass = p_omega < 1e-10 && p4 > 0.1 && std::abs(p4 - 2.0 / 3.0) < 1e-10;
    r.detail = "P_Omega4444=" + detail::fmt(p_omega) + " P_4=" + detail::fmt(p4) + " (expected 2/3)";
    return r;
}

inline Result check_hierarchy(const Options &opt) {
    Result r{4, "stabilizer purity hierarchy", true, "", 0.0};
    double worst = std::numeric_limits<double>::infinity();
    const auto states = corpus(opt.fast);
    for (const auto &s : states) {
        const PurityCalculator calc(s.psi);
        for (int a = 2; a <= 4; ++a) {
            const double pa = calc.purity(a);
            const double pb = calc.purity(a + 1);
            const double lower_slack = pb - std::pow(pa, static_cast<double>(a) / (a - 1));
            const double upper_slack = pa - pb;
            worst = std::min({worst, lower_slack, upper_slack});
        }
    }
    r.pass = worst >= -1e-10;
    r.detail = std::to_string(states.size()) + " states, alpha in {2,3,4}, min slack=" + detail::fmt(worst);
    return r;
}

inline Result check_omega6_optimality(const Options &opt) {
    Result r{5, "Omega_6 test optimality (exact Helstrom, n=1)", true, "", 0.0};
    std::vector<StateVec> states{t_state(), golden_state()};
    for (int i = 0; i < (opt.fast ? 5 : 20); ++i) {
        states.push_back(haar_state(1, 300 + static_cast<std::uint64_t>(i)));
    }
    const MomentOp stab = orbit_moment(basis_zero(1), 6, OrbitMode::enumerate);
    const CMatrix w6 = monomial_operator(single_qubit_factor(primitive(6)), 6, 1);
    const CMatrix id = CMatrix::Identity(w6.rows(), w6.cols());
    double gap = 0.0;
    double povm_gap = 0.0;
    double t_helstrom = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        const MomentOp orbit = orbit_moment(states[i], 6, OrbitMode::enumerate);
        const double formula = stab_test_success6(states[i]);
        const double h = helstrom(stab, orbit);
        // Success of the two-outcome test {(I + Omega_6)/2 -> stabilizer, (I - Omega_6)/2 -> orbit}.
        const double povm = 0.5 * ((id + w6) * stab.op).trace().real() / 2.0 + 0.5 * ((id - w6) * orbit.op).trace().real() / 2.0;
        gap = std::max(gap, std::abs(h - formula));
        povm_gap = std::max(povm_gap, std::abs(povm - formula));
        if (i == 0) {
            t_helstrom = h;
        }
    }
    r.pass = gap < 1e-8;
    r.detail = std::to_string(states.size()) + " states: max|Helstrom-formula|=" + detail::fmt(gap) +
               " (T: Helstrom=" + detail::fmt(t_helstrom) + " vs 19/32); Omega_6 test attains formula to " +
               detail::fmt(povm_gap);
    return r;
}

inline Result check_three_design(const Options &opt) {
    Result r{6, "Clifford orbit 3-design", true, "", 0.0};
    double worst = 0.0;
    const int count = opt.fast ? 5 : 20;
    for (int n = 1; n <= 2; ++n) {
        for (int i = 0; i < count; ++i) {
            const StateVec psi = haar_state(n, 700 + static_cast<std::uint64_t>(100 * n + i));
            for (int k = 1; k <= 3; ++k) {
                worst = std::max(worst, design_error(psi, k));
            }
        }
    }
    const double zero4 = design_error(basis_zero(2), 4);
    r.pass = worst < 1e-9 && zero4 > 0.1;
    r.detail = "max Delta(k<=3)=" + detail::fmt(worst) + ", Delta(|00>, k=4)=" + detail::fmt(zero4);
    return r;
}

inline Result check_twirl(const Options &opt) {
    Result r{7, "Weingarten twirl vs group average (n=2)", true, "", 0.0};
    double worst = 0.0;
    const int count = opt.fast ? 1 : 3;
    for (int k = 2; k <= 4; ++k) {
        for (int i = 0; i < count; ++i) {
            const StateVec psi = haar_state(2, 900 + static_cast<std::uint64_t>(10 * k + i));
            const MomentOp exact = orbit_moment(psi, k, OrbitMode::enumerate);
            const MomentOp twirled = orbit_moment(psi, k, OrbitMode::weingarten);
            worst = std::max(worst, max_abs_diff(exact.op, twirled.op));
        }
    }
    r.pass = worst < 1e-8;
    r.detail = "k in {2,3,4}, max entry difference=" + detail::fmt(worst);
    return r;
}

inline Result check_transpose_calculus(const Options &) {
    Result r{8, "transpose calculus on the enumerated basis", true, "", 0.0};
    std::size_t checked = 0;
    std::size_t bad_class = 0;
    std::size_t bad_search = 0;
    std::size_t bad_dense = 0;
    std::mt19937_64 rng(8);
    for (int k = 2; k <= 6; ++k) {
        const CommutantBasis basis = enumerate_monomials(k);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            const auto &w = basis.elements[i];
            const CMatrix &f = basis.factors[i];
            const CMatrix id = CMatrix::Identity(f.rows(), f.cols());
            const bool dense_unitary = max_abs_diff(f * f.adjoint(), id) < 1e-10;
            bad_class += dense_unitary != is_unitary(w) ? 1 : 0;
            try {
                const BitVector t = find_unitarizing_transpose(w);
                bad_search += is_unitary(partial_transpose(w, t)) ? 0 : 1;
                BitVector t_rand(static_cast<std::size_t>(k));
                for (int a = 0; a < k; ++a) {
                    t_rand.set(static_cast<std::size_t>(a), rng() & 1u);
                }
                for (const auto &tt : {t, t_rand}) {
                    const double e = max_abs_diff(dense_partial_transpose(f, k, tt),
                                                  single_qubit_factor(partial_transpose(w, tt)));
                    bad_dense += e > 1e-12 ? 1 : 0;
                }
            } catch (const std::exception &) {
                ++bad_search;
            }
            ++checked;
        }
    }
    r.pass = bad_class == 0 && bad_search == 0 && bad_dense == 0;
    r.detail = std::to_string(checked) + " monomials: classification mismatches=" + std::to_string(bad_class) +
               ", transpose-search failures=" + std::to_string(bad_search) +
               ", dense transpose mismatches=" + std::to_string(bad_dense);
    return r;
}

inline Result check_povm(const Options &) {
    Result r{9, "POVM reconstruction (n=1, k<=8)", true, "", 0.0};
    std::mt19937_64 rng(9);
    double worst = 0.0;
    double eig_lo = 0.0;
    double eig_hi = 1.0;
    for (int i = 0; i < 50; ++i) {
        const int k = 2 + static_cast<int>(rng() % 7);
        const PauliMonomial w = random_monomial(k, rng);
        const StateVec psi = haar_state(1, rng);
        const PovmPair pair = measurement_povm_pair(w);
        const PovmReconstruction rec = povm_reconstruction(psi, w, pair);
        worst = std::max(worst, std::abs(rec.direct - rec.reconstructed));
        for (const CMatrix *op : {&pair.real_part, &pair.imag_part}) {
            Eigen::SelfAdjointEigenSolver<CMatrix> es(*op, Eigen::EigenvaluesOnly);
            eig_lo = std::min(eig_lo, es.eigenvalues().minCoeff());
            eig_hi = std::max(eig_hi, es.eigenvalues().maxCoeff());
        }
    }
    r.pass = worst < 1e-9 && eig_lo >= -1e-10 && eig_hi <= 1.0 + 1e-10;
    r.detail = "50 pairs: max reconstruction error=" + detail::fmt(worst) + ", POVM spectra within [" +
               detail::fmt(eig_lo) + ", " + detail::fmt(eig_hi) + "]";
    return r;
}

inline Result check_shots(const Options &) {
    Result r{10, "shot-level Omega_6 test", true, "", 0.0};
    const PovmSimulation sim = simulate_povm_test(t_state(), 100000, 10);
    const double target = 19.0 / 32.0;
    const double sigma = std::sqrt(target * (1.0 - target) / static_cast<double>(sim.shots));
    r.pass = std::abs(sim.rate - target) <= 4.0 * sigma;
    r.detail = "rate=" + detail::fmt(sim.rate) + " target=19/32, |diff|/sigma=" +
               detail::fmt(std::abs(sim.rate - target) / sigma);
    return r;
}

inline Result check_gram(const Options &) {
    Result r{11, "Gram matrix bounds", true, "", 0.0};
    std::size_t bad = 0;
    std::size_t entries = 0;
    for (int k = 2; k <= 5; ++k) {
        const CommutantBasis basis = enumerate_monomials(k);
        const RMatrix g1 = single_qubit_gram(basis);
        for (int n = 3; n <= 8; ++n) {
            const GramData g = gram_matrix(basis, n, g1);
            const double d = std::pow(2.0, n);
            const double dk = std::pow(d, k);
            for (Eigen::Index a = 0; a < g.W.rows(); ++a) {
                for (Eigen::Index b = 0; b < g.W.cols(); ++b) {
                    const double v = g.W(a, b);
                    const bool ok = a == b ? v == dk : (v >= 1.0 && v <= dk / d);
                    bad += ok ? 0 : 1;
                    ++entries;
                }
            }
        }
    }
    r.pass = bad == 0;
    r.detail = std::to_string(entries) + " entries over k<=5, n in 3..8, out of range=" + std::to_string(bad);
    return r;
}

inline Result check_primitive(const Options &opt) {
    Result r{12, "primitive monomial equals stabilizer purity", true, "", 0.0};
    double worst = 0.0;
    const auto states = corpus(opt.fast);
    for (const auto &s : states) {
        for (int a = 2; a <= 3; ++a) {
            worst = std::max(worst, std::abs(purity_via_omega(s.psi, a) - stabilizer_purity(s.psi, a)));
        }
    }
    r.pass = worst < 1e-9;
    r.detail = std::to_string(states.size()) + " states, alpha in {2,3}, max difference=" + detail::fmt(worst);
    return r;
}

inline const std::vector<std::function<Result(const Options &)>> &criteria() {
    static const std::vector<std::function<Result(const Options &)>> all{
        check_counting,   check_dominance,    check_golden,   check_hierarchy,
        check_omega6_optimality, check_three_design, check_twirl,   check_transpose_calculus,
        check_povm,       check_shots,        check_gram,     check_primitive};
    return all;
}

/// Runs the selected criteria in order, reporting each as soon as it finishes.
/// An exception inside a check counts as a failure of that check.
inline std::vector<Result> run(const Options &opt, const std::function<void(const Result &)> &on_result = {}) {
    std::vector<Result> out;
    for (int id = 1; id <= kCriterionCount; ++id) {
        if ((!opt.only.empty() && opt.only.count(id) == 0) || opt.skip.count(id) != 0) {
            continue;
        }
        detail::Timer timer;
        Result r;
        try {
            r = criteria()[static_cast<std::size_t>(id - 1)](opt);
        } catch (const std::exception &e) {
            r = {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what(), 0.0};
        }
        r.seconds = timer.seconds();
        if (on_result) {
            on_result(r);
        }
        out.push_back(std::move(r));
    }
    return out;
}

inline std::string format_line(const Result &r) {
    std::ostringstream os;
    os << (r.pass ? "PASS" : "FAIL") << "  [" << std::setw(2) << r.id << "] " << r.name << ": " << r.detail << " ("
       << std::fixed << std::setprecision(1) << r.seconds << " s)";
    return os.str();
}

inline nlohmann::json to_json(const std::vector<Result> &results, bool fast) {
    nlohmann::json items = nlohmann::json::array();
    std::size_t failed = 0;
    for (const auto &r : results) {
        items.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        failed += r.pass ? 0 : 1;
    }
    return {{"suite", fast ? "fast" : "all"},
            {"criteria", items},
            {"passed", results.size() - failed},
            {"failed", failed}};
}

}  // namespace magiclab::acceptance

#endif
