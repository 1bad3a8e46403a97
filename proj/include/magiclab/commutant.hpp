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

// The k-copy Clifford commutant: its reduced Pauli monomial basis, Gram and
// Weingarten matrices, the Clifford twirl, and the Haar moment operator.

#ifndef MAGICLAB_COMMUTANT_HPP
#define MAGICLAB_COMMUTANT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "magiclab/common.hpp"
#include "magiclab/f2.hpp"
#include "magiclab/monomial.hpp"

namespace magiclab {

inline constexpr int kMaxCommutantCopies = 6;

/// prod_{i=0}^{k-2} (2^i + 1)
inline std::uint64_t commutant_size(int k) {
    std::uint64_t c = 1;
    for (int i = 0; i <= k - 2; ++i) {
        c *= (std::uint64_t{1} << i) + 1;
    }
    return c;
}

/// Dense operator on n*k qubits in copy-major layout: copy a occupies the n bits
/// at shift (k-1-a)*n, and within a copy qubit 0 is most significant. This is the
/// layout of kron(psi, ..., psi) and of every MomentOp.
inline CMatrix monomial_operator(const CMatrix &omega, int k, int n) {
    require_qubits(n * k, kMaxMomentQubits, "monomial_operator");
    const std::uint64_t dim = std::uint64_t{1} << (n * k);
    // block[j][idx]: the k-bit word of qubit j gathered from a copy-major index.
    auto gather = [&](std::uint64_t idx, int j) {
        std::uint64_t w = 0;
        for (int a = 0; a < k; ++a) {
            const int bit = (k - 1 - a) * n + (n - 1 - j);
            w |= ((idx >> bit) & 1u) << (k - 1 - a);
        }
        return w;
    };
    std::vector<std::vector<std::uint32_t>> blocks(static_cast<std::size_t>(n), std::vector<std::uint32_t>(dim));
    for (int j = 0; j < n; ++j) {
        for (std::uint64_t i = 0; i < dim; ++i) {
            blocks[static_cast<std::size_t>(j)][i] = static_cast<std::uint32_t>(gather(i, j));
        }
    }
    CMatrix out(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::uint64_t c = 0; c < dim; ++c) {
        for (std::uint64_t r = 0; r < dim; ++r) {
            cplx v = 1.0;
            for (int j = 0; j < n && v != 0.0; ++j) {
                v *= omega(blocks[static_cast<std::size_t>(j)][r], blocks[static_cast<std::size_t>(j)][c]);
            }
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
        }
    }
    return out;
}

struct CommutantBasis {
    int k = 0;
    std::vector<PauliMonomial> elements;
    std::vector<CMatrix> factors;  // single-qubit factors, aligned with elements

    std::size_t size() const { return elements.size(); }
};

namespace detail {

inline std::uint64_t fingerprint(const CMatrix &omega) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](std::int64_t v) {
        h ^= static_cast<std::uint64_t>(v);
        h *= 1099511628211ULL;
    };
    for (Eigen::Index i = 0; i < omega.size(); ++i) {
        mix(std::llround(omega.data()[i].real() * 1e9));
        mix(std::llround(omega.data()[i].imag() * 1e9));
    }
    return h;
}

// Calls f(rows) for every m x k reduced row echelon matrix whose rows have even weight.
inline void for_each_even_rref(int k, int m, const std::function<void(const std::vector<BitVector> &)> &f) {
    std::vector<int> pivots(static_cast<std::size_t>(m));
    std::function<void(int, int)> choose = [&](int idx, int start) {
        if (idx == m) {
            // Free positions of row r: non-pivot columns right of its pivot.
            std::vector<std::vector<int>> free(static_cast<std::size_t>(m));
            std::size_t total = 0;
            for (int r = 0; r < m; ++r) {
                for (int c = pivots[static_cast<std::size_t>(r)] + 1; c < k; ++c) {
                    if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) {
                        free[static_cast<std::size_t>(r)].push_back(c);
                    }
                }
                total += free[static_cast<std::size_t>(r)].size();
            }
            for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << total); ++bits) {
                std::vector<BitVector> rows(static_cast<std::size_t>(m), BitVector(static_cast<std::size_t>(k)));
                std::size_t pos = 0;
                bool even = true;
                for (int r = 0; r < m && even; ++r) {
                    auto &row = rows[static_cast<std::size_t>(r)];
                    row.set(static_cast<std::size_t>(pivots[static_cast<std::size_t>(r)]), true);
                    for (int c : free[static_cast<std::size_t>(r)]) {
                        row.set(static_cast<std::size_t>(c), (bits >> pos++) & 1u);
                    }
                    even = row.weight() % 2 == 0;
                }
                if (even) {
                    f(rows);
                }
            }
            return;
        }
        for (int c = start; c < k; ++c) {
            pivots[static_cast<std::size_t>(idx)] = c;
            choose(idx + 1, c + 1);
        }
    };
    choose(0, 0);
}

}  // namespace detail

/// All reduced Pauli monomials on k copies, 2 <= k <= 6.
///
/// Column spaces are generated once each as even reduced echelon bases, paired with
/// every symmetric zero-diagonal M. Single-qubit factors are fingerprinted and
/// compared exactly on collision, so duplicates would be dropped; none occur, and
/// the count equals commutant_size(k).
inline CommutantBasis enumerate_monomials(int k) {
    if (k < 2) {
        throw std::invalid_argument("enumerate_monomials requires k >= 2");
    }
    if (k > kMaxCommutantCopies) {
        throw ResourceError("enumerate_monomials supports k <= 6 (k = 7 has 1235790 elements)");
    }
    CommutantBasis basis;
    basis.k = k;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> seen;
    for (int m = 0; m <= k - 1; ++m) {
        detail::for_each_even_rref(k, m, [&](const std::vector<BitVector> &rows) {
            const auto um = static_cast<std::size_t>(m);
            std::vector<std::pair<std::size_t, std::size_t>> upper;
            for (std::size_t i = 0; i < um; ++i) {
                for (std::size_t j = i + 1; j < um; ++j) {
                    upper.emplace_back(i, j);
                }
            }
            for (std::uint64_t mbits = 0; mbits < (std::uint64_t{1} << upper.size()); ++mbits) {
                PauliMonomial w = PauliMonomial::from_columns(k, rows);
                for (std::size_t e = 0; e < upper.size(); ++e) {
                    if ((mbits >> e) & 1u) {
                        w.M.set(upper[e].first, upper[e].second, true);
                        w.M.set(upper[e].second, upper[e].first, true);
                    }
                }
                CMatrix omega = single_qubit_factor(w);
                auto &bucket = seen[detail::fingerprint(omega)];
                const bool dup = std::any_of(bucket.begin(), bucket.end(), [&](std::size_t idx) {
                    return max_abs_diff(basis.factors[idx], omega) < 1e-10;
                });
                if (dup) {
                    continue;
                }
                bucket.push_back(basis.elements.size());
                basis.elements.push_back(std::move(w));
                basis.factors.push_back(std::move(omega));
            }
        });
    }
    return basis;
}

/// Groups basis elements related by a permutation of the copies, T_pi Omega T_pi^dagger.
/// Such elements have equal expectation on every psi^{(x) k}.
struct CopyPermutationClass {
    std::size_t representative = 0;
    std::vector<std::size_t> members;
};

inline std::vector<CopyPermutationClass> copy_permutation_classes(const CommutantBasis &basis) {
    const int k = basis.k;
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::vector<std::vector<int>> perms;
    std::iota(perm.begin(), perm.end(), 0);
    do {
        perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    auto key_of = [](const PauliMonomial &w) { return std::make_tuple(w.V, w.M, w.gamma); };
    using Key = decltype(key_of(std::declval<PauliMonomial>()));
    std::map<Key, std::size_t> class_of_key;
    std::vector<CopyPermutationClass> classes;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto &w = basis.elements[i];
        Key best = key_of(canonical(w));
        for (const auto &p : perms) {
            PauliMonomial q = w;
            for (int a = 0; a < k; ++a) {
                q.V.row(static_cast<std::size_t>(a)) = w.V.row(static_cast<std::size_t>(p[static_cast<std::size_t>(a)]));
            }
            best = std::min(best, key_of(canonical(q)));
        }
        auto [it, inserted] = class_of_key.try_emplace(best, classes.size());
        if (inserted) {
            classes.push_back({i, {}});
        }
        classes[it->second].members.push_back(i);
    }
    return classes;
}

/// Gram matrix W_{ab} = tr(Omega_a^dagger Omega_b) = [tr(omega_a^dagger omega_b)]^n and,
/// when requested and nonsingular, its inverse (the Clifford-Weingarten matrix).
struct GramData {
    int k = 0;
    int n = 0;
    RMatrix W;
    RMatrix Winv;  // empty unless weingarten() succeeded
    std::size_t rank = 0;
    bool invertible = false;
};

/// tr(omega_a^dagger omega_b) over the basis, at n = 1.
inline RMatrix single_qubit_gram(const CommutantBasis &basis) {
    const auto N = static_cast<Eigen::Index>(basis.size());
    RMatrix g(N, N);
    for (Eigen::Index a = 0; a < N; ++a) {
        for (Eigen::Index b = a; b < N; ++b) {
            const cplx t = (basis.factors[static_cast<std::size_t>(a)].adjoint() *
                            basis.factors[static_cast<std::size_t>(b)]).trace();
            if (std::abs(t.imag()) > 1e-9) {
                throw std::logic_error("Gram entry has an imaginary part");
            }
            g(a, b) = g(b, a) = std::round(t.real());
        }
    }
    return g;
}

namespace detail {

using LDMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

// Numeric rank of W / d^k in extended precision.
inline std::size_t gram_rank(const RMatrix &W, double scale) {
    LDMatrix w = (W / scale).cast<long double>();
    Eigen::FullPivLU<LDMatrix> lu(w);
    lu.setThreshold(1e-12L);
    return static_cast<std::size_t>(lu.rank());
}

}  // namespace detail

inline GramData gram_matrix(const CommutantBasis &basis, int n, const RMatrix &single_qubit) {
    if (n < 1) {
        throw std::invalid_argument("gram_matrix requires n >= 1");
    }
    GramData g;
    g.k = basis.k;
    g.n = n;
    g.W = single_qubit.unaryExpr([n](double t) { return std::pow(t, n); });
    g.rank = detail::gram_rank(g.W, std::pow(2.0, static_cast<double>(n) * basis.k));
    g.invertible = g.rank == basis.size();
    return g;
}

inline GramData gram_matrix(const CommutantBasis &basis, int n) {
    return gram_matrix(basis, n, single_qubit_gram(basis));
}

/// Gram data with Winv filled in; throws ResourceError-free std::domain_error when
/// W is singular (the monomials are linearly dependent at this n).
inline GramData weingarten(const CommutantBasis &basis, int n) {
    GramData g = gram_matrix(basis, n);
    if (!g.invertible) {
        throw std::domain_error("Gram matrix is singular at k = " + std::to_string(basis.k) + ", n = " +
                                std::to_string(n) + " (rank " + std::to_string(g.rank) + " < " +
                                std::to_string(basis.size()) + "); refusing a pseudo-inverse");
    }
    const double scale = std::pow(2.0, static_cast<double>(n) * basis.k);
    detail::LDMatrix w = (g.W / scale).cast<long double>();
    detail::LDMatrix inv = w.fullPivLu().inverse();
    g.Winv = (inv / static_cast<long double>(scale)).cast<double>();
    return g;
}

/// True iff the basis operators are linearly independent at this n.
inline bool independence_check(const CommutantBasis &basis, int n) { return gram_matrix(basis, n).invertible; }

/// Dense k-copy operator on n qubits per copy, copy-major layout.
struct MomentOp {
    int n = 0;
    int k = 0;
    CMatrix op;
    std::string label;
};

/// Phi(O) = sum_b c_b Omega_b with W c = (tr(Omega_a^dagger O))_a.
///
/// When the basis is dependent at this n, the coefficients are solved on a maximal
/// independent subset, which spans the same commutant; the result is the same
/// orthogonal projection.
inline MomentOp clifford_twirl(const MomentOp &in, const CommutantBasis &basis) {
    if (in.k != basis.k) {
        throw std::invalid_argument("operator and basis disagree on k");
    }
    require_qubits(in.n * in.k, kMaxMomentQubits, "clifford_twirl");
    const int n = in.n;
    GramData g = gram_matrix(basis, n);

    // Maximal independent subset by greedy column selection in extended precision.
    const double scale = std::pow(2.0, static_cast<double>(n) * basis.k);
    std::vector<std::size_t> chosen;
    if (g.invertible) {
        chosen.resize(basis.size());
        std::iota(chosen.begin(), chosen.end(), 0);
    } else {
        for (std::size_t i = 0; i < basis.size(); ++i) {
            chosen.push_back(i);
            detail::LDMatrix sub(static_cast<Eigen::Index>(chosen.size()), static_cast<Eigen::Index>(chosen.size()));
            for (std::size_t a = 0; a < chosen.size(); ++a) {
                for (std::size_t b = 0; b < chosen.size(); ++b) {
                    sub(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                        static_cast<long double>(g.W(static_cast<Eigen::Index>(chosen[a]), static_cast<Eigen::Index>(chosen[b])) / scale);
                }
            }
            Eigen::FullPivLU<detail::LDMatrix> lu(sub);
            lu.setThreshold(1e-12L);
            if (static_cast<std::size_t>(lu.rank()) < chosen.size()) {
                chosen.pop_back();
            }
            if (chosen.size() == g.rank) {
                break;
            }
        }
    }

    const auto N = static_cast<Eigen::Index>(chosen.size());
    std::vector<CMatrix> ops;
    ops.reserve(chosen.size());
    Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, 1> t(N);
    detail::LDMatrix sub(N, N);
    for (Eigen::Index a = 0; a < N; ++a) {
        ops.push_back(monomial_operator(basis.factors[chosen[static_cast<std::size_t>(a)]], basis.k, n));
        const cplx ta = (ops.back().adjoint() * in.op).trace();
        t[a] = std::complex<long double>(ta.real(), ta.imag()) / static_cast<long double>(scale);
        for (Eigen::Index b = 0; b < N; ++b) {
            sub(a, b) = static_cast<long double>(
                g.W(static_cast<Eigen::Index>(chosen[static_cast<std::size_t>(a)]), static_cast<Eigen::Index>(chosen[static_cast<std::size_t>(b)])) / scale);
        }
    }
    const Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic> subc =
        sub.cast<std::complex<long double>>();
    const auto c = subc.fullPivLu().solve(t).eval();
    MomentOp out{n, in.k, CMatrix::Zero(in.op.rows(), in.op.cols()), "clifford_twirl(" + in.label + ")"};
    for (Eigen::Index b = 0; b < N; ++b) {
        out.op += cplx(static_cast<double>(c[b].real()), static_cast<double>(c[b].imag())) * ops[static_cast<std::size_t>(b)];
    }
    return out;
}

/// Pi_sym / tr(Pi_sym) on k copies of n qubits.
inline MomentOp haar_moment(int n, int k) {
    if (n < 1 || k < 1) {
        throw std::invalid_argument("haar_moment requires n, k >= 1");
    }
    require_qubits(n * k, kMaxMomentQubits, "haar_moment");
    const std::uint64_t d = std::uint64_t{1} << n;
    const std::uint64_t dim = std::uint64_t{1} << (n * k);
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    CMatrix acc = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    double count = 0.0;
    do {
        for (std::uint64_t c = 0; c < dim; ++c) {
            std::uint64_t r = 0;
            for (int a = 0; a < k; ++a) {
                const std::uint64_t part = (c >> ((k - 1 - a) * n)) & (d - 1);
                r |= part << ((k - 1 - perm[static_cast<std::size_t>(a)]) * n);
            }
            acc(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) += 1.0;
        }
        count += 1.0;
    } while (std::next_permutation(perm.begin(), perm.end()));
    acc /= count;
    const cplx tr = acc.trace();
    return {n, k, acc / tr, "haar"};
}

/// binom(d + k - 1, k)
inline double symmetric_dimension(int n, int k) {
    const double d = std::pow(2.0, n);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) {
        r = r * (d + k - i) / i;
    }
    return r;
}

inline nlohmann::json basis_to_json(const CommutantBasis &basis) {
    nlohmann::json els = nlohmann::json::array();
    for (const auto &w : basis.elements) {
        els.push_back(monomial_to_json(w));
    }
    return {{"k", basis.k}, {"count", basis.size()}, {"elements", els}};
}

}  // namespace magiclab

#endif
