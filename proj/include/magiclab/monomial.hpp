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

// Symbolic calculus of generalized Pauli monomials Omega(V, M, Gamma) on k copies.
//
//   Omega = d^{-m} sum_{P_1..P_m} P_1^{(x) v_1} ... P_m^{(x) v_m}
//           * prod_{i<j} chi(P_i, P_j)^{M_ij} * prod_i xi(P_i)^{Gamma_i}
//
// where v_i are the columns of V, P_i^{(x) v_i} places P_i on every copy a with
// V(a, i) = 1, and the copies multiply in column order. Every such operator
// factorizes as omega^{(x) n} over qubits, so all symbolic claims can be checked
// on the 2^k x 2^k single-qubit factor omega.

#ifndef MAGICLAB_MONOMIAL_HPP
#define MAGICLAB_MONOMIAL_HPP

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "magiclab/common.hpp"
#include "magiclab/f2.hpp"
#include "magiclab/pauli.hpp"

namespace magiclab {

/// Largest copy count for which the 2^k x 2^k factor is built.
inline constexpr int kMaxFactorCopies = 10;

struct PauliMonomial {
    int k = 0;
    BitMatrix V;      // k x m, one column per Pauli variable
    BitMatrix M;      // m x m, symmetric with zero diagonal (chi exponents)
    BitVector gamma;  // m (xi exponents)

    PauliMonomial() = default;
    PauliMonomial(int k_, BitMatrix V_, BitMatrix M_, BitVector gamma_)
        : k(k_), V(std::move(V_)), M(std::move(M_)), gamma(std::move(gamma_)) {}

    /// The identity on k copies (m = 0).
    static PauliMonomial identity(int k) {
        return {k, BitMatrix(static_cast<std::size_t>(k), 0), BitMatrix(0, 0), BitVector(0)};
    }

    /// Omega(V, 0, 0).
    static PauliMonomial from_columns(int k, const std::vector<BitVector> &columns) {
        const auto m = columns.size();
        return {k, BitMatrix::from_columns(static_cast<std::size_t>(k), columns), BitMatrix(m, m), BitVector(m)};
    }

    int m() const { return static_cast<int>(V.cols()); }

    friend bool operator==(const PauliMonomial &, const PauliMonomial &) = default;
};

/// Omega_k = d^{-1} sum_P P^{(x) k}, for even k >= 2.
inline PauliMonomial primitive(int k) {
    if (k < 2 || k % 2 != 0) {
        throw std::invalid_argument("primitive monomial needs an even k >= 2, got " + std::to_string(k));
    }
    BitVector ones(static_cast<std::size_t>(k));
    for (int a = 0; a < k; ++a) {
        ones.set(a, true);
    }
    return PauliMonomial::from_columns(k, {ones});
}

/// Omega_{4,4,4,4} on 8 copies.
inline PauliMonomial omega_4444() {
    return PauliMonomial::from_columns(8, {BitVector::from_string("11110000"), BitVector::from_string("00111100"),
                                           BitVector::from_string("00110011"), BitVector::from_string("10101010")});
}

/// Every violated invariant, in human-readable form; empty means valid.
inline std::vector<std::string> validate(const PauliMonomial &w) {
    std::vector<std::string> errors;
    if (w.k < 1) {
        errors.push_back("k must be positive");
        return errors;
    }
    const auto m = w.V.cols();
    if (w.V.rows() != static_cast<std::size_t>(w.k)) {
        errors.push_back("V has " + std::to_string(w.V.rows()) + " rows, expected k = " + std::to_string(w.k));
        return errors;
    }
    if (w.M.rows() != m || w.M.cols() != m) {
        errors.push_back("M must be " + std::to_string(m) + "x" + std::to_string(m));
        return errors;
    }
    if (w.gamma.size() != m) {
        errors.push_back("Gamma must have length " + std::to_string(m));
        return errors;
    }
    if (m > static_cast<std::size_t>(w.k)) {
        errors.push_back("order m = " + std::to_string(m) + " exceeds k");
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (w.V.column(i).weight() % 2 != 0) {
            errors.push_back("column " + std::to_string(i) + " of V has odd weight");
        }
    }
    if (rank(w.V) != m) {
        errors.push_back("V is rank deficient (rank " + std::to_string(rank(w.V)) + " < m = " + std::to_string(m) + ")");
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (w.M(i, i)) {
            errors.push_back("M has a nonzero diagonal entry at " + std::to_string(i));
        }
        for (std::size_t j = i + 1; j < m; ++j) {
            if (w.M(i, j) != w.M(j, i)) {
                errors.push_back("M is not symmetric at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
            }
        }
    }
    return errors;
}

inline void require_valid(const PauliMonomial &w) {
    auto errors = validate(w);
    if (!errors.empty()) {
        std::string msg = "invalid monomial:";
        for (const auto &e : errors) {
            msg += " " + e + ";";
        }
        throw std::invalid_argument(msg);
    }
}

namespace detail {

inline BitMatrix lambda_unchecked(const PauliMonomial &w) {
    const auto m = w.V.cols();
    const BitMatrix H = w.V.transpose() * w.V;
    BitMatrix lam(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        const bool wi = ((w.V.column(i).weight() / 2) % 2 == 1) != w.gamma[i];
        lam.set(i, i, wi);
        for (std::size_t j = 0; j < m; ++j) {
            if (i != j) {
                lam.set(i, j, w.M(i, j) != (i < j && H(i, j)));
            }
        }
    }
    return lam;
}

// Inverse of lambda_unchecked for a given V: M from the strictly lower part,
// Gamma from the diagonal minus |v_i|/2.
inline PauliMonomial from_lambda(int k, BitMatrix V, const BitMatrix &lam) {
    const auto m = V.cols();
    BitMatrix M(m, m);
    BitVector gamma(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            M.set(i, j, lam(i, j));
            M.set(j, i, lam(i, j));
        }
        gamma.set(i, lam(i, i) != ((V.column(i).weight() / 2) % 2 == 1));
    }
    return {k, std::move(V), std::move(M), std::move(gamma)};
}

}  // namespace detail

/// Lambda_ij = M_ij + (|v_i|/2 + Gamma_i) delta_ij + H_ij [i < j] mod 2, H = V^T V.
inline BitMatrix lambda_matrix(const PauliMonomial &w) {
    require_valid(w);
    return detail::lambda_unchecked(w);
}

/// Omega(VA, M(A), Gamma(A)) via Lambda(A) = A^T Lambda A; the same operator as w.
inline PauliMonomial substitute(const PauliMonomial &w, const BitMatrix &a) {
    require_valid(w);
    const auto m = w.V.cols();
    if (a.rows() != m || a.cols() != m) {
        throw std::invalid_argument("substitution matrix must be m x m");
    }
    if (!det(a)) {
        throw std::invalid_argument("substitution matrix is singular");
    }
    const BitMatrix lam = a.transpose() * detail::lambda_unchecked(w) * a;
    return detail::from_lambda(w.k, w.V * a, lam);
}

inline bool is_unitary(const PauliMonomial &w) {
    const BitMatrix lam = lambda_matrix(w);
    return lam.rows() == 0 || det(lam);
}

/// dim ker Lambda; the order of the projective part of the normal form.
inline int projective_order(const PauliMonomial &w) {
    const BitMatrix lam = lambda_matrix(w);
    return w.m() - static_cast<int>(rank(lam));
}

/// Representation with V in reduced column echelon form. Two monomials with
/// the same column space and the same resulting (M, Gamma) are the same operator.
inline PauliMonomial canonical(const PauliMonomial &w) {
    require_valid(w);
    if (w.m() == 0) {
        return w;
    }
    const auto e = eliminate(w.V.transpose());
    return substitute(w, e.transform.transpose());
}

/// Transposes every copy a with t[a] = 1:
/// M_ij += v_i^a v_j^a (i != j), Gamma_i += v_i^a.
inline PauliMonomial partial_transpose(const PauliMonomial &w, const BitVector &t) {
    require_valid(w);
    if (t.size() != static_cast<std::size_t>(w.k)) {
        throw std::invalid_argument("transpose vector must have length k");
    }
    PauliMonomial out = w;
    const auto m = w.V.cols();
    for (int a = 0; a < w.k; ++a) {
        if (!t[a]) {
            continue;
        }
        const BitVector &row = w.V.row(a);
        for (std::size_t i = 0; i < m; ++i) {
            if (!row[i]) {
                continue;
            }
            out.gamma.flip(i);
            for (std::size_t j = 0; j < m; ++j) {
                if (j != i && row[j]) {
                    out.M.set(i, j, !out.M(i, j));
                }
            }
        }
    }
    return out;
}

/// Copies that carry pivots of the column-reduced V.
inline std::vector<int> pivot_copies(const PauliMonomial &w) {
    std::vector<int> out;
    for (auto c : eliminate(w.V.transpose()).pivot_cols) {
        out.push_back(static_cast<int>(c));
    }
    return out;
}

/// A transpose pattern t_u, supported on pivot copies, with partial_transpose(w, t_u) unitary.
/// Candidates are tried in increasing binary order over the pivots, so an already
/// unitary monomial returns all zeros.
inline BitVector find_unitarizing_transpose(const PauliMonomial &w) {
    require_valid(w);
    const auto pivots = pivot_copies(w);
    const BitMatrix lam = detail::lambda_unchecked(w);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pivots.size()); ++mask) {
        BitVector t(static_cast<std::size_t>(w.k));
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            if ((mask >> i) & 1u) {
                t.set(static_cast<std::size_t>(pivots[i]), true);
            }
        }
        const auto candidate = partial_transpose(w, t);
        if (candidate.m() == 0 || det(detail::lambda_unchecked(candidate))) {
            return t;
        }
    }
    throw std::logic_error("no unitarizing transpose found; the determinant polynomial argument guarantees one");
}

struct NormalForm {
    PauliMonomial unitary_part;
    PauliMonomial projective_part;
    int projective_order = 0;
};

/// Omega = Omega_P * Omega_U: Omega_P has Lambda = 0, Omega_U has invertible Lambda.
///
/// Substitutes A = [K | C + K Z] where K spans ker Lambda and C completes it to a
/// basis. The kernel columns come first, so the strictly lower part of A^T Lambda A
/// has no P/U cross terms and the operator splits as a product. Z is searched so
/// that the U block of A^T Lambda A is invertible.
inline NormalForm normal_form(const PauliMonomial &w) {
    require_valid(w);
    const auto m = w.V.cols();
    const BitMatrix lam = detail::lambda_unchecked(w);
    const BitMatrix kernel = kernel_basis(lam);
    const std::size_t p = kernel.cols();
    if (p == 0) {
        return {w, PauliMonomial::identity(w.k), 0};
    }

    // Extend the kernel basis with unit vectors.
    std::vector<BitVector> basis;
    for (std::size_t c = 0; c < p; ++c) {
        basis.push_back(kernel.column(c));
    }
    for (std::size_t e = 0; e < m && basis.size() < m; ++e) {
        BitVector unit(m);
        unit.set(e, true);
        basis.push_back(unit);
        if (rank(BitMatrix::from_columns(m, basis)) != basis.size()) {
            basis.pop_back();
        }
    }
    const std::size_t q = m - p;
    const std::size_t zbits = p * q;
    for (std::uint64_t zmask = 0; zmask < (std::uint64_t{1} << zbits); ++zmask) {
        std::vector<BitVector> cols(basis.begin(), basis.end());
        for (std::size_t u = 0; u < q; ++u) {
            for (std::size_t r = 0; r < p; ++r) {
                if ((zmask >> (u * p + r)) & 1u) {
                    cols[p + u] ^= basis[r];
                }
            }
        }
        const BitMatrix a = BitMatrix::from_columns(m, cols);
        const BitMatrix lam_a = a.transpose() * lam * a;
        BitMatrix block(q, q);
        for (std::size_t i = 0; i < q; ++i) {
            for (std::size_t j = 0; j < q; ++j) {
                block.set(i, j, lam_a(p + i, p + j));
            }
        }
        if (q > 0 && !det(block)) {
            continue;
        }
        const PauliMonomial sub = detail::from_lambda(w.k, w.V * a, lam_a);
        auto take = [&](std::size_t first, std::size_t count) {
            BitMatrix V(static_cast<std::size_t>(w.k), count), M(count, count);
            BitVector g(count);
            for (std::size_t i = 0; i < count; ++i) {
                V.set_column(i, sub.V.column(first + i));
                g.set(i, sub.gamma[first + i]);
                for (std::size_t j = 0; j < count; ++j) {
                    M.set(i, j, sub.M(first + i, first + j));
                }
            }
            return PauliMonomial{w.k, std::move(V), std::move(M), std::move(g)};
        };
        return {take(p, q), take(0, p), static_cast<int>(p)};
    }
    throw std::logic_error("normal form search failed");
}

/// Random valid monomial on k >= 2 copies: m uniform in [1, k-1], then even
/// independent columns, M and Gamma drawn uniformly.
inline PauliMonomial random_monomial(int k, std::mt19937_64 &rng) {
    if (k < 2) {
        throw std::invalid_argument("random_monomial requires k >= 2");
    }
    const auto m = static_cast<std::size_t>(1 + rng() % static_cast<std::uint64_t>(k - 1));
    std::vector<BitVector> cols;
    while (cols.size() < m) {
        BitVector v(static_cast<std::size_t>(k));
        for (int a = 0; a < k; ++a) {
            v.set(static_cast<std::size_t>(a), rng() & 1u);
        }
        if (v.weight() % 2 != 0) {
            continue;
        }
        cols.push_back(v);
        if (rank(BitMatrix::from_columns(static_cast<std::size_t>(k), cols)) != cols.size()) {
            cols.pop_back();
        }
    }
    PauliMonomial w = PauliMonomial::from_columns(k, cols);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const bool b = rng() & 1u;
            w.M.set(i, j, b);
            w.M.set(j, i, b);
        }
        w.gamma.set(i, rng() & 1u);
    }
    return w;
}

/// ||Omega||_1 = d^{k - m_P} with d = 2^n and m_P the projective order: the unitary
/// part leaves singular values alone and Omega_P is d^{k-m_P} times a normalized
/// projector. Equals d^{k - rank V} only when Omega is projective.
inline double trace_norm(const PauliMonomial &w, int n) {
    require_valid(w);
    return std::pow(2.0, static_cast<double>(n) * (w.k - projective_order(w)));
}

/// The 2^k x 2^k factor omega with Omega = omega^{(x) n}. Copy 0 is the most
/// significant bit of the row/column index.
inline CMatrix single_qubit_factor(const PauliMonomial &w) {
    require_valid(w);
    require_qubits(w.k, kMaxFactorCopies, "single_qubit_factor");
    const int k = w.k;
    const int m = w.m();
    const Eigen::Index dim = Eigen::Index{1} << k;
    CMatrix out = CMatrix::Zero(dim, dim);
    const double scale = std::pow(0.5, m);

    // Single-qubit Pauli code c in {0:I, 1:X, 2:Y, 3:Z} -> (x, z) bits.
    auto xbit = [](unsigned c) { return c == 1 || c == 2; };
    auto zbit = [](unsigned c) { return c == 2 || c == 3; };
    std::vector<unsigned> code(static_cast<std::size_t>(m));
    for (std::uint64_t tuple = 0; tuple < (std::uint64_t{1} << (2 * m)); ++tuple) {
        for (int i = 0; i < m; ++i) {
            code[static_cast<std::size_t>(i)] = static_cast<unsigned>((tuple >> (2 * i)) & 3u);
        }
        int sign_exp = 0;  // powers of i
        for (int i = 0; i < m; ++i) {
            const unsigned ci = code[static_cast<std::size_t>(i)];
            if (w.gamma[static_cast<std::size_t>(i)] && ci == 2) {
                sign_exp += 2;  // xi(Y) = -1
            }
            for (int j = i + 1; j < m; ++j) {
                const unsigned cj = code[static_cast<std::size_t>(j)];
                if (w.M(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) && ci != 0 && cj != 0 && ci != cj) {
                    sign_exp += 2;  // chi = -1
                }
            }
        }
        std::uint64_t xm = 0, zm = 0;
        for (int a = 0; a < k; ++a) {
            // Ordered product of the Paulis placed on copy a.
            bool x = false, z = false;
            int ph = 0;
            for (int i = 0; i < m; ++i) {
                if (!w.V(static_cast<std::size_t>(a), static_cast<std::size_t>(i))) {
                    continue;
                }
                const unsigned ci = code[static_cast<std::size_t>(i)];
                const bool xi_ = xbit(ci), zi_ = zbit(ci);
                // (i^ph X^x Z^z)(i^{[Y]} X^xi Z^zi) = i^{ph + [Y] + 2 z.xi} X^{x^xi} Z^{z^zi}
                ph += (ci == 2 ? 1 : 0) + ((z && xi_) ? 2 : 0);
                x ^= xi_;
                z ^= zi_;
            }
            sign_exp += ph;
            const int bit = k - 1 - a;
            xm |= std::uint64_t{x} << bit;
            zm |= std::uint64_t{z} << bit;
        }
        const cplx coef = scale * i_pow(sign_exp);
        for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(dim); ++b) {
            const double s = (std::popcount(zm & b) & 1) ? -1.0 : 1.0;
            out(static_cast<Eigen::Index>(b ^ xm), static_cast<Eigen::Index>(b)) += s * coef;
        }
    }
    return out;
}

/// Entrywise partial transpose of a 2^k x 2^k copy operator on the copies flagged in t.
inline CMatrix dense_partial_transpose(const CMatrix &op, int k, const BitVector &t) {
    std::uint64_t mask = 0;
    for (int a = 0; a < k; ++a) {
        if (t[static_cast<std::size_t>(a)]) {
            mask |= std::uint64_t{1} << (k - 1 - a);
        }
    }
    CMatrix out(op.rows(), op.cols());
    for (Eigen::Index r = 0; r < op.rows(); ++r) {
        for (Eigen::Index c = 0; c < op.cols(); ++c) {
            const auto ur = static_cast<std::uint64_t>(r), uc = static_cast<std::uint64_t>(c);
            const auto r2 = (ur & ~mask) | (uc & mask);
            const auto c2 = (uc & ~mask) | (ur & mask);
            out(static_cast<Eigen::Index>(r2), static_cast<Eigen::Index>(c2)) = op(r, c);
        }
    }
    return out;
}

/// Operator equality decided on single-qubit factors.
inline bool same_operator(const PauliMonomial &a, const PauliMonomial &b, double tol = 1e-10) {
    return a.k == b.k && max_abs_diff(single_qubit_factor(a), single_qubit_factor(b)) < tol;
}

// ---------------------------------------------------------------------------
// File format: {"k": int, "V": ["column bits", ...], "M": [[i, j], ...],
// "Gamma": "bits"}. Column bitstrings are copy-major with copy 0 leftmost; M lists
// the 0-based (i, j), i < j, of its upper-triangular ones; Gamma may be omitted.

inline nlohmann::json monomial_to_json(const PauliMonomial &w) {
    nlohmann::json cols = nlohmann::json::array();
    for (int i = 0; i < w.m(); ++i) {
        cols.push_back(w.V.column(static_cast<std::size_t>(i)).to_string());
    }
    nlohmann::json ms = nlohmann::json::array();
    for (int i = 0; i < w.m(); ++i) {
        for (int j = i + 1; j < w.m(); ++j) {
            if (w.M(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) {
                ms.push_back({i, j});
            }
        }
    }
    return {{"k", w.k}, {"V", cols}, {"M", ms}, {"Gamma", w.gamma.to_string()}};
}

/// Parses and validates a monomial record; throws std::invalid_argument on any defect.
inline PauliMonomial monomial_from_json(const nlohmann::json &j) {
    try {
        if (!j.is_object() || !j.contains("k") || !j.contains("V")) {
            throw std::invalid_argument("monomial record needs fields \"k\" and \"V\"");
        }
        const int k = j.at("k").get<int>();
        if (k < 1) {
            throw std::invalid_argument("monomial k must be positive");
        }
        std::vector<BitVector> cols;
        for (const auto &c : j.at("V")) {
            const auto s = c.get<std::string>();
            if (s.size() != static_cast<std::size_t>(k)) {
                throw std::invalid_argument("V column '" + s + "' does not have length k = " + std::to_string(k));
            }
            cols.push_back(BitVector::from_string(s));
        }
        const auto m = cols.size();
        PauliMonomial w = PauliMonomial::from_columns(k, cols);
        if (j.contains("M")) {
            for (const auto &e : j.at("M")) {
                if (!e.is_array() || e.size() != 2) {
                    throw std::invalid_argument("M entries must be [i, j] pairs");
                }
                const auto a = e[0].get<std::size_t>(), b = e[1].get<std::size_t>();
                if (a >= m || b >= m || a == b) {
                    throw std::invalid_argument("M entry [" + std::to_string(a) + ", " + std::to_string(b) +
                                                "] is out of range or diagonal");
                }
                w.M.set(a, b, true);
                w.M.set(b, a, true);
            }
        }
        if (j.contains("Gamma")) {
            const auto g = j.at("Gamma").get<std::string>();
            if (g.size() != m) {
                throw std::invalid_argument("Gamma must have one bit per column of V");
            }
            w.gamma = BitVector::from_string(g);
        }
        require_valid(w);
        return w;
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("malformed monomial record: ") + e.what());
    }
}

inline PauliMonomial load_monomial_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open monomial file '" + path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument("monomial file '" + path + "' is not valid JSON: " + e.what());
    }
    return monomial_from_json(j);
}

}  // namespace magiclab

#endif
