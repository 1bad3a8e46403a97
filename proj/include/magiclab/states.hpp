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

#ifndef MAGICLAB_STATES_HPP
#define MAGICLAB_STATES_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "magiclab/common.hpp"
#include "magiclab/f2.hpp"
#include "magiclab/pauli.hpp"
#include "magiclab/statevec.hpp"

namespace magiclab {

/// Uniform double in [0, 1) from the top 53 bits; independent of the standard library.
inline double uniform01(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Clifford unitary modulo global phase, as the images of X_j and Z_j.
///
/// Row j (j < n) of `symplectic` is the image of X_j, row n + j the image of Z_j,
/// each laid out as [x bits | z bits]. The image is (-1)^phases[row] times the
/// Hermitian Pauli with those bits.
struct CliffordTableau {
    int n = 0;
    BitMatrix symplectic;
    BitVector phases;

    static CliffordTableau identity(int n) {
        CliffordTableau t{n, BitMatrix::identity(2 * static_cast<std::size_t>(n)), BitVector(2 * static_cast<std::size_t>(n))};
        return t;
    }

    /// Image of generator `row` as a signed Hermitian Pauli.
    PauliOp image(std::size_t row) const {
        BitVector x(static_cast<std::size_t>(n)), z(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            x.set(j, symplectic(row, j));
            z.set(j, symplectic(row, n + j));
        }
        return PauliOp::hermitian(std::move(x), std::move(z), phases[row]);
    }

    /// Rows preserve the symplectic form: images of X_i, Z_j anticommute iff i == j.
    bool is_symplectic() const {
        const auto m = static_cast<std::size_t>(2 * n);
        if (symplectic.rows() != m || symplectic.cols() != m || phases.size() != m) {
            return false;
        }
        auto form = [&](std::size_t a, std::size_t b) {
            bool s = false;
            for (int j = 0; j < n; ++j) {
                s ^= (symplectic(a, j) && symplectic(b, n + j)) != (symplectic(a, n + j) && symplectic(b, j));
            }
            return s;
        };
        for (std::size_t a = 0; a < m; ++a) {
            for (std::size_t b = a + 1; b < m; ++b) {
                const bool expected = (b == a + static_cast<std::size_t>(n));
                if (form(a, b) != expected) {
                    return false;
                }
            }
        }
        return true;
    }

    friend bool operator==(const CliffordTableau &, const CliffordTableau &) = default;
    friend auto operator<=>(const CliffordTableau &a, const CliffordTableau &b) {
        if (auto c = a.symplectic <=> b.symplectic; c != 0) {
            return c;
        }
        return a.phases <=> b.phases;
    }
};

namespace detail {

// Hadamard layer and qubit permutation from the quantum Mallows distribution.
inline void sample_qmallows(int n, std::mt19937_64 &rng, std::vector<bool> &had, std::vector<int> &perm) {
    had.assign(static_cast<std::size_t>(n), false);
    perm.assign(static_cast<std::size_t>(n), 0);
    std::vector<int> inds(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        inds[static_cast<std::size_t>(i)] = i;
    }
    for (int i = 0; i < n; ++i) {
        const int m = n - i;
        const double eps = std::pow(4.0, -m);
        const double r = uniform01(rng);
        const int index = -static_cast<int>(std::ceil(std::log2(r + (1.0 - r) * eps)));
        had[static_cast<std::size_t>(i)] = index < m;
        const int k = index < m ? index : 2 * m - index - 1;
        perm[static_cast<std::size_t>(i)] = inds[static_cast<std::size_t>(k)];
        inds.erase(inds.begin() + k);
    }
}

inline void fill_lower(BitMatrix &mat, std::mt19937_64 &rng, bool symmetric) {
    for (std::size_t i = 1; i < mat.rows(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            const bool b = rng() & 1u;
            mat.set(i, j, b);
            if (symmetric) {
                mat.set(j, i, b);
            }
        }
    }
}

inline BitMatrix block(const BitMatrix &a, const BitMatrix &b, const BitMatrix &c, const BitMatrix &d) {
    const std::size_t n = a.rows();
    BitMatrix out(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out.set(i, j, a(i, j));
            out.set(i, n + j, b(i, j));
            out.set(n + i, j, c(i, j));
            out.set(n + i, n + j, d(i, j));
        }
    }
    return out;
}

}  // namespace detail

/// Uniformly random Clifford (mod global phase) by the Bravyi-Maslov canonical form:
/// a Mallows-distributed Hadamard/permutation layer between two Borel-group layers,
/// followed by independent uniform sign bits.
inline CliffordTableau random_clifford(int n, std::mt19937_64 &rng) {
    if (n < 1) {
        throw std::invalid_argument("random_clifford requires n >= 1");
    }
    const auto un = static_cast<std::size_t>(n);
    std::vector<bool> had;
    std::vector<int> perm;
    detail::sample_qmallows(n, rng, had, perm);

    BitMatrix gamma1(un, un), gamma2(un, un);
    for (std::size_t i = 0; i < un; ++i) {
        gamma1.set(i, i, rng() & 1u);
    }
    for (std::size_t i = 0; i < un; ++i) {
        gamma2.set(i, i, rng() & 1u);
    }
    BitMatrix delta1 = BitMatrix::identity(un), delta2 = BitMatrix::identity(un);
    detail::fill_lower(gamma1, rng, true);
    detail::fill_lower(gamma2, rng, true);
    detail::fill_lower(delta1, rng, false);
    detail::fill_lower(delta2, rng, false);

    const BitMatrix zero(un, un);
    const BitMatrix table1 =
        detail::block(delta1, zero, gamma1 * delta1, inverse(delta1).transpose());
    const BitMatrix table2 =
        detail::block(delta2, zero, gamma2 * delta2, inverse(delta2).transpose());

    // Weyl layer between the two Borel layers: qubit permutation, then X/Z swap on
    // Hadamard qubits.
    BitMatrix weyl(2 * un, 2 * un);
    for (std::size_t i = 0; i < un; ++i) {
        const auto p = static_cast<std::size_t>(perm[i]);
        weyl.set(i, had[i] ? un + p : p, true);
        weyl.set(un + i, had[i] ? p : un + p, true);
    }

    CliffordTableau out{n, table2 * weyl * table1, BitVector(2 * un)};
    for (std::size_t i = 0; i < 2 * un; ++i) {
        out.phases.set(i, rng() & 1u);
    }
    return out;
}

inline CliffordTableau random_clifford(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_clifford(n, rng);
}

/// Every Clifford on n <= 2 qubits modulo global phase (24 and 11520 elements),
/// in increasing tableau order.
inline std::vector<CliffordTableau> enumerate_clifford(int n) {
    if (n < 1) {
        throw std::invalid_argument("enumerate_clifford requires n >= 1");
    }
    if (n > 2) {
        throw ResourceError("enumerate_clifford supports n <= 2 (|C_3| is 92897280)");
    }
    const std::size_t m = 2 * static_cast<std::size_t>(n);
    const std::uint64_t entries = m * m;
    std::vector<CliffordTableau> out;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << entries); ++bits) {
        CliffordTableau t{n, BitMatrix(m, m), BitVector(m)};
        for (std::size_t e = 0; e < entries; ++e) {
            t.symplectic.set(e / m, e % m, (bits >> e) & 1u);
        }
        if (!t.is_symplectic()) {
            continue;
        }
        for (std::uint64_t ph = 0; ph < (std::uint64_t{1} << m); ++ph) {
            t.phases = BitVector::from_bits(ph, m);
            out.push_back(t);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

// U|0>: the joint +1 eigenvector of the Z images, with the first significant
// amplitude made real positive.
inline CVector stabilizer_reference(const CliffordTableau &c) {
    const Eigen::Index dim = Eigen::Index{1} << c.n;
    auto project = [&](CVector v) {
        for (int j = 0; j < c.n; ++j) {
            v = 0.5 * (v + apply_pauli(c.image(static_cast<std::size_t>(c.n + j)), v));
        }
        return v;
    };
    std::mt19937_64 rng(0x5eedULL);
    CVector v(dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        const double th = 2.0 * std::numbers::pi * uniform01(rng);
        v[b] = cplx(std::cos(th), std::sin(th));
    }
    CVector p = project(v);
    for (Eigen::Index b = 0; p.norm() < 1e-6 && b < dim; ++b) {
        CVector e = CVector::Zero(dim);
        e[b] = 1.0;
        p = project(e);
    }
    p.normalize();
    for (Eigen::Index b = 0; b < dim; ++b) {
        if (std::abs(p[b]) > 1e-9) {
            p *= std::conj(p[b]) / std::abs(p[b]);
            break;
        }
    }
    return p;
}

}  // namespace detail

/// U_C psi with U_C fixed up to global phase by the tableau.
///
/// The column U|b> equals (prod_j X'_j^{b_j}) U|0>, where X'_j are the X images and
/// U|0> is the joint +1 eigenvector of the Z images. Columns are generated in Gray
/// code order, one Pauli application each, so the cost is O(4^n).
inline StateVec apply_clifford(const CliffordTableau &c, const StateVec &psi) {
    if (c.n != psi.n()) {
        throw std::invalid_argument("Clifford/state qubit count mismatch");
    }
    require_qubits(c.n, kMaxQubits, "apply_clifford");
    const int n = c.n;
    const std::uint64_t dim = std::uint64_t{1} << n;
    std::vector<PauliOp> ximg;
    for (int j = 0; j < n; ++j) {
        ximg.push_back(c.image(static_cast<std::size_t>(j)));
    }
    CVector col = detail::stabilizer_reference(c);
    CVector out = psi[0] * col;
    std::uint64_t gray = 0;
    for (std::uint64_t i = 1; i < dim; ++i) {
        const int bit = std::countr_zero(i);
        gray ^= std::uint64_t{1} << bit;
        // amplitude bit `bit` belongs to qubit n - 1 - bit
        col = apply_pauli(ximg[static_cast<std::size_t>(n - 1 - bit)], col);
        out += psi[static_cast<Eigen::Index>(gray)] * col;
    }
    return StateVec::normalized(n, std::move(out));
}

/// Dense unitary of the tableau (canonical global phase).
inline CMatrix clifford_unitary(const CliffordTableau &c) {
    require_qubits(c.n, 8, "clifford_unitary");
    const Eigen::Index dim = Eigen::Index{1} << c.n;
    CMatrix u(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        CVector e = CVector::Zero(dim);
        e[b] = 1.0;
        u.col(b) = apply_clifford(c, StateVec(c.n, e)).amps();
    }
    return u;
}

enum class StateKind { basis0, t_power, golden_power, haar, random_stabilizer, file };

/// |T> = (|0> + e^{i pi/4}|1>)/sqrt(2).
inline StateVec t_state() {
    CVector a(2);
    a << 1.0, std::polar(1.0, std::numbers::pi / 4);
    return StateVec::normalized(1, std::move(a));
}

/// Single-qubit state with Bloch vector (1,1,1)/sqrt(3).
inline StateVec golden_state() {
    const double theta = std::acos(1.0 / std::sqrt(3.0));
    CVector a(2);
    a << std::cos(theta / 2), std::polar(std::sin(theta / 2), std::numbers::pi / 4);
    return StateVec::normalized(1, std::move(a));
}

inline StateVec basis_zero(int n) {
    require_qubits(n, kMaxQubits, "basis0");
    CVector a = CVector::Zero(Eigen::Index{1} << n);
    a[0] = 1.0;
    return StateVec(n, std::move(a));
}

/// Haar-random state from i.i.d. complex Gaussian amplitudes.
inline StateVec haar_state(int n, std::mt19937_64 &rng) {
    require_qubits(n, kMaxQubits, "haar");
    std::normal_distribution<double> g(0.0, 1.0);
    CVector a(Eigen::Index{1} << n);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const double re = g(rng);
        const double im = g(rng);
        a[i] = cplx(re, im);
    }
    return StateVec::normalized(n, std::move(a));
}

inline StateVec haar_state(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return haar_state(n, rng);
}

inline StateVec random_stabilizer_state(int n, std::uint64_t seed) {
    return apply_clifford(random_clifford(n, seed), basis_zero(n));
}

/// Parses {"n": int, "amps": [[re, im], ...]}; renormalizes deviations below 1e-6.
inline StateVec state_from_json(const nlohmann::json &j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("amps")) {
        throw std::invalid_argument("state file needs fields \"n\" and \"amps\"");
    }
    const int n = j.at("n").get<int>();
    if (n < 1) {
        throw std::invalid_argument("state file has n < 1");
    }
    require_qubits(n, kMaxQubits, "state file");
    const auto &amps = j.at("amps");
    if (!amps.is_array() || amps.size() != (std::size_t{1} << n)) {
        throw std::invalid_argument("state file needs 2^n amplitude pairs");
    }
    CVector a(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const auto &p = amps[i];
        if (!p.is_array() || p.size() != 2) {
            throw std::invalid_argument("amplitude " + std::to_string(i) + " is not a [re, im] pair");
        }
        a[static_cast<Eigen::Index>(i)] = cplx(p[0].get<double>(), p[1].get<double>());
    }
    const double nrm = a.norm();
    if (std::abs(nrm - 1.0) >= 1e-6) {
        throw std::invalid_argument("state file norm " + std::to_string(nrm) + " deviates from 1 by more than 1e-6");
    }
    return StateVec::normalized(n, std::move(a));
}

inline nlohmann::json state_to_json(const StateVec &psi) {
    nlohmann::json amps = nlohmann::json::array();
    for (Eigen::Index i = 0; i < psi.dim(); ++i) {
        amps.push_back({psi[i].real(), psi[i].imag()});
    }
    return {{"n", psi.n()}, {"amps", amps}};
}

inline StateVec load_state_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open state file '" + path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument("state file '" + path + "' is not valid JSON: " + e.what());
    }
    return state_from_json(j);
}

/// Builds one of the named states. `path` is used only for StateKind::file.
inline StateVec make_state(StateKind kind, int n, std::uint64_t seed = 0, const std::string &path = {}) {
    if (kind != StateKind::file && n < 1) {
        throw std::invalid_argument("state needs n >= 1");
    }
    switch (kind) {
        case StateKind::basis0:
            return basis_zero(n);
        case StateKind::t_power:
            require_qubits(n, kMaxQubits, "t_power");
            return tensor_power(t_state(), n);
        case StateKind::golden_power:
            require_qubits(n, kMaxQubits, "golden_power");
            return tensor_power(golden_state(), n);
        case StateKind::haar:
            return haar_state(n, seed);
        case StateKind::random_stabilizer:
            require_qubits(n, kMaxQubits, "random_stabilizer");
            return random_stabilizer_state(n, seed);
        case StateKind::file:
            return load_state_file(path);
    }
    throw std::invalid_argument("unknown state kind");
}

}  // namespace magiclab

#endif
