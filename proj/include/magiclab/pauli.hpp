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

#ifndef MAGICLAB_PAULI_HPP
#define MAGICLAB_PAULI_HPP

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "magiclab/common.hpp"
#include "magiclab/f2.hpp"
#include "magiclab/statevec.hpp"

namespace magiclab {

/// i^e for e taken mod 4.
inline cplx i_pow(int e) {
    static constexpr std::array<double, 4> re{1, 0, -1, 0};
    static constexpr std::array<double, 4> im{0, 1, 0, -1};
    const int r = ((e % 4) + 4) % 4;
    return {re[r], im[r]};
}

/// n-qubit Pauli operator i^phase_exp * prod_j X_j^{x_j} Z_j^{z_j}.
///
/// The phase is an exponent mod 4 so the group law is exact. Qubit j of x and z
/// is bit j of the BitVectors.
struct PauliOp {
    int n = 0;
    BitVector x;
    BitVector z;
    int phase_exp = 0;

    PauliOp() = default;
    explicit PauliOp(int n_) : n(n_), x(static_cast<std::size_t>(n_)), z(static_cast<std::size_t>(n_)) {}
    PauliOp(BitVector x_, BitVector z_, int phase) : n(static_cast<int>(x_.size())), x(std::move(x_)), z(std::move(z_)),
                                                     phase_exp(((phase % 4) + 4) % 4) {
        if (x.size() != z.size()) {
            throw std::invalid_argument("x and z parts differ in length");
        }
    }

    /// Hermitian Pauli with the given symplectic bits and sign (-1)^sign.
    static PauliOp hermitian(BitVector x_, BitVector z_, bool negative = false) {
        const auto ys = static_cast<int>((x_ & z_).weight());
        return PauliOp(std::move(x_), std::move(z_), ys + (negative ? 2 : 0));
    }

    /// Parses "XIZY" style labels (optionally prefixed by +, -, i, -i), qubit 0 first.
    static PauliOp from_label(std::string_view label) {
        int phase = 0;
        if (label.starts_with("-i")) {
            phase = 3;
            label.remove_prefix(2);
        } else if (label.starts_with("+i") || label.starts_with("i")) {
            phase = 1;
            label.remove_prefix(label[0] == '+' ? 2 : 1);
        } else if (label.starts_with("-")) {
            phase = 2;
            label.remove_prefix(1);
        } else if (label.starts_with("+")) {
            label.remove_prefix(1);
        }
        BitVector x(label.size()), z(label.size());
        int ys = 0;
        for (std::size_t j = 0; j < label.size(); ++j) {
            switch (label[j]) {
                case 'I':
                    break;
                case 'X':
                    x.set(j, true);
                    break;
                case 'Z':
                    z.set(j, true);
                    break;
                case 'Y':
                    x.set(j, true);
                    z.set(j, true);
                    ++ys;
                    break;
                default:
                    throw std::invalid_argument("bad Pauli label character '" + std::string(1, label[j]) + "'");
            }
        }
        return PauliOp(std::move(x), std::move(z), phase + ys);
    }

    int y_count() const { return static_cast<int>((x & z).weight()); }

    bool is_hermitian() const { return ((phase_exp - y_count()) & 1) == 0; }

    /// Sign s with operator == s * (Hermitian representative); only for Hermitian operators.
    int hermitian_sign() const {
        if (!is_hermitian()) {
            throw std::invalid_argument("Pauli operator is not Hermitian");
        }
        return (((phase_exp - y_count()) % 4 + 4) % 4) == 0 ? 1 : -1;
    }

    std::string label() const {
        std::string s;
        for (int j = 0; j < n; ++j) {
            const bool xb = x[j], zb = z[j];
            s += xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
        }
        return s;
    }

    friend bool operator==(const PauliOp &, const PauliOp &) = default;
};

inline void require_same_n(const PauliOp &a, const PauliOp &b) {
    if (a.n != b.n) {
        throw std::invalid_argument("Pauli operators act on different qubit counts");
    }
}

/// Exact product a*b, phase included.
inline PauliOp multiply(const PauliOp &a, const PauliOp &b) {
    require_same_n(a, b);
    // Z^{z_a} X^{x_b} = (-1)^{z_a . x_b} X^{x_b} Z^{z_a}
    const int swap_sign = a.z.dot(b.x) ? 2 : 0;
    return PauliOp(a.x ^ b.x, a.z ^ b.z, a.phase_exp + b.phase_exp + swap_sign);
}

/// +1 if a and b commute, -1 otherwise.
inline int chi(const PauliOp &a, const PauliOp &b) {
    require_same_n(a, b);
    return (a.x.dot(b.z) != a.z.dot(b.x)) ? -1 : 1;
}

/// tr(P P^T)/d. For a Hermitian representative this is the parity of the Y count.
inline int xi(const PauliOp &p) {
    // P P^T = i^{2e} X^x Z^z Z^z X^x = (-1)^e
    return (p.phase_exp & 1) ? -1 : 1;
}

/// Dense 2^n x 2^n matrix; qubit 0 is the leftmost Kronecker factor.
inline CMatrix to_dense(const PauliOp &p) {
    require_qubits(p.n, kMaxQubits, "to_dense");
    const Eigen::Index dim = Eigen::Index{1} << p.n;
    std::uint64_t xm = 0, zm = 0;
    for (int j = 0; j < p.n; ++j) {
        const int bit = p.n - 1 - j;
        xm |= std::uint64_t{p.x[j]} << bit;
        zm |= std::uint64_t{p.z[j]} << bit;
    }
    CMatrix out = CMatrix::Zero(dim, dim);
    const cplx ph = i_pow(p.phase_exp);
    // (X^x Z^z)|b> = (-1)^{z.b} |b ^ x>
    for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(dim); ++b) {
        const double s = (std::popcount(zm & b) & 1) ? -1.0 : 1.0;
        out(static_cast<Eigen::Index>(b ^ xm), static_cast<Eigen::Index>(b)) = ph * s;
    }
    return out;
}

/// p|psi> as raw amplitudes.
inline CVector apply_pauli(const PauliOp &p, const CVector &amps) {
    const int n = p.n;
    if (amps.size() != (Eigen::Index{1} << n)) {
        throw std::invalid_argument("Pauli/state dimension mismatch");
    }
    std::uint64_t xm = 0, zm = 0;
    for (int j = 0; j < n; ++j) {
        const int bit = n - 1 - j;
        xm |= std::uint64_t{p.x[j]} << bit;
        zm |= std::uint64_t{p.z[j]} << bit;
    }
    const cplx ph = i_pow(p.phase_exp);
    CVector out(amps.size());
    for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(amps.size()); ++b) {
        const double s = (std::popcount(zm & b) & 1) ? -1.0 : 1.0;
        out[static_cast<Eigen::Index>(b ^ xm)] = ph * s * amps[static_cast<Eigen::Index>(b)];
    }
    return out;
}

/// <psi|P|psi> for Hermitian P.
inline double expectation(const StateVec &psi, const PauliOp &p) {
    if (!p.is_hermitian()) {
        throw std::invalid_argument("expectation requires a Hermitian Pauli operator");
    }
    if (psi.n() != p.n) {
        throw std::invalid_argument("Pauli/state qubit count mismatch");
    }
    return psi.amps().dot(apply_pauli(p, psi.amps())).real();
}

/// Expectation values of all 4^n Hermitian Paulis i^{|x&z|} X^x Z^z.
///
/// Entry (x << n) | z holds <psi|P_{x,z}|psi>, where x and z use the amplitude
/// bit convention (qubit 0 in bit n-1). For each x the z-sweep is a Walsh-Hadamard
/// transform of conj(psi[b^x]) psi[b], so the cost is O(n 4^n).
inline std::vector<double> pauli_spectrum(const StateVec &psi, int cap = kMaxQubits) {
    const int n = psi.n();
    require_qubits(n, cap, "pauli_spectrum");
    const std::uint64_t d = std::uint64_t{1} << n;
    std::vector<double> out(d * d);
    std::vector<cplx> f(d);
    const auto &a = psi.amps();
    for (std::uint64_t x = 0; x < d; ++x) {
        for (std::uint64_t b = 0; b < d; ++b) {
            f[b] = std::conj(a[static_cast<Eigen::Index>(b ^ x)]) * a[static_cast<Eigen::Index>(b)];
        }
        for (std::uint64_t h = 1; h < d; h <<= 1) {
            for (std::uint64_t i = 0; i < d; i += h << 1) {
                for (std::uint64_t j = i; j < i + h; ++j) {
                    const cplx u = f[j], v = f[j + h];
                    f[j] = u + v;
                    f[j + h] = u - v;
                }
            }
        }
        for (std::uint64_t z = 0; z < d; ++z) {
            out[(x << n) | z] = (i_pow(std::popcount(x & z)) * f[z]).real();
        }
    }
    return out;
}

/// Hermitian Pauli for spectrum index (x << n) | z.
inline PauliOp pauli_from_index(int n, std::uint64_t index) {
    const std::uint64_t d = std::uint64_t{1} << n;
    const std::uint64_t xm = index >> n, zm = index & (d - 1);
    BitVector x(static_cast<std::size_t>(n)), z(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        x.set(j, (xm >> (n - 1 - j)) & 1u);
        z.set(j, (zm >> (n - 1 - j)) & 1u);
    }
    return PauliOp::hermitian(std::move(x), std::move(z));
}

}  // namespace magiclab

#endif
