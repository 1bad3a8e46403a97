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

#ifndef MAGICLAB_GENPURITY_HPP
#define MAGICLAB_GENPURITY_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "magiclab/common.hpp"
#include "magiclab/monomial.hpp"
#include "magiclab/sre.hpp"
#include "magiclab/statevec.hpp"

namespace magiclab {

/// psi^{(x) k} with the k copies of each physical qubit adjacent.
///
/// Index layout: qubit j owns the k-bit block at shift (n-1-j)*k, and within a
/// block copy 0 is the most significant bit, matching single_qubit_factor.
class CopyStack {
   public:
    CopyStack(const StateVec &psi, int k) : n_(psi.n()), k_(k) {
        if (k < 1) {
            throw std::invalid_argument("copy stack needs k >= 1");
        }
        require_amplitudes(n_ * k_, "copy stack");
        const std::uint64_t total = std::uint64_t{1} << (n_ * k_);
        amps_.resize(static_cast<Eigen::Index>(total));
        // Walk copy-major indices (copy a holds bits [(k-1-a)n, (k-a)n)) and scatter.
        const std::uint64_t d = std::uint64_t{1} << n_;
        std::vector<std::uint64_t> spread(d);  // qubit bits of one copy placed at copy slot 0
        for (std::uint64_t b = 0; b < d; ++b) {
            std::uint64_t s = 0;
            for (int j = 0; j < n_; ++j) {
                if ((b >> (n_ - 1 - j)) & 1u) {
                    s |= std::uint64_t{1} << ((n_ - 1 - j) * k_);
                }
            }
            spread[b] = s;
        }
        fill(psi, 0, 0, cplx(1.0, 0.0), spread);
    }

    int n() const { return n_; }
    int k() const { return k_; }
    const CVector &amps() const { return amps_; }

   private:
    void fill(const StateVec &psi, int copy, std::uint64_t index, cplx value, const std::vector<std::uint64_t> &spread) {
        if (copy == k_) {
            amps_[static_cast<Eigen::Index>(index)] = value;
            return;
        }
        const int shift = k_ - 1 - copy;
        for (Eigen::Index b = 0; b < psi.dim(); ++b) {
            fill(psi, copy + 1, index | (spread[static_cast<std::size_t>(b)] << shift), value * psi[b], spread);
        }
    }

    int n_;
    int k_;
    CVector amps_;
};

/// Row-sparse view of a 2^k x 2^k factor, for repeated block application.
class FactorAction {
   public:
    explicit FactorAction(const CMatrix &omega) : dim_(omega.rows()) {
        offsets_.push_back(0);
        for (Eigen::Index r = 0; r < dim_; ++r) {
            for (Eigen::Index c = 0; c < dim_; ++c) {
                if (std::abs(omega(r, c)) > 1e-14) {
                    cols_.push_back(static_cast<std::uint32_t>(c));
                    vals_.push_back(omega(r, c));
                }
            }
            offsets_.push_back(cols_.size());
        }
    }

    Eigen::Index dim() const { return dim_; }

    /// Applies the factor to the k-bit block at `shift` of v, in place.
    void apply_block(CVector &v, int total_bits, int block_bits, int shift) const {
        const std::uint64_t lo_count = std::uint64_t{1} << shift;
        const std::uint64_t hi_count = std::uint64_t{1} << (total_bits - shift - block_bits);
        std::vector<cplx> x(static_cast<std::size_t>(dim_));
        for (std::uint64_t hi = 0; hi < hi_count; ++hi) {
            const std::uint64_t hbase = hi << (shift + block_bits);
            for (std::uint64_t lo = 0; lo < lo_count; ++lo) {
                const std::uint64_t base = hbase | lo;
                for (Eigen::Index r = 0; r < dim_; ++r) {
                    x[static_cast<std::size_t>(r)] = v[static_cast<Eigen::Index>(base | (static_cast<std::uint64_t>(r) << shift))];
                }
                for (Eigen::Index r = 0; r < dim_; ++r) {
                    cplx acc = 0.0;
                    for (std::size_t e = offsets_[static_cast<std::size_t>(r)]; e < offsets_[static_cast<std::size_t>(r) + 1]; ++e) {
                        acc += vals_[e] * x[cols_[e]];
                    }
                    v[static_cast<Eigen::Index>(base | (static_cast<std::uint64_t>(r) << shift))] = acc;
                }
            }
        }
    }

   private:
    Eigen::Index dim_;
    std::vector<std::size_t> offsets_;
    std::vector<std::uint32_t> cols_;
    std::vector<cplx> vals_;
};

/// <psi^k| omega^{(x) n} |psi^k> as a complex number, from a prebuilt stack.
inline cplx generalized_expectation(const CopyStack &stack, const FactorAction &omega) {
    if (omega.dim() != (Eigen::Index{1} << stack.k())) {
        throw std::invalid_argument("factor and copy stack disagree on k");
    }
    CVector v = stack.amps();
    const int total = stack.n() * stack.k();
    for (int j = 0; j < stack.n(); ++j) {
        omega.apply_block(v, total, stack.k(), (stack.n() - 1 - j) * stack.k());
    }
    return stack.amps().dot(v);
}

inline cplx generalized_expectation(const StateVec &psi, const PauliMonomial &w) {
    require_valid(w);
    require_amplitudes(psi.n() * w.k, "generalized purity");
    return generalized_expectation(CopyStack(psi, w.k), FactorAction(single_qubit_factor(w)));
}

/// P_Omega(psi) = |<psi^k|Omega|psi^k>|.
inline double generalized_purity(const StateVec &psi, const PauliMonomial &w) {
    return std::abs(generalized_expectation(psi, w));
}

/// The stabilizer purity P_{2a} evaluated as <psi^{2a}|Omega_{2a}|psi^{2a}>.
inline double purity_via_omega(const StateVec &psi, int alpha) {
    require_alpha(alpha);
    return generalized_purity(psi, primitive(2 * alpha));
}

/// True iff omega permutes the copies, i.e. Omega = T_pi for some pi in S_k.
/// Such operators have P_Omega = 1 on every pure state.
inline bool is_copy_permutation(const CMatrix &omega, int k) {
    const Eigen::Index dim = Eigen::Index{1} << k;
    if (omega.rows() != dim || omega.cols() != dim) {
        throw std::invalid_argument("factor size does not match k");
    }
    // Where each single copy bit is sent determines pi; then every column must agree.
    std::vector<int> target(static_cast<std::size_t>(k));
    for (int a = 0; a < k; ++a) {
        const Eigen::Index col = Eigen::Index{1} << a;
        Eigen::Index row = -1;
        omega.col(col).cwiseAbs().maxCoeff(&row);
        if (std::abs(omega(row, col) - 1.0) > 1e-12 || std::abs(omega.col(col).cwiseAbs().sum() - 1.0) > 1e-12) {
            return false;
        }
        if ((row & (row - 1)) != 0 || row == 0) {
            return false;
        }
        target[static_cast<std::size_t>(a)] = std::countr_zero(static_cast<std::uint64_t>(row));
    }
    for (Eigen::Index c = 0; c < dim; ++c) {
        Eigen::Index r = 0;
        for (int a = 0; a < k; ++a) {
            if ((c >> a) & 1) {
                r |= Eigen::Index{1} << target[static_cast<std::size_t>(a)];
            }
        }
        CVector expected = CVector::Zero(dim);
        expected[r] = 1.0;
        if ((omega.col(c) - expected).cwiseAbs().maxCoeff() > 1e-12) {
            return false;
        }
    }
    return true;
}

/// Threshold above P_4 that counts as a dominance violation.
inline constexpr double kDominanceTolerance = 1e-9;

struct DominanceEntry {
    std::size_t index = 0;
    double value = 0.0;
    double difference = 0.0;  // P_Omega - P_4
    bool permutation = false;  // exempt: P_Omega = 1 identically
    bool violation = false;
};

struct DominanceReport {
    double p4 = 0.0;
    std::vector<DominanceEntry> entries;
    std::size_t violations() const {
        std::size_t v = 0;
        for (const auto &e : entries) {
            v += e.violation ? 1 : 0;
        }
        return v;
    }
    /// Largest P_Omega - P_4 over non-permutation entries.
    double max_difference() const {
        double m = -std::numeric_limits<double>::infinity();
        for (const auto &e : entries) {
            m = e.permutation ? m : std::max(m, e.difference);
        }
        return m;
    }
};

/// Compares P_Omega(psi) against P_4(psi) for each monomial. Copy permutations
/// are recorded but never flagged; the bound concerns what remains once they are
/// factored out.
inline DominanceReport check_p4_dominance(const StateVec &psi, const std::vector<PauliMonomial> &monomials) {
    DominanceReport report;
    report.p4 = stabilizer_purity(psi, 2);
    std::vector<std::pair<int, CopyStack>> stacks;
    for (std::size_t i = 0; i < monomials.size(); ++i) {
        const auto &w = monomials[i];
        require_valid(w);
        const CopyStack *stack = nullptr;
        for (const auto &[k, s] : stacks) {
            if (k == w.k) {
                stack = &s;
            }
        }
        if (stack == nullptr) {
            stacks.emplace_back(w.k, CopyStack(psi, w.k));
            stack = &stacks.back().second;
        }
        const CMatrix omega = single_qubit_factor(w);
        const double value = std::abs(generalized_expectation(*stack, FactorAction(omega)));
        const double diff = value - report.p4;
        const bool perm = is_copy_permutation(omega, w.k);
        report.entries.push_back({i, value, diff, perm, !perm && diff > kDominanceTolerance});
    }
    return report;
}

/// Two-outcome POVM elements whose statistics on the partially transposed copy
/// stack reconstruct tr(Omega psi^k), for n = 1.
struct PovmPair {
    BitVector transpose;   // t_u
    CMatrix real_part;     // (2I + U + U^dagger)/4
    CMatrix imag_part;     // (2I - iU + iU^dagger)/4
};

inline PovmPair measurement_povm_pair(const PauliMonomial &w) {
    require_valid(w);
    require_qubits(w.k, 8, "measurement_povm_pair");
    PovmPair out;
    out.transpose = find_unitarizing_transpose(w);
    const CMatrix u = single_qubit_factor(partial_transpose(w, out.transpose));
    const CMatrix id = CMatrix::Identity(u.rows(), u.cols());
    const cplx i1(0.0, 1.0);
    out.real_part = (2.0 * id + u + u.adjoint()) / 4.0;
    out.imag_part = (2.0 * id - i1 * u + i1 * u.adjoint()) / 4.0;
    return out;
}

/// (psi psi^dagger)^{(x) k} for a single-qubit state, copy 0 most significant.
inline CMatrix copy_density(const StateVec &psi, int k) {
    CVector v = psi.amps();
    for (int a = 1; a < k; ++a) {
        CVector next(v.size() * psi.dim());
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            next.segment(i * psi.dim(), psi.dim()) = v[i] * psi.amps();
        }
        v = std::move(next);
    }
    return v * v.adjoint();
}

struct PovmReconstruction {
    cplx direct;         // tr(Omega psi^k)
    cplx reconstructed;  // 2 tr(Pi_r rho~) + 2i tr(Pi_i rho~) - (1 + i)
};

/// Checks the reconstruction identity at n = 1 with rho~ the partially transposed stack.
inline PovmReconstruction povm_reconstruction(const StateVec &psi, const PauliMonomial &w, const PovmPair &pair) {
    if (psi.n() != 1) {
        throw std::invalid_argument("POVM reconstruction is defined for single-qubit states");
    }
    const CMatrix rho = copy_density(psi, w.k);
    const CMatrix rho_t = dense_partial_transpose(rho, w.k, pair.transpose);
    const cplx i1(0.0, 1.0);
    PovmReconstruction r;
    r.direct = (single_qubit_factor(w) * rho).trace();
    r.reconstructed = 2.0 * (pair.real_part * rho_t).trace() + 2.0 * i1 * (pair.imag_part * rho_t).trace() - (1.0 + i1);
    return r;
}

}  // namespace magiclab

#endif
