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

#ifndef MAGICLAB_STATEVEC_HPP
#define MAGICLAB_STATEVEC_HPP

#include <cmath>
#include <stdexcept>
#include <string>

#include "magiclab/common.hpp"

namespace magiclab {

/// Pure n-qubit state. Amplitude index b has qubit 0 as its most significant
/// bit, so the state of qubits (q0, q1, ...) is the Kronecker product in order.
class StateVec {
   public:
    StateVec() = default;

    /// Takes ownership of amplitudes; they must already have unit norm (1e-12).
    StateVec(int n, CVector amps) : n_(n), amps_(std::move(amps)) {
        if (n < 1) {
            throw std::invalid_argument("state needs at least one qubit");
        }
        if (amps_.size() != (Eigen::Index{1} << n)) {
            throw std::invalid_argument("state has " + std::to_string(amps_.size()) +
                                        " amplitudes, expected 2^" + std::to_string(n));
        }
        if (std::abs(amps_.norm() - 1.0) > 1e-12) {
            throw std::invalid_argument("state is not normalized");
        }
    }

    /// Normalizes arbitrary nonzero amplitudes.
    static StateVec normalized(int n, CVector amps) {
        const double nrm = amps.norm();
        if (!(nrm > 0.0) || !std::isfinite(nrm)) {
            throw std::invalid_argument("cannot normalize a zero vector");
        }
        amps /= nrm;
        return StateVec(n, std::move(amps));
    }

    int n() const { return n_; }
    Eigen::Index dim() const { return amps_.size(); }
    const CVector &amps() const { return amps_; }
    cplx operator[](Eigen::Index i) const { return amps_[i]; }

   private:
    int n_ = 0;
    CVector amps_;
};

/// |a> (x) |b>, with a's qubits first.
inline StateVec tensor(const StateVec &a, const StateVec &b) {
    CVector out(a.dim() * b.dim());
    for (Eigen::Index i = 0; i < a.dim(); ++i) {
        out.segment(i * b.dim(), b.dim()) = a[i] * b.amps();
    }
    return StateVec::normalized(a.n() + b.n(), std::move(out));
}

inline StateVec tensor_power(const StateVec &a, int copies) {
    StateVec out = a;
    for (int i = 1; i < copies; ++i) {
        out = tensor(out, a);
    }
    return out;
}

/// |<a|b>|^2
inline double fidelity(const StateVec &a, const StateVec &b) {
    return std::norm(a.amps().dot(b.amps()));
}

}  // namespace magiclab

#endif
