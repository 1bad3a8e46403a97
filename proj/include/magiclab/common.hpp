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

#ifndef MAGICLAB_COMMON_HPP
#define MAGICLAB_COMMON_HPP

#include <complex>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace magiclab {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;

/// Raised when a request would exceed a dense-size cap. Input errors use
/// std::invalid_argument.
class ResourceError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Largest single-copy qubit count for dense statevectors and spectra.
inline constexpr int kMaxQubits = 12;

/// Largest n*k for dense moment operators (dimension 2^(nk)).
inline constexpr int kMaxMomentQubits = 13;

/// Amplitude cap for copy stacks, 2^26 unless MAGICLAB_MAX_DIM overrides it.
inline std::uint64_t max_amplitudes() {
    if (const char *env = std::getenv("MAGICLAB_MAX_DIM")) {
        try {
            auto v = std::stoull(env);
            if (v > 0) {
                return v;
            }
        } catch (const std::exception &) {
        }
    }
    return std::uint64_t{1} << 26;
}

inline void require_qubits(int n, int cap, const char *what) {
    if (n > cap) {
        throw ResourceError(std::string(what) + ": " + std::to_string(n) + " qubits exceeds cap of " +
                            std::to_string(cap) + " (dimension 2^" + std::to_string(n) + ")");
    }
}

inline void require_amplitudes(int total_qubits, const char *what) {
    if (total_qubits >= 63 || (std::uint64_t{1} << total_qubits) > max_amplitudes()) {
        throw ResourceError(std::string(what) + ": 2^" + std::to_string(total_qubits) +
                            " amplitudes exceeds cap of " + std::to_string(max_amplitudes()));
    }
}

inline double max_abs_diff(const CMatrix &a, const CMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    if (a.size() == 0) {
        return 0.0;
    }
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace magiclab

#endif
