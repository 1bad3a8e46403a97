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

#ifndef MAGICLAB_SRE_HPP
#define MAGICLAB_SRE_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "magiclab/pauli.hpp"
#include "magiclab/statevec.hpp"

namespace magiclab {

/// |1 - P| below this counts as a stabilizer state.
inline constexpr double kStabilizerTolerance = 1e-10;

struct PurityReport {
    int alpha = 2;
    double purity = 1.0;
    double entropy = 0.0;
};

inline void require_alpha(int alpha) {
    if (alpha < 2) {
        throw std::invalid_argument("alpha must be an integer >= 2, got " + std::to_string(alpha));
    }
}

/// Stabilizer purities and Renyi entropies of one state, sharing a single Pauli spectrum.
class PurityCalculator {
   public:
    explicit PurityCalculator(const StateVec &psi) : n_(psi.n()), spectrum_(pauli_spectrum(psi)) {}

    int n() const { return n_; }
    const std::vector<double> &spectrum() const { return spectrum_; }

    /// P_{2a} = (1/d) sum_P <psi|P|psi>^{2a}
    double purity(int alpha) const {
        require_alpha(alpha);
        double sum = 0.0;
        for (double a : spectrum_) {
            sum += std::pow(a * a, alpha);
        }
        return sum / static_cast<double>(std::uint64_t{1} << n_);
    }

    /// M_a = log2(P_{2a}) / (1 - a), in bits.
    double entropy(int alpha) const {
        const double p = purity(alpha);
        if (std::abs(1.0 - p) < kStabilizerTolerance) {
            return 0.0;
        }
        return std::log2(p) / (1.0 - alpha);
    }

    PurityReport report(int alpha) const { return {alpha, purity(alpha), entropy(alpha)}; }

   private:
    int n_;
    std::vector<double> spectrum_;
};

inline double stabilizer_purity(const StateVec &psi, int alpha) {
    require_alpha(alpha);
    return PurityCalculator(psi).purity(alpha);
}

inline double stabilizer_entropy(const StateVec &psi, int alpha) {
    require_alpha(alpha);
    return PurityCalculator(psi).entropy(alpha);
}

inline bool is_stabilizer_state(const StateVec &psi) {
    return std::abs(1.0 - stabilizer_purity(psi, 2)) < kStabilizerTolerance;
}

/// M_a(|T>) in closed form: P_{2a}(|T>) = (1 + 2^{1-a}) / 2.
inline double t_state_entropy(int alpha) {
    require_alpha(alpha);
    return std::log2(0.5 * (1.0 + std::pow(2.0, 1 - alpha))) / (1.0 - alpha);
}

/// Upper bound M_a(psi)/M_a(|T>) on the number of T states distillable per copy of psi.
inline double distillation_rate_bound(const StateVec &psi, int alpha) {
    const double m = stabilizer_entropy(psi, alpha);
    if (m == 0.0) {
        return 0.0;
    }
    return m / t_state_entropy(alpha);
}

}  // namespace magiclab

#endif
