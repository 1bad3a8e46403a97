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

#ifndef MAGICLAB_F2_HPP
#define MAGICLAB_F2_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace magiclab {

/// Dense vector over F2, packed into 64-bit words. Bits past size() are kept zero.
class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(std::size_t len) : len_(len), words_((len + 63) / 64, 0) {}

    /// Parses a string of '0'/'1'; character 0 becomes index 0.
    static BitVector from_string(std::string_view s) {
        BitVector v(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1') {
                v.set(i, true);
            } else if (s[i] != '0') {
                throw std::invalid_argument("bitstring contains '" + std::string(1, s[i]) + "'");
            }
        }
        return v;
    }

    static BitVector from_bits(std::uint64_t bits, std::size_t len) {
        BitVector v(len);
        for (std::size_t i = 0; i < len; ++i) {
            v.set(i, (bits >> i) & 1u);
        }
        return v;
    }

    std::size_t size() const { return len_; }

    bool operator[](std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

    void set(std::size_t i, bool b) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (b) {
            words_[i >> 6] |= mask;
        } else {
            words_[i >> 6] &= ~mask;
        }
    }

    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    std::size_t weight() const {
        std::size_t w = 0;
        for (auto word : words_) {
            w += static_cast<std::size_t>(std::popcount(word));
        }
        return w;
    }

    bool any() const {
        return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
    }

    /// Inner product mod 2.
    bool dot(const BitVector &o) const {
        check_size(o);
        unsigned parity = 0;
        for (std::size_t i = 0; i < words_.size(); ++i) {
            parity ^= static_cast<unsigned>(std::popcount(words_[i] & o.words_[i])) & 1u;
        }
        return parity != 0;
    }

    BitVector &operator^=(const BitVector &o) {
        check_size(o);
        for (std::size_t i = 0; i < words_.size(); ++i) {
            words_[i] ^= o.words_[i];
        }
        return *this;
    }

    friend BitVector operator^(BitVector a, const BitVector &b) { return a ^= b; }

    BitVector operator&(const BitVector &o) const {
        check_size(o);
        BitVector r(len_);
        for (std::size_t i = 0; i < words_.size(); ++i) {
            r.words_[i] = words_[i] & o.words_[i];
        }
        return r;
    }

    /// Low 64 bits as an integer, bit i at position i.
    std::uint64_t to_u64() const { return words_.empty() ? 0 : words_[0]; }

    std::string to_string() const {
        std::string s(len_, '0');
        for (std::size_t i = 0; i < len_; ++i) {
            if ((*this)[i]) {
                s[i] = '1';
            }
        }
        return s;
    }

    friend bool operator==(const BitVector &a, const BitVector &b) = default;
    friend auto operator<=>(const BitVector &a, const BitVector &b) {
        if (auto c = a.len_ <=> b.len_; c != 0) {
            return c;
        }
        return a.words_ <=> b.words_;
    }

   private:
    void check_size(const BitVector &o) const {
        if (o.len_ != len_) {
            throw std::invalid_argument("bit vector length mismatch");
        }
    }

    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Dense row-major matrix over F2; each row is a packed BitVector.
class BitMatrix {
   public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

    static BitMatrix identity(std::size_t m) {
        BitMatrix r(m, m);
        for (std::size_t i = 0; i < m; ++i) {
            r.set(i, i, true);
        }
        return r;
    }

    /// Builds a matrix from row strings of '0'/'1'.
    static BitMatrix from_rows(const std::vector<std::string> &rows) {
        BitMatrix r(rows.size(), rows.empty() ? 0 : rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != r.cols_) {
                throw std::invalid_argument("ragged bit matrix rows");
            }
            r.rows_[i] = BitVector::from_string(rows[i]);
        }
        return r;
    }

    /// Builds a matrix whose columns are the given vectors (all of equal length).
    static BitMatrix from_columns(std::size_t rows, const std::vector<BitVector> &columns) {
        BitMatrix r(rows, columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j) {
            r.set_column(j, columns[j]);
        }
        return r;
    }

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }

    bool operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }
    void set(std::size_t i, std::size_t j, bool b) { rows_[i].set(j, b); }

    const BitVector &row(std::size_t i) const { return rows_[i]; }
    BitVector &row(std::size_t i) { return rows_[i]; }

    BitVector column(std::size_t j) const {
        BitVector c(rows());
        for (std::size_t i = 0; i < rows(); ++i) {
            c.set(i, rows_[i][j]);
        }
        return c;
    }

    void set_column(std::size_t j, const BitVector &c) {
        if (c.size() != rows()) {
            throw std::invalid_argument("column length mismatch");
        }
        for (std::size_t i = 0; i < rows(); ++i) {
            rows_[i].set(j, c[i]);
        }
    }

    void swap_rows(std::size_t a, std::size_t b) { std::swap(rows_[a], rows_[b]); }

    bool is_zero() const {
        return std::none_of(rows_.begin(), rows_.end(), [](const BitVector &r) { return r.any(); });
    }

    bool is_square() const { return rows() == cols(); }

    BitMatrix transpose() const {
        BitMatrix t(cols_, rows());
        for (std::size_t i = 0; i < rows(); ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                if (rows_[i][j]) {
                    t.set(j, i, true);
                }
            }
        }
        return t;
    }

    BitMatrix operator*(const BitMatrix &o) const {
        if (cols_ != o.rows()) {
            throw std::invalid_argument("bit matrix product dimension mismatch");
        }
        BitMatrix r(rows(), o.cols());
        for (std::size_t i = 0; i < rows(); ++i) {
            for (std::size_t l = 0; l < cols_; ++l) {
                if (rows_[i][l]) {
                    r.rows_[i] ^= o.rows_[l];
                }
            }
        }
        return r;
    }

    BitVector operator*(const BitVector &v) const {
        BitVector r(rows());
        for (std::size_t i = 0; i < rows(); ++i) {
            r.set(i, rows_[i].dot(v));
        }
        return r;
    }

    BitMatrix operator+(const BitMatrix &o) const {
        if (rows() != o.rows() || cols_ != o.cols_) {
            throw std::invalid_argument("bit matrix sum dimension mismatch");
        }
        BitMatrix r = *this;
        for (std::size_t i = 0; i < rows(); ++i) {
            r.rows_[i] ^= o.rows_[i];
        }
        return r;
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < rows(); ++i) {
            s += rows_[i].to_string();
            s += '\n';
        }
        return s;
    }

    friend bool operator==(const BitMatrix &a, const BitMatrix &b) = default;
    friend auto operator<=>(const BitMatrix &a, const BitMatrix &b) {
        if (auto c = a.cols_ <=> b.cols_; c != 0) {
            return c;
        }
        return a.rows_ <=> b.rows_;
    }

   private:
    std::size_t cols_ = 0;
    std::vector<BitVector> rows_;
};

/// Result of Gauss-Jordan elimination: reduced row echelon form plus pivots.
/// `transform` is the invertible row-operation matrix with transform * input == reduced.
struct Elimination {
    BitMatrix reduced;
    BitMatrix transform;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank() const { return pivot_cols.size(); }
};

/// The one elimination routine behind rank, kernel, det and inverse.
inline Elimination eliminate(const BitMatrix &mat) {
    Elimination e{mat, BitMatrix::identity(mat.rows()), {}};
    std::size_t r = 0;
    for (std::size_t c = 0; c < mat.cols() && r < mat.rows(); ++c) {
        std::size_t p = r;
        while (p < mat.rows() && !e.reduced(p, c)) {
            ++p;
        }
        if (p == mat.rows()) {
            continue;
        }
        e.reduced.swap_rows(r, p);
        e.transform.swap_rows(r, p);
        for (std::size_t i = 0; i < mat.rows(); ++i) {
            if (i != r && e.reduced(i, c)) {
                e.reduced.row(i) ^= e.reduced.row(r);
                e.transform.row(i) ^= e.transform.row(r);
            }
        }
        e.pivot_cols.push_back(c);
        ++r;
    }
    return e;
}

inline std::size_t rank(const BitMatrix &mat) { return eliminate(mat).rank(); }

/// Columns form a basis of {x : mat * x = 0}.
inline BitMatrix kernel_basis(const BitMatrix &mat) {
    const auto e = eliminate(mat);
    std::vector<bool> is_pivot(mat.cols(), false);
    for (auto c : e.pivot_cols) {
        is_pivot[c] = true;
    }
    std::vector<BitVector> basis;
    for (std::size_t free = 0; free < mat.cols(); ++free) {
        if (is_pivot[free]) {
            continue;
        }
        BitVector v(mat.cols());
        v.set(free, true);
        for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) {
            if (e.reduced(r, free)) {
                v.set(e.pivot_cols[r], true);
            }
        }
        basis.push_back(std::move(v));
    }
    return BitMatrix::from_columns(mat.cols(), basis);
}

inline bool det(const BitMatrix &mat) {
    if (!mat.is_square()) {
        throw std::invalid_argument("det requires a square matrix");
    }
    return rank(mat) == mat.rows();
}

/// Gauss-Jordan inverse; throws if singular.
inline BitMatrix inverse(const BitMatrix &mat) {
    if (!mat.is_square()) {
        throw std::invalid_argument("inverse requires a square matrix");
    }
    auto e = eliminate(mat);
    if (e.rank() != mat.rows()) {
        throw std::invalid_argument("matrix is singular over F2");
    }
    return e.transform;
}

/// Uniformly random element of GL(m, F2) by rejection sampling.
inline BitMatrix random_invertible(std::size_t m, std::mt19937_64 &rng) {
    if (m == 0) {
        throw std::invalid_argument("random_invertible requires m >= 1");
    }
    for (;;) {
        BitMatrix a(m, m);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                a.set(i, j, rng() & 1u);
            }
        }
        if (det(a)) {
            return a;
        }
    }
}

inline BitMatrix random_invertible(std::size_t m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_invertible(m, rng);
}

}  // namespace magiclab

#endif
