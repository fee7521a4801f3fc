// Copyright 2026 The aklt2d Authors
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

#include "aklt/gf2.h"

#include <utility>

namespace aklt {

BitVector BinaryMatrix::multiply(const BitVector& v) const {
    BitVector out(rows());
    for (size_t r = 0; r < rows(); ++r) {
        out.set(r, dot(rows_[r], v));
    }
    return out;
}

BinaryMatrix BinaryMatrix::identity(size_t n) {
    BinaryMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) {
        m.set(i, i, true);
    }
    return m;
}

namespace {

// Reduces in place to reduced row echelon form; returns pivot column per pivot row.
std::vector<size_t> row_reduce(std::vector<BitVector>& rows, size_t cols) {
    std::vector<size_t> pivots;
    size_t next = 0;
    for (size_t c = 0; c < cols && next < rows.size(); ++c) {
        size_t found = next;
        while (found < rows.size() && !rows[found].get(c)) {
            ++found;
        }
        if (found == rows.size()) {
            continue;
        }
        std::swap(rows[next], rows[found]);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r != next && rows[r].get(c)) {
                rows[r] ^= rows[next];
            }
        }
        pivots.push_back(c);
        ++next;
    }
    return pivots;
}

}  // namespace

KernelBasis gf2_kernel(const BinaryMatrix& matrix) {
    std::vector<BitVector> rows;
    rows.reserve(matrix.rows());
    for (size_t r = 0; r < matrix.rows(); ++r) {
        if (matrix.row(r).any()) {
            rows.push_back(matrix.row(r));
        }
    }
    size_t cols = matrix.cols();
    std::vector<size_t> pivots = row_reduce(rows, cols);

    std::vector<bool> is_pivot(cols, false);
    for (size_t c : pivots) {
        is_pivot[c] = true;
    }

    KernelBasis basis;
    basis.cols = cols;
    for (size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) {
            continue;
        }
        BitVector v(cols);
        v.set(free, true);
        for (size_t i = 0; i < pivots.size(); ++i) {
            if (rows[i].get(free)) {
                v.set(pivots[i], true);
            }
        }
        basis.vectors.push_back(std::move(v));
    }
    return basis;
}

size_t gf2_rank(const BinaryMatrix& matrix) {
    std::vector<BitVector> rows;
    for (size_t r = 0; r < matrix.rows(); ++r) {
        rows.push_back(matrix.row(r));
    }
    return row_reduce(rows, matrix.cols()).size();
}

}  // namespace aklt
