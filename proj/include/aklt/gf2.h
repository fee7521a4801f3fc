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

#ifndef AKLT_GF2_H
#define AKLT_GF2_H

#include <cstddef>
#include <vector>

#include "aklt/pauli.h"

namespace aklt {

/// Dense matrix over GF(2) with bit-packed rows.
class BinaryMatrix {
   public:
    BinaryMatrix() = default;
    BinaryMatrix(size_t rows, size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

    size_t rows() const { return rows_.size(); }
    size_t cols() const { return cols_; }

    bool get(size_t r, size_t c) const { return rows_[r].get(c); }
    void set(size_t r, size_t c, bool value) { rows_[r].set(c, value); }
    void flip(size_t r, size_t c) { rows_[r].flip(c); }

    const BitVector& row(size_t r) const { return rows_[r]; }
    BitVector& row(size_t r) { return rows_[r]; }

    /// H * v over GF(2).
    BitVector multiply(const BitVector& v) const;

    static BinaryMatrix identity(size_t n);

   private:
    size_t cols_ = 0;
    std::vector<BitVector> rows_;
};

/// Basis of the right null space {q : H q = 0}.
struct KernelBasis {
    size_t cols = 0;
    std::vector<BitVector> vectors;

    size_t dimension() const { return vectors.size(); }
};

/// Word-parallel Gauss-Jordan elimination; one basis vector per free column.
KernelBasis gf2_kernel(const BinaryMatrix& matrix);

size_t gf2_rank(const BinaryMatrix& matrix);

}  // namespace aklt

#endif
