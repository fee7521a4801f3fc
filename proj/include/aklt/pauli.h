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

#ifndef AKLT_PAULI_H
#define AKLT_PAULI_H

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace aklt {

/// Fixed-length bit vector packed into 64-bit words.
class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(size_t num_bits) : words_((num_bits + 63) / 64, 0), size_(num_bits) {}

    size_t size() const { return size_; }
    size_t num_words() const { return words_.size(); }

    bool get(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(size_t i, bool value) {
        uint64_t mask = uint64_t{1} << (i & 63);
        if (value) {
            words_[i >> 6] |= mask;
        } else {
            words_[i >> 6] &= ~mask;
        }
    }
    void flip(size_t i) { words_[i >> 6] ^= uint64_t{1} << (i & 63); }

    BitVector& operator^=(const BitVector& other) {
        for (size_t w = 0; w < words_.size(); ++w) {
            words_[w] ^= other.words_[w];
        }
        return *this;
    }

    bool any() const {
        for (uint64_t w : words_) {
            if (w != 0) {
                return true;
            }
        }
        return false;
    }

    size_t popcount() const {
        size_t n = 0;
        for (uint64_t w : words_) {
            n += static_cast<size_t>(std::popcount(w));
        }
        return n;
    }

    /// Parity of the bitwise AND, i.e. the GF(2) dot product.
    friend bool dot(const BitVector& a, const BitVector& b) {
        uint64_t acc = 0;
        for (size_t w = 0; w < a.words_.size(); ++w) {
            acc ^= a.words_[w] & b.words_[w];
        }
        return std::popcount(acc) & 1;
    }

    friend size_t and_popcount(const BitVector& a, const BitVector& b) {
        size_t n = 0;
        for (size_t w = 0; w < a.words_.size(); ++w) {
            n += static_cast<size_t>(std::popcount(a.words_[w] & b.words_[w]));
        }
        return n;
    }

    friend bool operator==(const BitVector& a, const BitVector& b) = default;

    uint64_t word(size_t w) const { return words_[w]; }
    uint64_t& word(size_t w) { return words_[w]; }

   private:
    std::vector<uint64_t> words_;
    size_t size_ = 0;
};

enum class PauliLetter : uint8_t { I, X, Y, Z };

/// A Pauli operator i^phase * P_0 (x) P_1 (x) ... with P_q in {I, X, Y, Z}.
/// Qubit q carries X when only xs[q] is set, Z when only zs[q] is set, and Y
/// when both are set. Hermitian operators have phase 0 (+1) or 2 (-1).
///
/// Multiplication uses Y = i X Z throughout.
class SignedPauli {
   public:
    SignedPauli() = default;
    explicit SignedPauli(size_t num_qubits) : xs(num_qubits), zs(num_qubits) {}

    static SignedPauli identity(size_t num_qubits) { return SignedPauli(num_qubits); }
    static SignedPauli single(size_t num_qubits, size_t qubit, PauliLetter letter, int sign = +1);

    size_t num_qubits() const { return xs.size(); }

    PauliLetter letter(size_t q) const;
    void set_letter(size_t q, PauliLetter letter);

    /// +1 or -1 for Hermitian operators.
    int sign() const { return phase == 0 ? +1 : -1; }
    bool is_hermitian() const { return (phase & 1) == 0; }

    bool commutes_with(const SignedPauli& other) const {
        return ((and_popcount(xs, other.zs) + and_popcount(zs, other.xs)) & 1) == 0;
    }

    /// True when both operators have the same letters, ignoring phase.
    bool same_string(const SignedPauli& other) const { return xs == other.xs && zs == other.zs; }

    bool is_identity() const { return !xs.any() && !zs.any(); }

    SignedPauli& operator*=(const SignedPauli& rhs);
    friend SignedPauli operator*(SignedPauli lhs, const SignedPauli& rhs) { return lhs *= rhs; }

    friend bool operator==(const SignedPauli& a, const SignedPauli& b) = default;

    /// E.g. "-XZ_Y" with '_' for identity.
    std::string str() const;

    uint8_t phase = 0;
    BitVector xs;
    BitVector zs;
};

}  // namespace aklt

#endif
