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

#include "aklt/pauli.h"

#include <stdexcept>

namespace aklt {

SignedPauli SignedPauli::single(size_t num_qubits, size_t qubit, PauliLetter letter, int sign) {
    SignedPauli p(num_qubits);
    p.set_letter(qubit, letter);
    p.phase = sign > 0 ? 0 : 2;
    return p;
}

PauliLetter SignedPauli::letter(size_t q) const {
    bool x = xs.get(q);
    bool z = zs.get(q);
    if (x && z) {
        return PauliLetter::Y;
    }
    if (x) {
        return PauliLetter::X;
    }
    if (z) {
        return PauliLetter::Z;
    }
    return PauliLetter::I;
}

void SignedPauli::set_letter(size_t q, PauliLetter letter) {
    xs.set(q, letter == PauliLetter::X || letter == PauliLetter::Y);
    zs.set(q, letter == PauliLetter::Z || letter == PauliLetter::Y);
}

SignedPauli& SignedPauli::operator*=(const SignedPauli& rhs) {
    if (num_qubits() != rhs.num_qubits()) {
        throw std::invalid_argument("Pauli size mismatch");
    }
    // Rewrite each side as i^k * prod X^x Z^z, where k = phase + #Y since
    // Y = i X Z. Moving rhs's X past lhs's Z costs (-1)^{z1 . x2}.
    size_t y_lhs = and_popcount(xs, zs);
    size_t y_rhs = and_popcount(rhs.xs, rhs.zs);
    size_t swap = and_popcount(zs, rhs.xs);
    size_t k = phase + y_lhs + rhs.phase + y_rhs + 2 * swap;
    xs ^= rhs.xs;
    zs ^= rhs.zs;
    size_t y_out = and_popcount(xs, zs);
    phase = static_cast<uint8_t>((k + 4 - (y_out & 3)) & 3);
    return *this;
}

std::string SignedPauli::str() const {
    static const char* prefixes[4] = {"+", "i", "-", "-i"};
    std::string out = prefixes[phase & 3];
    for (size_t q = 0; q < num_qubits(); ++q) {
        out += "_XYZ"[static_cast<int>(letter(q))];
    }
    return out;
}

}  // namespace aklt
