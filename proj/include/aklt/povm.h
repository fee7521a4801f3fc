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

#ifndef AKLT_POVM_H
#define AKLT_POVM_H

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aklt/lattice.h"
#include "aklt/rng.h"

namespace aklt {

enum class Kind : uint8_t { F = 0, K = 1 };
enum class Axis : uint8_t { x = 0, y = 1, z = 2 };

inline constexpr std::array<Axis, 3> kAxes = {Axis::x, Axis::y, Axis::z};

char axis_char(Axis axis);

/// One of the six local POVM outcomes F_x, F_y, F_z, K_x, K_y, K_z.
struct PovmOutcome {
    Kind kind;
    Axis axis;

    /// Dense code in [0, 6): F_x, F_y, F_z, K_x, K_y, K_z.
    constexpr int code() const { return 3 * static_cast<int>(kind) + static_cast<int>(axis); }
    static constexpr PovmOutcome from_code(int c) {
        return {static_cast<Kind>(c / 3), static_cast<Axis>(c % 3)};
    }

    friend constexpr bool operator==(PovmOutcome a, PovmOutcome b) {
        return a.kind == b.kind && a.axis == b.axis;
    }
};

inline constexpr std::array<PovmOutcome, 6> kAllOutcomes = {
    PovmOutcome{Kind::F, Axis::x}, PovmOutcome{Kind::F, Axis::y}, PovmOutcome{Kind::F, Axis::z},
    PovmOutcome{Kind::K, Axis::x}, PovmOutcome{Kind::K, Axis::y}, PovmOutcome{Kind::K, Axis::z},
};

/// Two-character code: "Fx", "Kz", ...
std::string to_string(PovmOutcome outcome);

/// Per-site POVM outcomes on a lattice of the given shape; the Monte Carlo state.
class PovmConfig {
   public:
    PovmConfig() = default;
    PovmConfig(int width, int height, PovmOutcome fill = {Kind::F, Axis::z});
    PovmConfig(const Lattice& lattice, PovmOutcome fill = {Kind::F, Axis::z})
        : PovmConfig(lattice.width(), lattice.height(), fill) {}
    PovmConfig(int width, int height, std::vector<PovmOutcome> outcomes);

    int width() const { return width_; }
    int height() const { return height_; }
    int size() const { return static_cast<int>(outcomes_.size()); }

    PovmOutcome operator[](int site) const { return outcomes_[site]; }
    PovmOutcome at(int x, int y) const { return outcomes_[y * width_ + x]; }
    void set(int site, PovmOutcome outcome) { outcomes_[site] = outcome; }
    const std::vector<PovmOutcome>& outcomes() const { return outcomes_; }

    /// True when the config has exactly one outcome per lattice site.
    bool matches(const Lattice& lattice) const {
        return width_ == lattice.width() && height_ == lattice.height();
    }

    int count_kind(Kind kind) const;
    int count(PovmOutcome outcome) const;
    int num_F() const { return count_kind(Kind::F); }
    int num_K() const { return count_kind(Kind::K); }

    friend bool operator==(const PovmConfig& a, const PovmConfig& b) {
        return a.width_ == b.width_ && a.height_ == b.height_ && a.outcomes_ == b.outcomes_;
    }

   private:
    int width_ = 0;
    int height_ = 0;
    std::vector<PovmOutcome> outcomes_;
};

/// Each site gets one of the six outcomes uniformly and independently.
/// The result may well be incompatible (zero probability).
PovmConfig random_config(const Lattice& lattice, Rng& rng);

class ConfigParseError : public std::runtime_error {
   public:
    ConfigParseError(const std::string& message, int row, int column)
        : std::runtime_error(message), row_(row), column_(column) {}
    /// 1-based position of the offending token; 0 when not token-specific.
    int row() const { return row_; }
    int column() const { return column_; }

   private:
    int row_;
    int column_;
};

/// Grid text: `height` rows of `width` whitespace-separated codes, row y = 0 first.
std::string serialize_config(const PovmConfig& config);

/// Parses a grid and checks it against the lattice shape.
PovmConfig parse_config(std::string_view text, const Lattice& lattice);

/// Parses a grid and infers its shape from the rows.
PovmConfig parse_config(std::string_view text);

/// Parses several grids separated by blank lines.
std::vector<PovmConfig> parse_config_stream(std::string_view text);

}  // namespace aklt

#endif
