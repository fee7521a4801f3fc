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

#include "aklt/povm.h"

#include <algorithm>
#include <sstream>

namespace aklt {

char axis_char(Axis axis) {
    switch (axis) {
        case Axis::x:
            return 'x';
        case Axis::y:
            return 'y';
        case Axis::z:
            return 'z';
    }
    return '?';
}

std::string to_string(PovmOutcome outcome) {
    return {outcome.kind == Kind::F ? 'F' : 'K', axis_char(outcome.axis)};
}

PovmConfig::PovmConfig(int width, int height, PovmOutcome fill)
    : width_(width), height_(height), outcomes_(static_cast<size_t>(width) * height, fill) {}

PovmConfig::PovmConfig(int width, int height, std::vector<PovmOutcome> outcomes)
    : width_(width), height_(height), outcomes_(std::move(outcomes)) {
    if (static_cast<int>(outcomes_.size()) != width * height) {
        throw std::invalid_argument("outcome count does not match lattice shape");
    }
}

int PovmConfig::count_kind(Kind kind) const {
    return static_cast<int>(
        std::count_if(outcomes_.begin(), outcomes_.end(), [kind](PovmOutcome o) { return o.kind == kind; }));
}

int PovmConfig::count(PovmOutcome outcome) const {
    return static_cast<int>(std::count(outcomes_.begin(), outcomes_.end(), outcome));
}

PovmConfig random_config(const Lattice& lattice, Rng& rng) {
    PovmConfig config(lattice);
    for (int s = 0; s < lattice.num_sites(); ++s) {
        config.set(s, PovmOutcome::from_code(static_cast<int>(rng.below(6))));
    }
    return config;
}

std::string serialize_config(const PovmConfig& config) {
    std::string out;
    out.reserve(static_cast<size_t>(config.size()) * 3);
    for (int y = 0; y < config.height(); ++y) {
        if (y > 0) {
            out += '\n';
        }
        for (int x = 0; x < config.width(); ++x) {
            if (x > 0) {
                out += ' ';
            }
            out += to_string(config.at(x, y));
        }
    }
    return out;
}

namespace {

PovmOutcome parse_token(std::string_view token, int row, int column) {
    if (token.size() == 2 && (token[0] == 'F' || token[0] == 'K')) {
        Kind kind = token[0] == 'F' ? Kind::F : Kind::K;
        switch (token[1]) {
            case 'x':
                return {kind, Axis::x};
            case 'y':
                return {kind, Axis::y};
            case 'z':
                return {kind, Axis::z};
            default:
                break;
        }
    }
    throw ConfigParseError("row " + std::to_string(row) + ", column " + std::to_string(column) +
                               ": invalid outcome token '" + std::string(token) + "'",
                           row, column);
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> tokens;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) {
            ++i;
        }
        size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') {
            ++j;
        }
        if (j > i) {
            tokens.push_back(line.substr(i, j - i));
        }
        i = j;
    }
    return tokens;
}

bool is_blank(std::string_view line) {
    return std::all_of(line.begin(), line.end(), [](char c) { return c == ' ' || c == '\t'; });
}

PovmConfig parse_rows(const std::vector<std::string_view>& rows) {
    if (rows.empty()) {
        throw ConfigParseError("empty config grid", 0, 0);
    }
    int width = -1;
    std::vector<PovmOutcome> outcomes;
    for (size_t r = 0; r < rows.size(); ++r) {
        auto tokens = split_tokens(rows[r]);
        int row = static_cast<int>(r) + 1;
        if (width < 0) {
            width = static_cast<int>(tokens.size());
        } else if (static_cast<int>(tokens.size()) != width) {
            throw ConfigParseError("row " + std::to_string(row) + " has " + std::to_string(tokens.size()) +
                                       " entries, expected " + std::to_string(width),
                                   row, 0);
        }
        for (size_t c = 0; c < tokens.size(); ++c) {
            outcomes.push_back(parse_token(tokens[c], row, static_cast<int>(c) + 1));
        }
    }
    return PovmConfig(width, static_cast<int>(rows.size()), std::move(outcomes));
}

}  // namespace

PovmConfig parse_config(std::string_view text) {
    std::vector<std::string_view> rows;
    for (auto line : split_lines(text)) {
        if (!is_blank(line)) {
            rows.push_back(line);
        }
    }
    return parse_rows(rows);
}

PovmConfig parse_config(std::string_view text, const Lattice& lattice) {
    PovmConfig config = parse_config(text);
    if (!config.matches(lattice)) {
        throw ConfigParseError("grid shape " + std::to_string(config.width()) + "x" +
                                   std::to_string(config.height()) + " does not match lattice " +
                                   std::to_string(lattice.width()) + "x" + std::to_string(lattice.height()),
                               0, 0);
    }
    return config;
}

std::vector<PovmConfig> parse_config_stream(std::string_view text) {
    std::vector<PovmConfig> configs;
    std::vector<std::string_view> rows;
    for (auto line : split_lines(text)) {
        if (!line.empty() && line.front() == '#') {
            continue;
        }
        if (is_blank(line)) {
            if (!rows.empty()) {
                configs.push_back(parse_rows(rows));
                rows.clear();
            }
        } else {
            rows.push_back(line);
        }
    }
    if (!rows.empty()) {
        configs.push_back(parse_rows(rows));
    }
    return configs;
}

}  // namespace aklt
