// Copyright (c) 2026 nacest developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "nacest/sampler.hpp"

namespace nacest {

/// A labelled n x d table of finite reals. Everything downstream consumes
/// only the ranks within each column.
struct Dataset {
    std::vector<std::string> columns;
    Matrix values;
    /// Columns containing at least one exactly repeated value. The rank
    /// machinery handles ties deterministically (strict inequalities, no
    /// jittering), but they signal non-continuous data, so loaders warn.
    std::vector<bool> tied_columns;

    bool any_ties() const {
        for (bool t : tied_columns)
            if (t) return true;
        return false;
    }
};

/// Reads an RFC-style CSV with a mandatory header row and '.' decimal
/// separator. When `selected` is nonempty, keeps exactly those columns in
/// the given order. Throws std::runtime_error naming the file, row and
/// column on missing columns, non-numeric or missing cells.
Dataset load_csv(const std::string& path, const std::vector<std::string>& selected = {});

/// Parses CSV text (exposed for tests).
Dataset parse_csv(const std::string& text, const std::string& origin,
                  const std::vector<std::string>& selected = {});

/// Writes a matrix as CSV with the given header labels. Values are printed
/// with shortest round-trip formatting, so output is byte-stable.
std::string matrix_to_csv(const std::vector<std::string>& columns, const Matrix& values);

/// Shortest round-trip decimal form of a double (std::to_chars).
std::string format_double(double value);

}  // namespace nacest
