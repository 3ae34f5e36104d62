// Copyright (c) 2026 nacest developers
// SPDX-License-Identifier: Apache-2.0

#include "nacest/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nacest {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(field);
            field.clear();
        } else if (ch != '\r') {
            field += ch;
        }
    }
    out.push_back(field);
    for (auto& f : out) {
        const auto a = f.find_first_not_of(" \t");
        const auto b = f.find_last_not_of(" \t");
        f = a == std::string::npos ? std::string() : f.substr(a, b - a + 1);
    }
    return out;
}

double parse_cell(const std::string& cell, const std::string& origin, std::size_t row,
                  const std::string& column) {
    if (cell.empty()) {
        throw std::runtime_error(origin + ": missing value at row " + std::to_string(row) +
                                 ", column '" + column + "'");
    }
    double value = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
        throw std::runtime_error(origin + ": non-numeric cell '" + cell + "' at row " +
                                 std::to_string(row) + ", column '" + column + "'");
    }
    return value;
}

}  // namespace

std::string format_double(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

Dataset parse_csv(const std::string& text, const std::string& origin,
                  const std::vector<std::string>& selected) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || split_csv_line(line).empty() || line.empty()) {
        throw std::runtime_error(origin + ": empty file or missing header row");
    }
    const std::vector<std::string> header = split_csv_line(line);

    std::vector<std::size_t> take;
    std::vector<std::string> columns;
    if (selected.empty()) {
        columns = header;
        take.resize(header.size());
        for (std::size_t i = 0; i < header.size(); ++i) take[i] = i;
    } else {
        for (const std::string& want : selected) {
            const auto it = std::find(header.begin(), header.end(), want);
            if (it == header.end()) {
                throw std::runtime_error(origin + ": column '" + want + "' not found in header");
            }
            take.push_back(static_cast<std::size_t>(it - header.begin()));
            columns.push_back(want);
        }
    }

    std::vector<std::vector<double>> data(take.size());
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != header.size()) {
            throw std::runtime_error(origin + ": row " + std::to_string(row) + " has " +
                                     std::to_string(cells.size()) + " fields, header has " +
                                     std::to_string(header.size()));
        }
        for (std::size_t c = 0; c < take.size(); ++c) {
            data[c].push_back(parse_cell(cells[take[c]], origin, row, columns[c]));
        }
    }
    if (data.empty() || data[0].empty()) {
        throw std::runtime_error(origin + ": no data rows");
    }

    Dataset ds;
    ds.columns = std::move(columns);
    ds.values = Matrix(data[0].size(), data.size());
    ds.tied_columns.assign(data.size(), false);
    for (std::size_t c = 0; c < data.size(); ++c) {
        for (std::size_t r = 0; r < data[c].size(); ++r) ds.values(r, c) = data[c][r];
        std::vector<double> sorted = data[c];
        std::sort(sorted.begin(), sorted.end());
        ds.tied_columns[c] = std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
    }
    return ds;
}

Dataset load_csv(const std::string& path, const std::vector<std::string>& selected) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), path, selected);
}

std::string matrix_to_csv(const std::vector<std::string>& columns, const Matrix& values) {
    if (columns.size() != values.cols()) {
        throw std::invalid_argument("matrix_to_csv: header width does not match the matrix");
    }
    std::string out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c) out += ',';
        out += columns[c];
    }
    out += '\n';
    for (std::size_t r = 0; r < values.rows(); ++r) {
        for (std::size_t c = 0; c < values.cols(); ++c) {
            if (c) out += ',';
            out += format_double(values(r, c));
        }
        out += '\n';
    }
    return out;
}

}  // namespace nacest
