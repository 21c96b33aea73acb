// SPDX-License-Identifier: Apache-2.0

#include "wptsim/csv.hpp"

#include <fstream>
#include <sstream>

namespace wptsim::csv {

namespace {

std::string strip(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

File read_file(const std::string& path, const std::string& expected_header) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path, 0, "cannot open file");
    }
    File file;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = strip(line);
        if (text.empty()) continue;
        if (text.front() == '#') {
            file.comments.push_back(strip(text.substr(1)));
            continue;
        }
        if (!header_seen) {
            if (text != expected_header) {
                throw ParseError(path, line_no,
                                 "expected header '" + expected_header +
                                     "', got '" + text + "'");
            }
            header_seen = true;
            continue;
        }
        Row row;
        row.line = line_no;
        std::istringstream fields(text);
        std::string field;
        while (std::getline(fields, field, ',')) {
            row.fields.push_back(strip(field));
        }
        if (!text.empty() && text.back() == ',') {
            row.fields.emplace_back();
        }
        file.rows.push_back(std::move(row));
    }
    if (!header_seen) {
        throw ParseError(path, line_no, "missing header '" + expected_header + "'");
    }
    return file;
}

double to_double(const std::string& path, const Row& row, size_t column) {
    if (column >= row.fields.size()) {
        throw ParseError(path, row.line,
                         "missing column " + std::to_string(column + 1));
    }
    const std::string& text = row.fields[column];
    try {
        size_t consumed = 0;
        const double value = std::stod(text, &consumed);
        if (consumed != text.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return value;
    } catch (const std::exception&) {
        throw ParseError(path, row.line, "not a number: '" + text + "'");
    }
}

}  // namespace wptsim::csv
