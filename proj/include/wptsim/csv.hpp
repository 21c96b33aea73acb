// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wptsim {

/// File parsing failure with source location, so CLI errors can point at the
/// offending line.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::string file, int line, const std::string& what)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + what),
          file_(std::move(file)),
          line_(line) {}

    [[nodiscard]] const std::string& file() const { return file_; }
    [[nodiscard]] int line() const { return line_; }

  private:
    std::string file_;
    int line_;
};

namespace csv {

struct Row {
    std::vector<std::string> fields;
    int line = 0;
};

/// Reads a whole CSV file. Leading '#' lines are collected as comments; the
/// first non-comment line must equal expected_header exactly.
struct File {
    std::vector<std::string> comments;
    std::vector<Row> rows;
};

[[nodiscard]] File read_file(const std::string& path,
                             const std::string& expected_header);

[[nodiscard]] double to_double(const std::string& path, const Row& row,
                               size_t column);

}  // namespace csv
}  // namespace wptsim
