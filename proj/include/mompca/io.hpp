/*
 * Copyright 2026 The MoMPCA Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mompca/matrix.hpp"

namespace mompca {

/// Whole-file read. Throws IoError when the file cannot be opened.
std::string read_text_file(const std::filesystem::path& path);
std::vector<std::uint8_t> read_binary_file(const std::filesystem::path& path);

/// Writes to a temporary sibling file, then renames it over `path`, so readers
/// never observe a partially written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> contents);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

struct CsvTable {
  std::vector<std::string> header;  // empty when the file had none
  DataMatrix data;
};

/// Comma-separated, '.' decimal. The first row is treated as a header when
/// any of its cells is not a number. Blank lines are skipped. ParseError names
/// the 1-based line and column of the first bad cell.
CsvTable parse_csv(std::string_view text);
CsvTable read_csv(const std::filesystem::path& path);

std::string format_csv(const Matrix& m, std::span<const std::string> header = {});
void write_csv(const std::filesystem::path& path, const Matrix& m,
               std::span<const std::string> header = {});

/// Reads a single column of 0/1 labels (an optional header is allowed).
std::vector<std::uint8_t> read_labels(const std::filesystem::path& path);

}  // namespace mompca
