// Copyright 2026 The scsearch Authors
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


// Minimal RFC 4180 CSV reading and writing.

#ifndef SCSEARCH_CSV_HPP_
#define SCSEARCH_CSV_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scsearch {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::optional<std::size_t> column(std::string_view name) const;
};

/// Throws Error(kSchemaMismatch) on an unterminated quote or a row whose width
/// differs from the header.
CsvTable read_csv(std::istream& in);

/// Throws Error(kIoFailure) when the file cannot be opened.
CsvTable read_csv_file(const std::filesystem::path& path);

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

/// Nine significant digits; the form every output file uses for reals.
std::string format_real(double value);

/// Reads a whole file; throws Error(kIoFailure).
std::string read_file(const std::filesystem::path& path);

/// Writes through a temporary file renamed into place; creates parent dirs.
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace scsearch

#endif  // SCSEARCH_CSV_HPP_
