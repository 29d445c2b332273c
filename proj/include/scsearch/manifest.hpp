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


// Run manifests: the config echo, seeds, dataset fingerprints and status
// written before a run produces results.

#ifndef SCSEARCH_MANIFEST_HPP_
#define SCSEARCH_MANIFEST_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

namespace scsearch {

inline constexpr std::string_view kVersion = "1.0.0";

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

/// "fnv1a64:" followed by 16 hex digits of the file's content hash.
std::string fingerprint_file(const std::filesystem::path& path);

class RunManifest {
 public:
  /// Writes <out_dir>/manifest.json immediately with status "started".
  RunManifest(std::filesystem::path out_dir, std::string_view command, nlohmann::json config,
              std::uint64_t seed);

  void add_dataset(std::string_view name, const std::filesystem::path& path);
  void add_output(std::string_view name, const std::filesystem::path& path);
  void set(std::string_view key, nlohmann::json value);

  void complete();
  void fail(std::string_view error);

  const nlohmann::json& json() const { return doc_; }
  const std::filesystem::path& path() const { return path_; }

 private:
  void flush() const;

  std::filesystem::path path_;
  nlohmann::json doc_;
};

}  // namespace scsearch

#endif  // SCSEARCH_MANIFEST_HPP_
