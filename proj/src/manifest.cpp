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


#include "scsearch/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>

#include "scsearch/csv.hpp"

namespace scsearch {
namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fingerprint_file(const std::filesystem::path& path) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(read_file(path))));
  return std::string("fnv1a64:") + buf;
}

RunManifest::RunManifest(std::filesystem::path out_dir, std::string_view command, nlohmann::json config,
                         std::uint64_t seed)
    : path_(out_dir / "manifest.json") {
  doc_["command"] = command;
  doc_["version"] = kVersion;
  doc_["seed"] = seed;
  doc_["config"] = std::move(config);
  doc_["datasets"] = nlohmann::json::object();
  doc_["outputs"] = nlohmann::json::object();
  doc_["started_at"] = utc_now();
  doc_["status"] = "started";
  flush();
}

void RunManifest::add_dataset(std::string_view name, const std::filesystem::path& path) {
  doc_["datasets"][std::string(name)] = {{"path", path.string()}, {"fingerprint", fingerprint_file(path)}};
  flush();
}

void RunManifest::add_output(std::string_view name, const std::filesystem::path& path) {
  doc_["outputs"][std::string(name)] = {{"path", path.filename().string()},
                                        {"fingerprint", fingerprint_file(path)}};
}

void RunManifest::set(std::string_view key, nlohmann::json value) {
  doc_[std::string(key)] = std::move(value);
}

void RunManifest::complete() {
  doc_["status"] = "completed";
  doc_["finished_at"] = utc_now();
  flush();
}

void RunManifest::fail(std::string_view error) {
  doc_["status"] = "failed";
  doc_["error"] = error;
  doc_["finished_at"] = utc_now();
  flush();
}

void RunManifest::flush() const { write_file(path_, doc_.dump(2) + "\n"); }

}  // namespace scsearch
