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


#include <charconv>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "scsearch/error.hpp"
#include "scsearch/nn.hpp"

namespace scsearch {
namespace {

constexpr std::string_view kMagic = "scsearch-checkpoint";

std::string exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::kBadCheckpoint, what); }

template <typename T>
T number(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) bad("missing key '" + key + "'");
  T value{};
  const std::string& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) bad("bad value for '" + key + "'");
  return value;
}

std::string text(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) bad("missing key '" + key + "'");
  return it->second;
}

}  // namespace

void save_checkpoint(std::ostream& out, const ModelParams& params, const std::optional<TrainConfig>& train) {
  const ModelConfig& m = params.config();
  out << kMagic << ' ' << kCheckpointVersion << '\n';
  out << "conv_layers " << m.conv_layers << '\n';
  out << "channels " << m.channels << '\n';
  out << "dense_hidden " << m.dense_hidden << '\n';
  out << "head " << to_string(m.head) << '\n';
  out << "tc_transform " << to_string(m.tc_transform) << '\n';
  out << "seed " << m.seed << '\n';
  if (train) {
    out << "train.learning_rate " << exact(train->learning_rate) << '\n';
    out << "train.batch_size " << train->batch_size << '\n';
    out << "train.epochs " << train->epochs << '\n';
    out << "train.loss " << to_string(train->loss) << '\n';
    out << "train.shuffle_seed " << train->shuffle_seed << '\n';
    out << "train.class_threshold_kelvin " << exact(train->class_threshold_kelvin) << '\n';
    out << "train.precision " << to_string(train->precision) << '\n';
  }
  const auto& blocks = params.blocks();
  out << "blocks " << blocks.size() << '\n';
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Eigen::MatrixXd& b = blocks[i];
    out << "block " << i << ' ' << b.rows() << ' ' << b.cols() << '\n';
    for (Eigen::Index r = 0; r < b.rows(); ++r) {
      for (Eigen::Index c = 0; c < b.cols(); ++c) {
        if (c != 0) out << ',';
        out << exact(b(r, c));
      }
      out << '\n';
    }
  }
}

Checkpoint load_checkpoint(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) bad("empty checkpoint");
  {
    std::istringstream ss(line);
    std::string magic;
    int version = 0;
    ss >> magic >> version;
    if (magic != kMagic) bad("not a checkpoint file");
    if (version != kCheckpointVersion) bad("unsupported version " + std::to_string(version));
  }

  std::map<std::string, std::string> kv;
  std::size_t block_count = 0;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string key, value;
    ss >> key >> value;
    if (key == "blocks") {
      block_count = static_cast<std::size_t>(std::stoull(value));
      break;
    }
    if (key.empty()) continue;
    kv[key] = value;
  }

  ModelConfig cfg;
  cfg.conv_layers = number<int>(kv, "conv_layers");
  cfg.channels = number<int>(kv, "channels");
  cfg.dense_hidden = number<int>(kv, "dense_hidden");
  auto head = head_from_string(text(kv, "head"));
  auto transform = tc_transform_from_string(text(kv, "tc_transform"));
  if (!head || !transform) bad("unknown head or tc_transform");
  cfg.head = *head;
  cfg.tc_transform = *transform;
  cfg.seed = number<std::uint64_t>(kv, "seed");

  std::optional<TrainConfig> train;
  if (kv.count("train.learning_rate")) {
    TrainConfig t;
    t.learning_rate = number<double>(kv, "train.learning_rate");
    t.batch_size = number<int>(kv, "train.batch_size");
    t.epochs = number<int>(kv, "train.epochs");
    auto loss = loss_from_string(text(kv, "train.loss"));
    if (!loss) bad("unknown loss");
    t.loss = *loss;
    t.shuffle_seed = number<std::uint64_t>(kv, "train.shuffle_seed");
    t.class_threshold_kelvin = number<double>(kv, "train.class_threshold_kelvin");
    auto precision = precision_from_string(text(kv, "train.precision"));
    if (!precision) bad("unknown train.precision");
    t.precision = *precision;
    train = t;
  }

  ModelParams params = [&] {
    try {
      return ModelParams(cfg);
    } catch (const Error& e) {
      bad(e.what());
    }
  }();
  auto& blocks = params.blocks();
  if (block_count != blocks.size()) bad("block count does not match config");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (!std::getline(in, line)) bad("truncated before block " + std::to_string(i));
    std::istringstream header(line);
    std::string tag;
    std::size_t index = 0;
    Eigen::Index rows = 0, cols = 0;
    header >> tag >> index >> rows >> cols;
    if (tag != "block" || index != i || rows != blocks[i].rows() || cols != blocks[i].cols()) {
      bad("bad header for block " + std::to_string(i));
    }
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (!std::getline(in, line)) bad("truncated block " + std::to_string(i));
      const char* p = line.data();
      const char* end = line.data() + line.size();
      for (Eigen::Index c = 0; c < cols; ++c) {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(p, end, v);
        if (ec != std::errc()) bad("bad value in block " + std::to_string(i));
        blocks[i](r, c) = v;
        p = ptr;
        if (c + 1 < cols) {
          if (p == end || *p != ',') bad("short row in block " + std::to_string(i));
          ++p;
        }
      }
      if (p != end) bad("long row in block " + std::to_string(i));
    }
  }
  return Checkpoint{std::move(params), train};
}

}  // namespace scsearch
