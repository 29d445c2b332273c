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


#include "scsearch/ptable.hpp"

#include <numeric>
#include <optional>
#include <ostream>

#include "scsearch/csv.hpp"
#include "scsearch/error.hpp"

namespace scsearch {
namespace {

// Which element owns each tensor cell, if any.
const std::array<std::optional<ElementSymbol>, kTensorSize>& cell_owners() {
  static const auto owners = [] {
    std::array<std::optional<ElementSymbol>, kTensorSize> out;
    for (const ElementInfo& info : element_table()) {
      out[PTableTensor::index(static_cast<int>(info.block), info.row - 1, info.col - 1)] =
          info.symbol;
    }
    return out;
  }();
  return owners;
}

}  // namespace

const ElementInfo& element_coordinates(ElementSymbol e) {
  return element_table()[static_cast<std::size_t>(e.atomic_number() - 1)];
}

double PTableTensor::sum() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

double OneHotVector::sum() const {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

PTableTensor encode_ptable(const Composition& c) {
  PTableTensor tensor;
  for (const auto& [e, fraction] : c) {
    const ElementInfo& info = element_coordinates(e);
    tensor(static_cast<int>(info.block), info.row - 1, info.col - 1) = fraction;
  }
  return tensor;
}

OneHotVector encode_onehot(const Composition& c) {
  OneHotVector v;
  for (const auto& [e, fraction] : c) {
    v.values[static_cast<std::size_t>(e.atomic_number() - 1)] = fraction;
  }
  return v;
}

std::map<ElementSymbol, double> decode_ptable(const PTableTensor& tensor) {
  std::map<ElementSymbol, double> out;
  const auto& owners = cell_owners();
  const auto values = tensor.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == 0.0) continue;
    if (!owners[i]) {
      throw Error(ErrorCode::kShapeMismatch,
                  "nonzero value in unused cell " + std::to_string(i));
    }
    out.emplace(*owners[i], values[i]);
  }
  return out;
}

void write_geometry_csv(std::ostream& out) {
  out << "symbol,atomic_number,block,row,col\n";
  for (const ElementInfo& info : element_table()) {
    out << info.symbol.symbol() << ',' << info.atomic_number << ','
        << to_string(info.block) << ',' << info.row << ',' << info.col << '\n';
  }
}

void write_tensor_csv(std::ostream& out, const PTableTensor& tensor) {
  const auto values = tensor.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != 0) out << ',';
    out << format_real(values[i]);
  }
  out << '\n';
}

}  // namespace scsearch
