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


// Periodic-table encodings of a composition.
//
// PTableTensor layout: 4 channels (S, P, D, F) x 7 rows x 32 columns, stored
// row-major as value[(channel * 7 + row) * 32 + col] with zero-based indices.

#ifndef SCSEARCH_PTABLE_HPP_
#define SCSEARCH_PTABLE_HPP_

#include <array>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>

#include "scsearch/element.hpp"
#include "scsearch/formula.hpp"

namespace scsearch {

inline constexpr int kChannels = 4;
inline constexpr int kRows = 7;
inline constexpr int kCols = 32;
inline constexpr int kCellsPerChannel = kRows * kCols;
inline constexpr int kTensorSize = kChannels * kCellsPerChannel;  // 896

const ElementInfo& element_coordinates(ElementSymbol e);

class PTableTensor {
 public:
  PTableTensor() { values_.fill(0.0); }

  static constexpr std::size_t index(int channel, int row, int col) {
    return static_cast<std::size_t>((channel * kRows + row) * kCols + col);
  }

  double operator()(int channel, int row, int col) const { return values_[index(channel, row, col)]; }
  double& operator()(int channel, int row, int col) { return values_[index(channel, row, col)]; }

  std::span<const double, kTensorSize> values() const { return values_; }
  std::span<double, kTensorSize> values() { return values_; }

  double sum() const;

  friend bool operator==(const PTableTensor&, const PTableTensor&) = default;

 private:
  std::array<double, kTensorSize> values_;
};

/// Indexed by atomic number - 1.
struct OneHotVector {
  std::array<double, kElementCount> values{};

  double sum() const;
};

PTableTensor encode_ptable(const Composition& c);
OneHotVector encode_onehot(const Composition& c);

/// Inverse of encode_ptable: every nonzero cell mapped back to its element.
/// Throws Error(kShapeMismatch) if a nonzero cell belongs to no element.
std::map<ElementSymbol, double> decode_ptable(const PTableTensor& tensor);

/// symbol,atomic_number,block,row,col for all 118 elements.
void write_geometry_csv(std::ostream& out);

/// One line of 896 comma-separated values in layout order.
void write_tensor_csv(std::ostream& out, const PTableTensor& tensor);

}  // namespace scsearch

#endif  // SCSEARCH_PTABLE_HPP_
