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

// The 118 elements and their fixed place in the 32-column periodic table.

#ifndef SCSEARCH_ELEMENT_HPP_
#define SCSEARCH_ELEMENT_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string_view>

namespace scsearch {

inline constexpr int kElementCount = 118;

// Valence block. The numeric value is the tensor channel.
enum class Block : std::uint8_t { kS = 0, kP = 1, kD = 2, kF = 3 };

std::string_view to_string(Block block);
std::optional<Block> block_from_string(std::string_view text);

/// An element drawn from the 118 IUPAC symbols. Only constructible from a
/// valid symbol or atomic number, so holding one is proof of validity.
class ElementSymbol {
 public:
  static std::optional<ElementSymbol> from_symbol(std::string_view symbol);
  static std::optional<ElementSymbol> from_atomic_number(int z);

  // Throws Error(kUnknownElement) on an invalid symbol.
  static ElementSymbol of(std::string_view symbol);

  int atomic_number() const noexcept { return z_; }
  std::string_view symbol() const noexcept;

  friend auto operator<=>(ElementSymbol, ElementSymbol) = default;

 private:
  explicit constexpr ElementSymbol(std::uint8_t z) : z_(z) {}
  std::uint8_t z_;
};

struct ElementInfo {
  ElementSymbol symbol;
  int atomic_number;
  Block block;
  int row;  // 1..7
  int col;  // 1..32
};

/// All 118 elements ordered by atomic number.
const std::array<ElementInfo, kElementCount>& element_table();

}  // namespace scsearch

#endif  // SCSEARCH_ELEMENT_HPP_
