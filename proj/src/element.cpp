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


#include "scsearch/element.hpp"

#include <string>
#include <utility>

#include "scsearch/error.hpp"

namespace scsearch {
namespace {

struct RawElement {
  std::string_view symbol;
  Block block;
  int row;
  int col;
};

// Columns 1-2 s, 3-16 f, 17-26 d, 27-32 p. La and Ac open the f rows; Lu and
// Lr sit in group 3. He keeps the far-right cell but belongs to the s block.
constexpr std::array<RawElement, kElementCount> kRawTable = {{
    {"H", Block::kS, 1, 1}, {"He", Block::kS, 1, 32}, {"Li", Block::kS, 2, 1}, {"Be", Block::kS, 2, 2},
    {"B", Block::kP, 2, 27}, {"C", Block::kP, 2, 28}, {"N", Block::kP, 2, 29}, {"O", Block::kP, 2, 30},
    {"F", Block::kP, 2, 31}, {"Ne", Block::kP, 2, 32}, {"Na", Block::kS, 3, 1}, {"Mg", Block::kS, 3, 2},
    {"Al", Block::kP, 3, 27}, {"Si", Block::kP, 3, 28}, {"P", Block::kP, 3, 29}, {"S", Block::kP, 3, 30},
    {"Cl", Block::kP, 3, 31}, {"Ar", Block::kP, 3, 32}, {"K", Block::kS, 4, 1}, {"Ca", Block::kS, 4, 2},
    {"Sc", Block::kD, 4, 17}, {"Ti", Block::kD, 4, 18}, {"V", Block::kD, 4, 19}, {"Cr", Block::kD, 4, 20},
    {"Mn", Block::kD, 4, 21}, {"Fe", Block::kD, 4, 22}, {"Co", Block::kD, 4, 23}, {"Ni", Block::kD, 4, 24},
    {"Cu", Block::kD, 4, 25}, {"Zn", Block::kD, 4, 26}, {"Ga", Block::kP, 4, 27}, {"Ge", Block::kP, 4, 28},
    {"As", Block::kP, 4, 29}, {"Se", Block::kP, 4, 30}, {"Br", Block::kP, 4, 31}, {"Kr", Block::kP, 4, 32},
    {"Rb", Block::kS, 5, 1}, {"Sr", Block::kS, 5, 2}, {"Y", Block::kD, 5, 17}, {"Zr", Block::kD, 5, 18},
    {"Nb", Block::kD, 5, 19}, {"Mo", Block::kD, 5, 20}, {"Tc", Block::kD, 5, 21}, {"Ru", Block::kD, 5, 22},
    {"Rh", Block::kD, 5, 23}, {"Pd", Block::kD, 5, 24}, {"Ag", Block::kD, 5, 25}, {"Cd", Block::kD, 5, 26},
    {"In", Block::kP, 5, 27}, {"Sn", Block::kP, 5, 28}, {"Sb", Block::kP, 5, 29}, {"Te", Block::kP, 5, 30},
    {"I", Block::kP, 5, 31}, {"Xe", Block::kP, 5, 32}, {"Cs", Block::kS, 6, 1}, {"Ba", Block::kS, 6, 2},
    {"La", Block::kF, 6, 3}, {"Ce", Block::kF, 6, 4}, {"Pr", Block::kF, 6, 5}, {"Nd", Block::kF, 6, 6},
    {"Pm", Block::kF, 6, 7}, {"Sm", Block::kF, 6, 8}, {"Eu", Block::kF, 6, 9}, {"Gd", Block::kF, 6, 10},
    {"Tb", Block::kF, 6, 11}, {"Dy", Block::kF, 6, 12}, {"Ho", Block::kF, 6, 13}, {"Er", Block::kF, 6, 14},
    {"Tm", Block::kF, 6, 15}, {"Yb", Block::kF, 6, 16}, {"Lu", Block::kD, 6, 17}, {"Hf", Block::kD, 6, 18},
    {"Ta", Block::kD, 6, 19}, {"W", Block::kD, 6, 20}, {"Re", Block::kD, 6, 21}, {"Os", Block::kD, 6, 22},
    {"Ir", Block::kD, 6, 23}, {"Pt", Block::kD, 6, 24}, {"Au", Block::kD, 6, 25}, {"Hg", Block::kD, 6, 26},
    {"Tl", Block::kP, 6, 27}, {"Pb", Block::kP, 6, 28}, {"Bi", Block::kP, 6, 29}, {"Po", Block::kP, 6, 30},
    {"At", Block::kP, 6, 31}, {"Rn", Block::kP, 6, 32}, {"Fr", Block::kS, 7, 1}, {"Ra", Block::kS, 7, 2},
    {"Ac", Block::kF, 7, 3}, {"Th", Block::kF, 7, 4}, {"Pa", Block::kF, 7, 5}, {"U", Block::kF, 7, 6},
    {"Np", Block::kF, 7, 7}, {"Pu", Block::kF, 7, 8}, {"Am", Block::kF, 7, 9}, {"Cm", Block::kF, 7, 10},
    {"Bk", Block::kF, 7, 11}, {"Cf", Block::kF, 7, 12}, {"Es", Block::kF, 7, 13}, {"Fm", Block::kF, 7, 14},
    {"Md", Block::kF, 7, 15}, {"No", Block::kF, 7, 16}, {"Lr", Block::kD, 7, 17}, {"Rf", Block::kD, 7, 18},
    {"Db", Block::kD, 7, 19}, {"Sg", Block::kD, 7, 20}, {"Bh", Block::kD, 7, 21}, {"Hs", Block::kD, 7, 22},
    {"Mt", Block::kD, 7, 23}, {"Ds", Block::kD, 7, 24}, {"Rg", Block::kD, 7, 25}, {"Cn", Block::kD, 7, 26},
    {"Nh", Block::kP, 7, 27}, {"Fl", Block::kP, 7, 28}, {"Mc", Block::kP, 7, 29}, {"Lv", Block::kP, 7, 30},
    {"Ts", Block::kP, 7, 31}, {"Og", Block::kP, 7, 32},
}};

}  // namespace

std::string_view to_string(Block block) {
  switch (block) {
    case Block::kS: return "S";
    case Block::kP: return "P";
    case Block::kD: return "D";
    case Block::kF: return "F";
  }
  return "?";
}

std::optional<Block> block_from_string(std::string_view text) {
  if (text == "S") return Block::kS;
  if (text == "P") return Block::kP;
  if (text == "D") return Block::kD;
  if (text == "F") return Block::kF;
  return std::nullopt;
}

std::optional<ElementSymbol> ElementSymbol::from_symbol(std::string_view symbol) {
  for (std::size_t i = 0; i < kRawTable.size(); ++i) {
    if (kRawTable[i].symbol == symbol) {
      return ElementSymbol(static_cast<std::uint8_t>(i + 1));
    }
  }
  return std::nullopt;
}

std::optional<ElementSymbol> ElementSymbol::from_atomic_number(int z) {
  if (z < 1 || z > kElementCount) return std::nullopt;
  return ElementSymbol(static_cast<std::uint8_t>(z));
}

ElementSymbol ElementSymbol::of(std::string_view symbol) {
  auto e = from_symbol(symbol);
  if (!e) {
    throw Error(ErrorCode::kUnknownElement, "'" + std::string(symbol) + "'");
  }
  return *e;
}

std::string_view ElementSymbol::symbol() const noexcept {
  return kRawTable[z_ - 1].symbol;
}

namespace {

template <std::size_t... I>
std::array<ElementInfo, kElementCount> build_table(std::index_sequence<I...>) {
  return {{ElementInfo{*ElementSymbol::from_atomic_number(int(I) + 1),
                       int(I) + 1, kRawTable[I].block, kRawTable[I].row,
                       kRawTable[I].col}...}};
}

}  // namespace

const std::array<ElementInfo, kElementCount>& element_table() {
  static const auto table =
      build_table(std::make_index_sequence<kElementCount>{});
  return table;
}

}  // namespace scsearch
