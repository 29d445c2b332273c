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


#include "scsearch/error.hpp"

namespace scsearch {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownElement: return "UnknownElement";
    case ErrorCode::kMalformedSyntax: return "MalformedSyntax";
    case ErrorCode::kUnresolvedVariable: return "UnresolvedVariable";
    case ErrorCode::kMissingBinding: return "MissingBinding";
    case ErrorCode::kNonPositiveCount: return "NonPositiveCount";
    case ErrorCode::kEmptyCounts: return "EmptyCounts";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kSchemaMismatch: return "SchemaMismatch";
    case ErrorCode::kUnknownFormula: return "UnknownFormula";
    case ErrorCode::kFoldTooLarge: return "FoldTooLarge";
    case ErrorCode::kInvalidSplit: return "InvalidSplit";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kLabelOutOfRange: return "LabelOutOfRange";
    case ErrorCode::kNegativeTc: return "NegativeTc";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kDivergenceDetected: return "DivergenceDetected";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kBadCheckpoint: return "BadCheckpoint";
    case ErrorCode::kDegenerateTarget: return "DegenerateTarget";
    case ErrorCode::kMissingElementFeatures: return "MissingElementFeatures";
    case ErrorCode::kSingleClassInput: return "SingleClassInput";
    case ErrorCode::kUnknownFamily: return "UnknownFamily";
    case ErrorCode::kUnknownField: return "UnknownField";
    case ErrorCode::kLeakageDetected: return "LeakageDetected";
  }
  return "Unknown";
}

}  // namespace scsearch
