// core/include/vowelkit/recognizer.h

// Copyright 2026  VowelKit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef VOWELKIT_RECOGNIZER_H_
#define VOWELKIT_RECOGNIZER_H_

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vowelkit/common.h"
#include "vowelkit/gmm.h"

namespace vowelkit {

/// The eight Persian vowels. Enumeration order is the deterministic
/// tie-break order everywhere.
enum class VowelClass { kA, kSchwa, kO, kE, kI, kU, kAu, kEi };

inline constexpr int kNumVowelClasses = 8;
inline constexpr std::array<VowelClass, kNumVowelClasses> kAllVowels = {
    VowelClass::kA,  VowelClass::kSchwa, VowelClass::kO, VowelClass::kE,
    VowelClass::kI,  VowelClass::kU,     VowelClass::kAu, VowelClass::kEi};

std::string ToString(VowelClass vowel);
std::optional<VowelClass> ParseVowel(const std::string& text);
std::vector<std::string> VowelNames();

/// One labeled training segment: its feature rows together with the soft
/// per-frame weights (1 in the core, tapered into context).
struct LabeledSegment {
  VowelClass label = VowelClass::kA;
  Rows frames;
  Vec weights;  // empty means all ones
};

struct RecognizerConfig {
  int mixtures_per_vowel = 8;
  int min_segments_per_class = 10;
  GmmTrainConfig gmm;
};

/// One diagonal GMM per vowel, soft-weighted EM. Errors naming every class
/// below min_segments_per_class.
std::map<VowelClass, GmmModel> TrainVowelModels(
    const std::vector<LabeledSegment>& segments, const RecognizerConfig& config);

/// argmax over classes of the mean per-frame log-likelihood; ties resolve
/// to the first class in enumeration order.
std::pair<VowelClass, double> ClassifySegment(
    const Rows& frames, const std::map<VowelClass, GmmModel>& models);

/// counts[recognized][uttered], Table-style orientation.
class ConfusionMatrix {
 public:
  ConfusionMatrix();

  void Add(VowelClass recognized, VowelClass uttered);
  int Count(VowelClass recognized, VowelClass uttered) const;
  int Total() const;
  int ColumnTotal(VowelClass uttered) const;
  /// 100 * count / column total; 0 for an empty column.
  double Percent(VowelClass recognized, VowelClass uttered) const;
  /// trace / total.
  double OverallAccuracy() const;
  /// Diagonal percentage of one uttered class.
  double ClassAccuracy(VowelClass uttered) const;

  /// Aligned text table, recognized rows vs uttered columns.
  std::string FormatTable() const;
  void WriteCsv(const std::string& path) const;

 private:
  std::array<std::array<int, kNumVowelClasses>, kNumVowelClasses> counts_;
};

/// Classifies every (frames, truth) pair and accumulates the matrix.
/// Errors on an unknown truth label index.
ConfusionMatrix EvaluateClassification(
    const std::vector<std::pair<Rows, VowelClass>>& test_segments,
    const std::map<VowelClass, GmmModel>& models);

}  // namespace vowelkit

#endif  // VOWELKIT_RECOGNIZER_H_
