// core/src/recognizer.cc

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

#include "vowelkit/recognizer.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace vowelkit {

std::string ToString(VowelClass vowel) {
  switch (vowel) {
    case VowelClass::kA:
      return "/a/";
    case VowelClass::kSchwa:
      return "/@/";
    case VowelClass::kO:
      return "/o/";
    case VowelClass::kE:
      return "/e/";
    case VowelClass::kI:
      return "/i/";
    case VowelClass::kU:
      return "/u/";
    case VowelClass::kAu:
      return "/au/";
    case VowelClass::kEi:
      return "/ei/";
  }
  return "?";
}

std::optional<VowelClass> ParseVowel(const std::string& text) {
  for (VowelClass v : kAllVowels)
    if (ToString(v) == text) return v;
  // Also accept the bare name without slashes.
  for (VowelClass v : kAllVowels) {
    const std::string name = ToString(v);
    if (name.substr(1, name.size() - 2) == text) return v;
  }
  return std::nullopt;
}

std::vector<std::string> VowelNames() {
  std::vector<std::string> names;
  names.reserve(kNumVowelClasses);
  for (VowelClass v : kAllVowels) names.push_back(ToString(v));
  return names;
}

std::map<VowelClass, GmmModel> TrainVowelModels(
    const std::vector<LabeledSegment>& segments,
    const RecognizerConfig& config) {
  std::map<VowelClass, std::vector<const LabeledSegment*>> by_class;
  for (const LabeledSegment& seg : segments) by_class[seg.label].push_back(&seg);

  std::string missing;
  for (VowelClass v : kAllVowels) {
    const int have = by_class.count(v) ? static_cast<int>(by_class[v].size()) : 0;
    if (have < config.min_segments_per_class) {
      if (!missing.empty()) missing += ", ";
      missing += ToString(v) + " (" + std::to_string(have) + ")";
    }
  }
  if (!missing.empty())
    throw std::runtime_error(
        "train_vowel_models: classes below the minimum of " +
        std::to_string(config.min_segments_per_class) +
        " training segments: " + missing);

  std::map<VowelClass, GmmModel> models;
  for (VowelClass v : kAllVowels) {
    Rows rows;
    Vec weights;
    for (const LabeledSegment* seg : by_class[v]) {
      for (size_t i = 0; i < seg->frames.size(); ++i) {
        rows.push_back(seg->frames[i]);
        weights.push_back(seg->weights.empty() ? 1.0 : seg->weights[i]);
      }
    }
    GmmTrainConfig gmm_config = config.gmm;
    gmm_config.seed = MixSeed(config.gmm.seed, "vowel-model-" + ToString(v));
    models[v] = FitGmm(rows, weights, config.mixtures_per_vowel, gmm_config,
                       nullptr, ToString(v));
  }
  return models;
}

std::pair<VowelClass, double> ClassifySegment(
    const Rows& frames, const std::map<VowelClass, GmmModel>& models) {
  Require(!frames.empty(), "classify_segment: empty segment");
  Require(models.size() == kNumVowelClasses,
          "classify_segment: expected one model per vowel class");
  VowelClass best = VowelClass::kA;
  double best_score = -std::numeric_limits<double>::infinity();
  for (VowelClass v : kAllVowels) {
    const GmmModel& model = models.at(v);
    KahanSum acc;
    for (const Vec& frame : frames) acc.Add(GmmLogDensity(model, frame));
    const double mean_ll = acc.Value() / static_cast<double>(frames.size());
    if (mean_ll > best_score) {  // strict: ties keep the earlier class
      best_score = mean_ll;
      best = v;
    }
  }
  return {best, best_score};
}

ConfusionMatrix::ConfusionMatrix() {
  for (auto& row : counts_) row.fill(0);
}

void ConfusionMatrix::Add(VowelClass recognized, VowelClass uttered) {
  ++counts_[static_cast<size_t>(recognized)][static_cast<size_t>(uttered)];
}

int ConfusionMatrix::Count(VowelClass recognized, VowelClass uttered) const {
  return counts_[static_cast<size_t>(recognized)][static_cast<size_t>(uttered)];
}

int ConfusionMatrix::Total() const {
  int total = 0;
  for (const auto& row : counts_)
    for (int c : row) total += c;
  return total;
}

int ConfusionMatrix::ColumnTotal(VowelClass uttered) const {
  int total = 0;
  for (const auto& row : counts_) total += row[static_cast<size_t>(uttered)];
  return total;
}

double ConfusionMatrix::Percent(VowelClass recognized, VowelClass uttered) const {
  const int column = ColumnTotal(uttered);
  if (column == 0) return 0.0;
  return 100.0 * Count(recognized, uttered) / column;
}

double ConfusionMatrix::OverallAccuracy() const {
  const int total = Total();
  if (total == 0) return 0.0;
  int diagonal = 0;
  for (VowelClass v : kAllVowels) diagonal += Count(v, v);
  return static_cast<double>(diagonal) / total;
}

double ConfusionMatrix::ClassAccuracy(VowelClass uttered) const {
  return Percent(uttered, uttered) / 100.0;
}

std::string ConfusionMatrix::FormatTable() const {
  std::ostringstream out;
  char buf[32];
  out << "                      Uttered Vowel\n";
  out << "                ";
  for (VowelClass u : kAllVowels) {
    std::snprintf(buf, sizeof buf, "%7s", ToString(u).c_str());
    out << buf;
  }
  out << '\n';
  bool first = true;
  for (VowelClass r : kAllVowels) {
    out << (first ? "Recognized " : "           ");
    first = false;
    std::snprintf(buf, sizeof buf, "%-5s", ToString(r).c_str());
    out << buf;
    for (VowelClass u : kAllVowels) {
      std::snprintf(buf, sizeof buf, "%7.1f", Percent(r, u));
      out << buf;
    }
    out << '\n';
  }
  std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * OverallAccuracy());
  out << "Overall accuracy: " << buf << " (" << Total() << " segments)\n";
  return out.str();
}

void ConfusionMatrix::WriteCsv(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("confusion csv: cannot write " + path);
  out << "recognized\\uttered";
  for (VowelClass u : kAllVowels) out << ',' << ToString(u);
  out << '\n';
  for (VowelClass r : kAllVowels) {
    out << ToString(r);
    for (VowelClass u : kAllVowels) out << ',' << Count(r, u);
    out << '\n';
  }
}

ConfusionMatrix EvaluateClassification(
    const std::vector<std::pair<Rows, VowelClass>>& test_segments,
    const std::map<VowelClass, GmmModel>& models) {
  Require(!test_segments.empty(), "evaluate: empty test set");
  ConfusionMatrix matrix;
  for (const auto& [frames, truth] : test_segments) {
    const int truth_index = static_cast<int>(truth);
    Require(truth_index >= 0 && truth_index < kNumVowelClasses,
            "evaluate: unknown truth label index " + std::to_string(truth_index));
    const auto [recognized, score] = ClassifySegment(frames, models);
    (void)score;
    matrix.Add(recognized, truth);
  }
  return matrix;
}

}  // namespace vowelkit
