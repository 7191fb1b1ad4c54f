// core/src/pipeline.cc

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

#include "vowelkit/pipeline.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>

#include "json.hpp"
#include "vowelkit/model-io.h"

namespace vowelkit {

using nlohmann::json;

namespace {

namespace fs = std::filesystem;

// Filename-safe vowel names for the bundle layout.
std::string FileSafeName(VowelClass vowel) {
  switch (vowel) {
    case VowelClass::kA:
      return "a";
    case VowelClass::kSchwa:
      return "schwa";
    case VowelClass::kO:
      return "o";
    case VowelClass::kE:
      return "e";
    case VowelClass::kI:
      return "i";
    case VowelClass::kU:
      return "u";
    case VowelClass::kAu:
      return "au";
    case VowelClass::kEi:
      return "ei";
  }
  return "x";
}

// Deterministic stratified subsample: per label, shuffle and keep a
// proportional share; returned indices are sorted (original order).
std::vector<size_t> StratifiedSubsample(const std::vector<int>& labels,
                                        size_t cap, uint64_t seed) {
  if (labels.size() <= cap) {
    std::vector<size_t> all(labels.size());
    std::iota(all.begin(), all.end(), 0);
    return all;
  }
  std::map<int, std::vector<size_t>> by_label;
  for (size_t i = 0; i < labels.size(); ++i) by_label[labels[i]].push_back(i);
  RandomStream rng(MixSeed(seed, "stratified-subsample"));
  std::vector<size_t> picked;
  const double share = static_cast<double>(cap) / labels.size();
  for (auto& [label, idx] : by_label) {
    rng.Shuffle(&idx);
    size_t keep = std::max<size_t>(
        1, static_cast<size_t>(std::lround(share * idx.size())));
    keep = std::min(keep, idx.size());
    picked.insert(picked.end(), idx.begin(), idx.begin() + keep);
  }
  std::sort(picked.begin(), picked.end());
  if (picked.size() > cap) picked.resize(cap);
  return picked;
}

std::pair<VowelClass, double> ClassifyWithBundle(const ModelBundle& bundle,
                                                 const PipelineConfig& config,
                                                 const Rows& scaled_rows) {
  // Mean log-likelihood per class, keeping the two best for the optional
  // pairwise refinement.
  Require(!scaled_rows.empty(), "classify: empty segment");
  std::array<double, kNumVowelClasses> scores;
  for (VowelClass v : kAllVowels) {
    const GmmModel& model = bundle.vowel_models.at(v);
    KahanSum acc;
    for (const Vec& row : scaled_rows) acc.Add(GmmLogDensity(model, row));
    scores[static_cast<size_t>(v)] =
        acc.Value() / static_cast<double>(scaled_rows.size());
  }
  int best = 0, second = -1;
  for (int i = 1; i < kNumVowelClasses; ++i)
    if (scores[i] > scores[best]) best = i;
  for (int i = 0; i < kNumVowelClasses; ++i) {
    if (i == best) continue;
    if (second < 0 || scores[i] > scores[second]) second = i;
  }

  if (config.recognizer.use_pairwise_svm && !bundle.pairwise_svms.empty() &&
      second >= 0) {
    auto lo = static_cast<VowelClass>(std::min(best, second));
    auto hi = static_cast<VowelClass>(std::max(best, second));
    auto it = bundle.pairwise_svms.find({lo, hi});
    if (it != bundle.pairwise_svms.end()) {
      // The pairwise model was trained with +1 = the earlier class.
      KahanSum posterior;
      for (const Vec& row : scaled_rows) {
        const double f = DecisionValue(it->second, row);
        posterior.Add(it->second.platt.has_value()
                          ? PlattPosterior(*it->second.platt, f)
                          : Logistic(f));
      }
      const double mean_posterior =
          posterior.Value() / static_cast<double>(scaled_rows.size());
      best = mean_posterior >= 0.5 ? static_cast<int>(lo) : static_cast<int>(hi);
    }
  }
  return {static_cast<VowelClass>(best), scores[best]};
}

}  // namespace

AnalyzedUtterance AnalyzeUtterance(const LabeledUtterance& utterance,
                                   const DspConfig& dsp) {
  AnalyzedUtterance out;
  out.id = utterance.id;
  out.features = ExtractFeatures(utterance.audio, dsp);
  out.rows.reserve(out.features.size());
  for (const FeatureVector& fv : out.features) out.rows.push_back(fv.Classifier());

  // Frame membership by window midpoint; segments keyed by label interval
  // so adjacent equal vowels stay distinct.
  out.frame_vowel.assign(out.features.size(), -1);
  std::vector<int> interval_of(out.features.size(), -1);
  for (size_t t = 0; t < out.features.size(); ++t) {
    const double mid =
        (static_cast<double>(t) * dsp.frame_shift + dsp.frame_length / 2.0) /
        dsp.sample_rate;
    for (size_t k = 0; k < utterance.labels.size(); ++k) {
      const LabelInterval& interval = utterance.labels[k];
      if (mid >= interval.start_s && mid < interval.end_s) {
        if (interval.vowel.has_value()) {
          out.frame_vowel[t] = static_cast<int>(*interval.vowel);
          interval_of[t] = static_cast<int>(k);
        }
        break;
      }
    }
  }
  for (size_t t = 0; t < out.features.size();) {
    if (interval_of[t] < 0) {
      ++t;
      continue;
    }
    size_t e = t;
    while (e < out.features.size() && interval_of[e] == interval_of[t]) ++e;
    AnalyzedUtterance::TruthSegment seg;
    seg.start_frame = static_cast<int>(t);
    seg.end_frame = static_cast<int>(e);
    seg.label = static_cast<VowelClass>(out.frame_vowel[t]);
    out.segments.push_back(seg);
    t = e;
  }
  return out;
}

Vec SoftVowelWeights(const AnalyzedUtterance& utterance, int context) {
  Vec weights(utterance.features.size(), 0.0);
  const int n = static_cast<int>(weights.size());
  for (const auto& seg : utterance.segments) {
    const SoftSegmentWeights soft =
        MakeSoftSegmentWeights(seg.start_frame, seg.end_frame, context);
    for (size_t i = 0; i < soft.weights.size(); ++i) {
      const int frame = soft.first_frame + static_cast<int>(i);
      if (frame < 0 || frame >= n) continue;
      weights[frame] = std::max(weights[frame], soft.weights[i]);
    }
  }
  return weights;
}

std::string TrainReport::ToJson() const {
  json j{{"training_frames", training_frames},
         {"svm_pool_frames", svm_pool_frames},
         {"gated_frames", gated_frames},
         {"gated_support_vectors", gated_support_vectors},
         {"ungated_support_vectors", ungated_support_vectors},
         {"chosen_c", chosen_c},
         {"chosen_sigma", chosen_sigma},
         {"cv_accuracy", cv_accuracy},
         {"epsilon", epsilon},
         {"prior_vowel", prior_vowel},
         {"gated_kkt", gated_kkt},
         {"ungated_kkt", ungated_kkt}};
  return j.dump(2) + "\n";
}

TrainOutput TrainPipeline(const std::vector<LabeledUtterance>& training_set,
                          const PipelineConfig& config) {
  config.Validate();
  Require(!training_set.empty(), "train: empty training set");

  TrainOutput out;
  std::vector<AnalyzedUtterance> analyzed;
  analyzed.reserve(training_set.size());
  for (const LabeledUtterance& utt : training_set)
    analyzed.push_back(AnalyzeUtterance(utt, config.dsp));

  Rows raw_rows;
  std::vector<int> frame_labels;  // +1 vowel, -1 non-vowel
  Vec vowel_weights;
  for (const AnalyzedUtterance& utt : analyzed) {
    const Vec soft = SoftVowelWeights(utt, config.gmm.soft_context_frames);
    for (size_t t = 0; t < utt.rows.size(); ++t) {
      raw_rows.push_back(utt.rows[t]);
      frame_labels.push_back(utt.frame_vowel[t] >= 0 ? 1 : -1);
      vowel_weights.push_back(soft[t]);
    }
  }
  Require(!raw_rows.empty(), "train: no frames extracted");

  ModelBundle& bundle = out.bundle;
  bundle.dsp_config_hash = DspConfigHash(config.dsp);
  bundle.scaler = FeatureScaler::Fit(raw_rows);
  out.scaled_rows = bundle.scaler.ApplyAll(raw_rows);
  out.frame_labels = frame_labels;
  const Rows& scaled = out.scaled_rows;

  Vec nonvowel_weights(vowel_weights.size());
  for (size_t i = 0; i < vowel_weights.size(); ++i)
    nonvowel_weights[i] = 1.0 - vowel_weights[i];

  bundle.gating.vowel =
      FitGmm(scaled, vowel_weights, config.gmm.vowel_mixtures,
             config.gmm.TrainConfig(MixSeed(config.seed, "gmm-vowel")), nullptr,
             "vowel");
  bundle.gating.nonvowel =
      FitGmm(scaled, nonvowel_weights, config.gmm.nonvowel_mixtures,
             config.gmm.TrainConfig(MixSeed(config.seed, "gmm-nonvowel")),
             nullptr, "nonvowel");

  if (config.gating.priors.has_value()) {
    bundle.gating.SetPriors(config.gating.priors->first,
                            config.gating.priors->second);
  } else {
    const auto vowel_frames =
        std::count(frame_labels.begin(), frame_labels.end(), 1);
    bundle.gating.SetPriors(
        static_cast<double>(std::max<long>(vowel_frames, 1)),
        static_cast<double>(
            std::max<long>(frame_labels.size() - vowel_frames, 1)));
  }
  bundle.gating.epsilon = 0.0;
  bundle.gating.epsilon = CalibrateEpsilon(
      bundle.gating, scaled, config.gating.target_ambiguous_fraction);

  TrainReport& report = out.report;
  report.training_frames = static_cast<int>(scaled.size());
  report.epsilon = bundle.gating.epsilon;
  report.prior_vowel = bundle.gating.prior_vowel;

  // Training-set selection for the discriminative stage.
  const std::vector<size_t> pool_idx = StratifiedSubsample(
      frame_labels, static_cast<size_t>(config.svm.max_training_frames),
      MixSeed(config.seed, "svm-pool"));
  Rows pool_rows;
  std::vector<int> pool_labels;
  for (size_t i : pool_idx) {
    pool_rows.push_back(scaled[i]);
    pool_labels.push_back(frame_labels[i]);
  }
  report.svm_pool_frames = static_cast<int>(pool_rows.size());

  GatedSelection gated =
      SelectAmbiguousTrainingSet(bundle.gating, pool_rows, pool_labels);
  report.gated_frames = static_cast<int>(gated.rows.size());

  const std::vector<size_t> cv_idx = StratifiedSubsample(
      gated.labels, static_cast<size_t>(config.svm.cv_max_frames),
      MixSeed(config.seed, "svm-cv"));
  Rows cv_rows;
  std::vector<int> cv_labels;
  for (size_t i : cv_idx) {
    cv_rows.push_back(gated.rows[i]);
    cv_labels.push_back(gated.labels[i]);
  }

  SmoConfig smo_config;
  smo_config.tolerance = config.svm.tolerance;
  const CvResult cv = CrossValidate(cv_rows, cv_labels, config.svm.grid,
                                    smo_config, config.seed);
  report.chosen_c = cv.best_c;
  report.chosen_sigma = cv.best_sigma;
  report.cv_accuracy = cv.best_accuracy;

  smo_config.c = cv.best_c;
  smo_config.sigma = cv.best_sigma;
  SmoResult gated_svm = TrainSmo(gated.rows, gated.labels, smo_config);
  gated_svm.model.platt = FitPlattSigmoid(cv.heldout_decisions, cv_labels);
  bundle.svm = std::move(gated_svm.model);
  report.gated_support_vectors =
      static_cast<int>(bundle.svm.support_vectors.size());
  report.gated_kkt = MaxKktViolation(bundle.svm, gated.rows, gated.labels);

  if (config.svm.report_ungated) {
    const SmoResult ungated = TrainSmo(pool_rows, pool_labels, smo_config);
    report.ungated_support_vectors =
        static_cast<int>(ungated.model.support_vectors.size());
    report.ungated_kkt = MaxKktViolation(ungated.model, pool_rows, pool_labels);
  }

  // Per-vowel models from soft-weighted segments, in the scaled space.
  std::vector<LabeledSegment> class_segments;
  for (const AnalyzedUtterance& utt : analyzed) {
    const int n = static_cast<int>(utt.rows.size());
    for (const auto& seg : utt.segments) {
      const SoftSegmentWeights soft = MakeSoftSegmentWeights(
          seg.start_frame, seg.end_frame, config.gmm.soft_context_frames);
      LabeledSegment labeled;
      labeled.label = seg.label;
      for (size_t i = 0; i < soft.weights.size(); ++i) {
        const int frame = soft.first_frame + static_cast<int>(i);
        if (frame < 0 || frame >= n) continue;
        labeled.frames.push_back(bundle.scaler.Apply(utt.rows[frame]));
        labeled.weights.push_back(soft.weights[i]);
      }
      class_segments.push_back(std::move(labeled));
    }
  }
  RecognizerConfig rec_config;
  rec_config.mixtures_per_vowel = config.recognizer.mixtures_per_vowel;
  rec_config.min_segments_per_class = config.recognizer.min_segments_per_class;
  rec_config.gmm = config.gmm.TrainConfig(config.seed);
  bundle.vowel_models = TrainVowelModels(class_segments, rec_config);

  if (config.recognizer.use_pairwise_svm) {
    // One RBF classifier per unordered class pair over the vowel cores,
    // +1 = the class earlier in enumeration order.
    std::map<VowelClass, Rows> core_rows;
    for (const AnalyzedUtterance& utt : analyzed)
      for (const auto& seg : utt.segments)
        for (int t = seg.start_frame; t < seg.end_frame; ++t)
          core_rows[seg.label].push_back(bundle.scaler.Apply(utt.rows[t]));
    for (int a = 0; a < kNumVowelClasses; ++a) {
      for (int b = a + 1; b < kNumVowelClasses; ++b) {
        const auto va = static_cast<VowelClass>(a);
        const auto vb = static_cast<VowelClass>(b);
        Rows rows;
        std::vector<int> labels;
        for (const Vec& row : core_rows[va]) {
          rows.push_back(row);
          labels.push_back(1);
        }
        for (const Vec& row : core_rows[vb]) {
          rows.push_back(row);
          labels.push_back(-1);
        }
        const std::vector<size_t> pick = StratifiedSubsample(
            labels, static_cast<size_t>(config.recognizer.pairwise_max_frames),
            MixSeed(config.seed,
                    "pairwise-" + FileSafeName(va) + "-" + FileSafeName(vb)));
        Rows sub_rows;
        std::vector<int> sub_labels;
        for (size_t i : pick) {
          sub_rows.push_back(rows[i]);
          sub_labels.push_back(labels[i]);
        }
        SmoConfig pair_config = smo_config;
        SmoResult pair_svm = TrainSmo(sub_rows, sub_labels, pair_config);
        CvGrid pair_grid;
        pair_grid.c_values = {smo_config.c};
        pair_grid.sigma_values = {smo_config.sigma};
        pair_grid.folds = 3;
        const CvResult pair_cv = CrossValidate(sub_rows, sub_labels, pair_grid,
                                               pair_config, config.seed);
        pair_svm.model.platt =
            FitPlattSigmoid(pair_cv.heldout_decisions, sub_labels);
        bundle.pairwise_svms[{va, vb}] = std::move(pair_svm.model);
      }
    }
  }
  return out;
}

void SaveBundle(const std::string& dir, const ModelBundle& bundle) {
  fs::create_directories(dir);
  const fs::path base(dir);

  json scaler{{"mean", bundle.scaler.mean}, {"std", bundle.scaler.std}};
  WriteFileAtomic((base / "scaler.json").string(), scaler.dump(2) + "\n");

  SaveGmm((base / "gmm-vowel.json").string(), bundle.gating.vowel);
  SaveGmm((base / "gmm-nonvowel.json").string(), bundle.gating.nonvowel);

  json gating{{"prior_vowel", bundle.gating.prior_vowel},
              {"prior_nonvowel", bundle.gating.prior_nonvowel},
              {"epsilon", bundle.gating.epsilon}};
  WriteFileAtomic((base / "gating.json").string(), gating.dump(2) + "\n");

  SaveSvm((base / "svm.json").string(), bundle.svm);

  json vowel_files = json::object();
  for (const auto& [vowel, model] : bundle.vowel_models) {
    const std::string name = "vowel-" + FileSafeName(vowel) + ".json";
    SaveGmm((base / name).string(), model);
    vowel_files[ToString(vowel)] = name;
  }
  json pair_files = json::object();
  for (const auto& [pair, model] : bundle.pairwise_svms) {
    const std::string name = "pair-" + FileSafeName(pair.first) + "-vs-" +
                             FileSafeName(pair.second) + ".json";
    SaveSvm((base / name).string(), model);
    pair_files[ToString(pair.first) + "|" + ToString(pair.second)] = name;
  }

  json manifest{{"format", "vowelkit-bundle-v1"},
                {"dsp_config_hash", bundle.dsp_config_hash},
                {"files",
                 json{{"scaler", "scaler.json"},
                      {"gmm_vowel", "gmm-vowel.json"},
                      {"gmm_nonvowel", "gmm-nonvowel.json"},
                      {"gating", "gating.json"},
                      {"svm", "svm.json"},
                      {"vowel_models", vowel_files},
                      {"pairwise_svms", pair_files}}}};
  WriteFileAtomic((base / "manifest.json").string(), manifest.dump(2) + "\n");
}

ModelBundle LoadBundle(const std::string& dir) {
  const fs::path base(dir);
  const fs::path manifest_path = base / "manifest.json";
  if (!fs::exists(manifest_path))
    throw std::runtime_error("bundle: missing " + manifest_path.string() +
                             "; run `vowelkit train` first");
  json manifest = json::parse(ReadFileToString(manifest_path.string()));
  Require(manifest.at("format").get<std::string>() == "vowelkit-bundle-v1",
          "bundle: unknown format tag");

  ModelBundle bundle;
  bundle.dsp_config_hash = manifest.at("dsp_config_hash").get<std::string>();
  const json& files = manifest.at("files");

  json scaler = json::parse(ReadFileToString(
      (base / files.at("scaler").get<std::string>()).string()));
  bundle.scaler.mean = scaler.at("mean").get<Vec>();
  bundle.scaler.std = scaler.at("std").get<Vec>();

  bundle.gating.vowel = LoadGmm(
      (base / files.at("gmm_vowel").get<std::string>()).string());
  bundle.gating.nonvowel = LoadGmm(
      (base / files.at("gmm_nonvowel").get<std::string>()).string());
  json gating = json::parse(ReadFileToString(
      (base / files.at("gating").get<std::string>()).string()));
  bundle.gating.prior_vowel = gating.at("prior_vowel").get<double>();
  bundle.gating.prior_nonvowel = gating.at("prior_nonvowel").get<double>();
  bundle.gating.epsilon = gating.at("epsilon").get<double>();

  bundle.svm = LoadSvm((base / files.at("svm").get<std::string>()).string());

  for (const auto& item : files.at("vowel_models").items()) {
    const auto vowel = ParseVowel(item.key());
    Require(vowel.has_value(), "bundle: unknown vowel " + item.key());
    bundle.vowel_models[*vowel] =
        LoadGmm((base / item.value().get<std::string>()).string());
  }
  for (const auto& item : files.at("pairwise_svms").items()) {
    const std::string key = item.key();
    const size_t bar = key.find('|');
    Require(bar != std::string::npos, "bundle: bad pairwise key " + key);
    const auto first = ParseVowel(key.substr(0, bar));
    const auto second = ParseVowel(key.substr(bar + 1));
    Require(first.has_value() && second.has_value(),
            "bundle: bad pairwise key " + key);
    bundle.pairwise_svms[{*first, *second}] =
        LoadSvm((base / item.value().get<std::string>()).string());
  }
  return bundle;
}

void CheckBundleCompatible(const ModelBundle& bundle, const DspConfig& dsp) {
  const std::string current = DspConfigHash(dsp);
  if (current != bundle.dsp_config_hash)
    throw std::runtime_error(
        "bundle: front-end config hash " + current +
        " does not match the hash the models were trained with (" +
        bundle.dsp_config_hash +
        "); re-train or restore the original dsp settings");
}

DetectionMetrics MatchDetections(
    const std::vector<VowelSegment>& detected,
    const std::vector<AnalyzedUtterance::TruthSegment>& truth,
    int tolerance_frames) {
  DetectionMetrics metrics;
  metrics.boundary_tolerance_frames = tolerance_frames;
  metrics.truth_segments = static_cast<int>(truth.size());
  metrics.detected_segments = static_cast<int>(detected.size());

  auto overlap = [](int a_begin, int a_end, int b_begin, int b_end) {
    return std::max(0, std::min(a_end, b_end) - std::max(a_begin, b_begin));
  };

  std::vector bool_matched(detected.size(), false);
  for (const auto& t : truth) {
    int best = -1, best_overlap = 0;
    for (size_t j = 0; j < detected.size(); ++j) {
      if (bool_matched[j]) continue;
      const int o = overlap(t.start_frame, t.end_frame, detected[j].start_frame,
                            detected[j].end_frame);
      if (o > best_overlap) {
        best_overlap = o;
        best = static_cast<int>(j);
      }
    }
    if (best >= 0) {
      bool_matched[best] = true;
      if (std::abs(detected[best].start_frame - t.start_frame) <=
              tolerance_frames &&
          std::abs(detected[best].end_frame - t.end_frame) <= tolerance_frames)
        ++metrics.hits;
    }
  }
  for (size_t j = 0; j < detected.size(); ++j) {
    bool touches_truth = false;
    for (const auto& t : truth)
      if (overlap(t.start_frame, t.end_frame, detected[j].start_frame,
                  detected[j].end_frame) > 0)
        touches_truth = true;
    if (!touches_truth) ++metrics.false_alarms;
  }
  return metrics;
}

std::string EvaluationResult::SummaryJson() const {
  json per_class = json::object();
  for (VowelClass v : kAllVowels)
    per_class[ToString(v)] = matrix.ClassAccuracy(v);
  json j{{"overall_accuracy", matrix.OverallAccuracy()},
         {"segments", matrix.Total()},
         {"per_class_accuracy", per_class},
         {"detection",
          json{{"truth_segments", detection.truth_segments},
               {"detected_segments", detection.detected_segments},
               {"hits", detection.hits},
               {"recall", detection.Recall()},
               {"false_alarms", detection.false_alarms},
               {"boundary_tolerance_frames",
                detection.boundary_tolerance_frames}}}};
  return j.dump(2) + "\n";
}

EvaluationResult EvaluatePipeline(const ModelBundle& bundle,
                                  const std::vector<LabeledUtterance>& test_set,
                                  const PipelineConfig& config) {
  CheckBundleCompatible(bundle, config.dsp);
  Require(!test_set.empty(), "evaluate: empty test set");

  EvaluationResult result;
  for (const LabeledUtterance& utt : test_set) {
    const AnalyzedUtterance analyzed = AnalyzeUtterance(utt, config.dsp);
    const Rows scaled = bundle.scaler.ApplyAll(analyzed.rows);

    for (const auto& seg : analyzed.segments) {
      Rows segment_rows(scaled.begin() + seg.start_frame,
                        scaled.begin() + seg.end_frame);
      const auto [recognized, score] =
          ClassifyWithBundle(bundle, config, segment_rows);
      (void)score;
      result.matrix.Add(recognized, seg.label);
    }

    const DetectionResult detection =
        DetectVowelSegments(analyzed.features, scaled, bundle.gating,
                            bundle.svm, config.fusion, config.detector,
                            config.dsp);
    const DetectionMetrics utt_metrics =
        MatchDetections(detection.segments, analyzed.segments, 2);
    result.detection.truth_segments += utt_metrics.truth_segments;
    result.detection.detected_segments += utt_metrics.detected_segments;
    result.detection.hits += utt_metrics.hits;
    result.detection.false_alarms += utt_metrics.false_alarms;
  }
  return result;
}

DetectionResult DetectAndClassify(const ModelBundle& bundle,
                                  const LabeledUtterance& utterance,
                                  const PipelineConfig& config,
                                  bool classify) {
  CheckBundleCompatible(bundle, config.dsp);
  const AnalyzedUtterance analyzed = AnalyzeUtterance(utterance, config.dsp);
  const Rows scaled = bundle.scaler.ApplyAll(analyzed.rows);
  DetectionResult result =
      DetectVowelSegments(analyzed.features, scaled, bundle.gating, bundle.svm,
                          config.fusion, config.detector, config.dsp);
  if (classify) {
    for (VowelSegment& seg : result.segments) {
      Rows segment_rows(scaled.begin() + seg.start_frame,
                        scaled.begin() + seg.end_frame);
      const auto [vowel, score] =
          ClassifyWithBundle(bundle, config, segment_rows);
      (void)score;
      seg.label = static_cast<int>(vowel);
    }
  }
  return result;
}

}  // namespace vowelkit
