// tools/vowelkit-main.cc

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

#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "vowelkit/config.h"
#include "vowelkit/corpus.h"
#include "vowelkit/gating.h"
#include "vowelkit/model-io.h"
#include "vowelkit/pipeline.h"

namespace fs = std::filesystem;
using namespace vowelkit;

namespace {

struct GlobalOptions {
  std::string config_path;
  std::string out_dir = "out";
  std::optional<uint64_t> seed;
};

PipelineConfig LoadEffectiveConfig(const GlobalOptions& global) {
  PipelineConfig config = global.config_path.empty()
                              ? SyntheticDefaultConfig()
                              : LoadConfig(global.config_path);
  if (global.seed.has_value()) config.seed = *global.seed;
  config.Validate();
  return config;
}

void RequireExists(const std::string& path, const std::string& what) {
  if (!fs::exists(path))
    throw std::runtime_error(what + " not found: " + path);
}

int CmdGenCorpus(const GlobalOptions& global) {
  const PipelineConfig config = LoadEffectiveConfig(global);
  const fs::path corpus_dir = fs::path(global.out_dir) / "corpus";
  fs::create_directories(corpus_dir);

  const auto corpus =
      GenerateCorpus(config.corpus, MixSeed(config.seed, "corpus"));
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const LabeledUtterance& utt : corpus) {
    SaveUtterance(corpus_dir.string(), utt);
    pairs.emplace_back(utt.id + ".wav", utt.id + ".lab");
  }
  WriteCorpusManifest((corpus_dir / "manifest.tsv").string(), pairs);

  const auto [train, test] =
      SplitCorpus(corpus, config.train_fraction, MixSeed(config.seed, "split"));
  auto write_part = [&](const std::string& name,
                        const std::vector<LabeledUtterance>& part) {
    std::vector<std::pair<std::string, std::string>> part_pairs;
    for (const LabeledUtterance& utt : part)
      part_pairs.emplace_back(utt.id + ".wav", utt.id + ".lab");
    WriteCorpusManifest((corpus_dir / name).string(), part_pairs);
  };
  write_part("manifest-train.tsv", train);
  write_part("manifest-test.tsv", test);

  std::cout << "wrote " << corpus.size() << " utterances ("
            << train.size() << " train / " << test.size() << " test) to "
            << corpus_dir.string() << "\n";
  return 0;
}

int CmdExtract(const GlobalOptions& global, const std::string& manifest,
               const std::string& wav) {
  const PipelineConfig config = LoadEffectiveConfig(global);
  fs::create_directories(global.out_dir);

  std::vector<LabeledUtterance> utterances;
  if (!wav.empty()) {
    RequireExists(wav, "wav file");
    LabeledUtterance utt;
    utt.id = fs::path(wav).stem().string();
    utt.audio = ReadWav(wav, config.dsp.sample_rate);
    utterances.push_back(std::move(utt));
  } else {
    RequireExists(manifest, "manifest");
    utterances = LoadManifest(manifest, config.dsp.sample_rate);
  }
  for (const LabeledUtterance& utt : utterances) {
    const auto features = ExtractFeatures(utt.audio, config.dsp);
    const fs::path out = fs::path(global.out_dir) / (utt.id + ".features.csv");
    WriteFeatureCsv(out.string(), features);
  }
  std::cout << "extracted features for " << utterances.size()
            << " utterance(s) into " << global.out_dir << "\n";
  return 0;
}

int CmdTrain(const GlobalOptions& global, const std::string& manifest) {
  const PipelineConfig config = LoadEffectiveConfig(global);
  RequireExists(manifest, "manifest");
  const auto training_set = LoadManifest(manifest, config.dsp.sample_rate);

  const TrainOutput trained = TrainPipeline(training_set, config);
  const fs::path bundle_dir = fs::path(global.out_dir) / "bundle";
  SaveBundle(bundle_dir.string(), trained.bundle);
  WriteFileAtomic((fs::path(global.out_dir) / "train-report.json").string(),
                  trained.report.ToJson());
  WriteGatingReportCsv(
      (fs::path(global.out_dir) / "gating-report.csv").string(),
      trained.bundle.gating, trained.scaled_rows);

  std::cout << "bundle written to " << bundle_dir.string() << "\n"
            << "support vectors: gated " << trained.report.gated_support_vectors
            << ", ungated " << trained.report.ungated_support_vectors << "\n"
            << "chosen C = " << trained.report.chosen_c
            << ", sigma = " << trained.report.chosen_sigma
            << ", epsilon = " << trained.report.epsilon << "\n";
  return 0;
}

int CmdDetect(const GlobalOptions& global, const std::string& bundle_dir,
              const std::string& wav, bool classify) {
  const PipelineConfig config = LoadEffectiveConfig(global);
  RequireExists(bundle_dir, "model bundle");
  RequireExists(wav, "wav file");
  const ModelBundle bundle = LoadBundle(bundle_dir);

  LabeledUtterance utt;
  utt.id = fs::path(wav).stem().string();
  utt.audio = ReadWav(wav, config.dsp.sample_rate);
  const DetectionResult result =
      DetectAndClassify(bundle, utt, config, classify);

  fs::create_directories(global.out_dir);
  const fs::path base = fs::path(global.out_dir) / utt.id;
  WriteSegmentsCsv(base.string() + ".segments.csv", result.segments,
                   VowelNames());
  WriteCurveCsv(base.string() + ".curves.csv", result);
  std::cout << result.segments.size() << " segment(s) -> "
            << base.string() + ".segments.csv" << "\n";
  return 0;
}

int CmdEvaluate(const GlobalOptions& global, const std::string& bundle_dir,
                const std::string& manifest) {
  const PipelineConfig config = LoadEffectiveConfig(global);
  RequireExists(bundle_dir, "model bundle");
  RequireExists(manifest, "manifest");
  const ModelBundle bundle = LoadBundle(bundle_dir);
  const auto test_set = LoadManifest(manifest, config.dsp.sample_rate);

  const EvaluationResult result = EvaluatePipeline(bundle, test_set, config);
  fs::create_directories(global.out_dir);
  WriteFileAtomic((fs::path(global.out_dir) / "confusion.txt").string(),
                  result.matrix.FormatTable());
  result.matrix.WriteCsv(
      (fs::path(global.out_dir) / "confusion.csv").string());
  WriteFileAtomic((fs::path(global.out_dir) / "summary.json").string(),
                  result.SummaryJson());

  std::cout << result.matrix.FormatTable();
  std::cout << "detection: " << result.detection.hits << "/"
            << result.detection.truth_segments
            << " within tolerance, false alarms "
            << result.detection.false_alarms << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vowel detection and recognition pipeline"};
  app.require_subcommand(1);

  GlobalOptions global;
  uint64_t seed_value = 0;
  auto* seed_opt =
      app.add_option("--seed", seed_value, "override the config seed");
  app.add_option("--config", global.config_path, "pipeline config (JSON)");
  app.add_option("--out", global.out_dir, "output directory")
      ->capture_default_str();

  auto* gen = app.add_subcommand("gen-corpus",
                                 "synthesize the labeled vowel corpus");

  std::string extract_manifest, extract_wav;
  auto* extract =
      app.add_subcommand("extract", "dump per-frame features as CSV");
  extract->add_option("--manifest", extract_manifest, "corpus manifest (TSV)");
  extract->add_option("--wav", extract_wav, "a single wav file");

  std::string train_manifest;
  auto* train = app.add_subcommand("train", "train the full model bundle");
  train->add_option("--manifest", train_manifest, "training manifest (TSV)")
      ->required();

  std::string detect_bundle, detect_wav;
  auto* detect = app.add_subcommand("detect", "detect vowel segments");
  detect->add_option("--bundle", detect_bundle, "model bundle directory")
      ->required();
  detect->add_option("--wav", detect_wav, "wav file")->required();

  std::string classify_bundle, classify_wav;
  auto* classify = app.add_subcommand(
      "classify", "detect segments and assign vowel labels");
  classify->add_option("--bundle", classify_bundle, "model bundle directory")
      ->required();
  classify->add_option("--wav", classify_wav, "wav file")->required();

  std::string eval_bundle, eval_manifest;
  auto* evaluate = app.add_subcommand(
      "evaluate", "confusion matrix and detection metrics on a test set");
  evaluate->add_option("--bundle", eval_bundle, "model bundle directory")
      ->required();
  evaluate->add_option("--manifest", eval_manifest, "test manifest (TSV)")
      ->required();

  CLI11_PARSE(app, argc, argv);
  if (!seed_opt->empty()) global.seed = seed_value;

  try {
    if (gen->parsed()) return CmdGenCorpus(global);
    if (extract->parsed()) {
      if (extract_manifest.empty() && extract_wav.empty())
        throw std::runtime_error("extract: pass --manifest or --wav");
      return CmdExtract(global, extract_manifest, extract_wav);
    }
    if (train->parsed()) return CmdTrain(global, train_manifest);
    if (detect->parsed())
      return CmdDetect(global, detect_bundle, detect_wav, false);
    if (classify->parsed())
      return CmdDetect(global, classify_bundle, classify_wav, true);
    if (evaluate->parsed()) return CmdEvaluate(global, eval_bundle, eval_manifest);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
