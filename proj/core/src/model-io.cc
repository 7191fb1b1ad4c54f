// core/src/model-io.cc

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

#include "vowelkit/model-io.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace vowelkit {

using nlohmann::json;

void WriteFileAtomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("io: cannot write " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("io: short write to " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::string ReadFileToString(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("io: cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void SaveGmm(const std::string& path, const GmmModel& model) {
  json components = json::array();
  for (const GaussianComponent& c : model.components)
    components.push_back(json{
        {"weight", c.weight}, {"mean", c.mean}, {"variance", c.variance}});
  json j{{"dimension", model.dimension},
         {"class_label", model.class_label},
         {"components", components}};
  WriteFileAtomic(path, j.dump(2) + "\n");
}

GmmModel LoadGmm(const std::string& path) {
  json j = json::parse(ReadFileToString(path));
  GmmModel model;
  model.dimension = j.at("dimension").get<int>();
  model.class_label = j.at("class_label").get<std::string>();
  for (const json& c : j.at("components")) {
    GaussianComponent component;
    component.weight = c.at("weight").get<double>();
    component.mean = c.at("mean").get<Vec>();
    component.variance = c.at("variance").get<Vec>();
    Require(static_cast<int>(component.mean.size()) == model.dimension &&
                static_cast<int>(component.variance.size()) == model.dimension,
            "gmm model: component dimension mismatch in " + path);
    model.components.push_back(std::move(component));
  }
  Require(!model.components.empty(), "gmm model: no components in " + path);
  return model;
}

void SaveSvm(const std::string& path, const SvmModel& model) {
  json j{{"C", model.c},
         {"sigma", model.kernel.sigma},
         {"bias", model.bias},
         {"scaler", json{{"mean", model.scaler.mean}, {"std", model.scaler.std}}},
         {"support_vectors", model.support_vectors},
         {"coefficients", model.coefficients}};
  if (model.platt.has_value())
    j["platt"] = json{{"A", model.platt->a}, {"B", model.platt->b}};
  WriteFileAtomic(path, j.dump(2) + "\n");
}

SvmModel LoadSvm(const std::string& path) {
  json j = json::parse(ReadFileToString(path));
  SvmModel model;
  model.c = j.at("C").get<double>();
  model.kernel.sigma = j.at("sigma").get<double>();
  model.bias = j.at("bias").get<double>();
  model.scaler.mean = j.at("scaler").at("mean").get<Vec>();
  model.scaler.std = j.at("scaler").at("std").get<Vec>();
  model.support_vectors = j.at("support_vectors").get<Rows>();
  model.coefficients = j.at("coefficients").get<Vec>();
  Require(model.support_vectors.size() == model.coefficients.size(),
          "svm model: vector/coefficient count mismatch in " + path);
  for (const Vec& sv : model.support_vectors)
    Require(sv.size() == model.scaler.mean.size(),
            "svm model: support vector dimension mismatch in " + path);
  if (j.contains("platt")) {
    PlattParams platt;
    platt.a = j.at("platt").at("A").get<double>();
    platt.b = j.at("platt").at("B").get<double>();
    model.platt = platt;
  }
  return model;
}

}  // namespace vowelkit
