// core/include/vowelkit/model-io.h

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

#ifndef VOWELKIT_MODEL_IO_H_
#define VOWELKIT_MODEL_IO_H_

#include <string>

#include "vowelkit/gmm.h"
#include "vowelkit/svm.h"

namespace vowelkit {

/// Writes content to path via a temporary name plus rename, so a crashed
/// run never leaves a truncated artifact behind.
void WriteFileAtomic(const std::string& path, const std::string& content);

std::string ReadFileToString(const std::string& path);

/// {dimension, class_label, components: [{weight, mean[], variance[]}]};
/// doubles round-trip exactly (shortest-representation serialization).
void SaveGmm(const std::string& path, const GmmModel& model);
GmmModel LoadGmm(const std::string& path);

/// {C, sigma, bias, scaler{mean[], std[]}, support_vectors[][],
///  coefficients[], platt{A, B}}.
void SaveSvm(const std::string& path, const SvmModel& model);
SvmModel LoadSvm(const std::string& path);

}  // namespace vowelkit

#endif  // VOWELKIT_MODEL_IO_H_
