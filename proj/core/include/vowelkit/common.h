// core/include/vowelkit/common.h

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

#ifndef VOWELKIT_COMMON_H_
#define VOWELKIT_COMMON_H_

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vowelkit {

using Vec = std::vector<double>;
using Rows = std::vector<Vec>;

inline constexpr double kPi = 3.14159265358979323846;

/// Throws std::invalid_argument when a precondition does not hold.
inline void Require(bool condition, const std::string& message) {
  if (!condition) throw std::invalid_argument(message);
}

inline bool AllFinite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

/// Compensated (Kahan) accumulator. Accumulation error stays O(eps)
/// independent of the number of summands.
class KahanSum {
 public:
  void Add(double x) {
    double y = x - compensation_;
    double t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }
  double Value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

inline double Dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline double SquaredDistance(std::span<const double> a,
                              std::span<const double> b) {
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

/// log(sum_i exp(x_i)) without overflow; returns -inf for an empty span.
inline double LogSumExp(std::span<const double> x) {
  double max = -std::numeric_limits<double>::infinity();
  for (double v : x)
    if (v > max) max = v;
  if (!std::isfinite(max)) return max;
  double acc = 0.0;
  for (double v : x) acc += std::exp(v - max);
  return max + std::log(acc);
}

/// Overflow-safe 1/(1+exp(-z)), clamped to the open interval (0,1).
inline double Logistic(double z) {
  double v;
  if (z >= 0.0) {
    v = 1.0 / (1.0 + std::exp(-z));
  } else {
    double e = std::exp(z);
    v = e / (1.0 + e);
  }
  if (v <= 0.0) v = std::numeric_limits<double>::min();
  if (v >= 1.0) v = 1.0 - std::numeric_limits<double>::epsilon() / 2;
  return v;
}

/// Derives an independent stream seed from a base seed and a purpose tag
/// (FNV-1a over the tag bytes mixed into the seed).
inline uint64_t MixSeed(uint64_t seed, std::string_view tag) {
  uint64_t h = 1469598103934665603ull ^ seed;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

/// Deterministic random stream. All draws are derived from raw mt19937_64
/// output with fixed transforms, so sequences are reproducible across
/// platforms and standard-library versions (std::*_distribution is not).
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1).
  double Uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform01(); }

  /// Uniform integer in [0, n), unbiased. n must be positive.
  uint64_t UniformInt(uint64_t n) {
    Require(n > 0, "RandomStream::UniformInt: n must be positive");
    uint64_t limit = std::numeric_limits<uint64_t>::max() -
                     std::numeric_limits<uint64_t>::max() % n;
    uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  /// Standard normal via Box-Muller (cached spare).
  double Gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - Uniform01();  // (0, 1], keeps log() finite
    double u2 = Uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * kPi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  double Gaussian(double mean, double stddev) {
    return mean + stddev * Gaussian();
  }

  /// Fisher-Yates shuffle driven by UniformInt.
  template <typename T>
  void Shuffle(std::vector<T>* v) {
    for (size_t i = v->size(); i > 1; --i) {
      size_t j = static_cast<size_t>(UniformInt(i));
      std::swap((*v)[i - 1], (*v)[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace vowelkit

#endif  // VOWELKIT_COMMON_H_
