// core/src/audio.cc

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

#include "vowelkit/audio.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace vowelkit {

namespace {

uint32_t ReadU32(const unsigned char* p) {
  return static_cast<uint32_t>(p[0]) | static_cast<uint32_t>(p[1]) << 8 |
         static_cast<uint32_t>(p[2]) << 16 | static_cast<uint32_t>(p[3]) << 24;
}

uint16_t ReadU16(const unsigned char* p) {
  return static_cast<uint16_t>(p[0] | p[1] << 8);
}

void PutU32(std::string* out, uint32_t v) {
  out->push_back(static_cast<char>(v & 0xff));
  out->push_back(static_cast<char>((v >> 8) & 0xff));
  out->push_back(static_cast<char>((v >> 16) & 0xff));
  out->push_back(static_cast<char>((v >> 24) & 0xff));
}

void PutU16(std::string* out, uint16_t v) {
  out->push_back(static_cast<char>(v & 0xff));
  out->push_back(static_cast<char>((v >> 8) & 0xff));
}

[[noreturn]] void WavError(const std::string& path, const std::string& what) {
  throw std::runtime_error("wav: " + what + " (" + path + ")");
}

}  // namespace

void ValidateAudio(const AudioBuffer& audio) {
  Require(audio.sample_rate > 0, "audio: sample_rate must be positive");
  Require(AllFinite(audio.samples), "audio: samples must be finite");
}

AudioBuffer ReadWav(const std::string& path, int expected_rate) {
  std::ifstream in(path, std::ios::binary);
  if (!in) WavError(path, "cannot open file");
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  const size_t n = bytes.size();

  if (n < 12 || std::memcmp(p, "RIFF", 4) != 0)
    WavError(path, "missing RIFF header");
  if (std::memcmp(p + 8, "WAVE", 4) != 0) WavError(path, "missing WAVE tag");

  bool have_fmt = false;
  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  size_t data_offset = 0, data_size = 0;

  size_t pos = 12;
  while (pos + 8 <= n) {
    const char* id = bytes.data() + pos;
    uint32_t size = ReadU32(p + pos + 4);
    size_t body = pos + 8;
    if (body + size > n) WavError(path, "truncated chunk '" + std::string(id, 4) + "'");
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (size < 16) WavError(path, "fmt chunk too short");
      format = ReadU16(p + body);
      channels = ReadU16(p + body + 2);
      rate = ReadU32(p + body + 4);
      bits = ReadU16(p + body + 14);
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      data_offset = body;
      data_size = size;
    }
    pos = body + size + (size & 1);  // chunks are word-aligned
  }

  if (!have_fmt) WavError(path, "missing fmt chunk");
  if (format != 1)
    WavError(path, "audio_format must be 1 (PCM), got " + std::to_string(format));
  if (channels != 1)
    WavError(path, "channels must be 1 (mono), got " + std::to_string(channels));
  if (bits != 16)
    WavError(path, "bits_per_sample must be 16, got " + std::to_string(bits));
  if (static_cast<int>(rate) != expected_rate)
    WavError(path, "sample_rate must be " + std::to_string(expected_rate) +
                       " Hz, got " + std::to_string(rate));
  if (data_offset == 0) WavError(path, "missing data chunk");
  if (data_size % 2 != 0) WavError(path, "odd data chunk size");

  AudioBuffer audio;
  audio.sample_rate = static_cast<int>(rate);
  audio.samples.resize(data_size / 2);
  for (size_t i = 0; i < audio.samples.size(); ++i) {
    int16_t s = static_cast<int16_t>(ReadU16(p + data_offset + 2 * i));
    audio.samples[i] = static_cast<double>(s) / 32767.0;
  }
  return audio;
}

void WriteWav(const std::string& path, const AudioBuffer& audio) {
  ValidateAudio(audio);
  const uint32_t data_size = static_cast<uint32_t>(audio.samples.size() * 2);

  std::string out;
  out.reserve(44 + data_size);
  out += "RIFF";
  PutU32(&out, 36 + data_size);
  out += "WAVE";
  out += "fmt ";
  PutU32(&out, 16);
  PutU16(&out, 1);  // PCM
  PutU16(&out, 1);  // mono
  PutU32(&out, static_cast<uint32_t>(audio.sample_rate));
  PutU32(&out, static_cast<uint32_t>(audio.sample_rate) * 2);  // byte rate
  PutU16(&out, 2);   // block align
  PutU16(&out, 16);  // bits per sample
  out += "data";
  PutU32(&out, data_size);
  for (double x : audio.samples) {
    double clamped = std::clamp(x, -1.0, 1.0);
    long q = std::lround(clamped * 32767.0);
    q = std::clamp(q, -32768L, 32767L);
    PutU16(&out, static_cast<uint16_t>(static_cast<int16_t>(q)));
  }

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("wav: cannot write " + path);
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw std::runtime_error("wav: short write to " + path);
}

}  // namespace vowelkit
