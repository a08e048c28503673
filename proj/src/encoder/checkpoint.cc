// Copyright 2026 The Sparsedit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sparsedit/encoder/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>

#include "json.hpp"
#include "sparsedit/edit/tags.h"
#include "sparsedit/errors.h"

namespace sparsedit::encoder {

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

namespace {

constexpr char kMagic[8] = {'S', 'P', 'E', 'D', 'C', 'K', 'P', 'T'};

template <typename T>
void Put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T Get(std::istream& in, const std::string& path) {
  T value;
  if (!in.read(reinterpret_cast<char*>(&value), sizeof(T))) {
    throw IoError("truncated checkpoint " + path);
  }
  return value;
}

}  // namespace

template <typename Scalar>
void SaveCheckpoint(const std::string& path, const EncoderConfig& config,
                    const Vocabulary& vocab, const ParamStore<Scalar>& params) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write checkpoint " + path);
  nlohmann::ordered_json header;
  header["format_version"] = kCheckpointVersion;
  header["config"] = config.ToJson();
  header["vocab"] = vocab.tokens();
  header["tag_set"] = std::string(edit::TagSetVariantName(config.tag_set));
  const std::string text = header.dump();
  out.write(kMagic, sizeof(kMagic));
  Put<uint32_t>(out, kCheckpointVersion);
  Put<uint64_t>(out, text.size());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  Put<uint64_t>(out, params.tensors().size());
  for (const auto& [name, p] : params.tensors()) {
    Put<uint32_t>(out, static_cast<uint32_t>(name.size()));
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
    Put<uint64_t>(out, p.value.rows());
    Put<uint64_t>(out, p.value.cols());
    const Matrix<float> values = p.value.template cast<float>();
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(float)));
  }
  if (!out) throw IoError("failed writing checkpoint " + path);
}

Checkpoint LoadCheckpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint " + path);
  char magic[8];
  if (!in.read(magic, sizeof(magic)) ||
      std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw IoError(path + " is not a checkpoint");
  }
  const auto version = Get<uint32_t>(in, path);
  if (version != kCheckpointVersion) {
    throw IoError("unsupported checkpoint version " + std::to_string(version));
  }
  const auto header_len = Get<uint64_t>(in, path);
  if (header_len > (1u << 30)) throw IoError("corrupt checkpoint header");
  std::string text(header_len, '\0');
  if (!in.read(text.data(), static_cast<std::streamsize>(header_len))) {
    throw IoError("truncated checkpoint " + path);
  }
  Checkpoint ckpt;
  try {
    const nlohmann::json header = nlohmann::json::parse(text);
    ckpt.config = EncoderConfig::FromJson(header.at("config"));
    ckpt.vocab = Vocabulary(header.at("vocab").get<std::vector<std::string>>());
  } catch (const nlohmann::json::exception& e) {
    throw IoError("corrupt checkpoint header in " + path + ": " + e.what());
  }
  const auto count = Get<uint64_t>(in, path);
  for (uint64_t t = 0; t < count; ++t) {
    const auto name_len = Get<uint32_t>(in, path);
    if (name_len > 4096) throw IoError("corrupt tensor name in " + path);
    std::string name(name_len, '\0');
    if (!in.read(name.data(), name_len)) throw IoError("truncated checkpoint " + path);
    const auto rows = Get<uint64_t>(in, path);
    const auto cols = Get<uint64_t>(in, path);
    if (rows > (1u << 24) || cols > (1u << 24)) {
      throw IoError("corrupt tensor shape in " + path);
    }
    Matrix<float> value(rows, cols);
    if (!in.read(reinterpret_cast<char*>(value.data()),
                 static_cast<std::streamsize>(value.size() * sizeof(float)))) {
      throw IoError("truncated checkpoint " + path);
    }
    ckpt.params.Add(name, std::move(value));
  }
  return ckpt;
}

template void SaveCheckpoint(const std::string&, const EncoderConfig&,
                             const Vocabulary&, const ParamStore<float>&);
template void SaveCheckpoint(const std::string&, const EncoderConfig&,
                             const Vocabulary&, const ParamStore<double>&);

}  // namespace sparsedit::encoder
