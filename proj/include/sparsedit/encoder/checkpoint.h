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

#pragma once

#include <string>

#include "sparsedit/encoder/config.h"
#include "sparsedit/encoder/model.h"
#include "sparsedit/encoder/vocab.h"

namespace sparsedit::encoder {

inline constexpr int kCheckpointVersion = 1;

// File layout (little-endian): "SPEDCKPT", u32 version, u64 header length,
// JSON header {format_version, config, vocab, tag_set}, u64 tensor count,
// then per tensor: u32 name length, name, u64 rows, u64 cols, row-major
// float32 values. Tensors are written in name order.
struct Checkpoint {
  EncoderConfig config;
  Vocabulary vocab;
  ParamStore<float> params;
};

template <typename Scalar>
void SaveCheckpoint(const std::string& path, const EncoderConfig& config,
                    const Vocabulary& vocab, const ParamStore<Scalar>& params);

// Throws IoError for unreadable or malformed files.
Checkpoint LoadCheckpoint(const std::string& path);

}  // namespace sparsedit::encoder
