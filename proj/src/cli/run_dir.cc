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

#include "sparsedit/cli/run_dir.h"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <memory>

#include "sparsedit/errors.h"

namespace sparsedit::cli {

namespace fs = std::filesystem;

namespace {

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw IoError("cannot write '" + path.string() + "'");
}

}  // namespace

std::string Sha256File(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for hashing");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 initialization failed");
  }
  std::array<char, 1 << 16> buffer;
  while (in) {
    in.read(buffer.data(), buffer.size());
    if (in.gcount() > 0) {
      EVP_DigestUpdate(ctx.get(), buffer.data(), static_cast<size_t>(in.gcount()));
    }
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest;
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx.get(), digest.data(), &length);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 15];
  }
  return hex;
}

RunDirectory::RunDirectory(fs::path dir, std::string command,
                           const nlohmann::ordered_json& config)
    : dir_(std::move(dir)), command_(std::move(command)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec || !fs::is_directory(dir_)) {
    throw IoError("cannot create output directory '" + dir_.string() + "'");
  }
  WriteText(Path(kConfigFile), config.dump(2) + "\n");
}

void RunDirectory::AddInput(const fs::path& path) { inputs_.push_back(path); }

void RunDirectory::AddOutput(const std::string& name) { outputs_.push_back(name); }

void RunDirectory::Finalize() {
  nlohmann::ordered_json j;
  j["command"] = command_;
  j["arguments"] = arguments_;
  j["config"] = {{"path", kConfigFile},
                 {"sha256", Sha256File(Path(kConfigFile))}};
  j["inputs"] = nlohmann::ordered_json::array();
  for (const fs::path& p : inputs_) {
    j["inputs"].push_back({{"path", p.string()}, {"sha256", Sha256File(p)}});
  }
  j["outputs"] = nlohmann::ordered_json::array();
  for (const std::string& name : outputs_) {
    j["outputs"].push_back({{"path", name}, {"sha256", Sha256File(Path(name))}});
  }
  WriteText(Path(kManifestFile), j.dump(2) + "\n");
  SelfCheck(dir_);
}

void SelfCheck(const fs::path& dir) {
  const fs::path config = dir / RunDirectory::kConfigFile;
  const fs::path manifest = dir / RunDirectory::kManifestFile;
  if (!fs::is_regular_file(config)) {
    throw Error("self-check: " + config.string() + " is missing");
  }
  std::ifstream in(manifest);
  if (!in) throw Error("self-check: " + manifest.string() + " is missing");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error("self-check: unreadable manifest: " + std::string(e.what()));
  }
  std::vector<nlohmann::json> entries = {j.at("config")};
  for (const auto& out : j.at("outputs")) entries.push_back(out);
  for (const auto& entry : entries) {
    const fs::path path = dir / entry.at("path").get<std::string>();
    if (!fs::is_regular_file(path)) {
      throw Error("self-check: " + path.string() + " is missing");
    }
    if (Sha256File(path) != entry.at("sha256").get<std::string>()) {
      throw Error("self-check: hash mismatch for " + path.string());
    }
  }
}

}  // namespace sparsedit::cli
