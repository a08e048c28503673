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

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace sparsedit::cli {

// Lowercase hex SHA-256 of a file's bytes. Throws IoError.
std::string Sha256File(const std::filesystem::path& path);

// Output directory of one command. Holds config.json (the effective
// configuration) and manifest.json listing the command, inputs and outputs
// with their hashes. Paths of outputs are relative to the directory.
class RunDirectory {
 public:
  static constexpr char kConfigFile[] = "config.json";
  static constexpr char kManifestFile[] = "manifest.json";

  // Creates the directory and writes config.json. Throws IoError.
  RunDirectory(std::filesystem::path dir, std::string command,
               const nlohmann::ordered_json& config);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path Path(const std::string& name) const { return dir_ / name; }

  // Command-line arguments recorded in the manifest.
  void SetArguments(nlohmann::ordered_json arguments) {
    arguments_ = std::move(arguments);
  }
  void AddInput(const std::filesystem::path& path);
  void AddOutput(const std::string& name);

  // Writes manifest.json and runs SelfCheck.
  void Finalize();

 private:
  std::filesystem::path dir_;
  std::string command_;
  nlohmann::ordered_json arguments_ = nlohmann::ordered_json::object();
  std::vector<std::filesystem::path> inputs_;
  std::vector<std::string> outputs_;
};

// Checks that `dir` holds config.json and a manifest whose output hashes
// match the files on disk. Throws Error on any mismatch.
void SelfCheck(const std::filesystem::path& dir);

}  // namespace sparsedit::cli
