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

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace sparsedit::testing {

inline std::string TestDataPath(const std::string& relative) {
  const char* root = std::getenv("SPARSEDIT_TEST_DATA");
  if (root == nullptr) throw std::runtime_error("SPARSEDIT_TEST_DATA unset");
  return std::string(root) + "/" + relative;
}

inline std::string ReadTestFile(const std::string& relative) {
  std::ifstream in(TestDataPath(relative), std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + relative);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace sparsedit::testing
