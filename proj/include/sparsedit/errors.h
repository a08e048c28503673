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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sparsedit {

// Base class for every error raised by the library. The CLI maps these to
// exit codes: Error -> 1, IoError / UsageError -> 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

// edit-ops
class InapplicableTransform : public Error {
 public:
  using Error::Error;
};
class PlanShapeMismatch : public Error {
 public:
  using Error::Error;
};
class InsertionTooLong : public Error {
 public:
  using Error::Error;
};

// ingest
class MalformedDump : public Error {
 public:
  MalformedDump(const std::string& what, int64_t byte_offset)
      : Error(what + " (at byte " + std::to_string(byte_offset) + ")"),
        byte_offset_(byte_offset) {}
  int64_t byte_offset() const { return byte_offset_; }

 private:
  int64_t byte_offset_;
};

// clustering
class DimMismatch : public Error {
 public:
  using Error::Error;
};
class NonFiniteValue : public Error {
 public:
  explicit NonFiniteValue(int64_t row)
      : Error("non-finite value in row " + std::to_string(row)), row_(row) {}
  int64_t row() const { return row_; }

 private:
  int64_t row_;
};
class NoConvergence : public Error {
 public:
  explicit NoConvergence(int iterations)
      : Error("eigensolver did not converge after " +
              std::to_string(iterations) + " iterations"),
        iterations_(iterations) {}
  int iterations() const { return iterations_; }

 private:
  int iterations_;
};
class DegenerateData : public Error {
 public:
  using Error::Error;
};
class UnlabeledIntent : public Error {
 public:
  explicit UnlabeledIntent(const std::string& intent)
      : Error("intent '" + intent + "' has no majority cluster"),
        intent_(intent) {}
  const std::string& intent() const { return intent_; }

 private:
  std::string intent_;
};

// encoder
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};
class NonFiniteGradient : public Error {
 public:
  using Error::Error;
};
class UnknownIntent : public Error {
 public:
  using Error::Error;
};

// metrics
class EmptyReferenceSet : public Error {
 public:
  EmptyReferenceSet() : Error("evaluation instance has no references") {}
};

}  // namespace sparsedit
