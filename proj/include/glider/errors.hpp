// Copyright 2026 The Glider Guidance Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GLIDER_ERRORS_HPP
#define GLIDER_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace glider {

/// Base for all domain errors raised by the library.
class GuidanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "guidance_error"; }
};

class InvalidArgument : public GuidanceError {
 public:
  using GuidanceError::GuidanceError;
  const char* kind() const noexcept override { return "invalid_argument"; }
};

/// The current along a segment is too strong to make headway.
class ImpassableSegment : public GuidanceError {
 public:
  using GuidanceError::GuidanceError;
  const char* kind() const noexcept override { return "impassable"; }
};

class ImpassableLeg : public ImpassableSegment {
 public:
  explicit ImpassableLeg(std::size_t leg)
      : ImpassableSegment("leg " + std::to_string(leg) + " is impassable"), leg_(leg) {}
  std::size_t leg() const noexcept { return leg_; }

 private:
  std::size_t leg_;
};

class Unreachable : public GuidanceError {
 public:
  using GuidanceError::GuidanceError;
  const char* kind() const noexcept override { return "unreachable"; }
};

class FormatError : public GuidanceError {
 public:
  using GuidanceError::GuidanceError;
  const char* kind() const noexcept override { return "format_error"; }
};

/// Wraps another error with the pipeline stage it came from.
class StageError : public GuidanceError {
 public:
  StageError(std::string stage, const std::string& what, std::string inner_kind)
      : GuidanceError(stage + ": " + what), stage_(std::move(stage)), inner_kind_(std::move(inner_kind)) {}
  const char* kind() const noexcept override { return inner_kind_.c_str(); }
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
  std::string inner_kind_;
};

inline void require(bool cond, const char* msg) {
  if (!cond) throw InvalidArgument(msg);
}

}  // namespace glider

#endif  // GLIDER_ERRORS_HPP
