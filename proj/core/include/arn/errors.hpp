// Copyright 2026 The ARN Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ARN_ERRORS_HPP_
#define ARN_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace arn {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ARN_DEFINE_ERROR(Name)             \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

ARN_DEFINE_ERROR(ParseError);
ARN_DEFINE_ERROR(ValidationError);
ARN_DEFINE_ERROR(UnknownRoom);
ARN_DEFINE_ERROR(UnknownDoor);
ARN_DEFINE_ERROR(NoPath);
ARN_DEFINE_ERROR(InvalidConfig);
ARN_DEFINE_ERROR(IndexOutOfRange);
ARN_DEFINE_ERROR(MalformedMessage);
ARN_DEFINE_ERROR(InsufficientSamples);
ARN_DEFINE_ERROR(UnclassifiedObject);
ARN_DEFINE_ERROR(InternalInconsistency);
ARN_DEFINE_ERROR(MapError);

#undef ARN_DEFINE_ERROR

// An action was applied in a state that does not satisfy its preconditions.
class PreconditionViolation : public Error {
 public:
  PreconditionViolation(std::string action, std::string missing)
      : Error(action + ": " + missing),
        action_(std::move(action)),
        missing_(std::move(missing)) {}

  const std::string& action() const { return action_; }
  const std::string& missing_condition() const { return missing_; }

 private:
  std::string action_;
  std::string missing_;
};

// No action sequence reaches the goal. `robot` is -1 for single-robot calls.
class Unsolvable : public Error {
 public:
  explicit Unsolvable(const std::string& what, int robot = -1)
      : Error(what), robot_(robot) {}
  int robot() const { return robot_; }

 private:
  int robot_;
};

}  // namespace arn

#endif  // ARN_ERRORS_HPP_
