// Copyright 2026 The iiote Authors. All Rights Reserved.
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
// =============================================================================

#pragma once

#include <stdexcept>
#include <string>

namespace iiote {

// Base of every error raised by the library. Messages name the offending
// config field or instance element where one exists.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value violated the range invariant of its unit or configuration field.
class DomainError : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  NonConvergence(std::string what, double last_value, long iterations)
      : Error(std::move(what)), last_value_(last_value), iterations_(iterations) {}

  double last_value() const { return last_value_; }
  long iterations() const { return iterations_; }

 private:
  double last_value_;
  long iterations_;
};

class SingularSystem : public Error {
 public:
  using Error::Error;
};

class ConfigMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class InvalidShape : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class Infeasible : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class UnstableConfig : public Error {
 public:
  using Error::Error;
};

}  // namespace iiote
