// Copyright 2026 The astopo Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace astopo {

// Base of every error raised by the library. The CLI maps these to exit
// code 2 (data errors) except ConfigError raised while parsing flags.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class DisconnectedGraphError : public Error {
 public:
  using Error::Error;
};

// A statistic that is mathematically undefined for the input, e.g. degree
// assortativity of a regular graph.
class UndefinedValueError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Power iteration gave up; the last iterate is kept for inspection.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> iterate)
      : Error(what), iterate_(std::move(iterate)) {}

  const std::vector<double>& iterate() const { return iterate_; }

 private:
  std::vector<double> iterate_;
};

}  // namespace astopo
