// Copyright 2026 The pifotree authors
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

#include <stdexcept>
#include <string>

namespace pifotree {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An address does not name a node of the topology it is applied to.
class AddressError : public Error {
 public:
  using Error::Error;
};

// A path, tree or embedding does not fit the topology it is used with.
class StructureError : public Error {
 public:
  using Error::Error;
};

// An operation was invoked outside its precondition (e.g. flushing an
// ill-formed tree).
class ContractError : public Error {
 public:
  using Error::Error;
};

// Malformed textual input. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace pifotree
