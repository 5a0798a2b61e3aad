// Copyright 2026 The mirrorcert Authors.
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

#ifndef MIRRORCERT_ERRORS_HPP
#define MIRRORCERT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mirrorcert {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed game description: bad dimensions, non-boolean entries, unknown
/// distribution.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Text or JSON that cannot be parsed. `where` names the field or offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : Error(where.empty() ? what : where + ": " + what), where_(where) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

/// The game admits no pair of mirror maps.
class NotMirrorError : public Error {
 public:
  using Error::Error;
};

/// The mirror maps exist but do not cover the answer sets, so the
/// single-family reduction does not apply.
class NotRegularError : public Error {
 public:
  using Error::Error;
};

/// A configured cap (enumeration budget, basis size, SDP dimension) was hit.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace mirrorcert

#endif  // MIRRORCERT_ERRORS_HPP
