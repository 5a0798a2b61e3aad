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

#ifndef MIRRORCERT_RATIONAL_HPP
#define MIRRORCERT_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "mirrorcert/errors.hpp"

namespace mirrorcert {

/// Exact scalar type for every algebraic computation.
using Rational = mpq_class;

/// Always "p/q", including integers ("3/1"), which is the certificate
/// wire format.
inline std::string to_pq_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Shortest form: "3" for integers, "p/q" otherwise.
inline std::string to_short_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_str();
}

/// Accepts "p", "-p" and "p/q" with q != 0. The result is canonicalized.
inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                         : text.substr(slash + 1);
  if (!digits(num) || !digits(den) || den[0] == '-' || den[0] == '+')
    throw ParseError(std::string(text), "not a rational number");
  std::string n(num);
  if (!n.empty() && n[0] == '+') n.erase(0, 1);
  Rational q;
  q.get_num() = mpz_class(n, 10);
  q.get_den() = mpz_class(std::string(den), 10);
  if (q.get_den() == 0) throw ParseError(std::string(text), "zero denominator");
  q.canonicalize();
  return q;
}

}  // namespace mirrorcert

#endif  // MIRRORCERT_RATIONAL_HPP
