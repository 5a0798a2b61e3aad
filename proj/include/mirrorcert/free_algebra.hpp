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

#ifndef MIRRORCERT_FREE_ALGEBRA_HPP
#define MIRRORCERT_FREE_ALGEBRA_HPP

// Exact arithmetic in the free *-algebra over self-adjoint projection
// symbols e1[x,a] (first player) and e2[y,b] (second player), with rational
// scalars.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mirrorcert/errors.hpp"
#include "mirrorcert/rational.hpp"

namespace mirrorcert {

/// One generator e(side)^question_answer. Symbols are totally ordered by
/// (side, question, answer).
struct GenSymbol {
  std::uint32_t side = 1;
  std::uint32_t question = 0;
  std::uint32_t answer = 0;

  friend auto operator<=>(const GenSymbol&, const GenSymbol&) = default;
};

inline GenSymbol alice(std::uint32_t x, std::uint32_t a) { return {1, x, a}; }
inline GenSymbol bob(std::uint32_t y, std::uint32_t b) { return {2, y, b}; }

/// A monomial. The empty word is the identity.
using Word = std::vector<GenSymbol>;

/// Degree-lexicographic comparison: shorter words first, then symbolwise.
inline std::strong_ordering word_compare(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

struct DeglexLess {
  bool operator()(const Word& a, const Word& b) const { return word_compare(a, b) < 0; }
};

struct DeglexGreater {
  bool operator()(const Word& a, const Word& b) const { return word_compare(a, b) > 0; }
};

/// Involution on words: generators are self-adjoint, so the adjoint of a
/// word is its reversal.
inline Word star(Word w) {
  std::reverse(w.begin(), w.end());
  return w;
}

inline Word concat(const Word& a, const Word& b) {
  Word out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline Word concat(const Word& a, const Word& b, const Word& c) {
  Word out;
  out.reserve(a.size() + b.size() + c.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  out.insert(out.end(), c.begin(), c.end());
  return out;
}

/// Position of the leftmost occurrence of `factor` inside `w`, or npos.
inline std::size_t find_factor(const Word& w, const Word& factor, std::size_t from = 0) {
  if (factor.size() > w.size()) return std::string::npos;
  auto it = std::search(w.begin() + static_cast<std::ptrdiff_t>(std::min(from, w.size())),
                        w.end(), factor.begin(), factor.end());
  return it == w.end() && !factor.empty() ? std::string::npos
                                          : static_cast<std::size_t>(it - w.begin());
}

/// Noncommutative polynomial with exact rational coefficients.
///
/// Terms are kept in a map ordered by deglex descending with no zero
/// coefficients, so equal polynomials have identical term maps and the
/// leading term is the first entry.
class NCPoly {
 public:
  using TermMap = std::map<Word, Rational, DeglexGreater>;

  NCPoly() = default;

  static NCPoly constant(const Rational& c) { return monomial(Word{}, c); }
  static NCPoly one() { return constant(1); }
  static NCPoly symbol(GenSymbol s) { return monomial(Word{s}); }
  static NCPoly monomial(Word w, const Rational& c = 1) {
    NCPoly p;
    p.add_term(std::move(w), c);
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
  }
  std::size_t size() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  // Leading-term accessors require a nonzero polynomial.
  const Word& leading_word() const { return terms_.begin()->first; }
  const Rational& leading_coeff() const { return terms_.begin()->second; }
  std::size_t degree() const { return terms_.empty() ? 0 : leading_word().size(); }

  Rational coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Word& w, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  void add_term(Word&& w, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(std::move(w), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// Removes and returns the leading term.
  std::pair<Word, Rational> pop_leading() {
    auto node = terms_.extract(terms_.begin());
    return {std::move(node.key()), std::move(node.mapped())};
  }

  /// this += c * left * p * right.
  void add_product(const Rational& c, const Word& left, const NCPoly& p, const Word& right) {
    if (c == 0) return;
    for (const auto& [w, k] : p.terms_) add_term(concat(left, w, right), c * k);
  }

  NCPoly& operator+=(const NCPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  NCPoly& operator-=(const NCPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  NCPoly& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
    } else {
      for (auto& [w, k] : terms_) k *= c;
    }
    return *this;
  }

  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator-(NCPoly a) { return a *= Rational(-1); }
  friend NCPoly operator*(const Rational& c, NCPoly p) { return p *= c; }
  friend NCPoly operator*(NCPoly p, const Rational& c) { return p *= c; }

  friend NCPoly operator*(const NCPoly& a, const NCPoly& b) {
    NCPoly out;
    for (const auto& [u, c] : a.terms_)
      for (const auto& [v, d] : b.terms_) out.add_term(concat(u, v), c * d);
    return out;
  }

  friend bool operator==(const NCPoly& a, const NCPoly& b) { return a.terms_ == b.terms_; }

 private:
  TermMap terms_;
};

inline NCPoly poly_add(const NCPoly& p, const NCPoly& q) { return p + q; }
inline NCPoly poly_scale(const Rational& c, const NCPoly& p) { return c * p; }
inline NCPoly poly_mul(const NCPoly& p, const NCPoly& q) { return p * q; }

/// Adjoint: reverse every word. Coefficients are real, so conjugation is the
/// identity on them.
inline NCPoly poly_star(const NCPoly& p) {
  NCPoly out;
  for (const auto& [w, c] : p.terms()) out.add_term(star(w), c);
  return out;
}

/// left * p * right.
inline NCPoly sandwich(const Word& left, const NCPoly& p, const Word& right) {
  NCPoly out;
  out.add_product(1, left, p, right);
  return out;
}

// ---------------------------------------------------------------------------
// Text syntax: `e1[x,a]`, `e2[y,b]`, `*` for products, coefficients `p/q`.
// Example: `1/4 e1[0,0]*e2[0,0] - 1`.

inline std::string to_string(GenSymbol s) {
  return "e" + std::to_string(s.side) + "[" + std::to_string(s.question) + "," +
         std::to_string(s.answer) + "]";
}

inline std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '*';
    out += to_string(w[i]);
  }
  return out;
}

inline std::string to_string(const NCPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : p.terms()) {
    const bool negative = c < 0;
    const Rational mag = abs(c);
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (w.empty()) {
      out += to_short_string(mag);
    } else if (mag == 1) {
      out += to_string(w);
    } else {
      out += to_short_string(mag) + " " + to_string(w);
    }
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const NCPoly& p) { return os << to_string(p); }

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : text_(text) {}

  NCPoly parse_poly() {
    NCPoly out;
    skip_ws();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (!at_end()) {
      Rational sign = 1;
      skip_ws();
      if (peek() == '+' || peek() == '-') {
        if (peek() == '-') sign = -1;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      skip_ws();
      auto [c, w] = parse_term();
      out.add_term(std::move(w), sign * c);
      skip_ws();
    }
    return out;
  }

  Word parse_word_only() {
    skip_ws();
    Word w;
    if (peek() == '1') {
      ++pos_;
    } else {
      w = parse_factors();
    }
    skip_ws();
    if (!at_end()) fail("trailing characters");
    return w;
  }

 private:
  std::pair<Rational, Word> parse_term() {
    Rational c = 1;
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      c = parse_number();
      have_coeff = true;
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        skip_ws();
      }
    }
    Word w;
    if (peek() == 'e') {
      w = parse_factors();
    } else if (!have_coeff) {
      fail("expected coefficient or generator");
    }
    return {c, std::move(w)};
  }

  Word parse_factors() {
    Word w;
    while (true) {
      skip_ws();
      w.push_back(parse_symbol());
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
    }
    return w;
  }

  GenSymbol parse_symbol() {
    expect('e');
    GenSymbol s;
    if (peek() == '1') {
      s.side = 1;
    } else if (peek() == '2') {
      s.side = 2;
    } else {
      fail("generator family must be e1 or e2");
    }
    ++pos_;
    expect('[');
    s.question = parse_index();
    expect(',');
    s.answer = parse_index();
    expect(']');
    return s;
  }

  std::uint32_t parse_index() {
    skip_ws();
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected index");
    const auto token = text_.substr(start, pos_ - start);
    if (token.size() > 9) fail("index too large");
    skip_ws();
    return static_cast<std::uint32_t>(std::stoul(std::string(token)));
  }

  Rational parse_number() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (peek() == '/') {
      ++pos_;
      const std::size_t den = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (den == pos_) fail("expected denominator");
    }
    try {
      return parse_rational(text_.substr(start, pos_ - start));
    } catch (const ParseError& e) {
      fail(e.what());
    }
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  bool at_end() const { return pos_ >= text_.size(); }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("offset " + std::to_string(pos_), what + " in \"" + std::string(text_) + "\"");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline NCPoly parse_poly(std::string_view text) { return detail::PolyParser(text).parse_poly(); }
inline Word parse_word(std::string_view text) { return detail::PolyParser(text).parse_word_only(); }

}  // namespace mirrorcert

#endif  // MIRRORCERT_FREE_ALGEBRA_HPP
