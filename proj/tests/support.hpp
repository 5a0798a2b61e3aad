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

// Helpers shared by the unit tests and the acceptance runner: fixture
// loading, random polynomials and games, and oracles that deliberately avoid
// the library code they check.

#pragma once

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mirrorcert/mirrorcert.hpp"

namespace mirrorcert::testing {

inline std::string games_dir() { return MIRRORCERT_GAMES_DIR; }
inline std::string cli_path() { return MIRRORCERT_CLI_PATH; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Game load_fixture(const std::string& name) { return parse_game(read_text(games_dir() + "/" + name)); }

struct CommandResult {
  int exit_code = -1;
  std::string out;
};

/// Runs a shell command, capturing stdout. stderr is discarded.
inline CommandResult run_command(const std::string& cmd) {
  CommandResult r;
  FILE* pipe = ::popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// ---------------------------------------------------------------------------
// Random algebra

inline std::vector<GenSymbol> small_alphabet(std::uint32_t alice_q, std::uint32_t alice_a, std::uint32_t bob_q,
                                             std::uint32_t bob_a) {
  std::vector<GenSymbol> out;
  for (std::uint32_t x = 0; x < alice_q; ++x)
    for (std::uint32_t a = 0; a < alice_a; ++a) out.push_back(alice(x, a));
  for (std::uint32_t y = 0; y < bob_q; ++y)
    for (std::uint32_t b = 0; b < bob_a; ++b) out.push_back(bob(y, b));
  return out;
}

inline Word random_word(std::mt19937_64& rng, const std::vector<GenSymbol>& alphabet, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  Word w(len(rng));
  for (auto& s : w) s = alphabet[pick(rng)];
  return w;
}

inline Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  Rational q(num(rng), static_cast<unsigned>(den(rng)));
  q.canonicalize();
  return q;
}

inline NCPoly random_poly(std::mt19937_64& rng, const std::vector<GenSymbol>& alphabet, std::size_t max_deg,
                          std::size_t max_terms = 5) {
  std::uniform_int_distribution<std::size_t> terms(0, max_terms);
  NCPoly p;
  for (std::size_t k = terms(rng); k > 0; --k) p.add_term(random_word(rng, alphabet, max_deg), random_rational(rng));
  return p;
}

// ---------------------------------------------------------------------------
// Games

/// Classical value by direct enumeration: every answer function pair,
/// counted in wins out of |X||Y|.
inline Rational brute_force_classical_value(const Game& g) {
  const std::size_t nx = g.nx(), ny = g.ny(), na = g.na(), nb = g.nb();
  std::size_t alice_count = 1, bob_count = 1;
  for (std::size_t i = 0; i < nx; ++i) alice_count *= na;
  for (std::size_t i = 0; i < ny; ++i) bob_count *= nb;
  std::size_t best = 0;
  for (std::size_t sa = 0; sa < alice_count; ++sa)
    for (std::size_t sb = 0; sb < bob_count; ++sb) {
      std::size_t wins = 0;
      for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t y = 0; y < ny; ++y) {
          std::size_t a = sa, b = sb;
          for (std::size_t i = 0; i < x; ++i) a /= na;
          for (std::size_t i = 0; i < y; ++i) b /= nb;
          if (g.table()[((x * ny + y) * na + a % na) * nb + b % nb]) ++wins;
        }
      best = std::max(best, wins);
    }
  Rational v(static_cast<long>(best), static_cast<unsigned long>(nx * ny));
  v.canonicalize();
  return v;
}

/// Random game with planted maps xi, eta such that the game is a regular
/// mirror game. On the pairs (x, xi(x)) Alice's answer is a function of Bob's
/// and every b occurs; on (eta(y), y) the reverse. Where both kinds of pair
/// coincide the planted relation is a bijection, so those pairs need
/// |A| = |B|. Every other entry is a fair coin.
inline Game random_regular_mirror_game(std::mt19937_64& rng, std::size_t max_dim) {
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  for (;;) {
    const std::size_t nx = dim(rng), ny = dim(rng), na = dim(rng), nb = dim(rng);
    std::vector<std::size_t> xi(nx), eta(ny);
    for (auto& v : xi) v = std::uniform_int_distribution<std::size_t>(0, ny - 1)(rng);
    for (auto& v : eta) v = std::uniform_int_distribution<std::size_t>(0, nx - 1)(rng);
    bool shared = false;
    for (std::size_t y = 0; y < ny; ++y)
      if (xi[eta[y]] == y) shared = true;
    if (shared && na != nb) continue;

    std::vector<std::uint8_t> t(nx * ny * na * nb);
    auto at = [&](std::size_t x, std::size_t y, std::size_t a, std::size_t b) -> std::uint8_t& {
      return t[((x * ny + y) * na + a) * nb + b];
    };
    std::bernoulli_distribution coin(0.5);
    for (auto& v : t) v = coin(rng) ? 1 : 0;
    std::vector<bool> planted(nx * ny, false);
    for (std::size_t x = 0; x < nx; ++x) {
      const std::size_t y = xi[x];
      if (planted[x * ny + y]) continue;
      planted[x * ny + y] = true;
      const bool bijective = eta[y] == x;
      std::vector<std::size_t> perm(na);
      for (std::size_t i = 0; i < na; ++i) perm[i] = i;
      std::shuffle(perm.begin(), perm.end(), rng);
      for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < nb; ++b) at(x, y, a, b) = 0;
      for (std::size_t b = 0; b < nb; ++b) {
        const std::size_t a = bijective ? perm[b] : std::uniform_int_distribution<std::size_t>(0, na - 1)(rng);
        at(x, y, a, b) = 1;
      }
    }
    for (std::size_t y = 0; y < ny; ++y) {
      const std::size_t x = eta[y];
      if (planted[x * ny + y]) continue;
      planted[x * ny + y] = true;
      for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < nb; ++b) at(x, y, a, b) = 0;
      for (std::size_t a = 0; a < na; ++a)
        at(x, y, a, std::uniform_int_distribution<std::size_t>(0, nb - 1)(rng)) = 1;
    }
    return Game(nx, ny, na, nb, std::move(t));
  }
}

// ---------------------------------------------------------------------------
// Rewriting oracles

// Reduces by picking any reducible term, any occurrence and any matching rule
// at random, instead of the library's greatest-term-leftmost strategy.
inline NCPoly random_order_normal_form(NCPoly p, const RewriteSystem& rs, std::mt19937_64& rng) {
  struct Step {
    Word word;
    std::size_t rule, pos;
  };
  for (;;) {
    std::vector<Step> options;
    for (const auto& [w, c] : p.terms())
      for (std::size_t i = 0; i < rs.rules().size(); ++i) {
        const Word& lead = rs.rules()[i].lead;
        if (lead.size() > w.size()) continue;
        for (std::size_t pos = 0; pos + lead.size() <= w.size(); ++pos)
          if (std::equal(lead.begin(), lead.end(), w.begin() + static_cast<std::ptrdiff_t>(pos)))
            options.push_back({w, i, pos});
      }
    if (options.empty()) return p;
    const Step& s = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
    const Rational c = p.coefficient(s.word);
    const auto lead_len = static_cast<std::ptrdiff_t>(rs.rules()[s.rule].lead.size());
    const Word left(s.word.begin(), s.word.begin() + static_cast<std::ptrdiff_t>(s.pos));
    const Word right(s.word.begin() + static_cast<std::ptrdiff_t>(s.pos) + lead_len, s.word.end());
    p.add_term(s.word, -c);
    p.add_product(c, left, rs.rules()[s.rule].tail, right);
  }
}

// Incremental exact row echelon form over the rationals, keyed by words.
class SpanOracle {
 public:
  bool insert(std::map<Word, Rational, DeglexLess> row) {
    reduce(row);
    if (row.empty()) return false;
    const Word pivot = row.rbegin()->first;
    const Rational inv = 1 / row.rbegin()->second;
    for (auto& [w, c] : row) c *= inv;
    rows_.emplace(pivot, std::move(row));
    return true;
  }
  bool contains(std::map<Word, Rational, DeglexLess> row) const {
    reduce(row);
    return row.empty();
  }
  std::size_t rank() const { return rows_.size(); }

 private:
  void reduce(std::map<Word, Rational, DeglexLess>& row) const {
    for (;;) {
      auto it = std::find_if(row.rbegin(), row.rend(), [&](const auto& t) { return rows_.count(t.first) > 0; });
      if (it == row.rend()) return;
      const Rational c = it->second;
      for (const auto& [w, k] : rows_.at(it->first)) {
        auto& slot = row[w];
        slot -= c * k;
        if (slot == 0) row.erase(w);
      }
    }
  }
  std::map<Word, std::map<Word, Rational, DeglexLess>, DeglexLess> rows_;
};

inline std::map<Word, Rational, DeglexLess> as_row(const NCPoly& p) {
  std::map<Word, Rational, DeglexLess> row;
  for (const auto& [w, c] : p.terms()) row.emplace(w, c);
  return row;
}

inline Word exact_word(std::mt19937_64& rng, const std::vector<GenSymbol>& alpha, std::size_t len) {
  Word w(len);
  for (auto& s : w) s = alpha[std::uniform_int_distribution<std::size_t>(0, alpha.size() - 1)(rng)];
  return w;
}

inline std::vector<Word> words_of_length(const std::vector<GenSymbol>& alpha, std::size_t len) {
  std::vector<Word> out{Word{}};
  for (std::size_t k = 0; k < len; ++k) {
    std::vector<Word> next;
    for (const auto& w : out)
      for (const auto& s : alpha) {
        Word e = w;
        e.push_back(s);
        next.push_back(std::move(e));
      }
    out = std::move(next);
  }
  return out;
}

/// Span of { l g r : deg(l g r) = d } for homogeneous generators.
inline SpanOracle homogeneous_span(const std::vector<NCPoly>& gens, const std::vector<GenSymbol>& alpha, std::size_t d) {
  SpanOracle o;
  for (const auto& g : gens) {
    if (g.degree() > d) continue;
    const std::size_t rest = d - g.degree();
    for (std::size_t l = 0; l <= rest; ++l)
      for (const auto& left : words_of_length(alpha, l))
        for (const auto& right : words_of_length(alpha, rest - l)) {
          NCPoly prod;
          prod.add_product(1, left, g, right);
          o.insert(as_row(prod));
        }
  }
  return o;
}

/// Nonzero {-1,0,1} combinations of the words of one length, first nonzero
/// coefficient positive.
inline std::vector<NCPoly> sign_combinations(const std::vector<Word>& words) {
  std::vector<NCPoly> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < words.size(); ++i) total *= 3;
  for (std::size_t code = 1; code < total; ++code) {
    NCPoly p;
    std::size_t c = code;
    for (const auto& w : words) {
      p.add_term(w, Rational(static_cast<int>(c % 3) - 1));
      c /= 3;
    }
    if (!p.is_zero() && p.leading_coeff() > 0) out.push_back(p);
  }
  return out;
}

}  // namespace mirrorcert::testing
