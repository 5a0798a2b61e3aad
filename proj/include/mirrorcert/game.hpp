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

#ifndef MIRRORCERT_GAME_HPP
#define MIRRORCERT_GAME_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mirrorcert/errors.hpp"
#include "mirrorcert/free_algebra.hpp"
#include "mirrorcert/rational.hpp"

namespace mirrorcert {

/// A finite two-player nonlocal game with boolean scoring table
/// lambda(x, y, a, b) and uniform question distribution.
class Game {
 public:
  Game(std::size_t nx, std::size_t ny, std::size_t na, std::size_t nb,
       std::vector<std::uint8_t> table)
      : nx_(nx), ny_(ny), na_(na), nb_(nb), table_(std::move(table)) {
    if (nx == 0 || ny == 0 || na == 0 || nb == 0)
      throw ValidationError("game dimensions must all be at least 1");
    if (table_.size() != nx * ny * na * nb)
      throw ValidationError("scoring table has " + std::to_string(table_.size()) +
                            " entries, expected " + std::to_string(nx * ny * na * nb));
    for (auto v : table_)
      if (v > 1) throw ValidationError("scoring table entries must be 0 or 1");
  }

  /// Builds the table from a predicate win(x, y, a, b).
  template <typename Win>
  static Game from_predicate(std::size_t nx, std::size_t ny, std::size_t na, std::size_t nb,
                             Win&& win) {
    std::vector<std::uint8_t> t;
    t.reserve(nx * ny * na * nb);
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y)
        for (std::size_t a = 0; a < na; ++a)
          for (std::size_t b = 0; b < nb; ++b) t.push_back(win(x, y, a, b) ? 1 : 0);
    return Game(nx, ny, na, nb, std::move(t));
  }

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  std::size_t na() const { return na_; }
  std::size_t nb() const { return nb_; }

  bool wins(std::size_t x, std::size_t y, std::size_t a, std::size_t b) const {
    return table_[((x * ny_ + y) * na_ + a) * nb_ + b] != 0;
  }

  /// Uniform weight of each question pair.
  Rational question_weight() const { return Rational(1, static_cast<unsigned long>(nx_ * ny_)); }

  const std::vector<std::uint8_t>& table() const { return table_; }

  friend bool operator==(const Game&, const Game&) = default;

 private:
  std::size_t nx_, ny_, na_, nb_;
  std::vector<std::uint8_t> table_;
};

// ---------------------------------------------------------------------------
// JSON game files: {"nx":..,"ny":..,"na":..,"nb":..,"lambda":[x][y][a][b]}.

namespace detail {

inline std::size_t read_dimension(const nlohmann::json& raw, const char* key) {
  if (!raw.contains(key)) throw ParseError(key, "missing field");
  const auto& v = raw.at(key);
  if (!v.is_number_integer()) throw ParseError(key, "expected a nonnegative integer");
  const auto n = v.get<std::int64_t>();
  if (n < 1) throw ValidationError(std::string(key) + ": answer and question sets must be nonempty");
  if (n > 4096) throw ValidationError(std::string(key) + ": dimension too large");
  return static_cast<std::size_t>(n);
}

inline const nlohmann::json& expect_array(const nlohmann::json& v, std::size_t len,
                                          const std::string& where) {
  if (!v.is_array()) throw ParseError(where, "expected an array");
  if (v.size() != len)
    throw ValidationError(where + ": dimension mismatch, expected " + std::to_string(len) +
                          " entries, found " + std::to_string(v.size()));
  return v;
}

}  // namespace detail

/// Validates a parsed game description.
inline Game validate_game(const nlohmann::json& raw) {
  if (!raw.is_object()) throw ParseError("", "game description must be a JSON object");
  for (const auto& [key, value] : raw.items()) {
    if (key == "nx" || key == "ny" || key == "na" || key == "nb" || key == "lambda") continue;
    if (key == "distribution") {
      if (!value.is_string() || value.get<std::string>() != "uniform")
        throw ValidationError("distribution: only the uniform distribution is supported");
      continue;
    }
    throw ParseError(key, "unknown field");
  }
  const auto nx = detail::read_dimension(raw, "nx");
  const auto ny = detail::read_dimension(raw, "ny");
  const auto na = detail::read_dimension(raw, "na");
  const auto nb = detail::read_dimension(raw, "nb");
  if (!raw.contains("lambda")) throw ParseError("lambda", "missing field");

  std::vector<std::uint8_t> table;
  table.reserve(nx * ny * na * nb);
  const auto& lx = detail::expect_array(raw.at("lambda"), nx, "lambda");
  for (std::size_t x = 0; x < nx; ++x) {
    const std::string px = "lambda[" + std::to_string(x) + "]";
    const auto& ly = detail::expect_array(lx[x], ny, px);
    for (std::size_t y = 0; y < ny; ++y) {
      const std::string py = px + "[" + std::to_string(y) + "]";
      const auto& la = detail::expect_array(ly[y], na, py);
      for (std::size_t a = 0; a < na; ++a) {
        const std::string pa = py + "[" + std::to_string(a) + "]";
        const auto& lb = detail::expect_array(la[a], nb, pa);
        for (std::size_t b = 0; b < nb; ++b) {
          const auto& e = lb[b];
          const std::string pb = pa + "[" + std::to_string(b) + "]";
          if (e.is_boolean()) {
            table.push_back(e.get<bool>() ? 1 : 0);
          } else if (e.is_number_integer() && (e.get<std::int64_t>() == 0 || e.get<std::int64_t>() == 1)) {
            table.push_back(static_cast<std::uint8_t>(e.get<std::int64_t>()));
          } else {
            throw ValidationError(pb + ": scoring entries must be 0 or 1, found " + e.dump());
          }
        }
      }
    }
  }
  return Game(nx, ny, na, nb, std::move(table));
}

inline Game parse_game(std::string_view text) {
  nlohmann::json raw;
  try {
    raw = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), e.what());
  }
  return validate_game(raw);
}

inline nlohmann::ordered_json game_to_json(const Game& g) {
  nlohmann::ordered_json j;
  j["nx"] = g.nx();
  j["ny"] = g.ny();
  j["na"] = g.na();
  j["nb"] = g.nb();
  auto lx = nlohmann::ordered_json::array();
  for (std::size_t x = 0; x < g.nx(); ++x) {
    auto ly = nlohmann::ordered_json::array();
    for (std::size_t y = 0; y < g.ny(); ++y) {
      auto la = nlohmann::ordered_json::array();
      for (std::size_t a = 0; a < g.na(); ++a) {
        auto lb = nlohmann::ordered_json::array();
        for (std::size_t b = 0; b < g.nb(); ++b) lb.push_back(g.wins(x, y, a, b) ? 1 : 0);
        la.push_back(std::move(lb));
      }
      ly.push_back(std::move(la));
    }
    lx.push_back(std::move(ly));
  }
  j["lambda"] = std::move(lx);
  return j;
}

/// Canonical compact serialization; also the input of the certificate hash.
inline std::string serialize_game(const Game& g) { return game_to_json(g).dump(); }

// ---------------------------------------------------------------------------
// Mirror structure.

/// Maps xi: X -> Y and eta: Y -> X.
struct MirrorStructure {
  std::vector<std::size_t> xi;
  std::vector<std::size_t> eta;
  bool regular = false;

  friend bool operator==(const MirrorStructure&, const MirrorStructure&) = default;
};

/// Along (x, y) each b is won by at most one a.
inline bool answers_determined_by_b(const Game& g, std::size_t x, std::size_t y) {
  for (std::size_t b = 0; b < g.nb(); ++b) {
    std::size_t winners = 0;
    for (std::size_t a = 0; a < g.na(); ++a) winners += g.wins(x, y, a, b);
    if (winners > 1) return false;
  }
  return true;
}

/// Along (x, y) each a is won by at most one b.
inline bool answers_determined_by_a(const Game& g, std::size_t x, std::size_t y) {
  for (std::size_t a = 0; a < g.na(); ++a) {
    std::size_t winners = 0;
    for (std::size_t b = 0; b < g.nb(); ++b) winners += g.wins(x, y, a, b);
    if (winners > 1) return false;
  }
  return true;
}

/// Every valid choice of xi(x) and eta(y), per question, in increasing order.
struct MirrorCandidates {
  std::vector<std::vector<std::size_t>> xi;
  std::vector<std::vector<std::size_t>> eta;
};

inline MirrorCandidates mirror_candidates(const Game& g) {
  MirrorCandidates c{std::vector<std::vector<std::size_t>>(g.nx()),
                     std::vector<std::vector<std::size_t>>(g.ny())};
  for (std::size_t x = 0; x < g.nx(); ++x)
    for (std::size_t y = 0; y < g.ny(); ++y)
      if (answers_determined_by_b(g, x, y)) c.xi[x].push_back(y);
  for (std::size_t y = 0; y < g.ny(); ++y)
    for (std::size_t x = 0; x < g.nx(); ++x)
      if (answers_determined_by_a(g, x, y)) c.eta[y].push_back(x);
  return c;
}

inline bool satisfies_mirror_conditions(const Game& g, const std::vector<std::size_t>& xi,
                                        const std::vector<std::size_t>& eta) {
  if (xi.size() != g.nx() || eta.size() != g.ny()) return false;
  for (std::size_t x = 0; x < g.nx(); ++x)
    if (xi[x] >= g.ny() || !answers_determined_by_b(g, x, xi[x])) return false;
  for (std::size_t y = 0; y < g.ny(); ++y)
    if (eta[y] >= g.nx() || !answers_determined_by_a(g, eta[y], y)) return false;
  return true;
}

/// Every b is won by some a on (x, y).
inline bool covers_b(const Game& g, std::size_t x, std::size_t y) {
  for (std::size_t b = 0; b < g.nb(); ++b) {
    bool covered = false;
    for (std::size_t a = 0; a < g.na() && !covered; ++a) covered = g.wins(x, y, a, b);
    if (!covered) return false;
  }
  return true;
}

/// Every a is won by some b on (x, y).
inline bool covers_a(const Game& g, std::size_t x, std::size_t y) {
  for (std::size_t a = 0; a < g.na(); ++a) {
    bool covered = false;
    for (std::size_t b = 0; b < g.nb() && !covered; ++b) covered = g.wins(x, y, a, b);
    if (!covered) return false;
  }
  return true;
}

/// Union over a of the b's winning with a on (x, xi(x)) is all of B, and
/// symmetrically on (eta(y), y).
inline bool check_regularity(const Game& g, const MirrorStructure& m) {
  for (std::size_t x = 0; x < g.nx(); ++x)
    if (!covers_b(g, x, m.xi[x])) return false;
  for (std::size_t y = 0; y < g.ny(); ++y)
    if (!covers_a(g, m.eta[y], y)) return false;
  return true;
}

/// Deterministic mirror maps, or nullopt when some question has no valid
/// partner. Per question, the smallest valid partner that covers the answer
/// set is taken; if none covers, the smallest valid partner. Regularity is a
/// per-question property, so this finds regular maps whenever any exist.
inline std::optional<MirrorStructure> find_mirror_maps(const Game& g) {
  const auto c = mirror_candidates(g);
  MirrorStructure m;
  for (std::size_t x = 0; x < g.nx(); ++x) {
    const auto& cands = c.xi[x];
    if (cands.empty()) return std::nullopt;
    auto it = std::find_if(cands.begin(), cands.end(),
                           [&](std::size_t y) { return covers_b(g, x, y); });
    m.xi.push_back(it != cands.end() ? *it : cands.front());
  }
  for (std::size_t y = 0; y < g.ny(); ++y) {
    const auto& cands = c.eta[y];
    if (cands.empty()) return std::nullopt;
    auto it = std::find_if(cands.begin(), cands.end(),
                           [&](std::size_t x) { return covers_a(g, x, y); });
    m.eta.push_back(it != cands.end() ? *it : cands.front());
  }
  m.regular = check_regularity(g, m);
  return m;
}

/// All valid mirror maps in lexicographic order of (xi, eta), at most `limit`.
inline std::vector<MirrorStructure> enumerate_mirror_maps(const Game& g, std::size_t limit = 1024) {
  const auto c = mirror_candidates(g);
  std::vector<MirrorStructure> out;
  for (const auto& v : c.xi)
    if (v.empty()) return out;
  for (const auto& v : c.eta)
    if (v.empty()) return out;

  // Odometer over the concatenated candidate lists.
  std::vector<const std::vector<std::size_t>*> lists;
  for (const auto& v : c.xi) lists.push_back(&v);
  for (const auto& v : c.eta) lists.push_back(&v);
  std::vector<std::size_t> pos(lists.size(), 0);
  while (out.size() < limit) {
    MirrorStructure m;
    for (std::size_t i = 0; i < lists.size(); ++i)
      (i < g.nx() ? m.xi : m.eta).push_back((*lists[i])[pos[i]]);
    m.regular = check_regularity(g, m);
    out.push_back(std::move(m));
    std::size_t i = lists.size();
    while (i > 0) {
      --i;
      if (++pos[i] < lists[i]->size()) break;
      pos[i] = 0;
      if (i == 0) return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Classical value.

/// A deterministic strategy: Alice answers a[x], Bob answers b[y].
struct DeterministicStrategy {
  std::vector<std::size_t> alice;
  std::vector<std::size_t> bob;
};

struct ClassicalResult {
  Rational value;
  DeterministicStrategy best;
};

namespace detail {

inline std::uint64_t checked_power(std::uint64_t base, std::uint64_t exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

inline bool next_assignment(std::vector<std::size_t>& v, std::size_t radix) {
  for (auto& d : v) {
    if (++d < radix) return true;
    d = 0;
  }
  return false;
}

}  // namespace detail

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

/// Exhaustive maximum over all deterministic strategy pairs. Stops early once
/// a perfect strategy is found.
inline ClassicalResult solve_classical(const Game& g,
                                       std::uint64_t budget = kDefaultEnumerationBudget) {
  const auto na_pow = detail::checked_power(g.na(), g.nx(), budget);
  const auto nb_pow = detail::checked_power(g.nb(), g.ny(), budget);
  if (na_pow > budget || nb_pow > budget || na_pow > budget / nb_pow)
    throw ResourceLimitError("classical value enumeration exceeds budget of " +
                             std::to_string(budget) + " strategy pairs");

  const std::size_t total = g.nx() * g.ny();
  std::size_t best_wins = 0;
  DeterministicStrategy best{std::vector<std::size_t>(g.nx(), 0),
                             std::vector<std::size_t>(g.ny(), 0)};
  std::vector<std::size_t> a(g.nx(), 0);
  do {
    std::vector<std::size_t> b(g.ny(), 0);
    do {
      std::size_t wins = 0;
      for (std::size_t x = 0; x < g.nx(); ++x)
        for (std::size_t y = 0; y < g.ny(); ++y) wins += g.wins(x, y, a[x], b[y]);
      if (wins > best_wins) {
        best = {a, b};
        best_wins = wins;
      }
      if (best_wins == total) return {Rational(1), best};
    } while (detail::next_assignment(b, g.nb()));
  } while (detail::next_assignment(a, g.na()));
  Rational v(static_cast<unsigned long>(best_wins), static_cast<unsigned long>(total));
  v.canonicalize();
  return {v, best};
}

inline Rational classical_value(const Game& g, std::uint64_t budget = kDefaultEnumerationBudget) {
  return solve_classical(g, budget).value;
}

/// Phi = (1 / |X||Y|) sum lambda(x,y,a,b) e1[x,a] e2[y,b].
inline NCPoly build_game_polynomial(const Game& g) {
  NCPoly phi;
  const Rational w = g.question_weight();
  for (std::size_t x = 0; x < g.nx(); ++x)
    for (std::size_t y = 0; y < g.ny(); ++y)
      for (std::size_t a = 0; a < g.na(); ++a)
        for (std::size_t b = 0; b < g.nb(); ++b)
          if (g.wins(x, y, a, b))
            phi.add_term(Word{alice(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(a)),
                              bob(static_cast<std::uint32_t>(y), static_cast<std::uint32_t>(b))},
                         w);
  return phi;
}

}  // namespace mirrorcert

#endif  // MIRRORCERT_GAME_HPP
