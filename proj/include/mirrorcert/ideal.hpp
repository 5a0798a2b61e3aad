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

#ifndef MIRRORCERT_IDEAL_HPP
#define MIRRORCERT_IDEAL_HPP

// Generator sets for the two-sided ideals of the universal game algebra and
// of its single-family mirror quotients.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mirrorcert/errors.hpp"
#include "mirrorcert/free_algebra.hpp"
#include "mirrorcert/game.hpp"

namespace mirrorcert {

enum class Relation {
  kCommutation,
  kIdempotent,
  kOrthogonality,
  kCompleteness,
  kMirrorLeft,
  kMirrorRight,
  kInvalid,
  kInput,
};

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::kCommutation: return "commutation";
    case Relation::kIdempotent: return "idempotent";
    case Relation::kOrthogonality: return "orthogonality";
    case Relation::kCompleteness: return "completeness";
    case Relation::kMirrorLeft: return "mirror-left";
    case Relation::kMirrorRight: return "mirror-right";
    case Relation::kInvalid: return "invalid";
    case Relation::kInput: return "input";
  }
  return "?";
}

/// Which generator families take part.
enum class Family { kAlice = 1, kBob = 2, kBoth = 3 };

/// Nonzero, duplicate-free generators with provenance tags, plus the
/// alphabet of symbols the ideal lives over.
struct GeneratorSet {
  std::vector<NCPoly> polys;
  std::vector<Relation> provenance;
  std::vector<GenSymbol> alphabet;
  bool star_closed = false;

  /// Returns false if `p` was dropped as zero or as a duplicate.
  bool add(NCPoly p, Relation tag) {
    if (p.is_zero()) return false;
    if (std::find(polys.begin(), polys.end(), p) != polys.end()) return false;
    polys.push_back(std::move(p));
    provenance.push_back(tag);
    return true;
  }

  std::size_t size() const { return polys.size(); }

  std::size_t count(Relation tag) const {
    return static_cast<std::size_t>(std::count(provenance.begin(), provenance.end(), tag));
  }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& p : polys) d = std::max(d, p.degree());
    return d;
  }

  /// Checks the set is fixed by the involution.
  bool is_star_closed() const {
    return std::all_of(polys.begin(), polys.end(), [&](const NCPoly& p) {
      return std::find(polys.begin(), polys.end(), poly_star(p)) != polys.end();
    });
  }
};

inline std::vector<GenSymbol> game_alphabet(const Game& g, Family family) {
  std::vector<GenSymbol> out;
  if (family != Family::kBob)
    for (std::uint32_t x = 0; x < g.nx(); ++x)
      for (std::uint32_t a = 0; a < g.na(); ++a) out.push_back(alice(x, a));
  if (family != Family::kAlice)
    for (std::uint32_t y = 0; y < g.ny(); ++y)
      for (std::uint32_t b = 0; b < g.nb(); ++b) out.push_back(bob(y, b));
  return out;
}

namespace detail {

/// Projection relations of one family: idempotence, orthogonality of
/// distinct answers to one question (both orders), completeness.
inline void add_projection_relations(GeneratorSet& out, std::uint32_t side,
                                     std::size_t questions, std::size_t answers) {
  for (std::uint32_t q = 0; q < questions; ++q)
    for (std::uint32_t a = 0; a < answers; ++a) {
      const GenSymbol s{side, q, a};
      out.add(NCPoly::monomial({s, s}) - NCPoly::symbol(s), Relation::kIdempotent);
    }
  for (std::uint32_t q = 0; q < questions; ++q)
    for (std::uint32_t a1 = 0; a1 < answers; ++a1)
      for (std::uint32_t a2 = 0; a2 < answers; ++a2)
        if (a1 != a2)
          out.add(NCPoly::monomial({GenSymbol{side, q, a1}, GenSymbol{side, q, a2}}),
                  Relation::kOrthogonality);
  for (std::uint32_t q = 0; q < questions; ++q) {
    NCPoly sum = NCPoly::constant(-1);
    for (std::uint32_t a = 0; a < answers; ++a) sum += NCPoly::symbol(GenSymbol{side, q, a});
    out.add(std::move(sum), Relation::kCompleteness);
  }
}

}  // namespace detail

/// Defining relations of the universal game algebra restricted to one family,
/// or all of them plus cross-family commutators.
inline GeneratorSet build_universal_relations(const Game& g, Family family) {
  GeneratorSet out;
  out.alphabet = game_alphabet(g, family);
  out.star_closed = true;
  if (family != Family::kBob) detail::add_projection_relations(out, 1, g.nx(), g.na());
  if (family != Family::kAlice) detail::add_projection_relations(out, 2, g.ny(), g.nb());
  if (family == Family::kBoth) {
    for (std::uint32_t x = 0; x < g.nx(); ++x)
      for (std::uint32_t a = 0; a < g.na(); ++a)
        for (std::uint32_t y = 0; y < g.ny(); ++y)
          for (std::uint32_t b = 0; b < g.nb(); ++b)
            out.add(NCPoly::monomial({alice(x, a), bob(y, b)}) -
                        NCPoly::monomial({bob(y, b), alice(x, a)}),
                    Relation::kCommutation);
  }
  return out;
}

/// f[y][b] = sum of e1[eta(y), a] over a with lambda(eta(y), y, a, b) = 1,
/// g[x][a] = sum of e2[xi(x), b] over b with lambda(x, xi(x), a, b) = 1.
struct FGTables {
  std::vector<std::vector<NCPoly>> f;
  std::vector<std::vector<NCPoly>> g;
};

inline FGTables build_fg_polys(const Game& game, const MirrorStructure& m) {
  FGTables t{std::vector<std::vector<NCPoly>>(game.ny(), std::vector<NCPoly>(game.nb())),
             std::vector<std::vector<NCPoly>>(game.nx(), std::vector<NCPoly>(game.na()))};
  for (std::uint32_t y = 0; y < game.ny(); ++y) {
    const auto x = static_cast<std::uint32_t>(m.eta[y]);
    for (std::uint32_t b = 0; b < game.nb(); ++b)
      for (std::uint32_t a = 0; a < game.na(); ++a)
        if (game.wins(x, y, a, b)) t.f[y][b] += NCPoly::symbol(alice(x, a));
  }
  for (std::uint32_t x = 0; x < game.nx(); ++x) {
    const auto y = static_cast<std::uint32_t>(m.xi[x]);
    for (std::uint32_t a = 0; a < game.na(); ++a)
      for (std::uint32_t b = 0; b < game.nb(); ++b)
        if (game.wins(x, y, a, b)) t.g[x][a] += NCPoly::symbol(bob(y, b));
  }
  return t;
}

/// One word e1[x,a] e2[y,b] per losing entry of the table.
inline GeneratorSet build_invalid_set(const Game& g) {
  GeneratorSet out;
  out.alphabet = game_alphabet(g, Family::kBoth);
  for (std::uint32_t x = 0; x < g.nx(); ++x)
    for (std::uint32_t y = 0; y < g.ny(); ++y)
      for (std::uint32_t a = 0; a < g.na(); ++a)
        for (std::uint32_t b = 0; b < g.nb(); ++b)
          if (!g.wins(x, y, a, b))
            out.add(NCPoly::monomial({alice(x, a), bob(y, b)}), Relation::kInvalid);
  return out;
}

/// Star-closed generators of the preimage of the mirror ideal in the free
/// algebra of one family: the mirror products at every losing entry, their
/// adjoints, and the projection relations of that family.
///
/// Side 1 uses e1[x,a] f[y][b] and f[y][b] e1[x,a]; side 2 uses
/// e2[y,b] g[x][a] and g[x][a] e2[y,b]. Zero products and duplicates are
/// dropped.
inline GeneratorSet build_mirror_ideal_generators(const Game& game, const MirrorStructure& m,
                                                  int side) {
  if (side != 1 && side != 2) throw std::invalid_argument("side must be 1 or 2");
  if (!m.regular || !check_regularity(game, m))
    throw NotRegularError(
        "mirror maps are not regular: the winning answers along mirrored question pairs "
        "do not cover the answer sets");
  const auto fg = build_fg_polys(game, m);
  const Family family = side == 1 ? Family::kAlice : Family::kBob;

  GeneratorSet out;
  out.alphabet = game_alphabet(game, family);
  out.star_closed = true;
  for (std::uint32_t x = 0; x < game.nx(); ++x)
    for (std::uint32_t y = 0; y < game.ny(); ++y)
      for (std::uint32_t a = 0; a < game.na(); ++a)
        for (std::uint32_t b = 0; b < game.nb(); ++b) {
          if (game.wins(x, y, a, b)) continue;
          const NCPoly gen = side == 1 ? NCPoly::symbol(alice(x, a)) : NCPoly::symbol(bob(y, b));
          const NCPoly& partner = side == 1 ? fg.f[y][b] : fg.g[x][a];
          out.add(gen * partner, Relation::kMirrorLeft);
          out.add(partner * gen, Relation::kMirrorRight);
        }
  if (side == 1) {
    detail::add_projection_relations(out, 1, game.nx(), game.na());
  } else {
    detail::add_projection_relations(out, 2, game.ny(), game.nb());
  }
  return out;
}

/// Generator set from explicit polynomials over an explicit alphabet. Used
/// for synthetic ideals that do not come from a game.
inline GeneratorSet make_generator_set(std::vector<NCPoly> polys, std::vector<GenSymbol> alphabet) {
  GeneratorSet out;
  out.alphabet = std::move(alphabet);
  for (auto& p : polys) out.add(std::move(p), Relation::kInput);
  out.star_closed = out.is_star_closed();
  return out;
}

}  // namespace mirrorcert

#endif  // MIRRORCERT_IDEAL_HPP
