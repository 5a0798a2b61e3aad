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

#ifndef MIRRORCERT_VERIFIER_HPP
#define MIRRORCERT_VERIFIER_HPP

// Independent replay of certificates. Everything here is rebuilt from the
// scoring table with free-algebra arithmetic only: no Groebner completion,
// no reduction, no SDP. The generator builders are deliberately separate
// from the ones the search uses.

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mirrorcert/certify.hpp"
#include "mirrorcert/free_algebra.hpp"
#include "mirrorcert/game.hpp"
#include "mirrorcert/hash.hpp"

namespace mirrorcert {

struct VerifyResult {
  bool ok = false;
  std::string reason;
};

namespace verify_detail {

using PolySet = std::set<std::vector<std::pair<Word, Rational>>>;

inline std::vector<std::pair<Word, Rational>> key_of(const NCPoly& p) {
  return {p.terms().begin(), p.terms().end()};
}

inline bool maps_ok(const Game& g, const MirrorStructure& m, std::string& why) {
  if (m.xi.size() != g.nx() || m.eta.size() != g.ny()) {
    why = "mirror map sizes do not match the game";
    return false;
  }
  for (std::size_t x = 0; x < g.nx(); ++x) {
    const std::size_t y = m.xi[x];
    if (y >= g.ny()) {
      why = "xi out of range";
      return false;
    }
    std::vector<int> per_b(g.nb(), 0);
    for (std::size_t a = 0; a < g.na(); ++a)
      for (std::size_t b = 0; b < g.nb(); ++b) per_b[b] += g.wins(x, y, a, b);
    for (int k : per_b) {
      if (k > 1) {
        why = "xi violates the mirror condition at x=" + std::to_string(x);
        return false;
      }
      if (k == 0) {
        why = "xi is not regular at x=" + std::to_string(x);
        return false;
      }
    }
  }
  for (std::size_t y = 0; y < g.ny(); ++y) {
    const std::size_t x = m.eta[y];
    if (x >= g.nx()) {
      why = "eta out of range";
      return false;
    }
    for (std::size_t a = 0; a < g.na(); ++a) {
      int k = 0;
      for (std::size_t b = 0; b < g.nb(); ++b) k += g.wins(x, y, a, b);
      if (k > 1) {
        why = "eta violates the mirror condition at y=" + std::to_string(y);
        return false;
      }
      if (k == 0) {
        why = "eta is not regular at y=" + std::to_string(y);
        return false;
      }
    }
  }
  return true;
}

/// Every polynomial allowed as a generator on the given side.
inline PolySet allowed_generators(const Game& g, const MirrorStructure& m, int side) {
  PolySet out;
  const std::uint32_t s = static_cast<std::uint32_t>(side);
  const std::size_t questions = side == 1 ? g.nx() : g.ny();
  const std::size_t answers = side == 1 ? g.na() : g.nb();
  auto sym = [&](std::size_t q, std::size_t a) {
    return GenSymbol{s, static_cast<std::uint32_t>(q), static_cast<std::uint32_t>(a)};
  };
  for (std::size_t q = 0; q < questions; ++q) {
    NCPoly complete_sum = NCPoly::constant(-1);
    for (std::size_t a = 0; a < answers; ++a) {
      NCPoly sq = NCPoly::monomial({sym(q, a), sym(q, a)});
      sq.add_term({sym(q, a)}, -1);
      out.insert(key_of(sq));
      complete_sum.add_term({sym(q, a)}, 1);
      for (std::size_t a2 = 0; a2 < answers; ++a2)
        if (a2 != a) out.insert(key_of(NCPoly::monomial({sym(q, a), sym(q, a2)})));
    }
    out.insert(key_of(complete_sum));
  }
  for (std::size_t x = 0; x < g.nx(); ++x)
    for (std::size_t y = 0; y < g.ny(); ++y)
      for (std::size_t a = 0; a < g.na(); ++a)
        for (std::size_t b = 0; b < g.nb(); ++b) {
          if (g.wins(x, y, a, b)) continue;
          // Mirrored partner: a sum over the answers of the other question.
          NCPoly partner;
          if (side == 1) {
            for (std::size_t a2 = 0; a2 < g.na(); ++a2)
              if (g.wins(m.eta[y], y, a2, b)) partner.add_term({sym(m.eta[y], a2)}, 1);
          } else {
            for (std::size_t b2 = 0; b2 < g.nb(); ++b2)
              if (g.wins(x, m.xi[x], a, b2)) partner.add_term({sym(m.xi[x], b2)}, 1);
          }
          const NCPoly gen = side == 1 ? NCPoly::monomial({sym(x, a)}) : NCPoly::monomial({sym(y, b)});
          const NCPoly left = gen * partner;
          const NCPoly right = partner * gen;
          if (!left.is_zero()) out.insert(key_of(left));
          if (!right.is_zero()) out.insert(key_of(right));
        }
  return out;
}

inline bool word_on_side(const Word& w, const Game& g, int side) {
  for (const auto& s : w) {
    if (static_cast<int>(s.side) != side) return false;
    if (side == 1 && (s.question >= g.nx() || s.answer >= g.na())) return false;
    if (side == 2 && (s.question >= g.ny() || s.answer >= g.nb())) return false;
  }
  return true;
}

}  // namespace verify_detail

/// Re-checks a certificate against a game using exact arithmetic only.
inline VerifyResult verify_certificate(const Game& g, const Certificate& c) {
  using namespace verify_detail;
  VerifyResult r;
  if (c.verdict != Verdict::kNoPerfectStrategy) {
    r.reason = "certificate carries no witness (verdict unknown)";
    return r;
  }
  if (c.game_hash != game_hash(g)) {
    r.reason = "game hash mismatch: certificate is for a different game";
    return r;
  }
  if (c.side != 1 && c.side != 2) {
    r.reason = "side must be 1 or 2";
    return r;
  }
  if (!maps_ok(g, c.maps, r.reason)) return r;
  if (c.method == Method::kGbMembership && !c.sos_terms.empty()) {
    r.reason = "gb-membership certificate must not carry squares";
    return r;
  }
  if (c.method == Method::kNone) {
    r.reason = "no method";
    return r;
  }

  const PolySet allowed = allowed_generators(g, c.maps, c.side);
  for (std::size_t i = 0; i < c.generators.size(); ++i)
    if (!allowed.count(key_of(c.generators[i]))) {
      r.reason = "generator " + std::to_string(i) + " (" + to_string(c.generators[i]) +
                 ") is not a relation of the side-" + std::to_string(c.side) + " mirror ideal";
      return r;
    }

  // lhs = 1 + sum weight s^* s
  NCPoly lhs = NCPoly::one();
  for (std::size_t k = 0; k < c.sos_terms.size(); ++k) {
    const auto& t = c.sos_terms[k];
    if (t.weight < 0) {
      r.reason = "negative weight on square " + std::to_string(k);
      return r;
    }
    for (const auto& [w, coeff] : t.poly.terms())
      if (!word_on_side(w, g, c.side)) {
        r.reason = "square " + std::to_string(k) + " uses a symbol outside the side-" +
                   std::to_string(c.side) + " family";
        return r;
      }
    const NCPoly adj = poly_star(t.poly);
    lhs += t.weight * (adj * t.poly);
  }

  NCPoly rhs;
  for (std::size_t k = 0; k < c.ideal_terms.size(); ++k) {
    const auto& t = c.ideal_terms[k];
    if (t.generator >= c.generators.size()) {
      r.reason = "ideal term " + std::to_string(k) + " names a missing generator";
      return r;
    }
    if (!word_on_side(t.left, g, c.side) || !word_on_side(t.right, g, c.side)) {
      r.reason = "ideal term " + std::to_string(k) + " uses a symbol outside the family";
      return r;
    }
    rhs.add_product(t.coeff, t.left, c.generators[t.generator], t.right);
  }

  if (!(lhs == rhs)) {
    r.reason = "identity fails: 1 + squares - ideal combination = " + to_string(lhs - rhs);
    return r;
  }
  r.ok = true;
  r.reason = c.method == Method::kGbMembership ? "1 is an explicit combination of the mirror relations"
                                               : "1 + sum of squares is an explicit combination of "
                                                 "the mirror relations";
  return r;
}

inline VerifyResult verify_certificate_json(const Game& g, const nlohmann::json& j) {
  try {
    return verify_certificate(g, certificate_from_json(j));
  } catch (const Error& e) {
    return VerifyResult{false, std::string("malformed certificate: ") + e.what()};
  }
}

}  // namespace mirrorcert

#endif  // MIRRORCERT_VERIFIER_HPP
