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

#ifndef MIRRORCERT_CERTIFY_HPP
#define MIRRORCERT_CERTIFY_HPP

// End-to-end search for a certificate that a regular mirror game has no
// perfect commuting-operator strategy:
//
//   1. complete the star-closed mirror ideal of one side up to degree D;
//   2. if 1 is a rule, the reduction trace of 1 is the certificate;
//   3. otherwise, for d = 1..d_max, look for a PSD Gram matrix G with
//      1 + W_d^* G W_d reducing to 0, round it to an exact rational sum of
//      squares, and re-verify by exact reduction.

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mirrorcert/errors.hpp"
#include "mirrorcert/free_algebra.hpp"
#include "mirrorcert/game.hpp"
#include "mirrorcert/groebner.hpp"
#include "mirrorcert/hash.hpp"
#include "mirrorcert/ideal.hpp"
#include "mirrorcert/sdp.hpp"
#include "mirrorcert/sos.hpp"

namespace mirrorcert {

enum class Verdict { kNoPerfectStrategy, kUnknown };
enum class Method { kGbMembership, kSos, kNone };
enum class SideMode { kAlice = 1, kBob = 2, kBoth = 3 };

inline const char* to_string(Verdict v) {
  return v == Verdict::kNoPerfectStrategy ? "no-perfect-strategy" : "unknown";
}

inline const char* to_string(Method m) {
  switch (m) {
    case Method::kGbMembership: return "gb-membership";
    case Method::kSos: return "sos";
    case Method::kNone: return "none";
  }
  return "?";
}

/// coeff * left * generators[generator] * right.
struct WitnessTerm {
  Rational coeff;
  Word left;
  std::size_t generator = 0;
  Word right;
};

/// Machine-checkable verdict. For a no-perfect-strategy verdict the witness
/// satisfies, exactly,
///
///   1 + sum weight_k s_k^* s_k  =  sum coeff * left * g * right
///
/// where the g are the listed generators (the sos sum is empty for
/// gb-membership certificates).
struct Certificate {
  Verdict verdict = Verdict::kUnknown;
  Method method = Method::kNone;
  int side = 1;
  std::size_t degree_bound = 0;
  std::size_t sos_max_degree = 0;
  std::optional<std::size_t> sos_degree;
  MirrorStructure maps;
  std::string game_hash;
  std::vector<NCPoly> generators;
  std::vector<WitnessTerm> ideal_terms;
  std::vector<SosTerm> sos_terms;
  std::string note;
};

struct CertifyOptions {
  SideMode side = SideMode::kBoth;
  std::optional<std::size_t> degree_bound;    // default 2 max(|A|,|B|) + 2
  std::optional<std::size_t> sos_max_degree;  // default D - 1
  double tol = 1e-8;
  std::size_t basis_cap = kDefaultBasisCap;
  std::size_t iteration_cap = 100000;
  std::size_t max_rules = 200000;
  RoundingOptions rounding;
};

inline std::size_t default_degree_bound(const Game& g) { return 2 * std::max(g.na(), g.nb()) + 2; }

/// Per-degree record of the SOS search.
struct SosAttempt {
  std::size_t degree = 0;
  std::size_t basis_size = 0;
  std::size_t constraints = 0;
  SdpStatus status = SdpStatus::kInconclusive;
  bool rounded = false;
};

struct SosSearchResult {
  std::optional<SosWitness> witness;
  std::size_t degree = 0;
  std::vector<SosAttempt> attempts;
  std::string stop_reason;
};

/// Steps d = 1..d_max of the Gram-matrix search against a frozen system.
inline SosSearchResult sos_search(const RewriteSystem& rs, std::size_t d_max,
                                  const CertifyOptions& opts) {
  SosSearchResult out;
  if (rs.contains_one()) {
    out.stop_reason = "ideal contains 1";
    return out;
  }
  SdpOptions sdp_opts;
  sdp_opts.tol = opts.tol;
  sdp_opts.iteration_cap = opts.iteration_cap;
  sdp_opts.max_dim = opts.basis_cap;
  for (std::size_t d = 1; d <= d_max; ++d) {
    MonomialBasis basis;
    try {
      basis = enumerate_basis(rs, d, opts.basis_cap);
    } catch (const ResourceLimitError& e) {
      out.stop_reason = e.what();
      return out;
    }
    const GramSystem sys = build_linear_system(basis, rs);
    SosAttempt attempt{d, basis.size(), sys.constraints.size(), SdpStatus::kInconclusive, false};
    const SdpResult sdp = sdp_feasibility(to_sdp(sys), sdp_opts);
    attempt.status = sdp.status;
    if (sdp.status == SdpStatus::kFeasible) {
      if (auto w = round_with_escalation(sdp.gram, basis, rs, opts.rounding)) {
        attempt.rounded = true;
        out.attempts.push_back(attempt);
        out.witness = std::move(w);
        out.degree = d;
        return out;
      }
    }
    out.attempts.push_back(attempt);
  }
  out.stop_reason = "no certificate up to degree " + std::to_string(d_max);
  return out;
}

namespace detail {

inline std::vector<WitnessTerm> witness_terms(const IdealTrace& trace) {
  std::vector<WitnessTerm> out;
  for (const auto& [key, c] : trace.terms()) out.push_back(WitnessTerm{c, key.left, key.generator, key.right});
  return out;
}

}  // namespace detail

/// Runs the pipeline on one side with fixed mirror maps.
inline Certificate certify_side(const Game& g, const MirrorStructure& maps, int side,
                                const CertifyOptions& opts) {
  Certificate cert;
  cert.side = side;
  cert.maps = maps;
  cert.game_hash = game_hash(g);
  cert.degree_bound = opts.degree_bound.value_or(default_degree_bound(g));
  if (cert.degree_bound < 2) throw std::invalid_argument("degree bound must be at least 2");
  cert.sos_max_degree = opts.sos_max_degree.value_or(cert.degree_bound - 1);

  const GeneratorSet gens = build_mirror_ideal_generators(g, maps, side);
  CompletionOptions copts;
  copts.trace = true;
  copts.max_rules = opts.max_rules;
  const RewriteSystem rs = complete(gens, cert.degree_bound, copts);
  cert.generators = rs.generators();

  if (rs.contains_one()) {
    cert.verdict = Verdict::kNoPerfectStrategy;
    cert.method = Method::kGbMembership;
    cert.ideal_terms = detail::witness_terms(rs.trace(0));
    cert.note = "1 is in the Groebner basis of the side-" + std::to_string(side) + " mirror ideal";
    return cert;
  }

  SosSearchResult sos = sos_search(rs, cert.sos_max_degree, opts);
  if (sos.witness) {
    cert.verdict = Verdict::kNoPerfectStrategy;
    cert.method = Method::kSos;
    cert.sos_degree = sos.degree;
    cert.sos_terms = sos.witness->terms;
    cert.ideal_terms = detail::witness_terms(sos.witness->ideal);
    cert.note = "1 + sum of squares is in the side-" + std::to_string(side) + " mirror ideal";
    return cert;
  }
  cert.note = sos.stop_reason;
  if (!rs.complete_up_to_bound()) cert.note += "; Groebner basis truncated at the degree bound";
  return cert;
}

/// Full pipeline. Throws NotMirrorError or NotRegularError when the
/// reduction to one family does not apply.
inline Certificate certify(const Game& g, const CertifyOptions& opts = {}) {
  const auto maps = find_mirror_maps(g);
  if (!maps) throw NotMirrorError("game has no mirror maps");
  if (!maps->regular)
    throw NotRegularError("mirror game is not regular; the single-family criterion does not apply");
  if (opts.side == SideMode::kBob) return certify_side(g, *maps, 2, opts);
  Certificate first = certify_side(g, *maps, 1, opts);
  if (opts.side == SideMode::kAlice || first.verdict == Verdict::kNoPerfectStrategy) return first;
  Certificate second = certify_side(g, *maps, 2, opts);
  if (second.verdict == Verdict::kUnknown) second.note = "side 1: " + first.note + "; side 2: " + second.note;
  return second;
}

// ---------------------------------------------------------------------------
// JSON form. All rationals are "p/q" strings; words use the text syntax.

inline constexpr const char* kCertificateFormat = "mirrorcert-certificate/1";

inline nlohmann::ordered_json poly_to_json(const NCPoly& p) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& [w, c] : p.terms())
    arr.push_back(nlohmann::ordered_json{{"coeff", to_pq_string(c)}, {"word", to_string(w)}});
  return arr;
}

inline NCPoly poly_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected an array of terms");
  NCPoly p;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& t = j[i];
    const std::string at = where + "[" + std::to_string(i) + "]";
    if (!t.is_object() || !t.contains("coeff") || !t.contains("word") || !t["coeff"].is_string() ||
        !t["word"].is_string())
      throw ParseError(at, "expected {\"coeff\": \"p/q\", \"word\": \"...\"}");
    p.add_term(parse_word(t["word"].get<std::string>()), parse_rational(t["coeff"].get<std::string>()));
  }
  return p;
}

inline nlohmann::ordered_json to_json(const Certificate& c) {
  nlohmann::ordered_json j;
  j["format"] = kCertificateFormat;
  j["verdict"] = to_string(c.verdict);
  j["method"] = to_string(c.method);
  j["side"] = c.side;
  j["game_hash"] = c.game_hash;
  j["mirror_maps"] = {{"xi", c.maps.xi}, {"eta", c.maps.eta}, {"regular", c.maps.regular}};
  j["degree_bound"] = c.degree_bound;
  j["sos_max_degree"] = c.sos_max_degree;
  j["sos_degree"] = c.sos_degree ? nlohmann::ordered_json(*c.sos_degree) : nlohmann::ordered_json(nullptr);
  nlohmann::ordered_json w;
  auto gens = nlohmann::ordered_json::array();
  for (const auto& g : c.generators) gens.push_back(poly_to_json(g));
  w["generators"] = std::move(gens);
  auto terms = nlohmann::ordered_json::array();
  for (const auto& t : c.ideal_terms)
    terms.push_back(nlohmann::ordered_json{{"coeff", to_pq_string(t.coeff)},
                                           {"left", to_string(t.left)},
                                           {"generator", t.generator},
                                           {"right", to_string(t.right)}});
  w["ideal_terms"] = std::move(terms);
  auto sos = nlohmann::ordered_json::array();
  for (const auto& t : c.sos_terms)
    sos.push_back(nlohmann::ordered_json{{"weight", to_pq_string(t.weight)}, {"poly", poly_to_json(t.poly)}});
  w["sos_terms"] = std::move(sos);
  j["witness"] = std::move(w);
  j["note"] = c.note;
  return j;
}

namespace detail {

inline Certificate certificate_from_json_impl(const nlohmann::json& j) {
  auto need = [&](const nlohmann::json& obj, const char* key, const std::string& where) -> const nlohmann::json& {
    if (!obj.is_object() || !obj.contains(key)) throw ParseError(where + key, "missing field");
    return obj.at(key);
  };
  auto index_list = [](const nlohmann::json& v, const std::string& where) {
    if (!v.is_array()) throw ParseError(where, "expected an array");
    std::vector<std::size_t> out;
    for (const auto& e : v) {
      if (!e.is_number_unsigned()) throw ParseError(where, "expected nonnegative integers");
      out.push_back(e.get<std::size_t>());
    }
    return out;
  };
  if (!j.is_object()) throw ParseError("", "certificate must be a JSON object");
  if (need(j, "format", "") != kCertificateFormat) throw ParseError("format", "unsupported certificate format");

  Certificate c;
  const auto verdict = need(j, "verdict", "").get<std::string>();
  if (verdict == "no-perfect-strategy") {
    c.verdict = Verdict::kNoPerfectStrategy;
  } else if (verdict == "unknown") {
    c.verdict = Verdict::kUnknown;
  } else {
    throw ParseError("verdict", "unknown verdict " + verdict);
  }
  const auto method = need(j, "method", "").get<std::string>();
  if (method == "gb-membership") {
    c.method = Method::kGbMembership;
  } else if (method == "sos") {
    c.method = Method::kSos;
  } else if (method == "none") {
    c.method = Method::kNone;
  } else {
    throw ParseError("method", "unknown method " + method);
  }
  c.side = need(j, "side", "").get<int>();
  c.game_hash = need(j, "game_hash", "").get<std::string>();
  const auto& maps = need(j, "mirror_maps", "");
  c.maps.xi = index_list(need(maps, "xi", "mirror_maps."), "mirror_maps.xi");
  c.maps.eta = index_list(need(maps, "eta", "mirror_maps."), "mirror_maps.eta");
  c.maps.regular = need(maps, "regular", "mirror_maps.").get<bool>();
  c.degree_bound = need(j, "degree_bound", "").get<std::size_t>();
  c.sos_max_degree = need(j, "sos_max_degree", "").get<std::size_t>();
  if (const auto& d = need(j, "sos_degree", ""); !d.is_null()) c.sos_degree = d.get<std::size_t>();

  const auto& w = need(j, "witness", "");
  const auto& gens = need(w, "generators", "witness.");
  if (!gens.is_array()) throw ParseError("witness.generators", "expected an array");
  for (std::size_t i = 0; i < gens.size(); ++i)
    c.generators.push_back(poly_from_json(gens[i], "witness.generators[" + std::to_string(i) + "]"));
  const auto& terms = need(w, "ideal_terms", "witness.");
  if (!terms.is_array()) throw ParseError("witness.ideal_terms", "expected an array");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string at = "witness.ideal_terms[" + std::to_string(i) + "].";
    const auto& t = terms[i];
    WitnessTerm wt;
    wt.coeff = parse_rational(need(t, "coeff", at).get<std::string>());
    wt.left = parse_word(need(t, "left", at).get<std::string>());
    wt.generator = need(t, "generator", at).get<std::size_t>();
    wt.right = parse_word(need(t, "right", at).get<std::string>());
    c.ideal_terms.push_back(std::move(wt));
  }
  const auto& sos = need(w, "sos_terms", "witness.");
  if (!sos.is_array()) throw ParseError("witness.sos_terms", "expected an array");
  for (std::size_t i = 0; i < sos.size(); ++i) {
    const std::string at = "witness.sos_terms[" + std::to_string(i) + "].";
    c.sos_terms.push_back(SosTerm{parse_rational(need(sos[i], "weight", at).get<std::string>()),
                                  poly_from_json(need(sos[i], "poly", at), at + "poly")});
  }
  if (j.contains("note") && j["note"].is_string()) c.note = j["note"].get<std::string>();
  return c;
}

}  // namespace detail

inline Certificate certificate_from_json(const nlohmann::json& j) {
  try {
    return detail::certificate_from_json_impl(j);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("certificate", e.what());
  }
}

}  // namespace mirrorcert

#endif  // MIRRORCERT_CERTIFY_HPP
