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

// mirrorcert: certify that a regular mirror game has no perfect
// commuting-operator strategy.
//
// Exit codes:
//   0  success (certify: no-perfect-strategy; verify: certificate accepted)
//   1  error, or verify rejected the certificate
//   2  certify: unknown within the configured bounds
//   3  certify: not a mirror game, or not regular

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "mirrorcert/mirrorcert.hpp"

namespace {

using namespace mirrorcert;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitNotApplicable = 3;

struct RunConfig {
  std::string input;
  std::string side = "both";
  std::optional<std::size_t> degree_bound;
  std::optional<std::size_t> sos_max_degree;
  double tol = 1e-8;
  std::string format = "text";
  std::string out;
  std::size_t basis_cap = kDefaultBasisCap;
  std::size_t iter_cap = 100000;
  std::uint64_t budget = kDefaultEnumerationBudget;
  std::string certificate;
  std::string poly;
  std::string ideal = "mirror";
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Game load_game(const std::string& path) {
  try {
    return parse_game(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.where(), e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out, std::ios::binary);
  if (!out) throw Error("cannot write " + cfg.out);
  out << text;
}

std::string maps_line(const std::vector<std::size_t>& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? " " : "") + std::to_string(i) + "->" + std::to_string(m[i]);
  return s;
}

CertifyOptions certify_options(const RunConfig& cfg) {
  CertifyOptions o;
  o.side = cfg.side == "1" ? SideMode::kAlice : cfg.side == "2" ? SideMode::kBob : SideMode::kBoth;
  o.degree_bound = cfg.degree_bound;
  o.sos_max_degree = cfg.sos_max_degree;
  o.tol = cfg.tol;
  o.basis_cap = cfg.basis_cap;
  o.iteration_cap = cfg.iter_cap;
  return o;
}

int cmd_inspect(const RunConfig& cfg) {
  const Game g = load_game(cfg.input);
  const auto maps = find_mirror_maps(g);
  const Rational wc = classical_value(g, cfg.budget);
  const GeneratorSet invalid = build_invalid_set(g);

  nlohmann::ordered_json j;
  j["nx"] = g.nx();
  j["ny"] = g.ny();
  j["na"] = g.na();
  j["nb"] = g.nb();
  j["mirror"] = maps.has_value();
  if (maps) {
    j["xi"] = maps->xi;
    j["eta"] = maps->eta;
    j["regular"] = maps->regular;
  }
  j["classical_value"] = to_short_string(wc);
  j["invalid_set"] = invalid.size();
  auto counts = [](const GeneratorSet& s) {
    nlohmann::ordered_json c;
    for (auto r : {Relation::kMirrorLeft, Relation::kMirrorRight, Relation::kIdempotent,
                   Relation::kOrthogonality, Relation::kCompleteness, Relation::kCommutation})
      if (s.count(r)) c[to_string(r)] = s.count(r);
    return c;
  };
  nlohmann::ordered_json gens;
  if (maps && maps->regular) {
    gens["side1"] = counts(build_mirror_ideal_generators(g, *maps, 1));
    gens["side2"] = counts(build_mirror_ideal_generators(g, *maps, 2));
  } else {
    gens["universal"] = counts(build_universal_relations(g, Family::kBoth));
  }
  j["generators"] = gens;

  if (cfg.format == "json") {
    emit(cfg, j.dump(2) + "\n");
    return kExitOk;
  }
  std::ostringstream os;
  os << "game: nx=" << g.nx() << " ny=" << g.ny() << " na=" << g.na() << " nb=" << g.nb()
     << " (uniform questions)\n";
  os << "mirror: " << (maps ? "yes" : "no") << "\n";
  if (maps) {
    os << "xi: " << maps_line(maps->xi) << "\n";
    os << "eta: " << maps_line(maps->eta) << "\n";
    os << "regular: " << (maps->regular ? "yes" : "no") << "\n";
  }
  os << "classical_value: " << to_short_string(wc) << "\n";
  os << "invalid_set: " << invalid.size() << "\n";
  for (const auto& [name, c] : gens.items()) {
    os << "generators " << name << ":";
    for (const auto& [tag, n] : c.items()) os << " " << tag << "=" << n.get<std::size_t>();
    os << "\n";
  }
  emit(cfg, os.str());
  return kExitOk;
}

int cmd_certify(const RunConfig& cfg) {
  const Game g = load_game(cfg.input);
  Certificate cert;
  try {
    cert = certify(g, certify_options(cfg));
  } catch (const NotMirrorError& e) {
    std::cerr << "not applicable: " << e.what() << "\n";
    return kExitNotApplicable;
  } catch (const NotRegularError& e) {
    std::cerr << "not applicable: " << e.what() << "\n";
    return kExitNotApplicable;
  }
  if (cfg.format == "json") {
    emit(cfg, to_json(cert).dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "verdict: " << to_string(cert.verdict) << "\n";
    os << "method: " << to_string(cert.method) << "\n";
    os << "side: " << cert.side << "\n";
    os << "xi: " << maps_line(cert.maps.xi) << "\n";
    os << "eta: " << maps_line(cert.maps.eta) << "\n";
    os << "degree_bound: " << cert.degree_bound << "\n";
    os << "sos_max_degree: " << cert.sos_max_degree << "\n";
    if (cert.sos_degree) os << "sos_degree: " << *cert.sos_degree << "\n";
    os << "witness: " << cert.ideal_terms.size() << " ideal terms over " << cert.generators.size()
       << " generators, " << cert.sos_terms.size() << " squares\n";
    os << "note: " << cert.note << "\n";
    emit(cfg, os.str());
  }
  return cert.verdict == Verdict::kNoPerfectStrategy ? kExitOk : kExitUnknown;
}

int cmd_verify(const RunConfig& cfg) {
  const Game g = load_game(cfg.input);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(cfg.certificate));
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "malformed certificate: " << e.what() << "\n";
    return kExitError;
  }
  const VerifyResult r = verify_certificate_json(g, doc);
  std::ostringstream os;
  if (cfg.format == "json") {
    os << nlohmann::ordered_json{{"ok", r.ok}, {"reason", r.reason}}.dump(2) << "\n";
  } else {
    os << (r.ok ? "PASS: " : "FAIL: ") << r.reason << "\n";
  }
  emit(cfg, os.str());
  return r.ok ? kExitOk : kExitError;
}

int cmd_reduce(const RunConfig& cfg) {
  const Game g = load_game(cfg.input);
  const NCPoly p = parse_poly(cfg.poly);
  for (const auto& [w, c] : p.terms())
    for (const auto& s : w) {
      const bool ok = s.side == 1 ? (s.question < g.nx() && s.answer < g.na())
                                  : (s.question < g.ny() && s.answer < g.nb());
      if (!ok) throw ValidationError("symbol " + to_string(s) + " is out of range for this game");
    }

  const std::size_t bound = cfg.degree_bound.value_or(default_degree_bound(g));
  GeneratorSet gens;
  if (cfg.ideal == "empty") {
    gens.alphabet = game_alphabet(g, Family::kBoth);
  } else if (cfg.ideal == "universal") {
    const Family fam = cfg.side == "1" ? Family::kAlice : cfg.side == "2" ? Family::kBob : Family::kBoth;
    gens = build_universal_relations(g, fam);
  } else {
    const auto maps = find_mirror_maps(g);
    if (!maps) throw NotMirrorError("game has no mirror maps");
    const int side = cfg.side == "2" ? 2 : 1;
    gens = build_mirror_ideal_generators(g, *maps, side);
  }
  const RewriteSystem rs = complete(gens, std::max(bound, gens.max_degree()));
  const NCPoly nf = reduce(p, rs);
  if (cfg.format == "json") {
    emit(cfg, nlohmann::ordered_json{{"input", to_string(p)},
                                     {"normal_form", to_string(nf)},
                                     {"contains_one", rs.contains_one()},
                                     {"complete_up_to_bound", rs.complete_up_to_bound()}}
                      .dump(2) +
                  "\n");
  } else {
    emit(cfg, to_string(nf) + "\n");
  }
  return kExitOk;
}

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--input", cfg.input, "Game file (JSON)")->required()->envname("MIRRORCERT_INPUT");
  cmd->add_option("--side", cfg.side, "Generator family: 1, 2 or both")
      ->check(CLI::IsMember({"1", "2", "both"}))
      ->envname("MIRRORCERT_SIDE");
  cmd->add_option("--degree-bound", cfg.degree_bound, "Groebner degree bound D (default 2 max(|A|,|B|) + 2)")
      ->check(CLI::Range(std::size_t{2}, std::size_t{64}))
      ->envname("MIRRORCERT_DEGREE_BOUND");
  cmd->add_option("--sos-max-degree", cfg.sos_max_degree, "Largest SOS basis degree d (default D - 1)")
      ->check(CLI::Range(std::size_t{1}, std::size_t{64}))
      ->envname("MIRRORCERT_SOS_MAX_DEGREE");
  cmd->add_option("--tol", cfg.tol, "SDP tolerance")
      ->check(CLI::PositiveNumber)
      ->envname("MIRRORCERT_TOL");
  cmd->add_option("--format", cfg.format, "Output format: text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->envname("MIRRORCERT_FORMAT");
  cmd->add_option("--out", cfg.out, "Write output here instead of stdout")->envname("MIRRORCERT_OUT");
  cmd->add_option("--basis-cap", cfg.basis_cap, "Largest SOS monomial basis")
      ->check(CLI::PositiveNumber)
      ->envname("MIRRORCERT_BASIS_CAP");
  cmd->add_option("--iter-cap", cfg.iter_cap, "SDP iteration cap")
      ->check(CLI::PositiveNumber)
      ->envname("MIRRORCERT_ITER_CAP");
  cmd->add_option("--budget", cfg.budget, "Classical-value enumeration budget (strategy pairs)")
      ->check(CLI::PositiveNumber)
      ->envname("MIRRORCERT_BUDGET");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certify that a regular mirror game has no perfect commuting-operator strategy"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* inspect = app.add_subcommand("inspect", "Mirror maps, regularity, classical value, generator counts");
  add_common(inspect, cfg);
  auto* certify_cmd = app.add_subcommand("certify", "Search for a certificate");
  add_common(certify_cmd, cfg);
  auto* verify = app.add_subcommand("verify", "Replay a certificate against a game");
  add_common(verify, cfg);
  verify->add_option("--certificate", cfg.certificate, "Certificate file (JSON)")
      ->required()
      ->envname("MIRRORCERT_CERTIFICATE");
  auto* reduce_cmd = app.add_subcommand("reduce", "Normal form of a polynomial modulo a completed ideal");
  add_common(reduce_cmd, cfg);
  reduce_cmd->add_option("--poly", cfg.poly, "Polynomial, e.g. \"e1[0,0]+e1[0,1]-1\"")->required();
  reduce_cmd->add_option("--ideal", cfg.ideal, "mirror (default), universal or empty")
      ->check(CLI::IsMember({"mirror", "universal", "empty"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*inspect) return cmd_inspect(cfg);
    if (*certify_cmd) return cmd_certify(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*reduce_cmd) return cmd_reduce(cfg);
  } catch (const NotMirrorError& e) {
    std::cerr << "not applicable: " << e.what() << "\n";
    return kExitNotApplicable;
  } catch (const NotRegularError& e) {
    std::cerr << "not applicable: " << e.what() << "\n";
    return kExitNotApplicable;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
