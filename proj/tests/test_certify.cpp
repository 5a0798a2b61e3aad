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

#include <gtest/gtest.h>

#include "support.hpp"

namespace mirrorcert {
namespace {

using testing::load_fixture;

NCPoly P(const char* text) { return parse_poly(text); }

Certificate example_certificate() {
  CertifyOptions o;
  o.side = SideMode::kAlice;
  return certify(load_fixture("example1.json"), o);
}

TEST(Certify, ExampleOneByGroebnerMembership) {
  const Certificate c = example_certificate();
  EXPECT_EQ(c.verdict, Verdict::kNoPerfectStrategy);
  EXPECT_EQ(c.method, Method::kGbMembership);
  EXPECT_EQ(c.side, 1);
  EXPECT_EQ(c.maps.xi, (std::vector<std::size_t>{0, 0}));
  EXPECT_EQ(c.maps.eta, (std::vector<std::size_t>{0, 1}));
  EXPECT_TRUE(c.sos_terms.empty());
  EXPECT_FALSE(c.ideal_terms.empty());
}

TEST(Certify, ExampleOneSideTwoAgrees) {
  CertifyOptions o;
  o.side = SideMode::kBob;
  const Certificate c = certify(load_fixture("example1.json"), o);
  EXPECT_EQ(c.verdict, Verdict::kNoPerfectStrategy);
  EXPECT_EQ(c.side, 2);
  EXPECT_TRUE(verify_certificate(load_fixture("example1.json"), c).ok);
}

TEST(Certify, BothModeTriesSideOneFirst) {
  const Certificate c = certify(load_fixture("example1.json"));
  EXPECT_EQ(c.side, 1);
  EXPECT_EQ(c.verdict, Verdict::kNoPerfectStrategy);
}

TEST(Certify, AllLoseIsNotRegular) {
  EXPECT_THROW(certify(load_fixture("all_lose.json")), NotRegularError);
}

TEST(Certify, NonMirrorGameIsRefused) {
  EXPECT_THROW(certify(Game(1, 1, 2, 2, std::vector<std::uint8_t>(4, 1))), NotMirrorError);
}

TEST(Certify, AlwaysWinSingleAnswerIsUnknown) {
  const Certificate c = certify(load_fixture("always_win_1x1.json"));
  EXPECT_EQ(c.verdict, Verdict::kUnknown);
  EXPECT_EQ(c.method, Method::kNone);
  EXPECT_FALSE(verify_certificate(load_fixture("always_win_1x1.json"), c).ok);
}

TEST(Certify, ChshHasNoPerfectStrategy) {
  const Game g = load_fixture("chsh.json");
  const Certificate c = certify(g);
  EXPECT_EQ(c.verdict, Verdict::kNoPerfectStrategy);
  EXPECT_TRUE(verify_certificate(g, c).ok);
}

TEST(Certify, NeverCertifiesClassicallyPerfectGames) {
  std::mt19937_64 rng(43);
  CertifyOptions o;
  o.degree_bound = 4;
  o.sos_max_degree = 1;
  int perfect = 0;
  for (int i = 0; i < 200 && perfect < 15; ++i) {
    const Game g = testing::random_regular_mirror_game(rng, 2);
    if (testing::brute_force_classical_value(g) != 1) continue;
    ++perfect;
    EXPECT_EQ(certify(g, o).verdict, Verdict::kUnknown) << serialize_game(g);
  }
  EXPECT_GE(perfect, 5);
}

TEST(CertificateJson, RoundTripAndDeterminism) {
  const Certificate c = example_certificate();
  const std::string a = to_json(c).dump(2);
  EXPECT_EQ(a, to_json(example_certificate()).dump(2));
  const Certificate back = certificate_from_json(nlohmann::json::parse(a));
  EXPECT_EQ(to_json(back).dump(2), a);
  EXPECT_NE(a.find("\"format\": \"mirrorcert-certificate/1\""), std::string::npos);
  EXPECT_EQ(a.find("e-0"), std::string::npos);
}

TEST(CertificateJson, MalformedDocumentsAreParseErrors) {
  EXPECT_THROW(certificate_from_json(nlohmann::json::parse("{}")), ParseError);
  auto j = nlohmann::json::parse(to_json(example_certificate()).dump());
  j["witness"]["ideal_terms"][0]["coeff"] = 0.5;
  EXPECT_THROW(certificate_from_json(j), ParseError);
}

TEST(Verifier, AcceptsEmittedCertificate) {
  const auto r = verify_certificate(load_fixture("example1.json"), example_certificate());
  EXPECT_TRUE(r.ok) << r.reason;
}

TEST(Verifier, PerturbedCoefficientFails) {
  Certificate c = example_certificate();
  c.ideal_terms[0].coeff += Rational(1, 1000);
  EXPECT_FALSE(verify_certificate(load_fixture("example1.json"), c).ok);
}

TEST(Verifier, DifferentGameFailsOnHash) {
  const auto r = verify_certificate(load_fixture("chsh.json"), example_certificate());
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.reason.find("hash"), std::string::npos);
}

TEST(Verifier, ForeignGeneratorFails) {
  Certificate c = example_certificate();
  c.generators.push_back(NCPoly::one());
  c.ideal_terms = {WitnessTerm{1, {}, c.generators.size() - 1, {}}};
  const auto r = verify_certificate(load_fixture("example1.json"), c);
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.reason.find("not a relation"), std::string::npos) << r.reason;
}

TEST(Verifier, WrongMapsFail) {
  Certificate c = example_certificate();
  c.maps.eta = {1, 1};
  EXPECT_FALSE(verify_certificate(load_fixture("example1.json"), c).ok);
}

TEST(Verifier, ChecksSumOfSquaresWitness) {
  // A square-carrying certificate for Example 1: 1 + e1[0,0]^2 written as a
  // combination of the side-1 relations.
  const Game g = load_fixture("example1.json");
  const auto maps = *find_mirror_maps(g);
  CompletionOptions o;
  o.trace = true;
  const auto rs = complete(build_mirror_ideal_generators(g, maps, 1), 4, o);
  const NCPoly s = P("e1[0,0]");
  const auto red = reduce_traced(NCPoly::one() + s * s, rs);
  ASSERT_TRUE(red.normal_form.is_zero());

  Certificate c = example_certificate();
  c.method = Method::kSos;
  c.sos_degree = 1;
  c.generators = rs.generators();
  c.sos_terms = {SosTerm{1, s}};
  c.ideal_terms.clear();
  for (const auto& [key, k] : red.trace.terms()) c.ideal_terms.push_back({k, key.left, key.generator, key.right});
  EXPECT_TRUE(verify_certificate(g, c).ok) << verify_certificate(g, c).reason;

  Certificate neg = c;
  neg.sos_terms[0].weight = -1;
  EXPECT_FALSE(verify_certificate(g, neg).ok);

  Certificate cross = c;
  cross.sos_terms[0].poly = P("e2[0,0]");
  EXPECT_FALSE(verify_certificate(g, cross).ok);
}

TEST(Hash, KnownDigest) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(game_hash(load_fixture("example1.json")).rfind("sha256:", 0), 0u);
}

}  // namespace
}  // namespace mirrorcert
