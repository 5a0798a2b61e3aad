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

// Builds a small mirror game in code, certifies it and replays the
// certificate through the verifier.

#include <iostream>

#include "mirrorcert/mirrorcert.hpp"

int main() {
  using namespace mirrorcert;

  // CHSH: win iff a xor b == x and y.
  const Game g = Game::from_predicate(2, 2, 2, 2, [](auto x, auto y, auto a, auto b) {
    return (a ^ b) == (x & y);
  });

  const auto maps = find_mirror_maps(g);
  if (!maps) {
    std::cout << "not a mirror game\n";
    return 1;
  }
  std::cout << "classical value: " << to_short_string(classical_value(g)) << "\n";
  std::cout << "regular: " << (maps->regular ? "yes" : "no") << "\n";

  const Certificate cert = certify(g);
  std::cout << "verdict: " << to_string(cert.verdict) << " via " << to_string(cert.method) << "\n";
  if (cert.verdict == Verdict::kNoPerfectStrategy) {
    const VerifyResult r = verify_certificate(g, cert);
    std::cout << "verifier: " << (r.ok ? "accepted" : "rejected") << " (" << r.reason << ")\n";
  }
  return 0;
}
