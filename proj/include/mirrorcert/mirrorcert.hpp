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

#ifndef MIRRORCERT_MIRRORCERT_HPP
#define MIRRORCERT_MIRRORCERT_HPP

#include "mirrorcert/certify.hpp"
#include "mirrorcert/errors.hpp"
#include "mirrorcert/exact_linalg.hpp"
#include "mirrorcert/free_algebra.hpp"
#include "mirrorcert/game.hpp"
#include "mirrorcert/groebner.hpp"
#include "mirrorcert/hash.hpp"
#include "mirrorcert/ideal.hpp"
#include "mirrorcert/rational.hpp"
#include "mirrorcert/sdp.hpp"
#include "mirrorcert/sos.hpp"
#include "mirrorcert/verifier.hpp"

#endif  // MIRRORCERT_MIRRORCERT_HPP
