// Copyright 2026 The socialmatch Authors.
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

#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace socialmatch {

// Exact rational number. Every reward, share, friendship coefficient and
// budget in the library is one of these; strict-inequality verdicts depend
// on it.
using Rational = mpq_class;

// Parses "p/q", an integer, or a plain decimal such as "-0.125" or "1e-3".
// Throws Error(kParse) on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

// Canonical text form: "p" for integers, otherwise "p/q" in lowest terms.
std::string to_string(const Rational& value);

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace socialmatch
