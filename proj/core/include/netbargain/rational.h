// Copyright 2026 The netbargain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NETBARGAIN_RATIONAL_H_
#define NETBARGAIN_RATIONAL_H_

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace netbargain {

// Arbitrary-precision rational, always kept in lowest terms by GMP.
using Rational = mpq_class;

// Parses "p/q" or "p" with an optional leading '-'. Decimal points,
// exponents, whitespace and zero denominators are rejected.
std::optional<Rational> ParseRational(std::string_view text);

// Parses a rational as above, or an exact decimal such as "0.25" or "1e-9".
// Used for command-line parameters, never for instance files.
std::optional<Rational> ParseDecimalOrRational(std::string_view text);

// Lowest-terms "p/q"; integers are rendered without a denominator.
std::string FormatRational(const Rational& value);

inline Rational Abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

}  // namespace netbargain

#endif  // NETBARGAIN_RATIONAL_H_
