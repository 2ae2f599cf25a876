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

#include "netbargain/rational.h"

#include <cctype>

#include "netbargain/error.h"

namespace netbargain {
namespace {

bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::optional<mpz_class> ParseInteger(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!AllDigits(s)) return std::nullopt;
  mpz_class value(std::string(s), 10);
  if (negative) value = -value;
  return value;
}

}  // namespace

std::optional<Rational> ParseRational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    auto num = ParseInteger(text);
    if (!num) return std::nullopt;
    return Rational(*num);
  }
  auto num = ParseInteger(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  if (!num || !AllDigits(den_text)) return std::nullopt;
  mpz_class den(std::string(den_text), 10);
  if (den == 0) return std::nullopt;
  Rational value(*num, den);
  value.canonicalize();
  return value;
}

std::optional<Rational> ParseDecimalOrRational(std::string_view text) {
  if (auto exact = ParseRational(text)) return exact;

  std::string_view mantissa = text;
  long exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    auto exp = ParseInteger(text.substr(e + 1));
    if (!exp || !exp->fits_slong_p()) return std::nullopt;
    exponent = exp->get_si();
    mantissa = text.substr(0, e);
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  const auto dot = mantissa.find('.');
  if (dot == std::string_view::npos) {
    digits = std::string(mantissa);
  } else {
    std::string_view whole = mantissa.substr(0, dot);
    std::string_view frac = mantissa.substr(dot + 1);
    if (whole.empty() && frac.empty()) return std::nullopt;
    if ((!whole.empty() && !AllDigits(whole)) || (!frac.empty() && !AllDigits(frac))) {
      return std::nullopt;
    }
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  }
  if (!AllDigits(digits)) return std::nullopt;
  if (exponent > 4096 || exponent < -4096) return std::nullopt;

  Rational value{mpz_class(digits, 10)};
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  if (exponent < 0) {
    value /= scale;
  } else {
    value *= scale;
  }
  if (negative) value = -value;
  return value;
}

std::string FormatRational(const Rational& value) {
  Rational canonical = value;
  canonical.canonicalize();
  return canonical.get_str(10);
}

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSelfLoop: return "SelfLoop";
    case ErrorCode::kDuplicateEdge: return "DuplicateEdge";
    case ErrorCode::kNegativeWeight: return "NegativeWeight";
    case ErrorCode::kNonBipartiteEdge: return "NonBipartiteEdge";
    case ErrorCode::kCapacityViolatesMode: return "CapacityViolatesMode";
    case ErrorCode::kSideViolatesMode: return "SideViolatesMode";
    case ErrorCode::kUnknownAgent: return "UnknownAgent";
    case ErrorCode::kDuplicateAgent: return "DuplicateAgent";
    case ErrorCode::kTooManyAgents: return "TooManyAgents";
    case ErrorCode::kOutcomeInvariantViolation: return "OutcomeInvariantViolation";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kNotAContractEdge: return "NotAContractEdge";
    case ErrorCode::kNotStable: return "NotStable";
    case ErrorCode::kNotEfficient: return "NotEfficient";
    case ErrorCode::kWrongMode: return "WrongMode";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kInfeasibleFace: return "InfeasibleFace";
    case ErrorCode::kUnboundedFace: return "UnboundedFace";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

}  // namespace netbargain
