#include "fibertop/rational.hpp"

#include <cctype>

#include "fibertop/error.hpp"

namespace fibertop {

namespace {

bool is_integer_literal(std::string_view s, bool allow_sign) {
  if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num, true) || !is_integer_literal(den, false)) {
    throw Error(ErrorCode::kSyntaxError, "malformed rational '" + std::string(text) + "'");
  }
  if (num.front() == '+') num.remove_prefix(1);
  mpz_class p(std::string(num), 10);
  mpz_class q(std::string(den), 10);
  if (q == 0) throw Error(ErrorCode::kSyntaxError, "zero denominator in '" + std::string(text) + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& q) { return q.get_str(10); }

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kMissingEmptyOrFull: return "MissingEmptyOrFull";
    case ErrorCode::kNotClosedUnderUnion: return "NotClosedUnderUnion";
    case ErrorCode::kNotClosedUnderIntersection: return "NotClosedUnderIntersection";
    case ErrorCode::kNotContinuous: return "NotContinuous";
    case ErrorCode::kNotOpen: return "NotOpen";
    case ErrorCode::kCapExceeded: return "CapExceeded";
    case ErrorCode::kPreconditionGap: return "PreconditionGap";
    case ErrorCode::kMemberNotFContinuous: return "MemberNotFContinuous";
    case ErrorCode::kNotDisjoint: return "NotDisjoint";
    case ErrorCode::kNotCovering: return "NotCovering";
    case ErrorCode::kPrefixNotClosed: return "PrefixNotClosed";
    case ErrorCode::kCondition2Violated: return "Condition2Violated";
    case ErrorCode::kInvalidPartition: return "InvalidPartition";
    case ErrorCode::kNeighborhoodNotNested: return "NeighborhoodNotNested";
    case ErrorCode::kCoherenceViolated: return "CoherenceViolated";
    case ErrorCode::kLevelNotRegular: return "LevelNotRegular";
    case ErrorCode::kDepthExceeded: return "DepthExceeded";
    case ErrorCode::kHypothesisFailed: return "HypothesisFailed";
    case ErrorCode::kSearchFailed: return "SearchFailed";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kCheckFailed: return "CheckFailed";
    case ErrorCode::kPreconditionNotFContinuous: return "PreconditionNotFContinuous";
    case ErrorCode::kMaxIterReached: return "MaxIterReached";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kValidationError: return "ValidationError";
    case ErrorCode::kPrecondition: return "Precondition";
  }
  return "Unknown";
}

}  // namespace fibertop
