#include "swcalc/errors.hpp"
#include "swcalc/numbers.hpp"

#include <numeric>

namespace swcalc {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::BasisMismatch: return "BasisMismatch";
    case ErrorKind::InexactDivision: return "InexactDivision";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::InvalidDiagram: return "InvalidDiagram";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::NotAKnot: return "NotAKnot";
    case ErrorKind::InvalidParameters: return "InvalidParameters";
    case ErrorKind::MissingLabel: return "MissingLabel";
    case ErrorKind::NonIntegralResult: return "NonIntegralResult";
    case ErrorKind::NotSimplyConnected: return "NotSimplyConnected";
    case ErrorKind::RegimeError: return "RegimeError";
    case ErrorKind::SimpleTypeRequired: return "SimpleTypeRequired";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotTaut: return "NotTaut";
    case ErrorKind::MissingIntersectionData: return "MissingIntersectionData";
    case ErrorKind::InconsistentLifts: return "InconsistentLifts";
    case ErrorKind::NonIntegralDimension: return "NonIntegralDimension";
    case ErrorKind::ChamberMismatch: return "ChamberMismatch";
    case ErrorKind::NotComputable: return "NotComputable";
    case ErrorKind::TypeOdd: return "TypeOdd";
    case ErrorKind::OutOfBand: return "OutOfBand";
    case ErrorKind::NameError: return "NameError";
    case ErrorKind::KindError: return "KindError";
  }
  return "Error";
}

std::string to_string(const Rational& v) {
  if (boost::multiprecision::denominator(v) == 1) return boost::multiprecision::numerator(v).str();
  return boost::multiprecision::numerator(v).str() + "/" + boost::multiprecision::denominator(v).str();
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

}  // namespace swcalc
