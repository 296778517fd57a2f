#pragma once

#include <stdexcept>
#include <string>

namespace arrangefree {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ZeroNormalError : Error {
  explicit ZeroNormalError(const std::string& msg = "hyperplane normal is zero") : Error(msg) {}
};

struct DimensionMismatchError : Error {
  explicit DimensionMismatchError(const std::string& msg = "ambient dimension mismatch") : Error(msg) {}
};

struct DuplicateHyperplaneError : Error {
  explicit DuplicateHyperplaneError(const std::string& msg = "duplicate hyperplane") : Error(msg) {}
};

struct IndexOutOfRangeError : Error {
  explicit IndexOutOfRangeError(const std::string& msg = "index out of range") : Error(msg) {}
};

struct FlatNotInLatticeError : Error {
  explicit FlatNotInLatticeError(const std::string& msg = "flat is not in the intersection lattice") : Error(msg) {}
};

struct TooLargeError : Error {
  explicit TooLargeError(const std::string& msg = "input too large for this operation") : Error(msg) {}
};

struct InvariantViolationError : Error {
  explicit InvariantViolationError(const std::string& msg) : Error("invariant violation: " + msg) {}
};

struct NotEssentialError : Error {
  explicit NotEssentialError(const std::string& msg = "arrangement is not essential") : Error(msg) {}
};

struct MalformedCertificateError : Error {
  explicit MalformedCertificateError(const std::string& msg = "malformed certificate") : Error(msg) {}
};

struct MissingCertificateError : Error {
  explicit MissingCertificateError(const std::string& msg = "missing or invalid freeness certificate") : Error(msg) {}
};

struct DegreeSumMismatchError : Error {
  explicit DegreeSumMismatchError(const std::string& msg = "candidate degrees do not sum to |A|") : Error(msg) {}
};

struct EmptyArrangementError : Error {
  explicit EmptyArrangementError(const std::string& msg = "operation requires a nonempty arrangement") : Error(msg) {}
};

struct InvalidTypeRankError : Error {
  explicit InvalidTypeRankError(const std::string& msg = "invalid root system type/rank") : Error(msg) {}
};

struct NotALowerIdealError : Error {
  explicit NotALowerIdealError(const std::string& msg = "subset is not a lower ideal") : Error(msg) {}
};

struct OracleUndecidedError : Error {
  explicit OracleUndecidedError(const std::string& msg = "freeness oracle returned Unknown") : Error(msg) {}
};

struct ParseError : Error {
  int line;
  ParseError(int line_, const std::string& msg) : Error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

}  // namespace arrangefree
