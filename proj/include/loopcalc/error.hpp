#ifndef LOOPCALC_ERROR_HPP
#define LOOPCALC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace loopcalc {

// Every failure mode maps onto one of three classes; the CLI turns the class
// into an exit code (invalid_input -> 2, unsupported -> 3, internal -> 1).
enum class ErrorClass { invalid_input, unsupported, internal };

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, std::string code, const std::string& what)
      : std::runtime_error(what), cls_(cls), code_(std::move(code)) {}

  ErrorClass error_class() const { return cls_; }
  // Stable machine-readable identifier, independent of the message text.
  const std::string& code() const { return code_; }

 private:
  ErrorClass cls_;
  std::string code_;
};

// --- invalid input: the caller handed us a malformed or out-of-contract value.

struct BadSpec : Error {
  explicit BadSpec(const std::string& what)
      : Error(ErrorClass::invalid_input, "InvalidSpec", what) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& what)
      : Error(ErrorClass::invalid_input, "ParseError", what) {}
};

struct BadDimension : Error {
  explicit BadDimension(const std::string& what)
      : Error(ErrorClass::invalid_input, "BadDimension", what) {}
};

// rank of the middle cohomology too small for the decomposition hypotheses
struct RankTooSmall : Error {
  explicit RankTooSmall(const std::string& what)
      : Error(ErrorClass::invalid_input, "RankTooSmall", what) {}
};

// --- unsupported: well-formed input that the calculus cannot handle.

// n in {4,8} with d >= 2: attaching maps may involve an element of Hopf
// invariant one, where the decomposition hypotheses fail.
struct HopfGuard : Error {
  explicit HopfGuard(const std::string& what)
      : Error(ErrorClass::unsupported, "HopfGuard", what) {}
};

// A smash product of Moore spaces outside the licensed p^r, r != 2 regime.
struct UnsupportedSmash : Error {
  explicit UnsupportedSmash(const std::string& what)
      : Error(ErrorClass::unsupported, "UnsupportedSmash", what) {}
};

// An expression node the requested operation has no rule for.
struct UnsupportedNode : Error {
  explicit UnsupportedNode(const std::string& what)
      : Error(ErrorClass::unsupported, "UnsupportedNode", what) {}
};

// The sphere homotopy table has no entry for the requested (m, k).
struct TableMiss : Error {
  explicit TableMiss(const std::string& what)
      : Error(ErrorClass::unsupported, "TableMiss", what) {}
};

// Looping a bundle needs the classifying map declared as a composite
// through the top-cell pinch; it was not.
struct NotPinchFactored : Error {
  explicit NotPinchFactored(const std::string& what)
      : Error(ErrorClass::unsupported, "NotPinchFactored", what) {}
};

// --- internal: a bug or resource limit, never a user error.

struct OverflowError : Error {
  explicit OverflowError(const std::string& what)
      : Error(ErrorClass::internal, "Overflow", what) {}
};

inline void internal_check(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorClass::internal, "Internal", what);
}

inline int exit_code_for(ErrorClass cls) {
  switch (cls) {
    case ErrorClass::invalid_input: return 2;
    case ErrorClass::unsupported: return 3;
    case ErrorClass::internal: return 1;
  }
  return 1;
}

inline std::string to_string(ErrorClass cls) {
  switch (cls) {
    case ErrorClass::invalid_input: return "invalid-input";
    case ErrorClass::unsupported: return "unsupported";
    case ErrorClass::internal: return "internal";
  }
  return "internal";
}

}  // namespace loopcalc

#endif  // LOOPCALC_ERROR_HPP
