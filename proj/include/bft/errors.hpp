#ifndef BFT_ERRORS_HPP
#define BFT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bft {

// Base class of everything thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Expression text could not be parsed; `position` is a 0-based offset into
// the input string.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A domain invariant does not hold (bad frame, mismatched models, invalid
// mass assignment, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class NegativeMassError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotNormalizedError : public ValidationError {
 public:
  explicit NotNormalizedError(double sum)
      : ValidationError("masses sum to " + std::to_string(sum) +
                        ", expected 1"),
        sum_(sum) {}
  double sum() const { return sum_; }

 private:
  double sum_;
};

class EmptyFocalError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Tuple enumeration over the experts' focal elements would exceed the
// configured bound.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// A decision functional cannot be evaluated on the given mass function.
class DecisionError : public Error {
 public:
  using Error::Error;
};

class TotalConflictError : public DecisionError {
 public:
  TotalConflictError() : DecisionError("total conflict: m(EMPTY) = 1") {}
};

class DegenerateFocalError : public DecisionError {
 public:
  using DecisionError::DecisionError;
};

// A stability case produced a conjunctive/PCR argmax disagreement.
class StabilityViolation : public Error {
 public:
  StabilityViolation(double a1, double b1, double a2, double b2)
      : Error("stability violated at a1=" + std::to_string(a1) +
              " b1=" + std::to_string(b1) + " a2=" + std::to_string(a2) +
              " b2=" + std::to_string(b2)),
        a1_(a1), b1_(b1), a2_(a2), b2_(b2) {}
  double a1() const { return a1_; }
  double b1() const { return b1_; }
  double a2() const { return a2_; }
  double b2() const { return b2_; }

 private:
  double a1_, b1_, a2_, b2_;
};

}  // namespace bft

#endif  // BFT_ERRORS_HPP
