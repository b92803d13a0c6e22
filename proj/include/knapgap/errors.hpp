#ifndef KNAPGAP_ERRORS_HPP
#define KNAPGAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace knapgap {

/** Base class for all errors raised by this library. */
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/** Malformed input: bad document, negative entry, dimension mismatch. */
class ValidationError : public Error {
  public:
    explicit ValidationError(const std::string& what) : Error(what) {}
};

/** A documented precondition of an operation was violated by the caller. */
class ContractViolation : public Error {
  public:
    explicit ContractViolation(const std::string& what) : Error(what) {}
};

/** The problem admits no feasible solution. */
class InfeasibleError : public Error {
  public:
    explicit InfeasibleError(const std::string& what) : Error(what) {}
};

/** The objective is unbounded in the optimization direction. */
class UnboundedError : public Error {
  public:
    explicit UnboundedError(const std::string& what) : Error(what) {}
};

/** An exact solver was asked for more states than its budget allows. */
class BudgetExceededError : public Error {
  public:
    explicit BudgetExceededError(const std::string& what) : Error(what) {}
};

}  // namespace knapgap

#endif  // KNAPGAP_ERRORS_HPP
