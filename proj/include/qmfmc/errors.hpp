#ifndef QMFMC_ERRORS_HPP
#define QMFMC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qmfmc {

// Malformed input files or ill-formed constructed values.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// An operation was called outside its stated precondition.
struct PreconditionError : std::invalid_argument {
    explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

// A brute-force search or contraction exceeds its configured budget.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qmfmc

#endif
