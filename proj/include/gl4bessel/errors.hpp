#pragma once

#include <stdexcept>
#include <string>

namespace gl4 {

// Numeric failures map to CLI exit code 3, validation failures to 2.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PoleError : NumericError {
    using NumericError::NumericError;
};
struct NotAPole : NumericError {
    using NumericError::NumericError;
};
struct DivergenceError : NumericError {
    using NumericError::NumericError;
};
struct DegenerateParameters : NumericError {
    using NumericError::NumericError;
};
struct OrderError : NumericError {
    using NumericError::NumericError;
};
struct ContourError : NumericError {
    using NumericError::NumericError;
};
struct SingularCell : NumericError {
    using NumericError::NumericError;
};
struct SizeBlowup : NumericError {
    using NumericError::NumericError;
};

struct BudgetExceeded : NumericError {
    BudgetExceeded(const std::string& what, double re, double im)
        : NumericError(what), partial_re(re), partial_im(im) {}
    double partial_re;
    double partial_im;
};

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace gl4
