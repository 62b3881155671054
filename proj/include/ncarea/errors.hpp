#pragma once

#include <stdexcept>
#include <string>

namespace ncarea {

enum class ErrorCode {
    order_exceeded,      // special-function order above the supported maximum
    domain_error,        // argument outside the mathematical domain
    invalid_parameter,   // state or config parameter violates its contract
    truncation_failure,  // Fock tail cannot be bounded within the max order
    negative_variance,   // second moment inconsistent with first beyond roundoff
    window_too_small,    // tomogram row loses probability mass beyond tolerance
    nonconvergence,      // quadrature refinement exhausted its budget
    insufficient_data,   // homodyne dataset below estimator preconditions
    no_closed_form,      // family has no analytic sigma
    parse_error,         // unreadable spec string or input file
    io_error,            // filesystem failure
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace ncarea
