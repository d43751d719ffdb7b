#ifndef PENSION_ERRORS_HPP
#define PENSION_ERRORS_HPP

#include <stdexcept>

namespace pension {

// No finite annuity term can reach the requested value (target >= b/r).
struct InfeasibleTargetError : std::domain_error {
    using std::domain_error::domain_error;
};

// A lookup referenced an entity the reference tables do not contain.
struct ReferenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bundled reference data failed its self-check.
struct IntegrityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Design matrix is rank deficient.
struct SingularDesignError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input file; the message names the file and line.
struct CsvError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace pension

#endif
