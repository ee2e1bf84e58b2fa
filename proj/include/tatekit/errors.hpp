#ifndef TATEKIT_ERRORS_HPP
#define TATEKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tatekit {

struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad user input (files, flags). CLI exit code 2.
struct parse_error : error {
    explicit parse_error(const std::string& msg) : error(msg) {}
};

// Violated operation precondition (N | p-1, p > 3, ...). CLI exit code 3.
struct precondition_error : error {
    explicit precondition_error(const std::string& msg) : error(msg) {}
};

// Rewrite-step budget exceeded: the presentation does not terminate.
struct nontermination_error : error {
    explicit nontermination_error(const std::string& msg) : error(msg) {}
};

// Hopf data required but absent.
struct hopf_absent_error : error {
    explicit hopf_absent_error(const std::string& msg) : error(msg) {}
};

// Operation needs a certified symmetrizing form and the algebra has none.
struct not_symmetric_error : error {
    explicit not_symmetric_error(const std::string& msg) : error(msg) {}
};

// A/rad does not split over F_p, or p in {2,3}.
struct unsupported_field_error : error {
    explicit unsupported_field_error(const std::string& msg) : error(msg) {}
};

// Requested degree falls outside the syzygy window.
struct window_error : error {
    explicit window_error(const std::string& msg) : error(msg) {}
};

// Internal consistency tripwire: two routes that must agree did not.
struct internal_check_error : error {
    explicit internal_check_error(const std::string& msg) : error(msg) {}
};

}  // namespace tatekit

#endif
