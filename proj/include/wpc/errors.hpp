#pragma once

#include <stdexcept>
#include <string>

namespace wpc {

struct invalid_parameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct invalid_prior : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct no_convergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct quadrature_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace wpc
