#ifndef SEMGP_ERRORS_HPP
#define SEMGP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace semgp {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace semgp

#endif
