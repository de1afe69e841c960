#ifndef BURB_ERRORS_HPP
#define BURB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace burb {

// Bad arguments or a family that does not support the requested operation.
class domain_error : public std::invalid_argument {
public:
    explicit domain_error(const std::string &msg) : std::invalid_argument(msg) {}
};

// A numeric routine failed to reach its tolerance; carries what was achieved.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string &op, double requested, double achieved)
        : std::runtime_error(op + ": requested tolerance " + std::to_string(requested) +
                             ", achieved " + std::to_string(achieved)),
          op_name(op), requested_tol(requested), achieved_tol(achieved) {}

    std::string op_name;
    double requested_tol;
    double achieved_tol;
};

} // namespace burb

#endif
