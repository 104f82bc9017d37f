#pragma once

#include <stdexcept>
#include <string>

namespace mmlb {

/// An iterative solver hit its iteration cap or could not certify its answer
/// to the requested tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace mmlb
