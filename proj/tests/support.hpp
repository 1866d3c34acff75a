#pragma once

#include "cmf/real.hpp"

#include <string>

namespace cmf::test {

// |x - reference| < tol, the reference given as a decimal string.
inline bool close_to(const Real& x, const std::string& reference, double tol) {
    const Real ref(reference, x.prec() + 32);
    return abs(x - ref) < Real(tol, x.prec());
}

inline double gap(const Real& x, const std::string& reference) {
    return abs(x - Real(reference, x.prec() + 32)).to_double();
}

}  // namespace cmf::test
