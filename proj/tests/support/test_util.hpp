#ifndef FCQ_TESTS_TEST_UTIL_HPP
#define FCQ_TESTS_TEST_UTIL_HPP

#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "fcq/precision.hpp"

namespace fcq::testutil {

inline bool abs_le(const Real& x, const Real& tol) { return abs(x) <= tol; }

inline bool close_abs(const Real& x, const Real& y, const Real& tol) {
    return abs(x - y) <= tol;
}

inline bool close_rel(const Real& x, const Real& y, const Real& rel) {
    return abs(x - y) <= rel * abs(y);
}

inline bool close_rel(const Real& x, const char* y_decimal, double rel,
                      const PrecisionContext& ctx) {
    Real y(y_decimal, ctx);
    return abs(x - y) <= Real(rel, ctx) * abs(y);
}

// Pretty context for failed REQUIREs.
inline std::string show(const Real& x) { return x.str(25); }

}  // namespace fcq::testutil

#endif
