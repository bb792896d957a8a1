#ifndef FCQ_FORMAT_HPP
#define FCQ_FORMAT_HPP

#include <cmath>
#include <string>

#include "fcq/precision.hpp"

namespace fcq {

// Significant decimal digits used for machine-readable output at a given
// binary precision: max(20, bits * 0.3).
inline long serialization_digits(long bits) {
    long d = (long)std::ceil((double)bits * 0.3);
    return d < 20 ? 20 : d;
}

inline std::string to_decimal(const Real& x, long bits) {
    return x.str(serialization_digits(bits));
}

// C.CC(+-e) notation, e.g. 5.22(-14), 7.02(+0).
inline std::string compact_sci(const Real& x) {
    if (x.is_zero()) return "0";
    std::string s = x.str(3);  // "5.22e-14"
    auto epos = s.find('e');
    std::string mant = s.substr(0, epos);
    long expo = std::stol(s.substr(epos + 1));
    return mant + "(" + (expo >= 0 ? "+" : "") + std::to_string(expo) + ")";
}

}  // namespace fcq

#endif
