#ifndef INSTAB_CRITERION_HPP
#define INSTAB_CRITERION_HPP

#include <algorithm>
#include <cmath>
#include <string>

namespace instab {

/// One evaluated sufficiency inequality "lhs < rhs".
///
/// Every criterion in the library (power-sum, coefficient, trace/norm and
/// system-level forms) is reported in this shape. A verdict fires only when
/// the inequality holds strictly with margin above a relative tolerance
/// band, so float noise cannot fabricate a certificate.
struct CriterionVerdict {
    std::string id;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0; // rhs - lhs
    double tolerance = 0.0;
    bool fired = false;
};

inline CriterionVerdict make_verdict(std::string id, double lhs, double rhs) {
    CriterionVerdict v;
    v.id = std::move(id);
    v.lhs = lhs;
    v.rhs = rhs;
    v.margin = rhs - lhs;
    v.tolerance = 1e-12 * std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
    v.fired = v.margin > v.tolerance;
    return v;
}

/// |a-b| scaled by max(1,|a|,|b|); the agreement measure used by every
/// dual-path cross-check in the library.
inline double rel_err(double a, double b) {
    return std::fabs(a - b) / std::max({1.0, std::fabs(a), std::fabs(b)});
}

} // namespace instab

#endif
