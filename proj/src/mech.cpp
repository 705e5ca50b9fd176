#include "instab/mech.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace instab {

std::string_view to_string(SystemClass c) {
    switch (c) {
    case SystemClass::conservative:
        return "conservative";
    case SystemClass::gyroscopic_conservative:
        return "gyroscopic-conservative";
    case SystemClass::damped_non_gyroscopic:
        return "damped-non-gyroscopic";
    case SystemClass::circulatory:
        return "circulatory";
    case SystemClass::constraint_damping:
        return "constraint-damping";
    case SystemClass::general:
        return "general";
    }
    return "general";
}

RealSquareMatrix require_symmetric(const RealSquareMatrix& m,
                                   std::string_view what) {
    const auto split = sym_skew_split(m);
    const double tol = 1e-9 * (1.0 + m.frobenius_norm());
    if (split.skew.frobenius_norm() > tol)
        throw InputError(std::string(what) + ": matrix is not symmetric");
    return split.sym;
}

RealSquareMatrix require_skew(const RealSquareMatrix& m,
                              std::string_view what) {
    const auto split = sym_skew_split(m);
    const double tol = 1e-9 * (1.0 + m.frobenius_norm());
    if (split.sym.frobenius_norm() > tol)
        throw InputError(std::string(what) + ": matrix is not skew-symmetric");
    return split.skew;
}

CirculatorySystem::CirculatorySystem(const RealSquareMatrix& stiffness,
                                     const RealSquareMatrix& circulatory)
    : stiffness_(require_symmetric(stiffness, "circulatory system K")),
      circulatory_(require_skew(circulatory, "circulatory system C")) {
    if (circulatory_.size() != stiffness_.size())
        throw InputError("circulatory system: K and C dimensions differ");
}

GyroscopicSystem::GyroscopicSystem(const RealSquareMatrix& gyro,
                                   const RealSquareMatrix& stiffness)
    : gyro_(require_skew(gyro, "gyroscopic system G")),
      stiffness_(require_symmetric(stiffness, "gyroscopic system K")) {
    if (gyro_.size() != stiffness_.size())
        throw InputError("gyroscopic system: G and K dimensions differ");
}

NormalForm normal_form(const RealSquareMatrix& mass,
                       const RealSquareMatrix& a2,
                       const RealSquareMatrix& a3) {
    if (a2.size() != mass.size() || a3.size() != mass.size())
        throw InputError("normal_form: dimension mismatch");
    const RealSquareMatrix m = require_symmetric(mass, "normal_form mass");

    const RealSquareMatrix v2 = solve(m, a2);
    const RealSquareMatrix v3 = solve(m, a3);
    auto [d, g] = sym_skew_split(v2);
    auto [k, c] = sym_skew_split(v3);

    const auto is_zero = [](const RealSquareMatrix& block,
                            const RealSquareMatrix& source) {
        return block.frobenius_norm() <= 1e-10 * (1.0 + source.frobenius_norm());
    };
    const bool d0 = is_zero(d, v2);
    const bool g0 = is_zero(g, v2);
    const bool k0 = is_zero(k, v3);
    const bool c0 = is_zero(c, v3);

    SystemClass cls = SystemClass::general;
    if (d0 && g0 && c0 && !k0 && is_positive_definite(k))
        cls = SystemClass::conservative;
    else if (d0 && c0)
        cls = SystemClass::gyroscopic_conservative;
    else if (g0 && c0 && is_positive_definite(d) && is_positive_definite(k))
        cls = SystemClass::damped_non_gyroscopic;
    else if (d0 && g0)
        cls = SystemClass::circulatory;
    else if (g0)
        cls = SystemClass::constraint_damping;

    return NormalForm{std::move(d), std::move(g), std::move(k), std::move(c), cls};
}

std::array<CriterionVerdict, 6>
circulatory_verdicts(const CirculatorySystem& sys) {
    const double n = sys.size();
    const RealSquareMatrix& k = sys.stiffness();
    const RealSquareMatrix& c = sys.circulatory();

    const RealSquareMatrix k2 = k * k;
    const RealSquareMatrix c2 = c * c;
    const RealSquareMatrix kc = k * c;
    const double k_sq = k.frobenius_norm_sq();
    const double c_sq = c.frobenius_norm_sq();
    const double s2 = k_sq - c_sq;
    const double inner = k2.frobenius_norm_sq() + c2.frobenius_norm_sq() -
                         4.0 * kc.frobenius_norm_sq() +
                         2.0 * (kc * kc).trace();
    const double s3 = (k2 * k).trace() + 3.0 * (k * c2).trace();
    const double tr_k = k.trace();

    // Remark route: prop1-i applied to the square of -(K+C), whose symmetric
    // part is K^2 + C^2 and skew part is KC + CK.
    const double rmk_lhs =
        (k2 + c2).frobenius_norm_sq() - s2 * s2 / n;
    const double rmk_rhs = (c * k + kc).frobenius_norm_sq();

    return {make_verdict("thm2-i", n * s2, tr_k * tr_k),
            make_verdict("thm2-ii", n * inner, s2 * s2),
            make_verdict("thm2-iii", s2 * inner, s3 * s3),
            make_verdict("rmk-ii-alt", rmk_lhs, rmk_rhs),
            make_verdict("cor-i", std::sqrt(k_sq), std::sqrt(c_sq)),
            make_verdict("cor-ii",
                         k2.frobenius_norm_sq() + c2.frobenius_norm_sq() +
                             2.0 * (kc * kc).trace(),
                         4.0 * kc.frobenius_norm_sq())};
}

CriterionVerdict gyroscopic_verdict_thm4(const GyroscopicSystem& sys) {
    const double n = sys.size();
    const RealSquareMatrix& g = sys.gyro();
    const RealSquareMatrix& k = sys.stiffness();
    const RealSquareMatrix g2 = g * g;
    const double lhs = 2.0 * n *
                       (2.0 * k.frobenius_norm_sq() + g2.frobenius_norm_sq() +
                        4.0 * (g.transposed() * k * g).trace());
    const double base = 2.0 * k.trace() + g.frobenius_norm_sq();
    return make_verdict("thm4", lhs, base * base);
}

MonicPolynomial circulatory_reduced_polynomial(const CirculatorySystem& sys) {
    return char_poly(-(sys.stiffness() + sys.circulatory()));
}

MonicPolynomial gyro_characteristic_polynomial(const GyroscopicSystem& sys) {
    const int n = sys.size();
    if (n > 32)
        throw InputError("gyro polynomial: dimension above the n <= 32 guard");
    RealSquareMatrix state(2 * n);
    for (int i = 0; i < n; ++i) {
        state(i, n + i) = 1.0;
        for (int j = 0; j < n; ++j) {
            state(n + i, j) = -sys.stiffness()(i, j);
            state(n + i, n + j) = -sys.gyro()(i, j);
        }
    }
    return char_poly(state);
}

MonicPolynomial gyro_reduced_polynomial(const GyroscopicSystem& sys) {
    const int n = sys.size();
    const MonicPolynomial p = gyro_characteristic_polynomial(sys);

    double max_coeff = 0.0;
    for (double a : p.coeffs())
        max_coeff = std::max(max_coeff, std::fabs(a));
    const double tol = 1e-9 * (1.0 + max_coeff);
    for (int j = 1; j <= 2 * n; j += 2)
        if (std::fabs(p.coeff(j)) > tol)
            throw ConsistencyError(
                "gyro_reduced_polynomial: odd coefficient a_" +
                std::to_string(j) + " above tolerance");

    std::vector<double> q(static_cast<size_t>(n));
    for (int m = 1; m <= n; ++m)
        q[static_cast<size_t>(m) - 1] = p.coeff(2 * m);
    return MonicPolynomial(std::move(q));
}

CirculatorySystem example_circulatory3(double k, double c) {
    const RealSquareMatrix stiffness(3, {1.0, 0.0, 0.0, //
                                         0.0, 1.0, k,   //
                                         0.0, k, 0.0});
    const RealSquareMatrix circ(3, {0.0, c, 0.0, //
                                    -c, 0.0, 0.0, //
                                    0.0, 0.0, 0.0});
    return CirculatorySystem(stiffness, circ);
}

GyroscopicSystem example_charged_particle(double k, double c) {
    const RealSquareMatrix stiffness(3, {k, 0.0, 0.0, //
                                         0.0, 0.0, k, //
                                         0.0, k, 0.0});
    const RealSquareMatrix gyro(3, {0.0, c, 0.0, //
                                    -c, 0.0, 0.0, //
                                    0.0, 0.0, 0.0});
    return GyroscopicSystem(gyro, stiffness);
}

GyroPowerSums gyro_power_sum_identities(const GyroscopicSystem& sys) {
    const RealSquareMatrix& g = sys.gyro();
    const RealSquareMatrix& k = sys.stiffness();
    const RealSquareMatrix g2 = g * g;

    GyroPowerSums out;
    out.s2_p = -2.0 * k.trace() - g.frobenius_norm_sq();
    out.s4_p = 2.0 * k.frobenius_norm_sq() + g2.frobenius_norm_sq() +
               4.0 * (g.transposed() * k * g).trace();
    out.s1_q = 0.5 * out.s2_p;
    out.s2_q = 0.5 * out.s4_p;

    const PowerSums sp = newton_power_sums(gyro_characteristic_polynomial(sys), 4);
    const PowerSums sq = newton_power_sums(gyro_reduced_polynomial(sys), 2);
    if (rel_err(out.s2_p, sp.s(2)) > 1e-8 || rel_err(out.s4_p, sp.s(4)) > 1e-8 ||
        rel_err(out.s1_q, sq.s(1)) > 1e-8 || rel_err(out.s2_q, sq.s(2)) > 1e-8)
        throw ConsistencyError(
            "gyro_power_sum_identities: closed trace forms disagree with "
            "Newton power sums");
    return out;
}

} // namespace instab
