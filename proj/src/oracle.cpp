#include "instab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace instab {

namespace {

using cplx = std::complex<double>;

// Q and Q' at z in one Horner pass; coeffs are a1..an, leading 1 implicit.
void eval_with_derivative(const std::vector<double>& coeffs, cplx z,
                          cplx& value, cplx& derivative) {
    cplx p = 1.0;
    cplx dp = 0.0;
    for (double a : coeffs) {
        dp = dp * z + p;
        p = p * z + a;
    }
    value = p;
    derivative = dp;
}

double scaled_residual(const std::vector<double>& coeffs, cplx z) {
    cplx p = 1.0;
    for (double a : coeffs)
        p = p * z + a;
    const double zb = std::max(1.0, std::abs(z));
    double scale = 1.0; // leading coefficient
    for (double a : coeffs)
        scale = scale * zb + std::fabs(a);
    return std::abs(p) / scale;
}

std::vector<cplx> initial_circle(const std::vector<double>& coeffs) {
    const int m = static_cast<int>(coeffs.size());
    double radius = 0.0;
    for (double a : coeffs)
        radius = std::max(radius, std::fabs(a));
    radius += 1.0; // Cauchy bound
    std::vector<cplx> z(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j) {
        // staggered radii and an angular offset keep the start asymmetric
        const double r = radius * (0.6 + 0.4 * (j + 0.5) / m);
        const double theta = 2.0 * std::numbers::pi * j / m + 0.4;
        z[static_cast<size_t>(j)] = std::polar(r, theta);
    }
    return z;
}

} // namespace

RootSet find_roots(const MonicPolynomial& poly) {
    const std::vector<double>& original = poly.coeffs();
    double max_coeff = 0.0;
    for (double a : original)
        max_coeff = std::max(max_coeff, std::fabs(a));
    const double zero_tol = 1e-14 * std::max(1.0, max_coeff);

    // deflate zero roots exactly
    std::vector<double> coeffs = original;
    int zero_roots = 0;
    while (!coeffs.empty() && std::fabs(coeffs.back()) <= zero_tol) {
        coeffs.pop_back();
        ++zero_roots;
    }

    std::vector<cplx> z;
    if (!coeffs.empty()) {
        z = initial_circle(coeffs);
        const int m = static_cast<int>(z.size());
        constexpr int max_sweeps = 200;
        for (int sweep = 0; sweep < max_sweeps; ++sweep) {
            double worst = 0.0;
            for (int i = 0; i < m; ++i) {
                cplx p, dp;
                eval_with_derivative(coeffs, z[static_cast<size_t>(i)], p, dp);
                if (p == 0.0)
                    continue;
                if (dp == 0.0) {
                    z[static_cast<size_t>(i)] += 1e-6 * (1.0 + std::abs(z[static_cast<size_t>(i)]));
                    worst = 1.0;
                    continue;
                }
                const cplx w = p / dp;
                cplx repel = 0.0;
                for (int j = 0; j < m; ++j)
                    if (j != i)
                        repel += 1.0 / (z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)]);
                const cplx denom = 1.0 - w * repel;
                const cplx step = std::abs(denom) < 1e-30 ? w : w / denom;
                z[static_cast<size_t>(i)] -= step;
                worst = std::max(worst,
                                 std::abs(step) /
                                     (1.0 + std::abs(z[static_cast<size_t>(i)])));
            }
            if (worst <= 1e-13)
                break;
        }
        // Newton polish
        for (auto& root : z)
            for (int it = 0; it < 3; ++it) {
                cplx p, dp;
                eval_with_derivative(coeffs, root, p, dp);
                if (dp == 0.0)
                    break;
                const cplx step = p / dp;
                if (std::abs(step) > 0.5 * (1.0 + std::abs(root)))
                    break;
                root -= step;
            }
    }

    RootSet rs;
    rs.method = "aberth+newton";
    rs.roots.reserve(original.size());
    for (int i = 0; i < zero_roots; ++i)
        rs.roots.push_back(0.0);
    rs.roots.insert(rs.roots.end(), z.begin(), z.end());
    std::sort(rs.roots.begin(), rs.roots.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });

    double worst_residual = 0.0;
    rs.residuals.reserve(rs.roots.size());
    for (cplx root : rs.roots) {
        const double r = scaled_residual(original, root);
        rs.residuals.push_back(r);
        worst_residual = std::max(worst_residual, r);
    }
    if (worst_residual > 1e-8)
        throw ConvergenceError("find_roots: residual " +
                                   std::to_string(worst_residual) +
                                   " above 1e-8 after iteration budget",
                               std::move(rs));
    return rs;
}

SpectralReport classify_values(std::span<const cplx> values) {
    SpectralReport report;
    for (cplx v : values) {
        const double scale = std::max(1.0, std::abs(v));
        if (std::fabs(v.imag()) > 1e-7 * scale) {
            report.has_nonreal = true;
            report.nonreal_witnesses.push_back(v);
        }
        if (v.real() > 1e-8 * scale) {
            report.has_positive_real = true;
            report.positive_real_witnesses.push_back(v);
        }
    }
    return report;
}

SpectralReport classify_spectrum(const RootSet& rs) {
    return classify_values(rs.roots);
}

namespace {

SpectralReport lambda_spectrum(const MonicPolynomial& reduced) {
    const RootSet alphas = find_roots(reduced);
    std::vector<cplx> lambdas;
    lambdas.reserve(2 * alphas.roots.size());
    for (cplx alpha : alphas.roots) {
        const cplx lam = std::sqrt(alpha);
        lambdas.push_back(lam);
        lambdas.push_back(-lam);
    }
    return classify_values(lambdas);
}

} // namespace

SpectralReport verify_instability(const CirculatorySystem& sys) {
    return lambda_spectrum(circulatory_reduced_polynomial(sys));
}

SpectralReport verify_instability(const GyroscopicSystem& sys) {
    return lambda_spectrum(gyro_reduced_polynomial(sys));
}

ConsistencyReport check_sufficiency(std::span<const CriterionVerdict> verdicts,
                                    const SpectralReport& report,
                                    CriterionContext context) {
    const bool fact = (context == CriterionContext::poly ||
                       context == CriterionContext::matrix)
                          ? report.has_nonreal
                          : report.has_positive_real;
    ConsistencyReport out;
    out.context = context;
    for (const CriterionVerdict& v : verdicts)
        if (v.fired && !fact)
            out.violations.push_back(v.id);
    out.pass = out.violations.empty();
    return out;
}

} // namespace instab
