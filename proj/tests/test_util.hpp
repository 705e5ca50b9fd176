#ifndef INSTAB_TESTS_TEST_UTIL_HPP
#define INSTAB_TESTS_TEST_UTIL_HPP

#include <complex>
#include <random>
#include <vector>

#include "instab/matrix.hpp"
#include "instab/polynomial.hpp"

namespace testutil {

// Expands prod (x - r_i) for a conjugate-closed root list; imaginary parts
// of the resulting coefficients cancel and are dropped.
inline instab::MonicPolynomial
poly_from_roots(const std::vector<std::complex<double>>& roots) {
    std::vector<std::complex<double>> c{1.0};
    for (const auto& r : roots) {
        c.push_back(0.0);
        for (size_t j = c.size() - 1; j > 0; --j)
            c[j] -= r * c[j - 1];
    }
    std::vector<double> real(c.size() - 1);
    for (size_t j = 1; j < c.size(); ++j)
        real[j - 1] = c[j].real();
    return instab::MonicPolynomial(real);
}

inline instab::MonicPolynomial
poly_from_real_roots(const std::vector<double>& roots) {
    std::vector<std::complex<double>> c(roots.begin(), roots.end());
    return poly_from_roots(c);
}

// Root list closed under conjugation: n_real real roots plus n_pairs
// conjugate pairs, coordinates uniform in [-range, range].
inline std::vector<std::complex<double>>
random_conjugate_closed_roots(std::mt19937_64& rng, int n_real, int n_pairs,
                              double range) {
    std::uniform_real_distribution<double> u(-range, range);
    std::vector<std::complex<double>> roots;
    for (int i = 0; i < n_real; ++i)
        roots.emplace_back(u(rng), 0.0);
    for (int i = 0; i < n_pairs; ++i) {
        const double re = u(rng);
        const double im = u(rng);
        roots.emplace_back(re, im);
        roots.emplace_back(re, -im);
    }
    return roots;
}

inline instab::RealSquareMatrix random_matrix(std::mt19937_64& rng, int n,
                                              double range = 1.0) {
    std::uniform_real_distribution<double> u(-range, range);
    std::vector<double> e(static_cast<size_t>(n) * n);
    for (double& v : e)
        v = u(rng);
    return instab::RealSquareMatrix(n, std::move(e));
}

inline instab::RealSquareMatrix random_symmetric(std::mt19937_64& rng, int n,
                                                 double range = 1.0) {
    std::uniform_real_distribution<double> u(-range, range);
    instab::RealSquareMatrix m(n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = u(rng);
        for (int j = i + 1; j < n; ++j)
            m(i, j) = m(j, i) = u(rng);
    }
    return m;
}

inline instab::RealSquareMatrix random_skew(std::mt19937_64& rng, int n,
                                            double range = 1.0) {
    std::uniform_real_distribution<double> u(-range, range);
    instab::RealSquareMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            m(i, j) = u(rng);
            m(j, i) = -m(i, j);
        }
    return m;
}

} // namespace testutil

#endif
