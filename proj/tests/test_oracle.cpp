#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "instab/oracle.hpp"
#include "test_util.hpp"

using namespace instab;
using std::complex;

namespace {

// independent oracle for a single real root: bisection on a sign change
double bisect_root(const MonicPolynomial& p, double lo, double hi) {
    REQUIRE(p(lo) * p(hi) < 0.0);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (p(lo) * p(mid) <= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

bool contains_root(const RootSet& rs, complex<double> target, double tol) {
    return std::any_of(rs.roots.begin(), rs.roots.end(), [&](complex<double> r) {
        return std::abs(r - target) < tol;
    });
}

} // namespace

TEST_CASE("find_roots on textbook polynomials") {
    SUBCASE("x^2+1") {
        const RootSet rs = find_roots(MonicPolynomial({0.0, 1.0}));
        REQUIRE(rs.roots.size() == 2);
        CHECK(contains_root(rs, {0.0, 1.0}, 1e-9));
        CHECK(contains_root(rs, {0.0, -1.0}, 1e-9));
        CHECK(*std::max_element(rs.residuals.begin(), rs.residuals.end()) <= 1e-8);
    }
    SUBCASE("x^2-3x+2") {
        const RootSet rs = find_roots(MonicPolynomial({-3.0, 2.0}));
        CHECK(contains_root(rs, 1.0, 1e-9));
        CHECK(contains_root(rs, 2.0, 1e-9));
    }
    SUBCASE("x^3-x+1: bisection confirms the real root, pair is conjugate") {
        const MonicPolynomial p({0.0, -1.0, 1.0});
        const double real_root = bisect_root(p, -2.0, -1.0);
        CHECK(real_root == doctest::Approx(-1.3247179572447460).epsilon(1e-12));

        const RootSet rs = find_roots(p);
        REQUIRE(rs.roots.size() == 3);
        CHECK(contains_root(rs, real_root, 1e-9));
        CHECK(contains_root(rs, {0.66235897862237301, 0.56227951206230210}, 1e-8));
        CHECK(contains_root(rs, {0.66235897862237301, -0.56227951206230210}, 1e-8));
    }
    SUBCASE("degree 1") {
        const RootSet rs = find_roots(MonicPolynomial({-4.0}));
        REQUIRE(rs.roots.size() == 1);
        CHECK(contains_root(rs, 4.0, 1e-12));
    }
}

TEST_CASE("zero roots are deflated exactly") {
    const RootSet rs = find_roots(MonicPolynomial({2.0, 2.0, 0.0})); // x(x^2+2x+2)
    REQUIRE(rs.roots.size() == 3);
    int exact_zero = 0;
    for (auto r : rs.roots)
        if (r == complex<double>(0.0, 0.0))
            ++exact_zero;
    CHECK(exact_zero == 1);
    CHECK(contains_root(rs, {-1.0, 1.0}, 1e-9));
    CHECK(contains_root(rs, {-1.0, -1.0}, 1e-9));
}

TEST_CASE("double root is located to residual tolerance") {
    const RootSet rs = find_roots(MonicPolynomial({2.0, 1.0})); // (x+1)^2
    REQUIRE(rs.roots.size() == 2);
    for (auto r : rs.roots)
        CHECK(std::abs(r - complex<double>(-1.0, 0.0)) < 1e-6);
    for (double res : rs.residuals)
        CHECK(res <= 1e-8);
}

TEST_CASE("property: roots reconstruct the polynomial and close under conjugation") {
    std::mt19937_64 rng(60601);
    std::uniform_int_distribution<int> pick_real(0, 4);
    std::uniform_int_distribution<int> pick_pairs(0, 4);
    for (int trial = 0; trial < 200; ++trial) {
        int n_real = pick_real(rng);
        int n_pairs = pick_pairs(rng);
        if (n_real + 2 * n_pairs == 0)
            n_real = 2;
        const auto roots =
            testutil::random_conjugate_closed_roots(rng, n_real, n_pairs, 2.0);
        const MonicPolynomial poly = testutil::poly_from_roots(roots);
        const RootSet rs = find_roots(poly);
        REQUIRE(rs.roots.size() == roots.size());

        // reconstruction: coefficients from the found roots
        const MonicPolynomial back = [&] {
            std::vector<complex<double>> c{1.0};
            for (const auto& r : rs.roots) {
                c.push_back(0.0);
                for (size_t j = c.size() - 1; j > 0; --j)
                    c[j] -= r * c[j - 1];
            }
            std::vector<double> real(c.size() - 1);
            for (size_t j = 1; j < c.size(); ++j)
                real[j - 1] = c[j].real();
            return MonicPolynomial(real);
        }();
        for (int k = 1; k <= poly.degree(); ++k)
            CHECK(rel_err(back.coeff(k), poly.coeff(k)) < 1e-6);

        // conjugate closure of the computed set
        for (auto r : rs.roots) {
            if (std::fabs(r.imag()) <= 1e-7 * std::max(1.0, std::abs(r)))
                continue;
            CHECK(contains_root(rs, std::conj(r), 1e-6));
        }
    }
}

TEST_CASE("classify_spectrum thresholds") {
    RootSet rs;
    rs.roots = {1.0, 2.0};
    rs.residuals = {0.0, 0.0};
    SpectralReport r = classify_spectrum(rs);
    CHECK_FALSE(r.has_nonreal);
    CHECK(r.has_positive_real);
    CHECK(r.positive_real_witnesses.size() == 2);

    rs.roots = {{0.0, 1.0}, {0.0, -1.0}};
    r = classify_spectrum(rs);
    CHECK(r.has_nonreal);
    CHECK_FALSE(r.has_positive_real);

    rs.roots = {{-1.0, 1.0}, {-1.0, -1.0}, 0.0};
    r = classify_spectrum(rs);
    CHECK(r.has_nonreal);
    CHECK_FALSE(r.has_positive_real);
}

TEST_CASE("verify_instability on the worked systems") {
    SUBCASE("charged particle at (-1,1) is unstable (flutter route)") {
        const SpectralReport r = verify_instability(example_charged_particle(-1.0, 1.0));
        CHECK(r.has_positive_real);
    }
    SUBCASE("circulatory example at (2,0) is unstable by divergence") {
        const SpectralReport r = verify_instability(example_circulatory3(2.0, 0.0));
        CHECK(r.has_positive_real);
        // the growth comes from a real exponent: lambda = sqrt((sqrt(17)-1)/2)
        REQUIRE(!r.positive_real_witnesses.empty());
        bool real_witness = false;
        for (auto w : r.positive_real_witnesses)
            if (std::fabs(w.imag()) < 1e-9 &&
                std::fabs(w.real() - std::sqrt((std::sqrt(17.0) - 1.0) / 2.0)) < 1e-9)
                real_witness = true;
        CHECK(real_witness);
    }
    SUBCASE("plain oscillator K = I is spectrally stable") {
        const CirculatorySystem sys(RealSquareMatrix::identity(2), RealSquareMatrix(2));
        const SpectralReport r = verify_instability(sys);
        CHECK_FALSE(r.has_positive_real);
    }
}

TEST_CASE("property: a non-real reduced root always maps to growth") {
    std::mt19937_64 rng(424242);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const GyroscopicSystem sys(testutil::random_skew(rng, n),
                                   testutil::random_symmetric(rng, n));
        const RootSet alphas = find_roots(gyro_reduced_polynomial(sys));
        for (auto alpha : alphas.roots) {
            if (std::fabs(alpha.imag()) <= 1e-7 * std::max(1.0, std::abs(alpha)))
                continue;
            const complex<double> lam = std::sqrt(alpha);
            CHECK(std::max(lam.real(), (-lam).real()) > 0.0);
        }
    }
}

TEST_CASE("check_sufficiency pass and fail shapes") {
    CriterionVerdict fired = make_verdict("thm2-i", 0.0, 4.0);
    REQUIRE(fired.fired);
    CriterionVerdict quiet = make_verdict("thm2-ii", 4.0, 0.0);
    REQUIRE_FALSE(quiet.fired);

    SUBCASE("fired verdict with confirming spectrum passes") {
        const SpectralReport r = verify_instability(example_circulatory3(0.0, 1.0));
        REQUIRE(r.has_positive_real);
        const std::vector<CriterionVerdict> vs{fired};
        CHECK(check_sufficiency(vs, r, CriterionContext::circulatory).pass);
    }
    SUBCASE("nothing fired imposes nothing, even when unstable") {
        SpectralReport r;
        r.has_positive_real = true;
        const std::vector<CriterionVerdict> vs{quiet};
        CHECK(check_sufficiency(vs, r, CriterionContext::circulatory).pass);
    }
    SUBCASE("synthetic violation is recorded, not thrown") {
        SpectralReport r; // nothing true
        const std::vector<CriterionVerdict> vs{fired, quiet};
        const ConsistencyReport cr =
            check_sufficiency(vs, r, CriterionContext::poly);
        CHECK_FALSE(cr.pass);
        REQUIRE(cr.violations.size() == 1);
        CHECK(cr.violations[0] == "thm2-i");
    }
}

TEST_CASE("property: end-to-end sufficiency on random systems") {
    std::mt19937_64 rng(987654321);
    int fired_total = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        if (trial % 2 == 0) {
            const CirculatorySystem sys(testutil::random_symmetric(rng, n),
                                        testutil::random_skew(rng, n));
            const auto vs = circulatory_verdicts(sys);
            const ConsistencyReport cr = check_sufficiency(
                vs, verify_instability(sys), CriterionContext::circulatory);
            CHECK(cr.pass);
            for (const auto& v : vs)
                fired_total += v.fired;
        } else {
            const GyroscopicSystem sys(testutil::random_skew(rng, n),
                                       testutil::random_symmetric(rng, n));
            std::vector<CriterionVerdict> vs{gyroscopic_verdict_thm4(sys)};
            for (auto& v : prop2_verdicts(gyro_reduced_polynomial(sys)))
                vs.push_back(std::move(v));
            const ConsistencyReport cr = check_sufficiency(
                vs, verify_instability(sys), CriterionContext::gyroscopic);
            CHECK(cr.pass);
            for (const auto& v : vs)
                fired_total += v.fired;
        }
    }
    CHECK(fired_total > 500); // the property must not hold vacuously
}
