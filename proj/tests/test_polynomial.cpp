#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "instab/polynomial.hpp"
#include "test_util.hpp"

using namespace instab;
using std::complex;

namespace {

// Independent oracle: s_k summed directly over known roots.
double direct_power_sum(const std::vector<complex<double>>& roots, int k) {
    complex<double> s = 0.0;
    for (const auto& r : roots)
        s += std::pow(r, k);
    return s.real();
}

// All strictly increasing subsets of {0..n-1} with size <= max_size.
std::vector<std::vector<int>> index_subsets(int n, int max_size) {
    std::vector<std::vector<int>> out;
    for (int k = 1; k <= max_size && k <= n; ++k) {
        std::vector<int> subset(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i)
            subset[static_cast<size_t>(i)] = i;
        while (true) {
            out.push_back(subset);
            int pos = k - 1;
            while (pos >= 0 && subset[static_cast<size_t>(pos)] == n - k + pos)
                --pos;
            if (pos < 0)
                break;
            ++subset[static_cast<size_t>(pos)];
            for (int j = pos + 1; j < k; ++j)
                subset[static_cast<size_t>(j)] = subset[static_cast<size_t>(j) - 1] + 1;
        }
    }
    return out;
}

} // namespace

TEST_CASE("monic polynomial validation and evaluation") {
    CHECK_THROWS_AS(MonicPolynomial(std::vector<double>{}), InputError);
    CHECK_THROWS_AS(MonicPolynomial({1.0, std::nan("")}), InputError);

    const MonicPolynomial q({-3.0, 2.0}); // (x-1)(x-2)
    CHECK(q.degree() == 2);
    CHECK(q(1.0) == doctest::Approx(0.0));
    CHECK(q(2.0) == doctest::Approx(0.0));
    CHECK(q(0.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(q.coeff(3), InputError);
}

TEST_CASE("newton power sums match direct sums over the roots") {
    // oracle first: direct sums of powers of {1, 2}
    const std::vector<complex<double>> roots{1.0, 2.0};
    const MonicPolynomial q({-3.0, 2.0});
    const PowerSums ps = newton_power_sums(q, 3);
    for (int k = 1; k <= 3; ++k)
        CHECK(ps.s(k) == doctest::Approx(direct_power_sum(roots, k)).epsilon(1e-12));
    CHECK(ps.s(1) == doctest::Approx(3.0));
    CHECK(ps.s(2) == doctest::Approx(5.0));
    CHECK(ps.s(3) == doctest::Approx(9.0));
    CHECK(ps.s(0) == 2.0);
}

TEST_CASE("newton power sums of x^n are all zero") {
    const MonicPolynomial q({0.0, 0.0, 0.0, 0.0}); // x^4
    const PowerSums ps = newton_power_sums(q, 7);
    for (int k = 1; k <= 7; ++k)
        CHECK(ps.s(k) == 0.0);
}

TEST_CASE("newton power sums of x^2+1") {
    const MonicPolynomial q({0.0, 1.0});
    const PowerSums ps = newton_power_sums(q, 4);
    CHECK(ps.s(1) == doctest::Approx(0.0));
    CHECK(ps.s(2) == doctest::Approx(-2.0));
    CHECK(ps.s(3) == doctest::Approx(0.0));
    CHECK(ps.s(4) == doctest::Approx(2.0));
    CHECK_THROWS_AS(newton_power_sums(q, 0), InputError);
}

TEST_CASE("power sums from explicit roots") {
    const std::vector<complex<double>> pair{{0.0, 1.0}, {0.0, -1.0}};
    const PowerSums ps = power_sums_from_roots(pair, 2);
    CHECK(ps.s(1) == doctest::Approx(0.0));
    CHECK(ps.s(2) == doctest::Approx(-2.0));
    CHECK(ps.imag_residues().size() == 2);
    CHECK(ps.imag_residues()[0] <= 1e-12);

    const std::vector<complex<double>> real_pair{1.0, 2.0};
    const PowerSums ps2 = power_sums_from_roots(real_pair, 2);
    CHECK(ps2.s(1) == 3.0);
    CHECK(ps2.s(2) == 5.0);

    const std::vector<complex<double>> unpaired{{0.0, 1.0}};
    CHECK_THROWS_AS(power_sums_from_roots(unpaired, 1), ConsistencyError);
}

TEST_CASE("gram determinant hand values") {
    const PowerSums ps_imag = newton_power_sums(MonicPolynomial({0.0, 1.0}), 4);
    const std::vector<int> i01{0, 1};
    CHECK(gram_determinant(ps_imag, i01) == doctest::Approx(-4.0)); // det [[2,0],[0,-2]]

    const std::vector<int> i0{0};
    CHECK(gram_determinant(ps_imag, i0) == 2.0); // s_0 = n

    const PowerSums ps_real = newton_power_sums(MonicPolynomial({-3.0, 2.0}), 4);
    CHECK(gram_determinant(ps_real, i01) == doctest::Approx(1.0)); // det [[2,3],[3,5]]

    const std::vector<int> bad_order{1, 0};
    CHECK_THROWS_AS(gram_determinant(ps_real, bad_order), InputError);
    const std::vector<int> too_far{0, 3}; // needs s_6
    CHECK_THROWS_AS(gram_determinant(ps_real, too_far), InputError);
}

TEST_CASE("prop1 verdicts on the worked examples") {
    SUBCASE("x^2+1: i and iii fire, ii does not") {
        const auto v = prop1_verdicts(newton_power_sums(MonicPolynomial({0.0, 1.0}), 4));
        CHECK(v[0].id == "prop1-i");
        CHECK(v[0].fired);
        CHECK(v[0].lhs == doctest::Approx(-4.0));
        CHECK(v[0].rhs == doctest::Approx(0.0));
        CHECK_FALSE(v[1].fired); // 4 < 4 is false
        CHECK(v[1].lhs == doctest::Approx(4.0));
        CHECK(v[1].rhs == doctest::Approx(4.0));
        CHECK(v[2].fired);
        CHECK(v[2].lhs == doctest::Approx(-4.0));
    }
    SUBCASE("(x-1)(x-2): nothing fires") {
        const auto v = prop1_verdicts(newton_power_sums(MonicPolynomial({-3.0, 2.0}), 4));
        CHECK_FALSE(v[0].fired);
        CHECK(v[0].lhs == doctest::Approx(10.0));
        CHECK(v[0].rhs == doctest::Approx(9.0));
        CHECK_FALSE(v[1].fired);
        CHECK(v[1].lhs == doctest::Approx(34.0)); // s4 = 17
        CHECK(v[1].rhs == doctest::Approx(25.0));
        CHECK_FALSE(v[2].fired);
        CHECK(v[2].lhs == doctest::Approx(85.0));
        CHECK(v[2].rhs == doctest::Approx(81.0));
    }
    SUBCASE("x^3-x+1: only iii fires") {
        const auto v = prop1_verdicts(newton_power_sums(MonicPolynomial({0.0, -1.0, 1.0}), 4));
        CHECK_FALSE(v[0].fired);
        CHECK_FALSE(v[1].fired);
        CHECK(v[2].fired);
        CHECK(v[2].lhs == doctest::Approx(4.0)); // s2 s4 = 2*2
        CHECK(v[2].rhs == doctest::Approx(9.0)); // s3^2 = 9
    }
    SUBCASE("needs s_4") {
        const PowerSums short_ps(2, {1.0, 2.0, 3.0});
        CHECK_THROWS_AS(prop1_verdicts(short_ps), InputError);
    }
}

TEST_CASE("prop2 verdicts: degree-dispatched coefficient forms") {
    SUBCASE("n=3, x^3-x+1") {
        const auto v = prop2_verdicts(MonicPolynomial({0.0, -1.0, 1.0}));
        CHECK_FALSE(v[0].fired);
        CHECK_FALSE(v[1].fired);
        CHECK(v[2].fired);
        CHECK(v[2].lhs == doctest::Approx(0.0));
        CHECK(v[2].rhs == doctest::Approx(5.0)); // 4(-1)^3 + 9
    }
    SUBCASE("n=2, x^2+1") {
        const auto v = prop2_verdicts(MonicPolynomial({0.0, 1.0}));
        CHECK(v[0].fired); // 2(0-2) = -4 < 0
        CHECK(v[0].lhs == doctest::Approx(-4.0));
        CHECK_FALSE(v[1].fired); // 0 < 0 is false
        CHECK(v[2].fired); // a2^2(a1^2-4a2) = -4 < 0
    }
    SUBCASE("n=4, x^4: all margins zero, nothing fires") {
        const auto v = prop2_verdicts(MonicPolynomial({0.0, 0.0, 0.0, 0.0}));
        for (const auto& verdict : v) {
            CHECK_FALSE(verdict.fired);
            CHECK(verdict.margin == 0.0);
        }
    }
    SUBCASE("degree 1 rejected") {
        CHECK_THROWS_AS(prop2_verdicts(MonicPolynomial({1.0})), InputError);
    }
}

TEST_CASE("complex root certificate search") {
    SUBCASE("x^2+1 yields (0,1) at -4") {
        const auto cert = complex_root_certificate(MonicPolynomial({0.0, 1.0}), 2);
        REQUIRE(cert.has_value());
        CHECK(cert->indices == std::vector<int>{0, 1});
        CHECK(cert->value == doctest::Approx(-4.0));
    }
    SUBCASE("real-rooted quadratic yields nothing") {
        CHECK_FALSE(complex_root_certificate(MonicPolynomial({-3.0, 2.0}), 2).has_value());
    }
    SUBCASE("x^3-x+1 yields (1,2) at -5") {
        const auto cert = complex_root_certificate(MonicPolynomial({0.0, -1.0, 1.0}), 2);
        REQUIRE(cert.has_value());
        CHECK(cert->indices == std::vector<int>{1, 2});
        CHECK(cert->value == doctest::Approx(-5.0));
    }
    SUBCASE("subset size bounds") {
        CHECK_THROWS_AS(complex_root_certificate(MonicPolynomial({0.0, 1.0}), 0), InputError);
        CHECK_THROWS_AS(complex_root_certificate(MonicPolynomial({0.0, 1.0}), 3), InputError);
    }
    SUBCASE("scan records the minimal determinant when nothing fires") {
        const GramScan scan = gram_scan(MonicPolynomial({-3.0, 2.0}), 2);
        CHECK_FALSE(scan.certificate.has_value());
        CHECK(scan.min_value == doctest::Approx(1.0)); // det [[2,3],[3,5]]
        CHECK(scan.min_indices == std::vector<int>{0, 1});
    }
    SUBCASE("max size 1 falls back to singleton search") {
        const GramScan scan = gram_scan(MonicPolynomial({0.0, 1.0}), 1);
        REQUIRE(scan.certificate.has_value());
        CHECK(scan.certificate->indices == std::vector<int>{1}); // s2 = -2
        CHECK(scan.certificate->value == doctest::Approx(-2.0));
    }
}

TEST_CASE("property: real-rooted polynomials have non-negative Gramians") {
    std::mt19937_64 rng(20240831);
    std::uniform_int_distribution<int> pick_n(1, 8);
    std::uniform_real_distribution<double> pick_root(-3.0, 3.0);
    for (int trial = 0; trial < 400; ++trial) {
        const int n = pick_n(rng);
        std::vector<double> roots(static_cast<size_t>(n));
        for (double& r : roots)
            r = pick_root(rng);
        const MonicPolynomial poly = testutil::poly_from_real_roots(roots);
        const PowerSums ps = newton_power_sums(poly, std::max(1, 2 * (n - 1)));
        for (const auto& subset : index_subsets(n, 3)) {
            double max_entry = 0.0;
            for (int p : subset)
                for (int q : subset)
                    max_entry = std::max(max_entry, std::fabs(ps.s(p + q)));
            const double det = gram_determinant(ps, subset);
            const double band =
                1e-8 * std::pow(1.0 + max_entry, static_cast<int>(subset.size()));
            CHECK(det >= -band);
        }
    }
}

TEST_CASE("property: newton sums agree with direct root sums") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> pick_real(0, 4);
    std::uniform_int_distribution<int> pick_pairs(0, 2);
    for (int trial = 0; trial < 400; ++trial) {
        int n_real = pick_real(rng);
        int n_pairs = pick_pairs(rng);
        if (n_real + 2 * n_pairs == 0)
            n_real = 1;
        const auto roots = testutil::random_conjugate_closed_roots(rng, n_real, n_pairs, 2.0);
        const int n = static_cast<int>(roots.size());
        const int max_k = std::max(1, 2 * (n - 1));
        const MonicPolynomial poly = testutil::poly_from_roots(roots);
        const PowerSums from_coeffs = newton_power_sums(poly, max_k);
        for (int k = 1; k <= max_k; ++k)
            CHECK(rel_err(from_coeffs.s(k), direct_power_sum(roots, k)) < 1e-9);
    }
}

TEST_CASE("property: prop2 equals prop1 through newton sums away from the band") {
    std::mt19937_64 rng(555);
    std::uniform_int_distribution<int> pick_n(2, 8);
    std::uniform_real_distribution<double> pick_coeff(-2.0, 2.0);
    int compared = 0;
    for (int trial = 0; trial < 800; ++trial) {
        const int n = pick_n(rng);
        std::vector<double> coeffs(static_cast<size_t>(n));
        for (double& a : coeffs)
            a = pick_coeff(rng);
        const MonicPolynomial poly(coeffs);
        const auto v1 = prop1_verdicts(newton_power_sums(poly, 4));
        const auto v2 = prop2_verdicts(poly);
        for (int i = 0; i < 3; ++i) {
            const double scale = std::max({1.0, std::fabs(v1[i].lhs), std::fabs(v1[i].rhs),
                                           std::fabs(v2[i].lhs), std::fabs(v2[i].rhs)});
            if (std::fabs(v1[i].margin) < 1e-6 * scale ||
                std::fabs(v2[i].margin) < 1e-6 * scale)
                continue;
            CHECK(v1[i].fired == v2[i].fired);
            ++compared;
        }
    }
    CHECK(compared > 1000);
}

TEST_CASE("property: pairwise Gramians equal the negated prop1 margins") {
    std::mt19937_64 rng(991);
    std::uniform_int_distribution<int> pick_n(3, 8);
    std::uniform_real_distribution<double> pick_coeff(-2.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = pick_n(rng);
        std::vector<double> coeffs(static_cast<size_t>(n));
        for (double& a : coeffs)
            a = pick_coeff(rng);
        const MonicPolynomial poly(coeffs);
        const PowerSums ps = newton_power_sums(poly, 4);
        const auto v = prop1_verdicts(ps);
        const std::vector<int> i01{0, 1}, i02{0, 2}, i12{1, 2};
        CHECK(rel_err(gram_determinant(ps, i01), -v[0].margin) < 1e-10);
        CHECK(rel_err(gram_determinant(ps, i02), -v[1].margin) < 1e-10);
        CHECK(rel_err(gram_determinant(ps, i12), -v[2].margin) < 1e-10);
    }
}

TEST_CASE("property: sign patterns of s2, s4 force specific verdicts") {
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<int> pick_n(2, 8);
    std::uniform_real_distribution<double> pick_coeff(-2.0, 2.0);
    int hits_i = 0, hits_ii = 0, hits_iii = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        const int n = pick_n(rng);
        std::vector<double> coeffs(static_cast<size_t>(n));
        for (double& a : coeffs)
            a = pick_coeff(rng);
        const PowerSums ps = newton_power_sums(MonicPolynomial(coeffs), 4);
        const auto v = prop1_verdicts(ps);
        if (ps.s(2) < -1e-6) {
            CHECK(v[0].fired);
            ++hits_i;
        }
        if (ps.s(4) < -1e-6) {
            CHECK(v[1].fired);
            ++hits_ii;
        }
        if ((ps.s(2) < -1e-3 && ps.s(4) > 1e-3) ||
            (ps.s(2) > 1e-3 && ps.s(4) < -1e-3)) {
            CHECK(v[2].fired);
            ++hits_iii;
        }
    }
    CHECK(hits_i > 50);
    CHECK(hits_ii > 50);
    CHECK(hits_iii > 50);
}

TEST_CASE("verdict tolerance band blocks zero-margin firing") {
    const CriterionVerdict v = make_verdict("t", 1.0, 1.0);
    CHECK_FALSE(v.fired);
    CHECK(v.margin == 0.0);
    const CriterionVerdict w = make_verdict("t", 0.0, 1e-9);
    CHECK(w.fired);
}
