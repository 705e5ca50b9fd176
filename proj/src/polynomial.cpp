#include "instab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace instab {

MonicPolynomial::MonicPolynomial(std::vector<double> coeffs)
    : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty())
        throw InputError("MonicPolynomial: degree must be at least 1");
    for (double a : coeffs_)
        if (!std::isfinite(a))
            throw InputError("MonicPolynomial: non-finite coefficient");
}

double MonicPolynomial::coeff(int k) const {
    if (k < 1 || k > degree())
        throw InputError("MonicPolynomial: coefficient index out of range");
    return coeffs_[static_cast<size_t>(k) - 1];
}

double MonicPolynomial::operator()(double x) const {
    double acc = 1.0;
    for (double a : coeffs_)
        acc = acc * x + a;
    return acc;
}

std::complex<double> MonicPolynomial::operator()(std::complex<double> x) const {
    std::complex<double> acc = 1.0;
    for (double a : coeffs_)
        acc = acc * x + a;
    return acc;
}

PowerSums::PowerSums(int root_count, std::vector<double> values,
                     std::vector<double> imag_residues)
    : n_(root_count), values_(std::move(values)),
      imag_residues_(std::move(imag_residues)) {
    if (n_ < 1)
        throw InputError("PowerSums: root count must be positive");
    if (values_.empty())
        throw InputError("PowerSums: need at least s_1");
    for (double v : values_)
        if (!std::isfinite(v))
            throw InputError("PowerSums: non-finite value");
}

double PowerSums::s(int k) const {
    if (k == 0)
        return static_cast<double>(n_);
    if (k < 0 || k > max_index())
        throw InputError("PowerSums: s_" + std::to_string(k) +
                         " not available (max " + std::to_string(max_index()) + ")");
    return values_[static_cast<size_t>(k) - 1];
}

PowerSums newton_power_sums(const MonicPolynomial& poly, int max_k) {
    if (max_k < 1)
        throw InputError("newton_power_sums: max_k must be >= 1");
    const int n = poly.degree();
    std::vector<double> s(static_cast<size_t>(max_k));
    for (int k = 1; k <= max_k; ++k) {
        double acc = 0.0;
        if (k <= n) {
            // s_k + a1 s_{k-1} + ... + a_{k-1} s_1 + k a_k = 0
            for (int j = 1; j < k; ++j)
                acc += poly.coeff(j) * s[static_cast<size_t>(k - j) - 1];
            acc += static_cast<double>(k) * poly.coeff(k);
        } else {
            // s_k + a1 s_{k-1} + ... + a_n s_{k-n} = 0
            for (int j = 1; j <= n; ++j)
                acc += poly.coeff(j) * s[static_cast<size_t>(k - j) - 1];
        }
        s[static_cast<size_t>(k) - 1] = -acc;
    }
    return PowerSums(n, std::move(s));
}

PowerSums power_sums_from_roots(std::span<const std::complex<double>> roots,
                                int max_k) {
    if (roots.empty())
        throw InputError("power_sums_from_roots: empty root set");
    if (max_k < 1)
        throw InputError("power_sums_from_roots: max_k must be >= 1");
    std::vector<std::complex<double>> pw(roots.begin(), roots.end());
    std::vector<double> values(static_cast<size_t>(max_k));
    std::vector<double> residues(static_cast<size_t>(max_k));
    for (int k = 1; k <= max_k; ++k) {
        if (k > 1)
            for (size_t i = 0; i < pw.size(); ++i)
                pw[i] *= roots[i];
        std::complex<double> sum = 0.0;
        for (const auto& p : pw)
            sum += p;
        const double residue = std::fabs(sum.imag());
        if (residue > 1e-8 * std::max(1.0, std::abs(sum)))
            throw ConsistencyError(
                "power_sums_from_roots: roots not closed under conjugation "
                "(s_" + std::to_string(k) + " imaginary residue " +
                std::to_string(residue) + ")");
        values[static_cast<size_t>(k) - 1] = sum.real();
        residues[static_cast<size_t>(k) - 1] = residue;
    }
    return PowerSums(static_cast<int>(roots.size()), std::move(values),
                     std::move(residues));
}

namespace {

// Determinant of a small dense matrix by Gaussian elimination with partial
// pivoting; a destroys its argument.
double pivoted_det(std::vector<double>& a, int k) {
    double det = 1.0;
    for (int col = 0; col < k; ++col) {
        int piv = col;
        double best = std::fabs(a[static_cast<size_t>(col) * k + col]);
        for (int r = col + 1; r < k; ++r) {
            const double cand = std::fabs(a[static_cast<size_t>(r) * k + col]);
            if (cand > best) {
                best = cand;
                piv = r;
            }
        }
        if (best == 0.0)
            return 0.0;
        if (piv != col) {
            for (int j = 0; j < k; ++j)
                std::swap(a[static_cast<size_t>(piv) * k + j],
                          a[static_cast<size_t>(col) * k + j]);
            det = -det;
        }
        const double pivot = a[static_cast<size_t>(col) * k + col];
        det *= pivot;
        for (int r = col + 1; r < k; ++r) {
            const double f = a[static_cast<size_t>(r) * k + col] / pivot;
            if (f == 0.0)
                continue;
            for (int j = col; j < k; ++j)
                a[static_cast<size_t>(r) * k + j] -=
                    f * a[static_cast<size_t>(col) * k + j];
        }
    }
    return det;
}

} // namespace

double gram_determinant(const PowerSums& ps, std::span<const int> indices) {
    const int k = static_cast<int>(indices.size());
    if (k < 1)
        throw InputError("gram_determinant: empty index set");
    for (int p = 0; p < k; ++p) {
        if (indices[static_cast<size_t>(p)] < 0)
            throw InputError("gram_determinant: negative index");
        if (p > 0 && indices[static_cast<size_t>(p)] <= indices[static_cast<size_t>(p) - 1])
            throw InputError("gram_determinant: indices must be strictly increasing");
    }
    const int max_sum = 2 * indices[static_cast<size_t>(k) - 1];
    if (max_sum > ps.max_index() && max_sum != 0)
        throw InputError("gram_determinant: power sum s_" +
                         std::to_string(max_sum) + " not available");
    std::vector<double> a(static_cast<size_t>(k) * k);
    for (int p = 0; p < k; ++p)
        for (int q = 0; q < k; ++q)
            a[static_cast<size_t>(p) * k + q] =
                ps.s(indices[static_cast<size_t>(p)] + indices[static_cast<size_t>(q)]);
    return pivoted_det(a, k);
}

std::array<CriterionVerdict, 3> prop1_verdicts(const PowerSums& ps) {
    if (ps.max_index() < 4)
        throw InputError("prop1_verdicts: need power sums up to s_4");
    const double n = ps.s(0);
    return {make_verdict("prop1-i", n * ps.s(2), ps.s(1) * ps.s(1)),
            make_verdict("prop1-ii", n * ps.s(4), ps.s(2) * ps.s(2)),
            make_verdict("prop1-iii", ps.s(2) * ps.s(4), ps.s(3) * ps.s(3))};
}

std::array<CriterionVerdict, 3> prop2_verdicts(const MonicPolynomial& poly) {
    const int n = poly.degree();
    if (n < 2)
        throw InputError("prop2_verdicts: degree must be at least 2");
    const double nn = n;
    const double a1 = poly.coeff(1);
    const double a2 = poly.coeff(2);
    const double a3 = n >= 3 ? poly.coeff(3) : 0.0;
    const double a4 = n >= 4 ? poly.coeff(4) : 0.0;

    CriterionVerdict i =
        make_verdict("prop2-i", nn * (a1 * a1 - 2.0 * a2), a1 * a1);

    CriterionVerdict ii;
    CriterionVerdict iii;
    if (n == 2) {
        ii = make_verdict("prop2-ii", a1 * a1 * (a1 * a1 - 4.0 * a2), 0.0);
        iii = make_verdict("prop2-iii", a2 * a2 * (a1 * a1 - 4.0 * a2), 0.0);
    } else if (n == 3) {
        ii = make_verdict("prop2-ii",
                          a1 * a1 * a1 * a1 + 6.0 * a1 * a3 + a2 * a2,
                          4.0 * a1 * a1 * a2);
        iii = make_verdict("prop2-iii",
                           a1 * a1 * a2 * a2 + 10.0 * a1 * a2 * a3,
                           2.0 * a1 * a1 * a1 * a3 + 4.0 * a2 * a2 * a2 +
                               9.0 * a3 * a3);
    } else {
        ii = make_verdict(
            "prop2-ii",
            nn * (a1 * a1 * a1 * a1 - 4.0 * a1 * a1 * a2 + 4.0 * a1 * a3 +
                  2.0 * a2 * a2 - 4.0 * a4),
            (a1 * a1 - 2.0 * a2) * (a1 * a1 - 2.0 * a2));
        iii = make_verdict(
            "prop2-iii",
            a1 * a1 * a2 * a2 + 10.0 * a1 * a2 * a3 + 8.0 * a2 * a4,
            2.0 * a1 * a1 * a1 * a3 + 4.0 * a1 * a1 * a4 +
                4.0 * a2 * a2 * a2 + 9.0 * a3 * a3);
    }
    return {std::move(i), std::move(ii), std::move(iii)};
}

GramScan gram_scan(const MonicPolynomial& poly, int max_subset_size) {
    const int n = poly.degree();
    if (max_subset_size < 1 || max_subset_size > n)
        throw InputError("gram_scan: max_subset_size must be in [1, degree]");
    const PowerSums ps = newton_power_sums(poly, std::max(1, 2 * (n - 1)));

    GramScan scan;
    bool have_min = false;
    std::vector<int> subset;
    // Singleton Gramians are subsumed by the pairs (0,i): s_{2i} < 0 forces
    // n s_{2i} - s_i^2 < 0, so the search starts at pairs unless pairs are
    // out of reach.
    const int first_size = max_subset_size == 1 ? 1 : 2;
    for (int k = first_size; k <= max_subset_size && !scan.certificate; ++k) {
        subset.resize(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i)
            subset[static_cast<size_t>(i)] = i;
        while (true) {
            const double det = gram_determinant(ps, subset);
            if (!have_min || det < scan.min_value) {
                have_min = true;
                scan.min_value = det;
                scan.min_indices = subset;
            }
            double max_entry = 0.0;
            for (int p : subset)
                for (int q : subset)
                    max_entry = std::max(max_entry, std::fabs(ps.s(p + q)));
            const double band = 1e-8 * std::pow(1.0 + max_entry, k);
            if (det < -band) {
                scan.certificate = GramCertificate{subset, det};
                break;
            }
            // next k-combination of {0..n-1} in lexicographic order
            int pos = k - 1;
            while (pos >= 0 &&
                   subset[static_cast<size_t>(pos)] == n - k + pos)
                --pos;
            if (pos < 0)
                break;
            ++subset[static_cast<size_t>(pos)];
            for (int j = pos + 1; j < k; ++j)
                subset[static_cast<size_t>(j)] =
                    subset[static_cast<size_t>(j) - 1] + 1;
        }
    }
    return scan;
}

std::optional<GramCertificate>
complex_root_certificate(const MonicPolynomial& poly, int max_subset_size) {
    return gram_scan(poly, max_subset_size).certificate;
}

} // namespace instab
