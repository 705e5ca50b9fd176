#ifndef INSTAB_POLYNOMIAL_HPP
#define INSTAB_POLYNOMIAL_HPP

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "instab/criterion.hpp"
#include "instab/errors.hpp"

namespace instab {

/// Real monic polynomial  Q(x) = x^n + a1 x^(n-1) + ... + an,
/// stored as the ordered coefficients a1..an (leading 1 implicit).
class MonicPolynomial {
public:
    explicit MonicPolynomial(std::vector<double> coeffs);

    int degree() const { return static_cast<int>(coeffs_.size()); }
    /// a_k for 1 <= k <= degree.
    double coeff(int k) const;
    const std::vector<double>& coeffs() const { return coeffs_; }

    double operator()(double x) const;
    std::complex<double> operator()(std::complex<double> x) const;

private:
    std::vector<double> coeffs_;
};

/// Power sums s_k of the n roots of a polynomial, for k = 1..max_index().
/// s_0 is always the exact integer n and is not stored.
class PowerSums {
public:
    PowerSums(int root_count, std::vector<double> values,
              std::vector<double> imag_residues = {});

    int root_count() const { return n_; }
    int max_index() const { return static_cast<int>(values_.size()); }
    /// s_k; k = 0 returns the root count exactly.
    double s(int k) const;
    const std::vector<double>& values() const { return values_; }

    /// Per-sum |Im| residues; populated only when built from explicit roots.
    const std::vector<double>& imag_residues() const { return imag_residues_; }

private:
    int n_ = 0;
    std::vector<double> values_;
    std::vector<double> imag_residues_;
};

/// s_1..s_max_k from the coefficients alone, by the two Newton recurrences
/// (k <= n and k > n).
PowerSums newton_power_sums(const MonicPolynomial& poly, int max_k);

/// s_1..s_max_k summed directly over an explicit root set. The roots of a
/// real polynomial must be closed under conjugation; a sum whose imaginary
/// residue exceeds 1e-8 * max(1, |sum|) raises ConsistencyError.
PowerSums power_sums_from_roots(std::span<const std::complex<double>> roots,
                                int max_k);

/// Determinant of the k x k matrix with entry (p,q) = s_{i_p + i_q}, the
/// Hankel form of the Gramian of root-power vectors. Indices must be
/// strictly increasing and >= 0; every needed power sum must be available.
double gram_determinant(const PowerSums& ps, std::span<const int> indices);

/// The three power-sum criteria. Any fired verdict certifies a complex root
/// with non-zero imaginary part. Requires s_1..s_4.
///   prop1-i   : n s2    < s1^2
///   prop1-ii  : n s4    < s2^2
///   prop1-iii : s2 s4   < s3^2
std::array<CriterionVerdict, 3> prop1_verdicts(const PowerSums& ps);

/// Coefficient-only forms of the same three criteria, dispatched on the
/// degree (n = 2, n = 3, n >= 4). Degree must be at least 2.
std::array<CriterionVerdict, 3> prop2_verdicts(const MonicPolynomial& poly);

/// A negative Gramian located by subset search: index subset and its value.
struct GramCertificate {
    std::vector<int> indices;
    double value = 0.0;
};

/// Full scan record: the first certificate found (if any) plus the minimal
/// determinant seen over all searched subsets.
struct GramScan {
    std::optional<GramCertificate> certificate;
    std::vector<int> min_indices;
    double min_value = 0.0;
};

GramScan gram_scan(const MonicPolynomial& poly, int max_subset_size);

/// Searches subsets {i1 < ... < ik} of {0..n-1} with k <= max_subset_size in
/// lexicographic order by (size, indices); returns the first subset whose
/// Gram determinant falls below the negativity band, or nullopt. Such a
/// subset certifies a complex root with non-zero imaginary part. Singleton
/// subsets are searched only when max_subset_size is 1: a negative singleton
/// s_{2i} always drags the pair (0,i) negative as well, so starting at pairs
/// costs no detection power.
std::optional<GramCertificate>
complex_root_certificate(const MonicPolynomial& poly, int max_subset_size);

} // namespace instab

#endif
