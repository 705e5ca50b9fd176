#ifndef INSTAB_MATRIX_HPP
#define INSTAB_MATRIX_HPP

#include <array>
#include <vector>

#include "instab/criterion.hpp"
#include "instab/errors.hpp"
#include "instab/polynomial.hpp"

namespace instab {

/// Dense real n x n matrix, row-major. Sized for the desk-scale systems this
/// library targets (n up to a few dozen); all entries are validated finite.
class RealSquareMatrix {
public:
    RealSquareMatrix() = default;
    explicit RealSquareMatrix(int n);
    RealSquareMatrix(int n, std::vector<double> entries);

    static RealSquareMatrix identity(int n);

    int size() const { return n_; }
    double operator()(int i, int j) const {
        return e_[static_cast<size_t>(i) * n_ + j];
    }
    double& operator()(int i, int j) {
        return e_[static_cast<size_t>(i) * n_ + j];
    }
    const std::vector<double>& entries() const { return e_; }

    RealSquareMatrix transposed() const;
    double trace() const;
    double frobenius_norm_sq() const;
    double frobenius_norm() const;

    RealSquareMatrix& operator+=(const RealSquareMatrix& o);
    RealSquareMatrix& operator-=(const RealSquareMatrix& o);
    RealSquareMatrix& operator*=(double s);

    friend RealSquareMatrix operator+(RealSquareMatrix a, const RealSquareMatrix& b) {
        a += b;
        return a;
    }
    friend RealSquareMatrix operator-(RealSquareMatrix a, const RealSquareMatrix& b) {
        a -= b;
        return a;
    }
    friend RealSquareMatrix operator*(RealSquareMatrix a, double s) {
        a *= s;
        return a;
    }
    friend RealSquareMatrix operator*(double s, RealSquareMatrix a) {
        a *= s;
        return a;
    }
    friend RealSquareMatrix operator-(RealSquareMatrix a) {
        a *= -1.0;
        return a;
    }
    friend RealSquareMatrix operator*(const RealSquareMatrix& a,
                                      const RealSquareMatrix& b);

private:
    int n_ = 0;
    std::vector<double> e_;
};

/// M = sym + skew with sym = (M + M^T)/2, skew = (M - M^T)/2, both built by
/// explicit averaging so the symmetry of each part holds bit-exactly.
struct SymSkewSplit {
    RealSquareMatrix sym;
    RealSquareMatrix skew;
};

SymSkewSplit sym_skew_split(const RealSquareMatrix& m);

/// s_1..s_4 of the eigenvalues, evaluated along two independent routes:
/// direct traces Tr(M^k) (the primary values) and the symmetric/skew
/// norm-trace identities. The routes are cross-checked on every call.
struct TracePowerSums {
    PowerSums sums;
    std::array<double, 4> via_traces;
    std::array<double, 4> via_split;
};

TracePowerSums trace_power_sums(const RealSquareMatrix& m);

/// Trace/norm forms of the three power-sum criteria for the eigenvalues of
/// M. Any fired verdict certifies a complex eigenvalue with non-zero
/// imaginary part.
std::array<CriterionVerdict, 3> theorem1_verdicts(const RealSquareMatrix& m);

/// Monic characteristic polynomial det(xI - M) by the Faddeev-LeVerrier
/// trace recursion; n is capped at 64 (double-precision conditioning guard).
/// Coefficients are verified against Tr(M^k) through Newton's identities.
MonicPolynomial char_poly(const RealSquareMatrix& m);

/// Determinant by Gaussian elimination with partial pivoting.
double determinant(const RealSquareMatrix& m);

/// Cholesky-success test with zero shift; expects a symmetric argument.
bool is_positive_definite(const RealSquareMatrix& m);

/// X with A X = B via LU with partial pivoting. A pivot below
/// 1e-12 * ||A||_F is treated as singular (InputError).
RealSquareMatrix solve(const RealSquareMatrix& a, const RealSquareMatrix& b);

} // namespace instab

#endif
