#include "instab/matrix.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace instab {

RealSquareMatrix::RealSquareMatrix(int n) : n_(n) {
    if (n < 1)
        throw InputError("RealSquareMatrix: dimension must be positive");
    e_.assign(static_cast<size_t>(n) * n, 0.0);
}

RealSquareMatrix::RealSquareMatrix(int n, std::vector<double> entries)
    : n_(n), e_(std::move(entries)) {
    if (n < 1)
        throw InputError("RealSquareMatrix: dimension must be positive");
    if (e_.size() != static_cast<size_t>(n) * n)
        throw InputError("RealSquareMatrix: entry count does not match n*n");
    for (double v : e_)
        if (!std::isfinite(v))
            throw InputError("RealSquareMatrix: non-finite entry");
}

RealSquareMatrix RealSquareMatrix::identity(int n) {
    RealSquareMatrix m(n);
    for (int i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

RealSquareMatrix RealSquareMatrix::transposed() const {
    RealSquareMatrix t(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

double RealSquareMatrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < n_; ++i)
        t += (*this)(i, i);
    return t;
}

double RealSquareMatrix::frobenius_norm_sq() const {
    double t = 0.0;
    for (double v : e_)
        t += v * v;
    return t;
}

double RealSquareMatrix::frobenius_norm() const {
    return std::sqrt(frobenius_norm_sq());
}

RealSquareMatrix& RealSquareMatrix::operator+=(const RealSquareMatrix& o) {
    if (o.n_ != n_)
        throw InputError("matrix add: dimension mismatch");
    for (size_t i = 0; i < e_.size(); ++i)
        e_[i] += o.e_[i];
    return *this;
}

RealSquareMatrix& RealSquareMatrix::operator-=(const RealSquareMatrix& o) {
    if (o.n_ != n_)
        throw InputError("matrix subtract: dimension mismatch");
    for (size_t i = 0; i < e_.size(); ++i)
        e_[i] -= o.e_[i];
    return *this;
}

RealSquareMatrix& RealSquareMatrix::operator*=(double s) {
    for (double& v : e_)
        v *= s;
    return *this;
}

RealSquareMatrix operator*(const RealSquareMatrix& a, const RealSquareMatrix& b) {
    const int n = a.size();
    if (b.size() != n)
        throw InputError("matrix multiply: dimension mismatch");
    RealSquareMatrix c(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0)
                continue;
            for (int j = 0; j < n; ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

SymSkewSplit sym_skew_split(const RealSquareMatrix& m) {
    const int n = m.size();
    SymSkewSplit split{RealSquareMatrix(n), RealSquareMatrix(n)};
    for (int i = 0; i < n; ++i) {
        split.sym(i, i) = m(i, i);
        for (int j = i + 1; j < n; ++j) {
            const double s = 0.5 * (m(i, j) + m(j, i));
            const double a = 0.5 * (m(i, j) - m(j, i));
            split.sym(i, j) = s;
            split.sym(j, i) = s;
            split.skew(i, j) = a;
            split.skew(j, i) = -a;
        }
    }
    return split;
}

TracePowerSums trace_power_sums(const RealSquareMatrix& m) {
    const RealSquareMatrix m2 = m * m;
    const RealSquareMatrix m3 = m2 * m;
    const RealSquareMatrix m4 = m3 * m;
    const std::array<double, 4> direct{m.trace(), m2.trace(), m3.trace(),
                                       m4.trace()};

    const auto [ms, ma] = sym_skew_split(m);
    const RealSquareMatrix ms2 = ms * ms;
    const RealSquareMatrix ma2 = ma * ma;
    const RealSquareMatrix msma = ms * ma;
    const std::array<double, 4> split{
        ms.trace(),
        ms.frobenius_norm_sq() - ma.frobenius_norm_sq(),
        (ms2 * ms).trace() + 3.0 * (ms * ma2).trace(),
        ms2.frobenius_norm_sq() + ma2.frobenius_norm_sq() -
            4.0 * msma.frobenius_norm_sq() + 2.0 * (msma * msma).trace()};

    for (int k = 0; k < 4; ++k)
        if (rel_err(direct[static_cast<size_t>(k)], split[static_cast<size_t>(k)]) > 1e-6)
            throw ConsistencyError(
                "trace_power_sums: direct trace and sym/skew routes disagree "
                "at s_" + std::to_string(k + 1));

    return TracePowerSums{
        PowerSums(m.size(), {direct[0], direct[1], direct[2], direct[3]}),
        direct, split};
}

std::array<CriterionVerdict, 3> theorem1_verdicts(const RealSquareMatrix& m) {
    const double n = m.size();
    const auto [ms, ma] = sym_skew_split(m);
    const double s2 = ms.frobenius_norm_sq() - ma.frobenius_norm_sq();
    const RealSquareMatrix ms2 = ms * ms;
    const RealSquareMatrix ma2 = ma * ma;
    const RealSquareMatrix msma = ms * ma;
    const double s4 = ms2.frobenius_norm_sq() + ma2.frobenius_norm_sq() -
                      4.0 * msma.frobenius_norm_sq() +
                      2.0 * (msma * msma).trace();
    const double s3 = (ms2 * ms).trace() + 3.0 * (ms * ma2).trace();
    const double tr = ms.trace();
    return {make_verdict("thm1-i", n * s2, tr * tr),
            make_verdict("thm1-ii", n * s4, s2 * s2),
            make_verdict("thm1-iii", s2 * s4, s3 * s3)};
}

MonicPolynomial char_poly(const RealSquareMatrix& m) {
    const int n = m.size();
    if (n > 64)
        throw InputError("char_poly: dimension above the n <= 64 guard");

    // Faddeev-LeVerrier: B_1 = M, c_k = -Tr(B_k)/k, B_{k+1} = M(B_k + c_k I).
    std::vector<double> coeffs(static_cast<size_t>(n));
    RealSquareMatrix b = m;
    for (int k = 1; k <= n; ++k) {
        const double ck = -b.trace() / k;
        coeffs[static_cast<size_t>(k) - 1] = ck;
        if (k < n) {
            for (int i = 0; i < n; ++i)
                b(i, i) += ck;
            b = m * b;
        }
    }
    MonicPolynomial poly(std::move(coeffs));

    const PowerSums from_coeffs = newton_power_sums(poly, 4);
    RealSquareMatrix pw = m;
    for (int k = 1; k <= 4; ++k) {
        if (rel_err(from_coeffs.s(k), pw.trace()) > 1e-8)
            throw ConsistencyError(
                "char_poly: Newton identity check failed at s_" +
                std::to_string(k));
        if (k < 4)
            pw = pw * m;
    }
    return poly;
}

double determinant(const RealSquareMatrix& m) {
    const int n = m.size();
    RealSquareMatrix a = m;
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::fabs(a(col, col));
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(a(r, col)) > best) {
                best = std::fabs(a(r, col));
                piv = r;
            }
        if (best == 0.0)
            return 0.0;
        if (piv != col) {
            for (int j = 0; j < n; ++j)
                std::swap(a(piv, j), a(col, j));
            det = -det;
        }
        const double pivot = a(col, col);
        det *= pivot;
        for (int r = col + 1; r < n; ++r) {
            const double f = a(r, col) / pivot;
            if (f == 0.0)
                continue;
            for (int j = col; j < n; ++j)
                a(r, j) -= f * a(col, j);
        }
    }
    return det;
}

bool is_positive_definite(const RealSquareMatrix& m) {
    const int n = m.size();
    RealSquareMatrix l(n);
    for (int j = 0; j < n; ++j) {
        double d = m(j, j);
        for (int k = 0; k < j; ++k)
            d -= l(j, k) * l(j, k);
        if (d <= 0.0)
            return false;
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (int i = j + 1; i < n; ++i) {
            double v = m(i, j);
            for (int k = 0; k < j; ++k)
                v -= l(i, k) * l(j, k);
            l(i, j) = v / ljj;
        }
    }
    return true;
}

RealSquareMatrix solve(const RealSquareMatrix& a, const RealSquareMatrix& b) {
    const int n = a.size();
    if (b.size() != n)
        throw InputError("solve: dimension mismatch");
    const double pivot_floor = 1e-12 * a.frobenius_norm();

    RealSquareMatrix lu = a;
    std::vector<int> perm(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        perm[static_cast<size_t>(i)] = i;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::fabs(lu(col, col));
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(lu(r, col)) > best) {
                best = std::fabs(lu(r, col));
                piv = r;
            }
        if (best < pivot_floor)
            throw InputError("solve: matrix is singular to working precision");
        if (piv != col) {
            for (int j = 0; j < n; ++j)
                std::swap(lu(piv, j), lu(col, j));
            std::swap(perm[static_cast<size_t>(piv)], perm[static_cast<size_t>(col)]);
        }
        for (int r = col + 1; r < n; ++r) {
            const double f = lu(r, col) / lu(col, col);
            lu(r, col) = f;
            for (int j = col + 1; j < n; ++j)
                lu(r, j) -= f * lu(col, j);
        }
    }

    RealSquareMatrix x(n);
    std::vector<double> y(static_cast<size_t>(n));
    for (int col = 0; col < n; ++col) {
        for (int i = 0; i < n; ++i) {
            double v = b(perm[static_cast<size_t>(i)], col);
            for (int j = 0; j < i; ++j)
                v -= lu(i, j) * y[static_cast<size_t>(j)];
            y[static_cast<size_t>(i)] = v;
        }
        for (int i = n - 1; i >= 0; --i) {
            double v = y[static_cast<size_t>(i)];
            for (int j = i + 1; j < n; ++j)
                v -= lu(i, j) * x(j, col);
            x(i, col) = v / lu(i, i);
        }
    }
    return x;
}

} // namespace instab
