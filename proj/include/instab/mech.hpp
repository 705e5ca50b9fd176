#ifndef INSTAB_MECH_HPP
#define INSTAB_MECH_HPP

#include <array>
#include <string_view>

#include "instab/criterion.hpp"
#include "instab/matrix.hpp"
#include "instab/polynomial.hpp"

namespace instab {

/// Taxonomy of the normal form  q'' + (D+G) q' + (K+C) q = 0  by which
/// blocks vanish (and, where required, are positive definite).
enum class SystemClass {
    conservative,
    gyroscopic_conservative,
    damped_non_gyroscopic,
    circulatory,
    constraint_damping,
    general,
};

std::string_view to_string(SystemClass c);

/// Projects m onto the symmetric matrices when it is within 1e-9 Frobenius
/// distance (scaled by 1 + ||m||) of them; rejects worse inputs. `what`
/// names the matrix in error messages.
RealSquareMatrix require_symmetric(const RealSquareMatrix& m,
                                   std::string_view what);
RealSquareMatrix require_skew(const RealSquareMatrix& m,
                              std::string_view what);

/// q'' + K q + C q = 0 with K symmetric (potential forces) and C
/// skew-symmetric (non-conservative positional forces).
class CirculatorySystem {
public:
    CirculatorySystem(const RealSquareMatrix& stiffness,
                      const RealSquareMatrix& circulatory);

    int size() const { return stiffness_.size(); }
    const RealSquareMatrix& stiffness() const { return stiffness_; }
    const RealSquareMatrix& circulatory() const { return circulatory_; }

private:
    RealSquareMatrix stiffness_;
    RealSquareMatrix circulatory_;
};

/// q'' + G q' + K q = 0 with G skew-symmetric (gyroscopic forces) and K
/// symmetric (potential forces); undamped.
class GyroscopicSystem {
public:
    GyroscopicSystem(const RealSquareMatrix& gyro,
                     const RealSquareMatrix& stiffness);

    int size() const { return stiffness_.size(); }
    const RealSquareMatrix& gyro() const { return gyro_; }
    const RealSquareMatrix& stiffness() const { return stiffness_; }

private:
    RealSquareMatrix gyro_;
    RealSquareMatrix stiffness_;
};

struct NormalForm {
    RealSquareMatrix damping;     // D, symmetric
    RealSquareMatrix gyro;        // G, skew
    RealSquareMatrix stiffness;   // K, symmetric
    RealSquareMatrix circulatory; // C, skew
    SystemClass classification = SystemClass::general;
};

/// Reduces the lumped-mass form  M q'' + A2 q' + A3 q = 0  to the normal
/// form by an LU solve with M, splits M^-1 A2 into D+G and M^-1 A3 into
/// K+C, and classifies the result.
NormalForm normal_form(const RealSquareMatrix& mass,
                       const RealSquareMatrix& a2,
                       const RealSquareMatrix& a3);

/// The six instability criteria for a circulatory system, in order
/// thm2-i, thm2-ii, thm2-iii, rmk-ii-alt, cor-i, cor-ii. Any fired verdict
/// certifies instability of the equilibrium q = 0, q' = 0. rmk-ii-alt is an
/// algebraically equivalent restatement of thm2-ii computed along a
/// different route.
std::array<CriterionVerdict, 6> circulatory_verdicts(const CirculatorySystem& sys);

/// The trace/norm instability criterion for a gyroscopic conservative
/// system: 2n(2||K||^2 + ||G^2||^2 + 4 Tr(G^T K G)) < (2 Tr(K) + ||G||^2)^2.
CriterionVerdict gyroscopic_verdict_thm4(const GyroscopicSystem& sys);

/// Q(x) = det(xI + K + C), the characteristic polynomial of -(K+C); the
/// roots are the squares of the characteristic exponents.
MonicPolynomial circulatory_reduced_polynomial(const CirculatorySystem& sys);

/// Characteristic polynomial P of det(x^2 I + x G + K) = 0, degree 2n,
/// computed from the 2n x 2n state matrix [[0, I], [-K, -G]].
MonicPolynomial gyro_characteristic_polynomial(const GyroscopicSystem& sys);

/// Reduced polynomial Q with Q(x^2) = P(x). P carries only even powers
/// (G skew, K symmetric); odd coefficients above 1e-9 * (1 + max|coeff|)
/// raise ConsistencyError.
MonicPolynomial gyro_reduced_polynomial(const GyroscopicSystem& sys);

/// The 3-dof circulatory family K = [[1,0,0],[0,1,k],[0,k,0]],
/// C = [[0,c,0],[-c,0,0],[0,0,0]].
CirculatorySystem example_circulatory3(double k, double c);

/// The charged-particle family K = [[k,0,0],[0,0,k],[0,k,0]],
/// G = [[0,c,0],[-c,0,0],[0,0,0]].
GyroscopicSystem example_charged_particle(double k, double c);

/// Power sums tying the full and reduced characteristic polynomials of a
/// gyroscopic system: s2_p = 2 s1_q and s4_p = 2 s2_q, with the closed
/// trace forms s2_p = -2Tr(K) - ||G||^2 and
/// s4_p = 2||K||^2 + ||G^2||^2 + 4Tr(G^T K G). Values are cross-checked
/// against Newton power sums of P and Q.
struct GyroPowerSums {
    double s2_p = 0.0;
    double s4_p = 0.0;
    double s1_q = 0.0;
    double s2_q = 0.0;
};

GyroPowerSums gyro_power_sum_identities(const GyroscopicSystem& sys);

} // namespace instab

#endif
