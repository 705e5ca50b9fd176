#ifndef INSTAB_ORACLE_HPP
#define INSTAB_ORACLE_HPP

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "instab/criterion.hpp"
#include "instab/mech.hpp"
#include "instab/polynomial.hpp"

namespace instab {

/// All roots of a polynomial, with multiplicity, plus per-root scaled
/// residuals |Q(root)| / scale. Accepted root sets have every residual
/// below 1e-8.
struct RootSet {
    std::vector<std::complex<double>> roots;
    std::vector<double> residuals;
    std::string method;
};

/// Root finding gave up before reaching the residual target; carries the
/// best iterates reached.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, RootSet best)
        : std::runtime_error(what), best_(std::move(best)) {}
    const RootSet& best() const { return best_; }

private:
    RootSet best_;
};

/// Spectrum facts used to confirm fired criteria: a root with non-zero
/// imaginary part and/or a root with strictly positive real part, with the
/// qualifying roots listed.
struct SpectralReport {
    bool has_nonreal = false;
    bool has_positive_real = false;
    std::vector<std::complex<double>> nonreal_witnesses;
    std::vector<std::complex<double>> positive_real_witnesses;
};

/// All roots by simultaneous (Aberth-style) iteration from perturbed-circle
/// starting points, at most 200 sweeps, each root polished by Newton steps.
/// Zero roots are deflated exactly before iterating. Throws
/// ConvergenceError if some scaled residual stays above 1e-8.
RootSet find_roots(const MonicPolynomial& poly);

/// has_nonreal: some root with |Im| > 1e-7 * max(1, |root|);
/// has_positive_real: some root with Re > 1e-8 * max(1, |root|).
SpectralReport classify_spectrum(const RootSet& rs);
SpectralReport classify_values(std::span<const std::complex<double>> values);

/// Ground-truth instability check: roots the reduced polynomial Q, maps
/// every root x to the characteristic exponents +/- sqrt(x), and classifies
/// the resulting 2n-element spectrum of P.
SpectralReport verify_instability(const CirculatorySystem& sys);
SpectralReport verify_instability(const GyroscopicSystem& sys);

enum class CriterionContext { poly, matrix, circulatory, gyroscopic };

/// Result of confronting fired criteria with the spectral report. A fired
/// verdict must be backed by a non-real root (poly/matrix contexts) or a
/// positive-real-part root (system contexts); non-fired verdicts impose
/// nothing.
struct ConsistencyReport {
    bool pass = true;
    CriterionContext context = CriterionContext::poly;
    std::vector<std::string> violations; // ids of unsupported fired verdicts
};

ConsistencyReport check_sufficiency(std::span<const CriterionVerdict> verdicts,
                                    const SpectralReport& report,
                                    CriterionContext context);

} // namespace instab

#endif
