#ifndef INSTAB_SWEEP_HPP
#define INSTAB_SWEEP_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "instab/criterion.hpp"
#include "instab/errors.hpp"

namespace instab {

enum class Family { circulatory3, charged_particle };

std::string_view to_string(Family f);
std::optional<Family> family_from_string(std::string_view name);

/// All criterion identifiers the family supports.
std::vector<std::string> family_criteria(Family f);
/// The identifiers evaluated when a sweep does not name any.
std::vector<std::string> default_criteria(Family f);

/// A (k, c) parameter-grid sweep over one example family.
struct SweepConfig {
    Family family = Family::circulatory3;
    double k_min = -3.0;
    double k_max = 3.0;
    double c_min = -3.0;
    double c_max = 3.0;
    int nk = 401;
    int nc = 401;
    std::vector<std::string> criteria; // in output-column order
    bool oracle = false;
};

/// One grid node: parameter values, a fired flag and margin per requested
/// criterion (criteria order), the oracle instability flag when enabled
/// (-1 when not evaluated), and a note when in-cell evaluation failed a
/// consistency check.
struct SweepCell {
    double k = 0.0;
    double c = 0.0;
    std::vector<std::uint8_t> fired;
    std::vector<double> margins;
    int oracle_unstable = -1;
    std::string note;
};

/// Cells in row-major order: k index outer, c index inner, independent of
/// how the evaluation was scheduled.
struct SweepResult {
    SweepConfig config;
    std::vector<SweepCell> cells;
};

/// Grid node i of count points from lo to hi, evaluated as
/// ((count-1-i) lo + i hi)/(count-1): endpoints are exact, symmetric ranges
/// hit zero exactly, and halving the step reproduces old nodes bit-exactly.
double grid_point(double lo, double hi, int count, int index);

/// Evaluates the named criteria for one family member; verdicts come back
/// in the order the names were given.
std::vector<CriterionVerdict>
evaluate_family_criteria(Family f, double k, double c,
                         std::span<const std::string> criteria);

/// Runs the sweep on worker_count threads (0 = hardware concurrency). Cell
/// evaluation order does not affect the result. In-cell consistency errors
/// are recorded in the cell note rather than thrown.
SweepResult run_sweep(const SweepConfig& cfg, int worker_count = 1);

/// CSV: header "k,c,<criterion...>[,oracle_unstable]", then one row per
/// cell in row-major order; numbers carry 17 significant digits; LF line
/// endings. Criterion ids use '_' in place of '-'.
void emit_csv(const SweepResult& result, std::ostream& out);
void emit_csv(const SweepResult& result, const std::string& path);

/// Standalone vector image: axes with ticks, one semi-transparent layer per
/// criterion, a legend, and (when the oracle ran) the boundary cells of the
/// oracle-unstable region.
void emit_svg(const SweepResult& result, std::ostream& out);
void emit_svg(const SweepResult& result, const std::string& path);

} // namespace instab

#endif
