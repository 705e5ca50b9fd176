#include "instab/sweep.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <thread>

#include "instab/mech.hpp"
#include "instab/oracle.hpp"
#include "format.hpp"

namespace instab {

std::string_view to_string(Family f) {
    return f == Family::circulatory3 ? "circulatory3" : "charged-particle";
}

std::optional<Family> family_from_string(std::string_view name) {
    if (name == "circulatory3")
        return Family::circulatory3;
    if (name == "charged-particle")
        return Family::charged_particle;
    return std::nullopt;
}

std::vector<std::string> family_criteria(Family f) {
    if (f == Family::circulatory3)
        return {"thm2-i", "thm2-ii", "thm2-iii", "rmk-ii-alt", "cor-i", "cor-ii"};
    return {"thm4", "prop2-i", "prop2-ii", "prop2-iii"};
}

std::vector<std::string> default_criteria(Family f) {
    if (f == Family::circulatory3)
        return {"thm2-i", "thm2-ii", "thm2-iii"};
    return {"thm4", "prop2-ii", "prop2-iii"};
}

double grid_point(double lo, double hi, int count, int index) {
    const double steps = count - 1;
    return ((steps - index) * lo + index * hi) / steps;
}

std::vector<CriterionVerdict>
evaluate_family_criteria(Family f, double k, double c,
                         std::span<const std::string> criteria) {
    std::vector<CriterionVerdict> out;
    out.reserve(criteria.size());
    if (f == Family::circulatory3) {
        const auto all = circulatory_verdicts(example_circulatory3(k, c));
        for (const std::string& id : criteria) {
            const auto it = std::find_if(all.begin(), all.end(),
                                         [&](const CriterionVerdict& v) {
                                             return v.id == id;
                                         });
            if (it == all.end())
                throw InputError("unknown circulatory3 criterion: " + id);
            out.push_back(*it);
        }
        return out;
    }

    const GyroscopicSystem sys = example_charged_particle(k, c);
    std::optional<std::array<CriterionVerdict, 3>> prop2;
    for (const std::string& id : criteria) {
        if (id == "thm4") {
            out.push_back(gyroscopic_verdict_thm4(sys));
            continue;
        }
        if (id == "prop2-i" || id == "prop2-ii" || id == "prop2-iii") {
            if (!prop2)
                prop2 = prop2_verdicts(gyro_reduced_polynomial(sys));
            const int idx = id == "prop2-i" ? 0 : id == "prop2-ii" ? 1 : 2;
            out.push_back((*prop2)[static_cast<size_t>(idx)]);
            continue;
        }
        throw InputError("unknown charged-particle criterion: " + id);
    }
    return out;
}

namespace {

void validate(const SweepConfig& cfg) {
    if (!(cfg.k_min < cfg.k_max) || !(cfg.c_min < cfg.c_max))
        throw InputError("sweep: parameter ranges must be non-degenerate");
    if (cfg.nk < 2 || cfg.nc < 2)
        throw InputError("sweep: grid needs at least 2 points per axis");
    const auto known = family_criteria(cfg.family);
    std::set<std::string> seen;
    for (const std::string& id : cfg.criteria) {
        if (std::find(known.begin(), known.end(), id) == known.end())
            throw InputError("sweep: criterion '" + id + "' not available for family " +
                             std::string(to_string(cfg.family)));
        if (!seen.insert(id).second)
            throw InputError("sweep: duplicate criterion '" + id + "'");
    }
}

void evaluate_cell(const SweepConfig& cfg, SweepCell& cell) {
    const size_t nc = cfg.criteria.size();
    cell.fired.assign(nc, 0);
    cell.margins.assign(nc, std::numeric_limits<double>::quiet_NaN());
    try {
        const auto verdicts =
            evaluate_family_criteria(cfg.family, cell.k, cell.c, cfg.criteria);
        for (size_t i = 0; i < nc; ++i) {
            cell.fired[i] = verdicts[i].fired ? 1 : 0;
            cell.margins[i] = verdicts[i].margin;
        }
        if (cfg.oracle) {
            SpectralReport report;
            if (cfg.family == Family::circulatory3)
                report = verify_instability(example_circulatory3(cell.k, cell.c));
            else
                report = verify_instability(example_charged_particle(cell.k, cell.c));
            cell.oracle_unstable = report.has_positive_real ? 1 : 0;
        }
    } catch (const std::exception& e) {
        cell.note = e.what();
    }
}

} // namespace

SweepResult run_sweep(const SweepConfig& cfg, int worker_count) {
    validate(cfg);

    SweepResult result;
    result.config = cfg;
    result.cells.resize(static_cast<size_t>(cfg.nk) * cfg.nc);
    for (int ik = 0; ik < cfg.nk; ++ik) {
        const double k = grid_point(cfg.k_min, cfg.k_max, cfg.nk, ik);
        for (int ic = 0; ic < cfg.nc; ++ic) {
            SweepCell& cell = result.cells[static_cast<size_t>(ik) * cfg.nc + ic];
            cell.k = k;
            cell.c = grid_point(cfg.c_min, cfg.c_max, cfg.nc, ic);
        }
    }

    int workers = worker_count;
    if (workers <= 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<int>(workers, 256);
    const size_t total = result.cells.size();

    if (workers == 1 || total < 256) {
        for (SweepCell& cell : result.cells)
            evaluate_cell(cfg, cell);
        return result;
    }

    std::atomic<size_t> cursor{0};
    constexpr size_t chunk = 64;
    auto body = [&] {
        while (true) {
            const size_t begin = cursor.fetch_add(chunk);
            if (begin >= total)
                return;
            const size_t end = std::min(total, begin + chunk);
            for (size_t i = begin; i < end; ++i)
                evaluate_cell(cfg, result.cells[i]);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int t = 0; t < workers; ++t)
        pool.emplace_back(body);
    for (std::thread& t : pool)
        t.join();
    return result;
}

void emit_csv(const SweepResult& result, std::ostream& out) {
    out << "k,c";
    for (const std::string& id : result.config.criteria) {
        std::string col = id;
        std::replace(col.begin(), col.end(), '-', '_');
        out << ',' << col;
    }
    if (result.config.oracle)
        out << ",oracle_unstable";
    out << '\n';
    for (const SweepCell& cell : result.cells) {
        out << format_g17(cell.k) << ',' << format_g17(cell.c);
        for (std::uint8_t f : cell.fired)
            out << ',' << (f ? '1' : '0');
        if (result.config.oracle)
            out << ',' << (cell.oracle_unstable == 1 ? '1' : '0');
        out << '\n';
    }
}

void emit_csv(const SweepResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("emit_csv: cannot open '" + path + "' for writing");
    emit_csv(result, out);
    out.flush();
    if (!out.good())
        throw IoError("emit_csv: write to '" + path + "' failed");
}

namespace {

const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

// largest of {1,2,5}*10^m not above the raw step
double nice_step(double raw) {
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double r = raw / mag;
    if (r >= 5.0)
        return 5.0 * mag;
    if (r >= 2.0)
        return 2.0 * mag;
    return mag;
}

} // namespace

void emit_svg(const SweepResult& result, std::ostream& out) {
    const SweepConfig& cfg = result.config;
    const double width = 880.0;
    const double height = 640.0;
    const double x0 = 70.0, x1 = 620.0;
    const double y0 = 50.0, y1 = 580.0;
    const double dk = (cfg.k_max - cfg.k_min) / (cfg.nk - 1);
    const double dc = (cfg.c_max - cfg.c_min) / (cfg.nc - 1);
    const double k_lo = cfg.k_min - 0.5 * dk, k_hi = cfg.k_max + 0.5 * dk;
    const double c_lo = cfg.c_min - 0.5 * dc, c_hi = cfg.c_max + 0.5 * dc;
    const double cell_w = (x1 - x0) / cfg.nk;
    const double cell_h = (y1 - y0) / cfg.nc;
    const auto px = [&](double k) { return x0 + (k - k_lo) / (k_hi - k_lo) * (x1 - x0); };
    const auto py = [&](double c) { return y1 - (c - c_lo) / (c_hi - c_lo) * (y1 - y0); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
        << height << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << num((x0 + x1) / 2) << "\" y=\"28\" font-family=\"sans-serif\""
        << " font-size=\"16\" text-anchor=\"middle\">" << to_string(cfg.family)
        << " instability sweep (" << cfg.nk << "x" << cfg.nc << ")</text>\n";

    // criterion layers: translucent fill, fired cells merged into runs
    for (size_t ci = 0; ci < cfg.criteria.size(); ++ci) {
        const char* color = kPalette[ci % (sizeof(kPalette) / sizeof(kPalette[0]))];
        out << "<g fill=\"" << color << "\" fill-opacity=\"0.35\">\n";
        for (int ik = 0; ik < cfg.nk; ++ik) {
            const SweepCell* row = &result.cells[static_cast<size_t>(ik) * cfg.nc];
            int ic = 0;
            while (ic < cfg.nc) {
                if (!row[ic].fired.empty() && row[ic].fired[ci]) {
                    int end = ic;
                    while (end + 1 < cfg.nc && !row[end + 1].fired.empty() &&
                           row[end + 1].fired[ci])
                        ++end;
                    out << "<rect x=\"" << num(x0 + ik * cell_w) << "\" y=\""
                        << num(y1 - (end + 1) * cell_h) << "\" width=\""
                        << num(cell_w) << "\" height=\""
                        << num((end - ic + 1) * cell_h) << "\"/>\n";
                    ic = end + 1;
                } else {
                    ++ic;
                }
            }
        }
        out << "</g>\n";
    }

    // oracle layer: boundary cells of the unstable region
    if (cfg.oracle) {
        const auto unstable = [&](int ik, int ic) {
            return result.cells[static_cast<size_t>(ik) * cfg.nc + ic].oracle_unstable == 1;
        };
        out << "<g fill=\"#222222\" fill-opacity=\"0.8\">\n";
        for (int ik = 0; ik < cfg.nk; ++ik)
            for (int ic = 0; ic < cfg.nc; ++ic) {
                if (!unstable(ik, ic))
                    continue;
                const bool interior = ik > 0 && ik + 1 < cfg.nk && ic > 0 &&
                                      ic + 1 < cfg.nc && unstable(ik - 1, ic) &&
                                      unstable(ik + 1, ic) && unstable(ik, ic - 1) &&
                                      unstable(ik, ic + 1);
                if (interior)
                    continue;
                out << "<rect x=\"" << num(x0 + ik * cell_w) << "\" y=\""
                    << num(y1 - (ic + 1) * cell_h) << "\" width=\"" << num(cell_w)
                    << "\" height=\"" << num(cell_h) << "\"/>\n";
            }
        out << "</g>\n";
    }

    // frame and ticks
    out << "<rect x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\""
        << num(x1 - x0) << "\" height=\"" << num(y1 - y0)
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<g font-family=\"sans-serif\" font-size=\"12\" stroke=\"black\">\n";
    const double kstep = nice_step((k_hi - k_lo) / 6.0);
    for (double t = std::ceil(k_lo / kstep) * kstep; t <= k_hi + 1e-12 * kstep;
         t += kstep) {
        const double x = px(t);
        out << "<line x1=\"" << num(x) << "\" y1=\"" << num(y1) << "\" x2=\""
            << num(x) << "\" y2=\"" << num(y1 + 5) << "\"/>\n";
        out << "<text x=\"" << num(x) << "\" y=\"" << num(y1 + 20)
            << "\" stroke=\"none\" text-anchor=\"middle\">" << tick_label(t)
            << "</text>\n";
    }
    const double cstep = nice_step((c_hi - c_lo) / 6.0);
    for (double t = std::ceil(c_lo / cstep) * cstep; t <= c_hi + 1e-12 * cstep;
         t += cstep) {
        const double y = py(t);
        out << "<line x1=\"" << num(x0 - 5) << "\" y1=\"" << num(y) << "\" x2=\""
            << num(x0) << "\" y2=\"" << num(y) << "\"/>\n";
        out << "<text x=\"" << num(x0 - 9) << "\" y=\"" << num(y + 4)
            << "\" stroke=\"none\" text-anchor=\"end\">" << tick_label(t)
            << "</text>\n";
    }
    out << "</g>\n";
    out << "<text x=\"" << num((x0 + x1) / 2) << "\" y=\"" << num(y1 + 40)
        << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">k</text>\n";
    out << "<text x=\"24\" y=\"" << num((y0 + y1) / 2)
        << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\""
        << " transform=\"rotate(-90 24 " << num((y0 + y1) / 2) << ")\">c</text>\n";

    // legend
    double ly = y0 + 10.0;
    const double lx = x1 + 24.0;
    out << "<g font-family=\"sans-serif\" font-size=\"13\">\n";
    for (size_t ci = 0; ci < cfg.criteria.size(); ++ci) {
        const char* color = kPalette[ci % (sizeof(kPalette) / sizeof(kPalette[0]))];
        out << "<rect x=\"" << num(lx) << "\" y=\"" << num(ly - 11)
            << "\" width=\"14\" height=\"14\" fill=\"" << color
            << "\" fill-opacity=\"0.35\" stroke=\"" << color << "\"/>\n";
        out << "<text x=\"" << num(lx + 20) << "\" y=\"" << num(ly) << "\">"
            << cfg.criteria[ci] << "</text>\n";
        ly += 22.0;
    }
    if (cfg.oracle) {
        out << "<rect x=\"" << num(lx) << "\" y=\"" << num(ly - 11)
            << "\" width=\"14\" height=\"14\" fill=\"#222222\" fill-opacity=\"0.8\"/>\n";
        out << "<text x=\"" << num(lx + 20) << "\" y=\"" << num(ly)
            << "\">oracle region edge</text>\n";
    }
    out << "</g>\n";
    out << "</svg>\n";
}

void emit_svg(const SweepResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("emit_svg: cannot open '" + path + "' for writing");
    emit_svg(result, out);
    out.flush();
    if (!out.good())
        throw IoError("emit_svg: write to '" + path + "' failed");
}

} // namespace instab
