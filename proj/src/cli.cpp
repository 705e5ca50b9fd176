#include "instab/cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "instab/io.hpp"
#include "instab/mech.hpp"
#include "instab/oracle.hpp"
#include "instab/polynomial.hpp"
#include "instab/sweep.hpp"
#include "format.hpp"

namespace instab {

namespace {

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        const auto begin = item.find_first_not_of(" \t");
        const auto end = item.find_last_not_of(" \t");
        if (begin != std::string::npos)
            items.push_back(item.substr(begin, end - begin + 1));
    }
    return items;
}

std::vector<double> parse_coeff_list(const std::string& text) {
    std::vector<double> coeffs;
    for (const std::string& tok : split_list(text)) {
        try {
            size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size())
                throw InputError("check-poly: bad coefficient '" + tok + "'");
            coeffs.push_back(v);
        } catch (const std::logic_error&) {
            throw InputError("check-poly: bad coefficient '" + tok + "'");
        }
    }
    if (coeffs.empty())
        throw InputError("check-poly: --coeffs needs at least one value");
    return coeffs;
}

void print_verdict(std::ostream& out, const CriterionVerdict& v) {
    out << v.id << " fired=" << (v.fired ? 1 : 0) << " lhs=" << format_g17(v.lhs)
        << " rhs=" << format_g17(v.rhs) << " margin=" << format_g17(v.margin)
        << '\n';
}

void print_matrix(std::ostream& out, const RealSquareMatrix& m) {
    char buf[32];
    for (int i = 0; i < m.size(); ++i) {
        for (int j = 0; j < m.size(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.12g", m(i, j));
            out << (j ? " " : "") << buf;
        }
        out << '\n';
    }
}

int oracle_line(std::ostream& out, std::span<const CriterionVerdict> verdicts,
                const SpectralReport& report, CriterionContext context) {
    const ConsistencyReport cons = check_sufficiency(verdicts, report, context);
    out << "oracle nonreal=" << (report.has_nonreal ? 1 : 0)
        << " pos_real=" << (report.has_positive_real ? 1 : 0)
        << " consistency=" << (cons.pass ? "PASS" : "FAIL") << '\n';
    return cons.pass ? 0 : 3;
}

MatrixDocument load_input(const std::string& path) {
    try {
        return load_matrix_document(path);
    } catch (const IoError& e) {
        throw InputError(e.what());
    }
}

struct PolyArgs {
    std::string coeffs;
    std::string criteria;
    int max_gram_size = 3;
    bool gram_size_given = false;
    bool oracle = false;
};

int cmd_check_poly(const PolyArgs& args, std::ostream& out) {
    const MonicPolynomial poly(parse_coeff_list(args.coeffs));

    std::vector<std::string> groups;
    if (args.criteria.empty()) {
        groups = {"prop1", "gram"};
        if (poly.degree() >= 2)
            groups.insert(groups.begin() + 1, "prop2");
    } else {
        groups = split_list(args.criteria);
        for (const std::string& g : groups)
            if (g != "prop1" && g != "prop2" && g != "gram")
                throw InputError("check-poly: unknown criteria group '" + g + "'");
    }

    std::vector<CriterionVerdict> verdicts;
    for (const std::string& group : groups) {
        if (group == "prop1") {
            for (const auto& v : prop1_verdicts(newton_power_sums(poly, 4))) {
                print_verdict(out, v);
                verdicts.push_back(v);
            }
        } else if (group == "prop2") {
            for (const auto& v : prop2_verdicts(poly)) {
                print_verdict(out, v);
                verdicts.push_back(v);
            }
        } else {
            const int size = args.gram_size_given
                                 ? args.max_gram_size
                                 : std::min(args.max_gram_size, poly.degree());
            const GramScan scan = gram_scan(poly, size);
            CriterionVerdict v;
            if (scan.certificate) {
                std::string id = "gram(";
                for (size_t i = 0; i < scan.certificate->indices.size(); ++i)
                    id += (i ? "," : "") +
                          std::to_string(scan.certificate->indices[i]);
                id += ")";
                v.id = std::move(id);
                v.lhs = scan.certificate->value;
                v.fired = true;
            } else {
                v.id = "gram";
                v.lhs = scan.min_value;
                v.fired = false;
            }
            v.rhs = 0.0;
            v.margin = -v.lhs;
            print_verdict(out, v);
            verdicts.push_back(std::move(v));
        }
    }

    if (args.oracle)
        return oracle_line(out, verdicts, classify_spectrum(find_roots(poly)),
                           CriterionContext::poly);
    return 0;
}

struct FileArgs {
    std::string input;
    bool oracle = false;
};

int cmd_check_matrix(const FileArgs& args, std::ostream& out) {
    const MatrixDocument doc = load_input(args.input);
    for (const auto& v : theorem1_verdicts(require_matrix(doc, "M")))
        print_verdict(out, v);
    return 0;
}

int cmd_check_circulatory(const FileArgs& args, std::ostream& out) {
    const MatrixDocument doc = load_input(args.input);
    const CirculatorySystem sys(require_matrix(doc, "K"),
                                require_matrix(doc, "C"));
    const auto all = circulatory_verdicts(sys);
    for (const auto& v : all)
        print_verdict(out, v);
    if (args.oracle)
        return oracle_line(out, all, verify_instability(sys),
                           CriterionContext::circulatory);
    return 0;
}

int cmd_check_gyroscopic(const FileArgs& args, std::ostream& out) {
    const MatrixDocument doc = load_input(args.input);
    const GyroscopicSystem sys(require_matrix(doc, "G"),
                               require_matrix(doc, "K"));
    std::vector<CriterionVerdict> verdicts;
    verdicts.push_back(gyroscopic_verdict_thm4(sys));
    for (auto& v : prop2_verdicts(gyro_reduced_polynomial(sys)))
        verdicts.push_back(std::move(v));
    for (const auto& v : verdicts)
        print_verdict(out, v);
    if (args.oracle)
        return oracle_line(out, verdicts, verify_instability(sys),
                           CriterionContext::gyroscopic);
    return 0;
}

int cmd_normal_form(const FileArgs& args, std::ostream& out) {
    const MatrixDocument doc = load_input(args.input);
    const NormalForm nf = normal_form(require_matrix(doc, "M"),
                                      require_matrix(doc, "A2"),
                                      require_matrix(doc, "A3"));
    out << "classification: " << to_string(nf.classification) << '\n';
    out << "D:\n";
    print_matrix(out, nf.damping);
    out << "G:\n";
    print_matrix(out, nf.gyro);
    out << "K:\n";
    print_matrix(out, nf.stiffness);
    out << "C:\n";
    print_matrix(out, nf.circulatory);
    return 0;
}

struct SweepArgs {
    std::string family;
    SweepConfig cfg;
    std::string criteria;
    std::string out_csv;
    std::string out_svg;
    int threads = 0;
};

int cmd_sweep(const SweepArgs& args, std::ostream& out) {
    SweepConfig cfg = args.cfg;
    const auto family = family_from_string(args.family);
    if (!family)
        throw InputError("sweep: unknown family '" + args.family + "'");
    cfg.family = *family;
    cfg.criteria = args.criteria.empty() ? default_criteria(cfg.family)
                                         : split_list(args.criteria);

    const SweepResult result = run_sweep(cfg, args.threads);
    emit_csv(result, args.out_csv);
    out << "swept " << cfg.nk << "x" << cfg.nc << " cells, csv: " << args.out_csv
        << '\n';
    if (!args.out_svg.empty()) {
        emit_svg(result, args.out_svg);
        out << "svg: " << args.out_svg << '\n';
    }
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"Instability certificates for circulatory and gyroscopic "
                 "conservative systems"};
    app.name("instab");
    app.require_subcommand(1);
    int status = 0;

    PolyArgs poly_args;
    auto* poly_cmd = app.add_subcommand(
        "check-poly", "Complex-root criteria for a monic polynomial");
    poly_cmd->add_option("--coeffs", poly_args.coeffs,
                         "Coefficients a1,...,an of x^n + a1 x^(n-1) + ... + an")
        ->required();
    poly_cmd->add_option("--criteria", poly_args.criteria,
                         "Subset of prop1,prop2,gram (default: all that apply)");
    poly_cmd
        ->add_option("--max-gram-size", poly_args.max_gram_size,
                     "Largest Gramian subset searched (default 3)")
        ->check(CLI::PositiveNumber);
    poly_cmd->add_flag("--oracle", poly_args.oracle,
                       "Root-find and verify fired criteria");
    poly_cmd->callback([&] {
        poly_args.gram_size_given = poly_cmd->count("--max-gram-size") > 0;
        status = cmd_check_poly(poly_args, out);
    });

    FileArgs matrix_args;
    auto* matrix_cmd = app.add_subcommand(
        "check-matrix", "Complex-eigenvalue criteria for a square matrix");
    matrix_cmd->add_option("--input", matrix_args.input, "JSON document with n and M")
        ->required();
    matrix_cmd->callback([&] { status = cmd_check_matrix(matrix_args, out); });

    FileArgs circ_args;
    auto* circ_cmd = app.add_subcommand(
        "check-circulatory", "Instability criteria for q'' + (K+C) q = 0");
    circ_cmd->add_option("--input", circ_args.input, "JSON document with n, K, C")
        ->required();
    circ_cmd->add_flag("--oracle", circ_args.oracle,
                       "Verify fired criteria against the spectrum");
    circ_cmd->callback([&] { status = cmd_check_circulatory(circ_args, out); });

    FileArgs gyro_args;
    auto* gyro_cmd = app.add_subcommand(
        "check-gyroscopic", "Instability criteria for q'' + G q' + K q = 0");
    gyro_cmd->add_option("--input", gyro_args.input, "JSON document with n, G, K")
        ->required();
    gyro_cmd->add_flag("--oracle", gyro_args.oracle,
                       "Verify fired criteria against the spectrum");
    gyro_cmd->callback([&] { status = cmd_check_gyroscopic(gyro_args, out); });

    FileArgs nf_args;
    auto* nf_cmd = app.add_subcommand(
        "normal-form", "Reduce M q'' + A2 q' + A3 q = 0 to the D/G/K/C form");
    nf_cmd->add_option("--input", nf_args.input, "JSON document with n, M, A2, A3")
        ->required();
    nf_cmd->callback([&] { status = cmd_normal_form(nf_args, out); });

    SweepArgs sweep_args;
    auto* sweep_cmd = app.add_subcommand(
        "sweep", "Evaluate criteria over a (k,c) grid of an example family");
    sweep_cmd->add_option("--family", sweep_args.family,
                          "circulatory3 or charged-particle")
        ->required();
    sweep_cmd->add_option("--kmin", sweep_args.cfg.k_min, "Grid lower k (default -3)");
    sweep_cmd->add_option("--kmax", sweep_args.cfg.k_max, "Grid upper k (default 3)");
    sweep_cmd->add_option("--cmin", sweep_args.cfg.c_min, "Grid lower c (default -3)");
    sweep_cmd->add_option("--cmax", sweep_args.cfg.c_max, "Grid upper c (default 3)");
    sweep_cmd->add_option("--nk", sweep_args.cfg.nk, "Grid points along k (default 401)");
    sweep_cmd->add_option("--nc", sweep_args.cfg.nc, "Grid points along c (default 401)");
    sweep_cmd->add_option("--criteria", sweep_args.criteria,
                          "Comma-separated criterion ids (default per family)");
    sweep_cmd->add_flag("--oracle", sweep_args.cfg.oracle,
                        "Also record spectral instability per cell");
    sweep_cmd->add_option("--out-csv", sweep_args.out_csv, "CSV destination")
        ->required();
    sweep_cmd->add_option("--out-svg", sweep_args.out_svg, "SVG destination");
    sweep_cmd->add_option("--threads", sweep_args.threads,
                          "Worker threads (0 = hardware concurrency)");
    sweep_cmd->callback([&] { status = cmd_sweep(sweep_args, out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return status;
}

} // namespace instab
