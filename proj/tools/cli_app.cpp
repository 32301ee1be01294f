#include "cli_app.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "gcsa/corpus.hpp"
#include "gcsa/decompose.hpp"
#include "gcsa/json_io.hpp"
#include "gcsa/witness.hpp"

namespace gcsa::cli {

namespace {

LoadedInput resolve_input(const std::string& name_or_path) {
    for (const auto& e : corpus()) {
        if (e.name == name_or_path) {
            if (std::holds_alternative<GcsModel>(e.payload)) return std::get<GcsModel>(e.payload);
            return std::get<LinearSystem>(e.payload);
        }
    }
    if (name_or_path == "four-plane")
        return std::get<GcsModel>(corpus_entry("four-plane-rep1").payload);
    return load_input_file(name_or_path);
}

RankTolerance tolerance_from(std::optional<double> flag) {
    RankTolerance tol;
    if (flag) {
        tol.absolute = *flag;
    } else if (const char* env = std::getenv("GCSA_TOL")) {
        tol.absolute = std::strtod(env, nullptr);
    }
    return tol;
}

int state_exit_code(ConstraintState s) {
    switch (s) {
    case ConstraintState::Well: return 0;
    case ConstraintState::Over: return 2;
    case ConstraintState::Under: return 3;
    case ConstraintState::OverAndUnder: return 4;
    case ConstraintState::Indeterminate: return 1;
    }
    return 1;
}

int linear_exit_code(const LinearClassification& c) {
    if (c.over && c.under) return 4;
    if (c.over) return 2;
    if (c.under) return 3;
    if (c.well) return 0;
    return 1;
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

int find_row(const std::vector<RowRef>& rows, const std::string& token) {
    for (int i = 0; i < static_cast<int>(rows.size()); ++i)
        if (rows[i].label == token) return i;
    try {
        size_t pos = 0;
        int idx = std::stoi(token, &pos);
        if (pos == token.size() && idx >= 0 && idx < static_cast<int>(rows.size())) return idx;
    } catch (const std::exception&) {
    }
    throw LookupError("no row named '" + token + "'");
}

struct AnalyzeArgs {
    std::string input;
    std::string scheme;
    std::optional<double> tol;
    bool perturb = false;
    unsigned seed = 0;
    bool json = false;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
    LoadedInput in = resolve_input(a.input);
    RankTolerance tol = tolerance_from(a.tol);

    if (std::holds_alternative<LinearSystem>(in)) {
        LinearClassification c = classify_linear(std::get<LinearSystem>(in), tol);
        if (a.json)
            out << to_json(c).dump(2) << "\n";
        else
            out << "linear system: " << c.to_string() << " (rank " << c.rank_a << ", augmented "
                << c.rank_ab << ")\n";
        return linear_exit_code(c);
    }

    GcsModel model = std::get<GcsModel>(in);
    if (!a.scheme.empty()) {
        if (a.scheme != "point-normal" && a.scheme != "homogeneous")
            throw ParseError("unknown scheme '" + a.scheme + "'");
        model = convert_scheme(model, a.scheme == "point-normal" ? PlaneScheme::PointNormal
                                                                 : PlaneScheme::Homogeneous);
    }
    Configuration x = pack_parameters(model);
    if (a.perturb) x = perturb_to_witness(model, x, WitnessPolicy{}, a.seed);

    AnalyzeOptions opts;
    opts.tol = tol;
    AnalysisReport r = analyze(model, x, opts);
    if (a.json) {
        out << to_json(r).dump(2) << "\n";
    } else {
        out << report_table({{a.input, r}});
        out << "RowSize " << r.row_size << ", KernelDim " << r.kernel_dim << ", plain "
            << to_string(r.plain_state) << ", with DOR " << to_string(r.dor_state) << "\n";
    }
    return state_exit_code(r.dor_state);
}

struct RowMatrix {
    MatrixXd entries;
    std::vector<RowRef> rows;
};

RowMatrix jacobian_of(const LoadedInput& in) {
    if (std::holds_alternative<LinearSystem>(in)) {
        JacobianMatrix j = as_jacobian(std::get<LinearSystem>(in));
        return {j.entries, j.rows};
    }
    const GcsModel& model = std::get<GcsModel>(in);
    JacobianMatrix j = jacobian(model, pack_parameters(model));
    return {j.entries, j.rows};
}

int cmd_detect_over(const std::string& input, const std::string& mode,
                    const std::string& seed_row, const std::string& group_mode, int max_size,
                    std::optional<double> tol_flag, std::ostream& out) {
    LoadedInput in = resolve_input(input);
    RankTolerance tol = tolerance_from(tol_flag);
    RowMatrix J = jacobian_of(in);

    if (mode == "greedy") {
        GroupMode gm = group_mode == "support" ? GroupMode::Support : GroupMode::FullBasis;
        int seed = seed_row.empty() ? 0 : find_row(J.rows, seed_row);
        auto groups = greedy_dependency_groups(J.entries, seed, gm, {}, tol);
        out << groups_to_json(groups, J.rows).dump() << "\n";
        return 0;
    }
    if (mode != "exact") throw ParseError("unknown mode '" + mode + "'");

    int cap = max_size > 0 ? max_size : std::min<int>(6, static_cast<int>(J.entries.rows()));
    auto circuits = exact_minimal_dependency_groups(J.entries, cap, tol);
    out << groups_to_json(circuits, J.rows).dump() << "\n";
    auto greedy = greedy_dependency_groups(J.entries, 0, GroupMode::FullBasis, {}, tol);
    size_t gmin = 0, emin = 0;
    for (const auto& g : greedy) gmin = gmin == 0 ? g.rows.size() : std::min(gmin, g.rows.size());
    for (const auto& c : circuits) emin = emin == 0 ? c.rows.size() : std::min(emin, c.rows.size());
    if (gmin > 0 && emin > 0 && emin < gmin)
        out << "greedy minimum " << gmin << " > exact minimum " << emin << "\n";
    else if (gmin > 0 && emin > 0)
        out << "greedy minimum " << gmin << ", exact minimum " << emin << "\n";
    return 0;
}

int cmd_detect_wc(const std::string& input, const std::string& mode, const std::string& seed_order,
                  std::optional<double> tol_flag, std::ostream& out) {
    LoadedInput in = resolve_input(input);
    if (!std::holds_alternative<GcsModel>(in))
        throw ParseError("detect-wc needs a geometric model");
    const GcsModel& model = std::get<GcsModel>(in);
    Configuration x = pack_parameters(model);
    RankTolerance tol = tolerance_from(tol_flag);
    if (mode != "greedy" && mode != "exact") throw ParseError("unknown mode '" + mode + "'");
    WcPartition p = mode == "exact" ? exact_max_wc_parts(model, x, tol)
                                    : greedy_wc_parts(model, x, split_csv(seed_order), tol);
    out << to_json(p).dump() << "\n";
    return 0;
}

int cmd_check_jacobian(const std::string& input, double h, int trials, unsigned seed,
                       std::ostream& out) {
    if (!(h > 0)) throw InvalidStepError("--h must be positive");
    LoadedInput in = resolve_input(input);
    if (std::holds_alternative<LinearSystem>(in)) {
        const LinearSystem& sys = std::get<LinearSystem>(in);
        out << "linear system: Jacobian is the constant coefficient matrix (" << sys.rows() << "x"
            << sys.cols() << ")\n";
        return 0;
    }
    const GcsModel& model = std::get<GcsModel>(in);
    Configuration x0 = pack_parameters(model);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-0.5, 0.5);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        Configuration x = x0;
        for (int i = 0; i < x.values.size(); ++i) x.values[i] += dist(rng);
        JacobianMatrix ja = jacobian(model, x);
        JacobianMatrix jf = fd_jacobian(model, x, h);
        double scale = 1.0 + ja.entries.cwiseAbs().maxCoeff();
        worst = std::max(worst, (ja.entries - jf.entries).cwiseAbs().maxCoeff() / scale);
    }
    out << "max relative error over " << trials << " configurations: " << worst << "\n";
    return worst < 1e-6 ? 0 : 2;
}

int cmd_demo(bool verify, const std::string& dump_dir, std::ostream& out) {
    std::vector<std::pair<std::string, AnalysisReport>> table;
    bool all_ok = true;
    for (const auto& e : corpus()) {
        if (!std::holds_alternative<GcsModel>(e.payload)) continue;
        const GcsModel& m = std::get<GcsModel>(e.payload);
        AnalysisReport r = analyze(m, pack_parameters(m));
        table.emplace_back(e.name, r);
        if (verify && e.expected) {
            const ExpectedReport& x = *e.expected;
            bool ok = r.column_size == x.column_size && r.row_size == x.row_size &&
                      r.rank == x.rank && r.kernel_dim == x.kernel_dim && r.dor == x.dor &&
                      r.matched == x.matched;
            out << (ok ? "[PASS] " : "[FAIL] ") << e.name << "\n";
            all_ok = all_ok && ok;
        }
    }
    out << report_table(table);

    JacobianMatrix j6 = as_jacobian(eq6_system());
    auto greedy = greedy_dependency_groups(j6.entries, 0, GroupMode::FullBasis);
    auto exact = exact_minimal_dependency_groups(j6.entries, 5);
    out << "eq6 greedy groups " << groups_to_json(greedy, j6.rows).dump() << "\n";
    out << "eq6 exact circuits " << groups_to_json(exact, j6.rows).dump() << "\n";

    if (!dump_dir.empty()) {
        for (const auto& e : corpus()) {
            std::ofstream f(dump_dir + "/" + e.name + ".json");
            if (std::holds_alternative<GcsModel>(e.payload))
                f << to_json(std::get<GcsModel>(e.payload)).dump(2) << "\n";
            else
                f << to_json(std::get<LinearSystem>(e.payload)).dump(2) << "\n";
        }
        out << "corpus written to " << dump_dir << "\n";
    }
    return all_ok ? 0 : 1;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Witness-configuration analysis for geometric constraint systems"};
    app.require_subcommand(1);

    AnalyzeArgs aa;
    CLI::App* analyze_cmd = app.add_subcommand("analyze", "Constraint-state report at a witness");
    analyze_cmd->add_option("input", aa.input, "corpus name or model file")->required();
    analyze_cmd->add_option("--scheme", aa.scheme, "homogeneous | point-normal");
    double tol_val = 0;
    auto* tol_opt = analyze_cmd->add_option("--tol", tol_val, "absolute rank tolerance");
    analyze_cmd->add_flag("--perturb", aa.perturb, "perturb + project before analysis");
    analyze_cmd->add_option("--seed", aa.seed, "perturbation seed");
    analyze_cmd->add_flag("--json", aa.json, "JSON output");

    std::string do_input, do_mode = "greedy", do_seed_row, do_group_mode = "full-basis";
    int do_max_size = 0;
    CLI::App* dover = app.add_subcommand("detect-over", "Dependent constraint groups");
    dover->add_option("input", do_input)->required();
    dover->add_option("--mode", do_mode, "greedy | exact");
    dover->add_option("--seed-row", do_seed_row, "row label (e.g. E1) or index");
    dover->add_option("--group-mode", do_group_mode, "full-basis | support");
    dover->add_option("--max-size", do_max_size, "largest circuit size to enumerate");
    double dover_tol = 0;
    auto* dover_tol_opt = dover->add_option("--tol", dover_tol, "absolute rank tolerance");

    std::string wc_input, wc_mode = "greedy", wc_seed_order;
    CLI::App* dwc = app.add_subcommand("detect-wc", "Well-constrained part detection");
    dwc->add_option("input", wc_input)->required();
    dwc->add_option("--mode", wc_mode, "greedy | exact");
    dwc->add_option("--seed-order", wc_seed_order, "comma-separated entity ids");
    double dwc_tol = 0;
    auto* dwc_tol_opt = dwc->add_option("--tol", dwc_tol, "absolute rank tolerance");

    std::string cj_input;
    double cj_h = 1e-6;
    int cj_trials = 20;
    unsigned cj_seed = 0;
    CLI::App* cj = app.add_subcommand("check-jacobian", "Analytic vs finite-difference check");
    cj->set_help_flag("--help", "print help");
    cj->add_option("input", cj_input)->required();
    cj->add_option("--h", cj_h, "central-difference step");
    cj->add_option("--trials", cj_trials);
    cj->add_option("--seed", cj_seed);

    bool demo_verify = false;
    std::string demo_dump;
    CLI::App* demo = app.add_subcommand("demo", "Corpus walk-through");
    demo->add_flag("--verify", demo_verify, "check frozen expectations");
    demo->add_option("--dump-dir", demo_dump, "write corpus JSON files here");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream os;
        int code = app.exit(e, os, os);
        (code == 0 ? out : err) << os.str();
        return code == 0 ? 0 : 1;
    }

    try {
        if (analyze_cmd->parsed()) {
            if (*tol_opt) aa.tol = tol_val;
            return cmd_analyze(aa, out);
        }
        if (dover->parsed())
            return cmd_detect_over(do_input, do_mode, do_seed_row, do_group_mode, do_max_size,
                                   *dover_tol_opt ? std::optional<double>(dover_tol) : std::nullopt,
                                   out);
        if (dwc->parsed())
            return cmd_detect_wc(wc_input, wc_mode, wc_seed_order,
                                 *dwc_tol_opt ? std::optional<double>(dwc_tol) : std::nullopt, out);
        if (cj->parsed()) return cmd_check_jacobian(cj_input, cj_h, cj_trials, cj_seed, out);
        if (demo->parsed()) return cmd_demo(demo_verify, demo_dump, out);
    } catch (const GcsaError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

} // namespace gcsa::cli
