#include "eroiplan/cli.hpp"

#include "eroiplan/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace eroiplan {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitUsage = 64;

ObjectiveSpec parse_objective(const std::string& text) {
    if (text == "energy")
        return ObjectiveSpec::energy_invested();
    if (text.rfind("custom:", 0) == 0) {
        const std::string file = text.substr(7);
        std::ifstream in(file);
        if (!in)
            throw std::runtime_error("cannot open custom objective file '" + file + "'");
        std::vector<CustomTerm> terms;
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty() || line[0] == '#' || (line_no == 1 && line.rfind("scope,", 0) == 0))
                continue;
            std::istringstream ls(line);
            std::string scope, entity, coeff;
            if (!std::getline(ls, scope, ',') || !std::getline(ls, entity, ',') ||
                !std::getline(ls, coeff))
                throw std::runtime_error(file + ":" + std::to_string(line_no) +
                                         ": expected scope,entity,coeff");
            CustomTerm term;
            if (scope == "capacity")
                term.scope = CustomTerm::Scope::Capacity;
            else if (scope == "use")
                term.scope = CustomTerm::Scope::Use;
            else
                throw std::runtime_error(file + ":" + std::to_string(line_no) +
                                         ": scope must be 'capacity' or 'use'");
            term.entity = entity;
            term.coeff = std::stod(coeff);
            terms.push_back(std::move(term));
        }
        return ObjectiveSpec::custom(std::move(terms));
    }
    throw std::runtime_error("objective must be 'energy' or 'custom:FILE', got '" + text + "'");
}

struct CommonArgs {
    std::string dataset;
    std::string objective = "energy";
    double gwp_limit_mt = -1.0; // < 0 means absent
    int threads = 0;

    std::optional<double> gwp_limit_t() const {
        if (gwp_limit_mt < 0.0)
            return std::nullopt;
        return gwp_limit_mt * kTonnesPerMt;
    }
};

int cmd_run(const CommonArgs& common, const std::string& out) {
    const LoadedDataset data = load(common.dataset);
    const ObjectiveSpec spec = parse_objective(common.objective);
    const ScenarioResult result = run_scenario(data.model, spec, common.gwp_limit_t());
    atomic_write(out, report_json(result));
    if (result.status != SolveStatus::Optimal) {
        std::cerr << "scenario is " << to_string(result.status) << "\n";
        return kExitInfeasible;
    }
    return kExitOk;
}

int cmd_sweep(const CommonArgs& common, double step, const std::string& out) {
    const LoadedDataset data = load(common.dataset);
    const ObjectiveSpec spec = parse_objective(common.objective);
    const SweepResult sweep = run_sweep(data.model, spec, step, common.threads);
    std::ostringstream os;
    write_frontier_csv(sweep, os);
    atomic_write(out, os.str());
    return kExitOk;
}

int cmd_gsa(const CommonArgs& common, const std::string& stage, std::uint64_t seed, int samples,
            int runs, long pdf_samples, int bins, const std::string& out_dir) {
    const LoadedDataset data = load(common.dataset);
    if (data.uncertain.empty())
        throw std::runtime_error("dataset has no uncertain.csv; nothing to analyze");
    const ObjectiveSpec spec = parse_objective(common.objective);

    GsaOptions options;
    options.seed = seed;
    options.samples = samples;
    options.runs = runs;
    options.evaluate.threads = common.threads;

    std::filesystem::create_directories(out_dir);
    const auto base = data.model.raw();

    const ScreeningResult screening =
        screen_first_order(base, data.uncertain, spec, common.gwp_limit_t(), options);
    {
        std::ostringstream os;
        write_screening_csv(screening, os);
        atomic_write(std::filesystem::path(out_dir) / "screening.csv", os.str());
    }
    if (stage == "screen")
        return kExitOk;

    std::vector<UncertainParameter> shortlist;
    for (int idx : screening.shortlist)
        shortlist.push_back(data.uncertain[idx]);
    if (shortlist.empty())
        throw std::runtime_error("screening kept no parameters; no second-order analysis");

    const SecondOrderResult analysis =
        analyze_second_order(base, shortlist, spec, common.gwp_limit_t(), options);
    atomic_write(std::filesystem::path(out_dir) / "sobol.json",
                 sobol_report_json(analysis.report));
    {
        std::ostringstream os;
        write_sobol_csv(analysis.report, os);
        atomic_write(std::filesystem::path(out_dir) / "sobol.csv", os.str());
    }
    {
        const pce::Histogram h =
            pce::pdf_estimate(analysis.surrogate, pdf_samples, bins, seed + 0x9dfULL);
        std::ostringstream os;
        write_histogram_csv(h, os);
        atomic_write(std::filesystem::path(out_dir) / "pdf.csv", os.str());
    }
    return kExitOk;
}

int cmd_report(const std::string& in, const std::string& out_dir) {
    std::ifstream is(in);
    if (!is)
        throw std::runtime_error("cannot open report '" + in + "'");
    std::stringstream buffer;
    buffer << is.rdbuf();
    render_report_tables(buffer.str(), out_dir);
    return kExitOk;
}

int cmd_export_lp(const CommonArgs& common, const std::string& out) {
    const LoadedDataset data = load(common.dataset);
    const ObjectiveSpec spec = parse_objective(common.objective);
    const LPProblem lp = assemble(data.model, spec, common.gwp_limit_t());
    std::ostringstream os;
    write_lp_text(lp, os);
    atomic_write(out, os.str());
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"whole-energy-system planning by energy-invested minimization"};
    app.require_subcommand(1);

    CommonArgs common;
    std::string out, out_dir = "gsa_out", stage = "full", report_in;
    double step = 0.05;
    std::uint64_t seed = 1;
    int samples = 0, runs = 5, bins = 60;
    long pdf_samples = 1000000;

    auto add_common = [&](CLI::App* cmd, bool with_gwp = true) {
        cmd->add_option("--dataset", common.dataset, "dataset bundle directory")->required();
        cmd->add_option("--objective", common.objective, "energy | custom:FILE");
        cmd->add_option("--threads", common.threads, "worker threads (0 = hardware)");
        if (with_gwp)
            cmd->add_option("--gwp-limit", common.gwp_limit_mt,
                            "emissions cap [MtCO2-eq/y]; omit for the reference scenario");
    };

    CLI::App* run = app.add_subcommand("run", "solve one scenario, write a report JSON");
    add_common(run);
    run->add_option("--out", out, "output report path")->required();

    CLI::App* sweep = app.add_subcommand("sweep", "emissions-target sweep, write frontier CSV");
    add_common(sweep, /*with_gwp=*/false);
    sweep->add_option("--step", step, "reduction step fraction (default 0.05)");
    sweep->add_option("--out", out, "output CSV path")->required();

    CLI::App* gsa = app.add_subcommand("gsa", "global sensitivity analysis of the EROI");
    add_common(gsa);
    gsa->add_option("--stage", stage, "screen | full (default full)")
        ->check(CLI::IsMember({"screen", "full"}));
    gsa->add_option("--seed", seed, "random seed");
    gsa->add_option("--samples", samples, "samples per fit (0 = automatic)");
    gsa->add_option("--runs", runs, "screening repetitions (default 5)");
    gsa->add_option("--pdf-samples", pdf_samples, "surrogate Monte Carlo sample count");
    gsa->add_option("--bins", bins, "histogram bin count");
    gsa->add_option("--out-dir", out_dir, "output directory");

    CLI::App* report = app.add_subcommand("report", "render plot-ready tables from a report");
    report->add_option("--in", report_in, "report JSON from 'run'")->required();
    report->add_option("--out-dir", out_dir, "output directory")->required();

    CLI::App* export_lp = app.add_subcommand("export-lp", "dump the LP in text form");
    add_common(export_lp);
    export_lp->add_option("--out", out, "output LP path")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (run->parsed())
            return cmd_run(common, out);
        if (sweep->parsed())
            return cmd_sweep(common, step, out);
        if (gsa->parsed())
            return cmd_gsa(common, stage, seed, samples, runs, pdf_samples, bins, out_dir);
        if (report->parsed())
            return cmd_report(report_in, out_dir);
        if (export_lp->parsed())
            return cmd_export_lp(common, out);
    } catch (const LoadError& e) {
        std::cerr << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitUsage;
}

} // namespace eroiplan
