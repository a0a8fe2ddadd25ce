#include "dualsolver/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "dualsolver/backbone.hpp"
#include "dualsolver/baselines.hpp"
#include "dualsolver/interp.hpp"
#include "dualsolver/learning.hpp"
#include "dualsolver/params_io.hpp"
#include "dualsolver/report.hpp"
#include "dualsolver/rng.hpp"
#include "dualsolver/solver.hpp"
#include "dualsolver/svg.hpp"
#include "dualsolver/verification.hpp"

namespace dualsolver {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// backbone descriptors: builtin names or a JSON file with weights/means/std

struct LoadedBackbone {
    std::variant<GaussianModel, MixtureModel> model;

    const Backbone& ref() const {
        return std::visit([](const auto& m) -> const Backbone& { return m; }, model);
    }
    bool is_mixture() const { return std::holds_alternative<MixtureModel>(model); }
    const MixtureModel& mixture() const { return std::get<MixtureModel>(model); }

    Vec oracle(const ScheduleSpec& spec, const Vec& x, double t_from, double t_to,
               std::optional<int> cond) const {
        if (is_mixture()) return oracle_flow(mixture(), spec, x, t_from, t_to, cond);
        return oracle_flow(std::get<GaussianModel>(model), spec, x, t_from, t_to);
    }
};

LoadedBackbone load_backbone(const std::string& descriptor) {
    if (descriptor == "gauss1d") {
        return {GaussianModel({0.5}, {1.0})};
    }
    if (descriptor == "gauss2d") {
        return {GaussianModel({0.5, -0.3}, {1.0, 1.4})};
    }
    if (descriptor == "mix2") {
        return {MixtureModel({0.5, 0.5}, {{4.0}, {-4.0}}, 1.0)};
    }
    std::ifstream in(descriptor);
    if (!in) {
        throw std::invalid_argument("unknown backbone descriptor (not a builtin, not a file): " +
                                    descriptor);
    }
    json j = json::parse(in);
    const std::string type = j.at("type").get<std::string>();
    if (type == "gaussian") {
        return {GaussianModel(j.at("mean").get<Vec>(), j.at("std").get<Vec>())};
    }
    if (type == "mixture") {
        return {MixtureModel(j.at("weights").get<std::vector<double>>(),
                             j.at("means").get<std::vector<Vec>>(),
                             j.at("std").get<double>())};
    }
    throw std::invalid_argument("backbone file: unknown type " + type);
}

ScheduleSpec make_schedule(const std::string& kind, double t_min, double t_max) {
    ScheduleSpec spec = ScheduleSpec::make(schedule_kind_from_name(kind));
    if (t_min > 0.0) spec.t_min = t_min;
    if (t_max > 0.0) spec.t_max = t_max;
    return spec;
}

void write_json(const std::string& path, const json& j) {
    atomic_write_file(path, j.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// sample

int cmd_sample(const std::string& solver, const std::string& mode_name, std::size_t nfe,
               const std::string& schedule_name, double t_min, double t_max,
               const std::string& backbone_name, const std::string& params_path,
               std::size_t batch, std::uint64_t seed, double guidance, int label,
               bool random_labels, const std::string& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();
    const LoadedBackbone backbone = load_backbone(backbone_name);

    ScheduleSpec spec = make_schedule(schedule_name, t_min, t_max);
    SolverParams params = SolverParams::ddim_init(nfe);
    std::size_t M = nfe;
    if (!params_path.empty()) {
        const ParamsFile file = load_params(params_path);
        params = file.params;
        spec = file.schedule;
        M = params.steps();
    }

    SolverConfig config;
    config.mode = solver_mode_from_name(mode_name);
    config.M = M;
    config.schedule = spec;
    config.guidance_scale = guidance;
    config.record_trajectory = true;

    const std::size_t dim = backbone.ref().dim();
    std::vector<std::string> header = {"sample_id", "step", "t"};
    for (std::size_t j = 0; j < dim; ++j) header.push_back("x" + std::to_string(j));
    CsvWriter csv(header);

    std::size_t nfe_used = 0;
    for (std::size_t s = 0; s < batch; ++s) {
        Rng rng(Rng::mix(seed, s));
        const Vec x_T = rng.normal_vec(dim);
        std::optional<int> cond;
        if (label >= 0) cond = label;
        if (random_labels && backbone.is_mixture()) {
            cond = static_cast<int>(rng.uniform_below(backbone.mixture().components()));
        }

        SampleResult result;
        if (solver == "dual") {
            result = sample(backbone.ref(), config, params, x_T, cond, seed);
        } else {
            const BaselineKind kind =
                solver == "ddim" ? BaselineKind::Ddim : BaselineKind::Dpmpp2m;
            const std::vector<double> grid = timesteps(params.raw_steps, spec.t_max, spec.t_min);
            result =
                baseline_sample(kind, backbone.ref(), spec, grid, x_T, cond, guidance, true);
        }
        nfe_used = result.nfe;

        auto add_row = [&](std::size_t step, double t, const Vec& x) {
            std::vector<std::string> row = {std::to_string(s), std::to_string(step),
                                            fmt_double(t)};
            for (double v : x) row.push_back(fmt_double(v));
            csv.add_row(row);
        };
        add_row(0, result.times[0], x_T);
        for (std::size_t i = 0; i < result.states.size(); ++i) {
            add_row(i + 1, result.times[i + 1], result.states[i]);
        }
    }

    csv.save(out_dir + "/samples.csv");
    json summary;
    summary["solver"] = solver;
    summary["mode"] = mode_name;
    summary["schedule"] = schedule_kind_name(spec.kind);
    summary["M"] = M;
    summary["nfe"] = nfe_used;
    summary["batch"] = batch;
    summary["seed"] = seed;
    summary["guidance"] = guidance;
    summary["elapsed_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    summary["outputs"] = {out_dir + "/samples.csv"};
    write_json(out_dir + "/summary.json", summary);
    std::cout << "wrote " << out_dir << "/samples.csv (" << batch << " samples, NFE "
              << nfe_used << ")\n";
    return 0;
}

// ---------------------------------------------------------------------------
// learn

int cmd_learn(const std::string& loss_name, const std::string& mode_name, std::size_t nfe,
              const std::string& schedule_name, double t_min, double t_max,
              const std::string& backbone_name, std::size_t iters, std::size_t batch,
              std::uint64_t seed, double lr_start, double lr_end, double fd_h,
              const std::string& teacher_name, std::size_t teacher_nfe,
              const std::string& out_params, const std::string& out_trace) {
    const LoadedBackbone backbone = load_backbone(backbone_name);
    if (!backbone.is_mixture()) {
        throw std::invalid_argument("learn: needs a mixture backbone (labels come from components)");
    }

    LossSpec spec;
    spec.kind = loss_kind_from_name(loss_name);
    spec.batch_size = batch;
    if (spec.kind != LossKind::HardLabel) {
        TeacherSpec teacher;
        teacher.kind = teacher_name == "dpmpp2m" ? BaselineKind::Dpmpp2m : BaselineKind::Ddim;
        teacher.M_teacher = teacher_nfe;
        spec.teacher = teacher;
    }

    SolverConfig config;
    config.mode = solver_mode_from_name(mode_name);
    config.M = nfe;
    config.schedule = make_schedule(schedule_name, t_min, t_max);

    OptimConfig optim;
    optim.total_steps = iters;
    optim.seed = seed;
    optim.lr_start = lr_start;
    optim.lr_end = lr_end;
    optim.fd_h = fd_h;

    const TrainResult result =
        train(spec, config, optim, backbone.mixture(), SolverParams::ddim_init(nfe));

    ParamsFile file;
    file.schedule = config.schedule;
    file.params = result.params;
    file.provenance.seed = seed;
    file.provenance.loss_kind = loss_name;
    file.provenance.iterations = result.iterations;
    save_params(file, out_params);

    CsvWriter trace({"iteration", "loss", "lr"});
    for (std::size_t i = 0; i < result.loss_trace.size(); ++i) {
        trace.add_row({std::to_string(i), fmt_double(result.loss_trace[i]),
                       fmt_double(result.lr_trace[i])});
    }
    trace.save(out_trace);

    std::cout << "trained " << iters << " iterations: loss " << fmt_double(result.initial_loss)
              << " -> " << fmt_double(result.final_loss) << "\n"
              << "wrote " << out_params << " and " << out_trace << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const std::string& schedule_name, std::uint64_t seed,
               const std::string& out_path) {
    const ScheduleKind kind = schedule_kind_from_name(schedule_name);
    const std::vector<SuiteResult> results = run_verification(kind, seed);

    bool all_pass = true;
    json suites = json::array();
    for (const SuiteResult& r : results) {
        all_pass = all_pass && r.pass;
        std::cout << (r.pass ? "pass" : "FAIL") << "  " << r.name << "  (" << r.detail
                  << ")\n";
        suites.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    }
    if (!out_path.empty()) {
        json report;
        report["schedule"] = schedule_name;
        report["seed"] = seed;
        report["suites"] = suites;
        report["all_pass"] = all_pass;
        write_json(out_path, report);
    }
    std::cout << (all_pass ? "all suites passed" : "verification FAILED") << "\n";
    return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// order-check

int cmd_order_check(const std::string& kind_name, const std::string& schedule_name,
                    double t_i, const std::string& out_csv, const std::string& out_svg) {
    const ScheduleSpec spec = make_schedule(schedule_name, 0.0, 0.0);
    const GaussianModel model({0.3}, {1.2});
    StepParams params;
    params.gamma = 0.8;
    params.tau_u = 1.2;
    params.tau_v = 0.8;
    params.kappa_u = 0.35;
    params.kappa_v = 0.25;
    std::vector<double> h_list;
    for (int k = 0; k <= 5; ++k) h_list.push_back(0.1 * std::pow(2.0, -k));
    const SchedulePoint pt = eval_schedule(spec, t_i);
    const Vec x_i = {pt.alpha * model.mean[0] +
                     1.1 * std::sqrt(pt.alpha * pt.alpha * model.std_dev[0] * model.std_dev[0] +
                                     pt.sigma * pt.sigma)};

    std::vector<std::pair<std::string, StepKind>> kinds;
    if (kind_name == "all") {
        kinds = {{"p1", StepKind::P1Step},
                 {"corrector", StepKind::CorrectorStep},
                 {"p2", StepKind::P2Step}};
    } else if (kind_name == "p1") {
        kinds = {{"p1", StepKind::P1Step}};
    } else if (kind_name == "corrector") {
        kinds = {{"corrector", StepKind::CorrectorStep}};
    } else if (kind_name == "p2") {
        kinds = {{"p2", StepKind::P2Step}};
    } else {
        throw std::invalid_argument("order-check: kind must be p1, corrector, p2 or all");
    }

    CsvWriter csv({"kind", "h", "error", "slope"});
    SvgPlot plot("Local error vs step size", "h", "error", true, true);
    for (const auto& [name, kind] : kinds) {
        const OrderCheckResult result = order_check(model, spec, kind, params, t_i, h_list, x_i);
        for (std::size_t i = 0; i < result.h.size(); ++i) {
            csv.add_row({name, fmt_double(result.h[i]), fmt_double(result.error[i]),
                         fmt_double(result.slope)});
        }
        plot.add_series(name + " (slope " + fmt_double(result.slope).substr(0, 4) + ")",
                        result.h, result.error);
        std::cout << name << ": fitted slope " << fmt_double(result.slope) << "\n";
    }
    csv.save(out_csv);
    if (!out_svg.empty()) plot.save(out_svg);
    return 0;
}

// ---------------------------------------------------------------------------
// interp

int cmd_interp(const std::string& path_a, const std::string& path_b, std::size_t nfe,
               const std::string& out_path) {
    ParamsFile a = load_params(path_a);
    ParamsFile b = load_params(path_b);
    if (a.params.steps() > b.params.steps()) std::swap(a, b);
    if (a.schedule.kind != b.schedule.kind) {
        throw std::invalid_argument("interp: parameter files use different schedules");
    }
    ParamsFile out;
    out.schedule = a.schedule;
    out.params = interp_params(a.params, b.params, nfe);
    out.provenance.loss_kind = "interpolated(" + std::to_string(a.params.steps()) + "," +
                               std::to_string(b.params.steps()) + ")";
    save_params(out, out_path);
    std::cout << "wrote " << out_path << " (M=" << nfe << ")\n";
    return 0;
}

// ---------------------------------------------------------------------------
// compare

int cmd_compare(const std::string& schedule_name, const std::string& backbone_name,
                const std::string& params_path, const std::vector<std::size_t>& m_list,
                std::size_t batch, std::uint64_t seed, const std::string& out_csv,
                const std::string& out_svg) {
    const ScheduleSpec spec = make_schedule(schedule_name, 0.0, 0.0);
    const LoadedBackbone backbone = load_backbone(backbone_name);
    const std::size_t dim = backbone.ref().dim();

    std::optional<ParamsFile> trained;
    if (!params_path.empty()) trained = load_params(params_path);

    CsvWriter csv({"M", "solver", "mean_abs_error"});
    std::vector<std::string> solvers = {"dual-p1c2", "ddim", "dpmpp2m"};
    std::vector<std::vector<double>> errors(solvers.size());

    for (std::size_t M : m_list) {
        SolverParams params = SolverParams::ddim_init(M);
        ScheduleSpec run_spec = spec;
        if (trained && trained->params.steps() == M) {
            params = trained->params;
            run_spec = trained->schedule;
        }
        const std::vector<double> grid = timesteps(params.raw_steps, run_spec.t_max,
                                                   run_spec.t_min);
        std::vector<double> sums(solvers.size(), 0.0);
        for (std::size_t s = 0; s < batch; ++s) {
            Rng rng(Rng::mix(seed, s));
            const Vec x_T = rng.normal_vec(dim);
            const Vec exact =
                backbone.oracle(run_spec, x_T, run_spec.t_max, run_spec.t_min, std::nullopt);

            SolverConfig config;
            config.mode = SolverMode::P1C2;
            config.M = M;
            config.schedule = run_spec;
            const Vec dual_out = sample(backbone.ref(), config, params, x_T).final;
            const Vec ddim_out =
                baseline_sample(BaselineKind::Ddim, backbone.ref(), run_spec, grid, x_T).final;
            const Vec dpm_out =
                baseline_sample(BaselineKind::Dpmpp2m, backbone.ref(), run_spec, grid, x_T)
                    .final;
            sums[0] += norm2(sub(dual_out, exact));
            sums[1] += norm2(sub(ddim_out, exact));
            sums[2] += norm2(sub(dpm_out, exact));
        }
        for (std::size_t k = 0; k < solvers.size(); ++k) {
            const double err = sums[k] / static_cast<double>(batch);
            errors[k].push_back(err);
            csv.add_row({std::to_string(M), solvers[k], fmt_double(err)});
        }
    }
    csv.save(out_csv);
    if (!out_svg.empty()) {
        SvgPlot plot("Solver error vs steps", "M", "mean abs error", true, true);
        std::vector<double> ms(m_list.begin(), m_list.end());
        for (std::size_t k = 0; k < solvers.size(); ++k) {
            plot.add_series(solvers[k], ms, errors[k]);
        }
        plot.save(out_svg);
    }
    std::cout << "wrote " << out_csv << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// plot-params

int cmd_plot_params(const std::string& params_path, const std::string& out_svg) {
    const ParamsFile file = load_params(params_path);
    const std::size_t M = file.params.steps();

    SvgPlot plot("Per-step solver parameters (M=" + std::to_string(M) + ")", "step",
                 "value");
    auto add_group = [&](const ParamArrays& g, const std::string& prefix) {
        std::vector<double> idx(g.size());
        std::vector<double> gamma(g.size()), tu(g.size()), tv(g.size()), ku(g.size()),
            kv(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            idx[i] = static_cast<double>(i);
            const StepParams p = g.step(i);
            gamma[i] = p.gamma;
            tu[i] = p.tau_u;
            tv[i] = p.tau_v;
            ku[i] = p.kappa_u;
            kv[i] = p.kappa_v;
        }
        plot.add_series(prefix + ".gamma", idx, gamma);
        plot.add_series(prefix + ".tau_u", idx, tu);
        plot.add_series(prefix + ".tau_v", idx, tv);
        plot.add_series(prefix + ".kappa_u", idx, ku);
        plot.add_series(prefix + ".kappa_v", idx, kv);
    };
    add_group(file.params.pred, "pred");
    if (file.params.corr.size() > 0) add_group(file.params.corr, "corr");
    plot.save(out_svg);
    std::cout << "wrote " << out_svg << "\n";
    return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args) {
    CLI::App app{"Learned dual-prediction predictor-corrector sampler toolkit"};
    app.require_subcommand(1);

    // ---- sample
    auto* sample_cmd = app.add_subcommand("sample", "Generate samples and trajectories");
    std::string solver = "dual", mode = "p1c2", schedule = "ot", backbone = "mix2";
    std::string params_path, out_dir = "out";
    std::size_t nfe = 5, batch = 4;
    std::uint64_t seed = 0;
    double guidance = 1.0, t_min = 0.0, t_max = 0.0;
    int label = -1;
    bool random_labels = false;
    sample_cmd->add_option("--solver", solver)->check(CLI::IsMember({"dual", "ddim", "dpmpp2m"}));
    sample_cmd->add_option("--mode", mode)->check(CLI::IsMember({"p1", "p1c2", "p2", "p2c2"}));
    sample_cmd->add_option("--nfe", nfe, "Step count M (one evaluation per step)");
    sample_cmd->add_option("--schedule", schedule);
    sample_cmd->add_option("--t-min", t_min);
    sample_cmd->add_option("--t-max", t_max);
    sample_cmd->add_option("--backbone", backbone);
    sample_cmd->add_option("--params", params_path, "Parameter file (overrides nfe/schedule)");
    sample_cmd->add_option("--batch", batch);
    sample_cmd->add_option("--seed", seed);
    sample_cmd->add_option("--guidance", guidance);
    sample_cmd->add_option("--label", label);
    sample_cmd->add_flag("--random-labels", random_labels);
    sample_cmd->add_option("--out-dir", out_dir);

    // ---- learn
    auto* learn_cmd = app.add_subcommand("learn", "Learn solver parameters");
    std::string loss = "hard_label", teacher = "ddim";
    std::string out_params = "learned.params.json", out_trace = "loss_trace.csv";
    std::size_t iters = 2000, learn_batch = 64, teacher_nfe = 64;
    double lr_start = 2e-3, lr_end = 1e-4, fd_h = 1e-4;
    std::string learn_mode = "p1c2", learn_schedule = "ot", learn_backbone = "mix2";
    std::size_t learn_nfe = 3;
    double learn_t_min = 0.0, learn_t_max = 0.0;
    std::uint64_t learn_seed = 0;
    learn_cmd->add_option("--loss", loss)
        ->check(CLI::IsMember({"hard_label", "soft_label", "sample_reg", "trajectory_reg"}));
    learn_cmd->add_option("--mode", learn_mode)
        ->check(CLI::IsMember({"p1", "p1c2", "p2", "p2c2"}));
    learn_cmd->add_option("--nfe", learn_nfe);
    learn_cmd->add_option("--schedule", learn_schedule);
    learn_cmd->add_option("--t-min", learn_t_min);
    learn_cmd->add_option("--t-max", learn_t_max);
    learn_cmd->add_option("--backbone", learn_backbone);
    learn_cmd->add_option("--iters", iters);
    learn_cmd->add_option("--batch", learn_batch);
    learn_cmd->add_option("--seed", learn_seed);
    learn_cmd->add_option("--lr-start", lr_start);
    learn_cmd->add_option("--lr-end", lr_end);
    learn_cmd->add_option("--fd-h", fd_h);
    learn_cmd->add_option("--teacher", teacher)->check(CLI::IsMember({"ddim", "dpmpp2m"}));
    learn_cmd->add_option("--teacher-nfe", teacher_nfe);
    learn_cmd->add_option("--out", out_params);
    learn_cmd->add_option("--trace", out_trace);

    // ---- verify
    auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suites");
    std::string verify_schedule = "ot", verify_out = "verify_report.json";
    std::uint64_t verify_seed = 0;
    verify_cmd->add_option("--schedule", verify_schedule);
    verify_cmd->add_option("--seed", verify_seed);
    verify_cmd->add_option("--out", verify_out);

    // ---- order-check
    auto* order_cmd = app.add_subcommand("order-check", "Measure local accuracy orders");
    std::string order_kind = "all", order_schedule = "vp-cosine";
    std::string order_csv = "order_check.csv", order_svg;
    double order_t = 0.5;
    order_cmd->add_option("--kind", order_kind)
        ->check(CLI::IsMember({"p1", "corrector", "p2", "all"}));
    order_cmd->add_option("--schedule", order_schedule);
    order_cmd->add_option("--t", order_t);
    order_cmd->add_option("--out", order_csv);
    order_cmd->add_option("--svg", order_svg);

    // ---- interp
    auto* interp_cmd = app.add_subcommand("interp", "Interpolate parameters to a new NFE");
    std::string interp_a, interp_b, interp_out = "interp.params.json";
    std::size_t interp_nfe = 4;
    interp_cmd->add_option("file_a", interp_a)->required();
    interp_cmd->add_option("file_b", interp_b)->required();
    interp_cmd->add_option("--nfe", interp_nfe)->required();
    interp_cmd->add_option("--out", interp_out);

    // ---- compare
    auto* compare_cmd = app.add_subcommand("compare", "Compare solvers against the oracle");
    std::string cmp_schedule = "ot", cmp_backbone = "gauss2d", cmp_params;
    std::string cmp_csv = "compare.csv", cmp_svg;
    std::vector<std::size_t> m_list = {4, 8, 16, 32, 64};
    std::size_t cmp_batch = 8;
    std::uint64_t cmp_seed = 0;
    compare_cmd->add_option("--schedule", cmp_schedule);
    compare_cmd->add_option("--backbone", cmp_backbone);
    compare_cmd->add_option("--params", cmp_params);
    compare_cmd->add_option("--m-list", m_list);
    compare_cmd->add_option("--batch", cmp_batch);
    compare_cmd->add_option("--seed", cmp_seed);
    compare_cmd->add_option("--out", cmp_csv);
    compare_cmd->add_option("--svg", cmp_svg);

    // ---- plot-params
    auto* plot_cmd = app.add_subcommand("plot-params", "Plot per-step parameter curves");
    std::string plot_file, plot_out = "params.svg";
    plot_cmd->add_option("params_file", plot_file)->required();
    plot_cmd->add_option("--out", plot_out);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (sample_cmd->parsed()) {
            return cmd_sample(solver, mode, nfe, schedule, t_min, t_max, backbone, params_path,
                              batch, seed, guidance, label, random_labels, out_dir);
        }
        if (learn_cmd->parsed()) {
            return cmd_learn(loss, learn_mode, learn_nfe, learn_schedule, learn_t_min,
                             learn_t_max, learn_backbone, iters, learn_batch, learn_seed,
                             lr_start, lr_end, fd_h, teacher, teacher_nfe, out_params,
                             out_trace);
        }
        if (verify_cmd->parsed()) return cmd_verify(verify_schedule, verify_seed, verify_out);
        if (order_cmd->parsed()) {
            return cmd_order_check(order_kind, order_schedule, order_t, order_csv, order_svg);
        }
        if (interp_cmd->parsed()) return cmd_interp(interp_a, interp_b, interp_nfe, interp_out);
        if (compare_cmd->parsed()) {
            return cmd_compare(cmp_schedule, cmp_backbone, cmp_params, m_list, cmp_batch,
                               cmp_seed, cmp_csv, cmp_svg);
        }
        if (plot_cmd->parsed()) return cmd_plot_params(plot_file, plot_out);
        std::cerr << "usage error: no subcommand\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace dualsolver
