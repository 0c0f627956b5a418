#include "burgers1d/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "burgers1d/asymptotics.hpp"
#include "burgers1d/discretization.hpp"
#include "burgers1d/evolution.hpp"
#include "burgers1d/spectrum.hpp"

namespace burgers1d::cli {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << content;
    if (!out) throw ConfigError("failed writing output file: " + path);
}

struct Artifact {
    std::string content;       // the main CSV/JSON payload
    ordered_json summary;      // echoed into the meta sidecar
};

ordered_json config_json(const RunConfig& cfg) {
    ordered_json j;
    j["command"] = command_name(cfg.command);
    j["alpha"] = cfg.alpha;
    j["k"] = cfg.k;
    j["eps"] = cfg.eps;
    j["n"] = cfg.n == 0 ? ordered_json("auto") : ordered_json(cfg.n);
    j["nu"] = cfg.nu;
    j["t_end"] = cfg.t_end == 0.0 ? ordered_json("auto") : ordered_json(cfg.t_end);
    j["dt"] = cfg.dt;
    j["m"] = cfg.m;
    j["sample_every"] = cfg.sample_every;
    j["tol"] = cfg.tol;
    j["max_iter"] = cfg.max_iter;
    j["format"] = cfg.format == OutFormat::csv ? "csv" : "json";
    j["jobs"] = cfg.jobs;
    j["force_small_eps"] = cfg.force_small_eps;
    j["reference"] = cfg.reference_newton ? "newton" : "composite";
    return j;
}

// ---- profile ----------------------------------------------------------------

Artifact run_profile(const RunConfig& cfg) {
    const double e = cfg.eps0();
    const Grid g = make_grid(-1.0, 1.0, cfg.resolve_n(e));
    const CompositeProfile p = composite(cfg.alpha, cfg.k, e);
    const Field r = stationary_residual(p, g);

    Artifact art;
    if (cfg.format == OutFormat::csv) {
        std::ostringstream os;
        os << "x,U,Ux,Uxx,residual\n";
        for (int i = 0; i < g.n; ++i) {
            const double x = g.node(i);
            os << fmt17(x) << ',' << fmt17(p.value(x)) << ',' << fmt17(p.deriv(x)) << ','
               << fmt17(p.deriv2(x)) << ',' << fmt17(r[i]) << '\n';
        }
        art.content = os.str();
    } else {
        ordered_json j;
        j["x"] = g.nodes();
        j["U"] = p.sample(g).values;
        j["Ux"] = p.sample_deriv(g).values;
        j["Uxx"] = p.sample_deriv2(g).values;
        j["residual"] = r.values;
        art.content = j.dump(2) + "\n";
    }
    art.summary["n"] = g.n;
    art.summary["max_abs_residual"] = max_abs(r.values);
    return art;
}

// ---- steady -------------------------------------------------------------------

Artifact run_steady(const RunConfig& cfg) {
    const double e = cfg.eps0();
    const Grid g = make_grid(-1.0, 1.0, cfg.resolve_n(e));
    const CompositeProfile p = composite(cfg.alpha, cfg.k, e);
    const BoundaryPair bc(cfg.alpha, -cfg.alpha);
    const SteadyResult res = newton_solve_steady(e, bc, p.sample(g), cfg.tol, cfg.max_iter);
    const Field uc = p.sample(g);

    Artifact art;
    if (cfg.format == OutFormat::csv) {
        std::ostringstream os;
        os << "x,u_newton,U_composite,diff\n";
        for (int i = 0; i < g.n; ++i)
            os << fmt17(g.node(i)) << ',' << fmt17(res.u[i]) << ',' << fmt17(uc[i]) << ','
               << fmt17(res.u[i] - uc[i]) << '\n';
        art.content = os.str();
    } else {
        ordered_json j;
        j["x"] = g.nodes();
        j["u_newton"] = res.u.values;
        j["U_composite"] = uc.values;
        j["iterations"] = res.iterations;
        j["residual_history"] = res.residual_history;
        art.content = j.dump(2) + "\n";
    }
    double max_diff = 0.0;
    for (int i = 0; i < g.n; ++i) max_diff = std::max(max_diff, std::abs(res.u[i] - uc[i]));
    art.summary["n"] = g.n;
    art.summary["iterations"] = res.iterations;
    art.summary["final_residual"] = res.residual_history.back();
    art.summary["max_diff_vs_composite"] = max_diff;
    return art;
}

// ---- spectrum -------------------------------------------------------------------

std::string spectrum_csv(double e, const std::vector<double>& lambdas) {
    std::ostringstream os;
    os << "eps,index,lambda\n";
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        os << fmt17(e) << ',' << (i + 1) << ',' << fmt17(lambdas[i]) << '\n';
    return os.str();
}

Artifact run_spectrum(const RunConfig& cfg) {
    const double e = cfg.eps0();
    const Grid g = make_grid(-1.0, 1.0, cfg.resolve_n(e));
    const CompositeProfile p = composite(cfg.alpha, cfg.k, e);
    const auto src = cfg.reference_newton ? EquilibriumSource::newton_steady
                                          : EquilibriumSource::composite;
    const SpectrumResult s = linearized_spectrum(p, g, cfg.m, src, cfg.force_small_eps);

    Artifact art;
    if (cfg.format == OutFormat::csv) {
        art.content = spectrum_csv(e, s.eigenvalues);
    } else {
        ordered_json j;
        j["eps"] = e;
        j["eigenvalues"] = s.eigenvalues;
        art.content = j.dump(2) + "\n";
    }
    art.summary["n"] = g.n;
    art.summary["eigenvalues"] = s.eigenvalues;
    return art;
}

// ---- evolve -------------------------------------------------------------------

Artifact run_evolve(const RunConfig& cfg) {
    if (cfg.k != 0.0)
        throw ConfigError("evolve: the decay experiment assumes the centered layer (k = 0)");
    const double e = cfg.eps0();
    const Grid g = make_grid(-1.0, 1.0, cfg.resolve_n(e));
    const CompositeProfile p = composite(cfg.alpha, 0.0, e);

    const SpectrumResult s =
        linearized_spectrum(p, g, 1, EquilibriumSource::composite, cfg.force_small_eps);
    const double lambda1 = s.eigenvalues.front();

    // boundary data matched to the composite's endpoint values, so the
    // profile is the equilibrium of the evolved problem
    const double am = p.value(-1.0);
    const BoundaryPair bc(am, -am);

    const Field u0 = perturbed_initial(p, s.eigenfunctions.front(), cfg.nu, g);
    const double t_end = cfg.t_end > 0.0 ? cfg.t_end : 3.0 / lambda1;

    // bc.alpha is the matched endpoint value, so the deviation reference must
    // be passed explicitly
    std::optional<Field> ref;
    if (cfg.reference_newton)
        ref = newton_solve_steady(e, bc, p.sample(g), cfg.tol).u;
    else
        ref = p.sample(g);

    const Trajectory tr = evolve(u0, t_end, cfg.dt, e, bc, cfg.sample_every, ref);

    Artifact art;
    if (cfg.format == OutFormat::csv) {
        std::ostringstream os;
        os << "t,deviation\n";
        for (std::size_t i = 0; i < tr.times.size(); ++i)
            os << fmt17(tr.times[i]) << ',' << fmt17(tr.deviations[i]) << '\n';
        art.content = os.str();
    } else {
        ordered_json j;
        j["t"] = tr.times;
        j["deviation"] = tr.deviations;
        art.content = j.dump(2) + "\n";
    }
    art.summary["n"] = g.n;
    art.summary["lambda1"] = lambda1;
    art.summary["t_end"] = t_end;
    try {
        const DecayFit fit = fit_decay(tr);
        art.summary["lambda_est"] = fit.lambda_est;
        art.summary["fit_r_squared"] = fit.r_squared;
    } catch (const NotEnoughPoints&) {
        art.summary["lambda_est"] = nullptr;
    }
    return art;
}

// ---- sweep -------------------------------------------------------------------

Artifact run_sweep(const RunConfig& cfg) {
    std::function<int(double)> rule;
    if (cfg.n > 0) rule = [&cfg](double) { return cfg.n; };
    const SweepResult res = metastability_sweep(cfg.alpha, cfg.eps, cfg.m, cfg.jobs,
                                                cfg.force_small_eps, rule);

    Artifact art;
    if (cfg.format == OutFormat::csv) {
        std::ostringstream os;
        os << "eps";
        for (int j = 1; j <= cfg.m; ++j) os << ",lambda" << j;
        os << '\n';
        for (const SweepRow& row : res.rows) {
            if (row.status != "ok") continue;
            os << fmt17(row.eps);
            for (double l : row.lambdas) os << ',' << fmt17(l);
            os << '\n';
        }
        art.content = os.str();
    } else {
        ordered_json j;
        j["rows"] = ordered_json::array();
        for (const SweepRow& row : res.rows) {
            ordered_json r;
            r["eps"] = row.eps;
            r["lambdas"] = row.lambdas;
            r["status"] = row.status;
            j["rows"].push_back(r);
        }
        if (res.fit_valid) {
            j["fit"] = {{"slope", res.fit.slope},
                        {"intercept", res.fit.intercept},
                        {"r_squared", res.fit.r_squared}};
        } else {
            j["fit"] = nullptr;
            j["note"] = res.note;
        }
        art.content = j.dump(2) + "\n";
    }
    if (res.fit_valid) {
        art.summary["fit_slope"] = res.fit.slope;
        art.summary["fit_r_squared"] = res.fit.r_squared;
    } else {
        art.summary["note"] = res.note;
    }
    return art;
}

// ---- report -------------------------------------------------------------------

struct LedgerEntry {
    std::string status;  // "pass", "fail", or "skipped(...)"
};

std::string pass_fail(bool ok) { return ok ? "pass" : "fail"; }

Artifact run_report(const RunConfig& cfg) {
    ordered_json bundle;
    bundle["config"] = config_json(cfg);
    ordered_json ledger;

    const Grid g4001 = make_grid(-1.0, 1.0, 4001);
    const std::vector<double> alphas = {0.5, 1.0, 2.0};
    const std::vector<double> ks = {-1.0, 0.0, 1.0};
    const std::vector<double> epss = {0.05, 0.1, 0.25};

    // 1. exact stationarity over the lattice
    {
        bool ok = true;
        double worst = 0.0;
        for (double a : alphas)
            for (double kk : ks)
                for (double e : epss) {
                    const Field r = stationary_residual(composite(a, kk, e), g4001);
                    const double bound = 1e-10 * std::max(1.0, a * a * a / (e * e));
                    worst = std::max(worst, max_abs(r.values) / bound);
                    ok = ok && max_abs(r.values) <= bound;
                }
        ledger["stationary_residual"] = pass_fail(ok);
        bundle["profile"] = {{"worst_residual_over_bound", worst}};
    }

    // 2. L2 membership bound against the closed-form antiderivative
    {
        bool ok = true;
        double anchor = 0.0;
        for (double a : alphas)
            for (double e : epss) {
                const L2BoundCheck chk = l2_bound_check(composite(a, 0.0, e), g4001);
                const double c = a / (2.0 * e);
                const double closed = a * a * (2.0 - (2.0 / c) * std::tanh(c));
                ok = ok && std::abs(chk.norm_sq - closed) <= 1e-6 * closed;
                ok = ok && chk.norm_sq < chk.bound;
                if (a == 1.0 && e == 0.1) anchor = chk.norm_sq;
            }
        ok = ok && std::abs(anchor - 1.6000363182949616) <= 1e-6;
        ledger["l2_bound"] = pass_fail(ok);
        bundle["l2"] = {{"norm_sq_alpha1_eps01", anchor}, {"bound", 2.0}};
    }

    // 3. boundary compatibility gate
    {
        bool rejected = false;
        try {
            BoundaryPair bad(1.0, 1.0);
        } catch (const IncompatibleBoundary&) {
            rejected = true;
        }
        bool accepted = true;
        try {
            BoundaryPair good(1.0, -1.0);
        } catch (const Error&) {
            accepted = false;
        }
        ledger["boundary_compatibility"] = pass_fail(rejected && accepted);
    }

    // 4. Newton vs composite at eps = 0.1, n = 801
    {
        const double e = 0.1;
        const Grid g = make_grid(-1.0, 1.0, 801);
        const CompositeProfile p = composite(1.0, 0.0, e);
        const BoundaryPair bc(1.0, -1.0);
        bool ok = true;
        double max_diff = 0.0, cross = 0.0;
        int iters = 0;
        try {
            const SteadyResult from_comp = newton_solve_steady(e, bc, p.sample(g), 1e-10);
            iters = from_comp.iterations;
            const Field uc = p.sample(g);
            for (int i = 0; i < g.n; ++i)
                max_diff = std::max(max_diff, std::abs(from_comp.u[i] - uc[i]));
            std::vector<double> ramp(static_cast<std::size_t>(g.n));
            for (int i = 0; i < g.n; ++i) ramp[static_cast<std::size_t>(i)] = -g.node(i);
            const SteadyResult from_ramp = newton_solve_steady(e, bc, Field(g, ramp), 1e-10);
            for (int i = 0; i < g.n; ++i)
                cross = std::max(cross, std::abs(from_comp.u[i] - from_ramp.u[i]));
            ok = iters <= 4 && max_diff <= 5e-4 && cross <= 1e-8;
        } catch (const NumericalError&) {
            ok = false;
        }
        ledger["newton_vs_composite"] = pass_fail(ok);
        bundle["steady"] = {{"iterations", iters},
                            {"max_diff_vs_composite", max_diff},
                            {"cross_initialization_diff", cross}};
    }

    // 5. eigensolver oracle: U = 0 gives the Dirichlet Laplacian spectrum
    {
        bool ok = true;
        const Grid g = make_grid(-1.0, 1.0, 801);
        const Field ones(g, std::vector<double>(801, 1.0));
        for (double e : {0.5, 1.0}) {
            const std::vector<double> lam = eigen_smallest(build_symmetric_operator(ones, e), 2);
            for (int mm = 1; mm <= 2; ++mm) {
                const double exact = e * std::pow(mm * M_PI / 2.0, 2);
                ok = ok && std::abs(lam[static_cast<std::size_t>(mm - 1)] - exact) <= 1e-3 * exact;
            }
        }
        ledger["eigensolver_oracle"] = pass_fail(ok);
    }

    // 6. needs an external dense eigensolver; the acceptance suite runs it
    ledger["similarity_invariance"] = "skipped(requires dense reference eigensolver; covered by the acceptance suite)";

    // 7. exponentially small principal eigenvalue
    {
        const std::vector<double> sweep_eps = {0.3, 0.25, 0.2, 0.15, 0.1};
        const SweepResult sw = metastability_sweep(1.0, sweep_eps, 2, cfg.jobs);
        bool ok = sw.fit_valid && sw.fit.slope < 0.0 && sw.fit.r_squared >= 0.95;
        double l2min = std::numeric_limits<double>::infinity(), l2max = 0.0;
        for (const SweepRow& row : sw.rows) {
            if (row.status != "ok" || row.lambdas.size() < 2) {
                ok = false;
                continue;
            }
            l2min = std::min(l2min, row.lambdas[1]);
            l2max = std::max(l2max, row.lambdas[1]);
        }
        ok = ok && (l2max / l2min < 10.0);
        ledger["exp_small_eigenvalue"] = pass_fail(ok);
        if (sw.fit_valid)
            bundle["spectrum_sweep"] = {{"slope", sw.fit.slope},
                                        {"r_squared", sw.fit.r_squared},
                                        {"lambda2_spread", l2max / l2min}};
    }

    // 8 / 9 / 10: dynamics at the configured eps
    {
        const double e = cfg.eps0();
        const Grid g = make_grid(-1.0, 1.0, cfg.resolve_n(e));
        const CompositeProfile p = composite(cfg.alpha, 0.0, e);
        const SpectrumResult s = linearized_spectrum(p, g, 1);
        const double lambda1 = s.eigenvalues.front();
        const Field& phi = s.eigenfunctions.front();

        const double am = p.value(-1.0);
        const BoundaryPair bc(am, -am);
        const Field uc = p.sample(g);
        const SteadyResult steady = newton_solve_steady(e, bc, uc, 1e-10);

        const double nu = cfg.nu;
        const double t_end = 3.0 / lambda1;

        const Field u0 = perturbed_initial(p, phi, nu, g);
        const Trajectory tr =
            evolve(u0, t_end, cfg.dt, e, bc, cfg.sample_every, uc, /*keep_snapshots=*/true);

        bool ok8 = false;
        double lambda_est = 0.0;
        try {
            const DecayFit fit = fit_decay(tr);
            lambda_est = fit.lambda_est;
            ok8 = std::abs(lambda_est - lambda1) <= 0.10 * lambda1 &&
                  tr.deviations.back() <= 0.06 * tr.deviations.front();
        } catch (const NotEnoughPoints&) {
        }
        ledger["decay_vs_eigenvalue"] = pass_fail(ok8);
        bundle["decay"] = {{"lambda1", lambda1},
                           {"lambda_est", lambda_est},
                           {"final_over_initial", tr.deviations.back() / tr.deviations.front()}};

        // 9: halving nu, deviations measured against the discrete steady state
        Field u0_half = steady.u;
        Field u0_full = steady.u;
        for (int i = 0; i < g.n; ++i) {
            u0_full[i] += nu * phi[i];
            u0_half[i] += 0.5 * nu * phi[i];
        }
        const Trajectory trf =
            evolve(u0_full, t_end, cfg.dt, e, bc, cfg.sample_every, steady.u, true);
        const Trajectory trh =
            evolve(u0_half, t_end, cfg.dt, e, bc, cfg.sample_every, steady.u, true);
        bool ok9 = true;
        const double floor = 1e3 * std::numeric_limits<double>::epsilon() * trf.reference_norm;
        for (std::size_t i = 0; i < trf.deviations.size(); ++i) {
            if (trf.deviations[i] <= floor) continue;
            const double expected = 0.5 * trf.deviations[i];
            if (std::abs(trh.deviations[i] - expected) > 0.02 * expected) ok9 = false;
        }
        ledger["linearization_validity"] = pass_fail(ok9);

        // 10: instantiated a-priori bound over all snapshots from this block
        const double M = bound_constant(phi, nu);
        const BoundednessReport b1 = boundedness_check(tr, p, nu, M);
        const BoundednessReport b2 = boundedness_check(trf, p, nu, M);
        const BoundednessReport b3 = boundedness_check(trh, p, nu, M);
        ledger["boundedness"] = pass_fail(b1.passed && b2.passed && b3.passed);
        bundle["boundedness"] = {{"max_norm_sq", std::max({b1.max_norm_sq, b2.max_norm_sq, b3.max_norm_sq})},
                                 {"bound", b1.bound}};
    }

    // 11. determinism: identical computations serialize identically
    {
        const Grid g = make_grid(-1.0, 1.0, 401);
        const CompositeProfile p = composite(cfg.alpha, 0.0, 0.25);
        const SpectrumResult s1 = linearized_spectrum(p, g, 2);
        const SpectrumResult s2 = linearized_spectrum(p, g, 2);
        ledger["determinism"] =
            pass_fail(spectrum_csv(0.25, s1.eigenvalues) == spectrum_csv(0.25, s2.eigenvalues));
    }

    bundle["ledger"] = ledger;

    Artifact art;
    art.content = bundle.dump(2) + "\n";
    bool all_ok = true;
    for (const auto& [key, value] : ledger.items()) {
        const std::string v = value.get<std::string>();
        if (v == "fail") all_ok = false;
    }
    art.summary["all_checks_passed"] = all_ok;
    art.summary["ledger"] = ledger;
    return art;
}

}  // namespace

int RunConfig::resolve_n(double e) const { return n > 0 ? n : default_resolution(e); }

std::string RunConfig::resolved_out_path() const {
    if (!out_path.empty()) return out_path;
    return std::string(command_name(command)) + (format == OutFormat::csv ? ".csv" : ".json");
}

const char* command_name(Command c) {
    switch (c) {
        case Command::profile: return "profile";
        case Command::steady: return "steady";
        case Command::spectrum: return "spectrum";
        case Command::evolve: return "evolve";
        case Command::sweep: return "sweep";
        case Command::report: return "report";
    }
    return "?";
}

RunConfig parse_args(const std::vector<std::string>& argv) {
    RunConfig cfg;

    CLI::App app{"boundary-layer equilibria, spectra, and metastable dynamics of the viscous "
                 "Burgers equation on [-1, 1]"};
    app.set_version_flag("--version", std::string("burgers1d ") + kVersion);
    app.require_subcommand(1);

    std::string n_text = "auto";
    std::string format_text;
    std::string reference_text = "composite";
    double eps_single = 0.25;

    auto add_common = [&](CLI::App* sub, bool list_eps) {
        sub->add_option("--alpha", cfg.alpha, "left boundary value (beta = -alpha)");
        sub->add_option("--k", cfg.k, "layer-position shift in the inner variable");
        if (list_eps)
            sub->add_option("--epsilons", cfg.eps, "comma-separated viscosities")
                ->delimiter(',')
                ->required();
        else
            sub->add_option("--epsilon", eps_single, "viscosity eps > 0");
        sub->add_option("--n", n_text, "node count, or 'auto' for the resolution rule");
        sub->add_option("--m", cfg.m, "number of eigenvalues");
        sub->add_option("--nu", cfg.nu, "perturbation amplitude");
        sub->add_option("--t-end", cfg.t_end, "final time (0 = auto, 3/lambda1)");
        sub->add_option("--dt", cfg.dt, "time step");
        sub->add_option("--sample-every", cfg.sample_every, "record every k-th step");
        sub->add_option("--tol", cfg.tol, "Newton tolerance (steady solve)");
        sub->add_option("--max-iter", cfg.max_iter, "Newton iteration cap");
        sub->add_option("--out", cfg.out_path, "output path");
        sub->add_option("--format", format_text, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--jobs", cfg.jobs, "sweep worker threads");
        sub->add_flag("--force-small-eps", cfg.force_small_eps,
                      "override the eps >= 0.05 precision floor");
        sub->add_option("--reference", reference_text,
                        "equilibrium reference: composite or newton")
            ->check(CLI::IsMember({"composite", "newton"}));
    };

    add_common(app.add_subcommand("profile", "sample the composite profile and its residual"), false);
    add_common(app.add_subcommand("steady", "Newton steady solve vs the composite"), false);
    add_common(app.add_subcommand("spectrum", "eigenvalues of the linearized problem"), false);
    add_common(app.add_subcommand("evolve", "time evolution of a perturbed equilibrium"), false);
    add_common(app.add_subcommand("sweep", "principal eigenvalue across viscosities"), true);
    add_common(app.add_subcommand("report", "full pipeline with a pass/fail ledger"), false);

    std::vector<std::string> args(argv.rbegin(), argv.rend());  // CLI11 wants reversed args
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::CallForVersion&) {
        throw HelpRequested(std::string("burgers1d ") + kVersion);
    } catch (const CLI::ParseError& e) {
        throw ConfigError(std::string("usage error: ") + e.what());
    }

    const std::string sub = app.get_subcommands().front()->get_name();
    if (sub == "profile") cfg.command = Command::profile;
    else if (sub == "steady") cfg.command = Command::steady;
    else if (sub == "spectrum") cfg.command = Command::spectrum;
    else if (sub == "evolve") cfg.command = Command::evolve;
    else if (sub == "sweep") cfg.command = Command::sweep;
    else cfg.command = Command::report;

    if (cfg.command != Command::sweep) cfg.eps = {eps_single};

    if (format_text.empty())
        cfg.format = cfg.command == Command::report ? OutFormat::json : OutFormat::csv;
    else
        cfg.format = format_text == "csv" ? OutFormat::csv : OutFormat::json;
    if (cfg.command == Command::report && cfg.format != OutFormat::json)
        throw ConfigError("report emits a JSON bundle; --format csv is not supported");

    cfg.reference_newton = reference_text == "newton";

    if (n_text != "auto") {
        try {
            std::size_t pos = 0;
            cfg.n = std::stoi(n_text, &pos);
            if (pos != n_text.size()) throw std::invalid_argument(n_text);
        } catch (const std::exception&) {
            throw ConfigError("--n must be a positive integer or 'auto', got '" + n_text + "'");
        }
        if (cfg.n < 3) throw ConfigError("--n must be at least 3");
    }

    if (cfg.eps.empty()) throw ConfigError("at least one eps value is required");
    for (double e : cfg.eps)
        if (!(e > 0.0) || !std::isfinite(e))
            throw ConfigError("eps must be positive and finite, got " + std::to_string(e));
    if (!(cfg.dt > 0.0)) throw ConfigError("--dt must be positive");
    if (cfg.t_end < 0.0) throw ConfigError("--t-end must be nonnegative");
    if (cfg.m < 1) throw ConfigError("--m must be at least 1");
    if (cfg.sample_every < 1) throw ConfigError("--sample-every must be at least 1");
    if (!(cfg.tol > 0.0)) throw ConfigError("--tol must be positive");
    if (cfg.max_iter < 1) throw ConfigError("--max-iter must be at least 1");
    if (cfg.jobs < 1) throw ConfigError("--jobs must be at least 1");

    if (const char* env_jobs = std::getenv("BURGERS_JOBS")) {
        try {
            cfg.jobs = std::stoi(env_jobs);
        } catch (const std::exception&) {
            throw ConfigError("BURGERS_JOBS must be an integer, got '" + std::string(env_jobs) + "'");
        }
        if (cfg.jobs < 1) throw ConfigError("BURGERS_JOBS must be at least 1");
    }
    return cfg;
}

int run(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    Artifact art;
    try {
        switch (cfg.command) {
            case Command::profile: art = run_profile(cfg); break;
            case Command::steady: art = run_steady(cfg); break;
            case Command::spectrum: art = run_spectrum(cfg); break;
            case Command::evolve: art = run_evolve(cfg); break;
            case Command::sweep: art = run_sweep(cfg); break;
            case Command::report: art = run_report(cfg); break;
        }
    } catch (const NumericalError& err) {
        std::cerr << "burgers1d: numerical failure: " << err.what() << "\n";
        return 1;
    }

    const std::string path = cfg.resolved_out_path();
    write_file(path, art.content);

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ordered_json meta;
    meta["config"] = config_json(cfg);
    meta["artifact_version"] = kVersion;
    meta["wall_time_seconds"] = wall;
    meta["output"] = path;
    meta["summary"] = art.summary;
    write_file(path + ".meta.json", meta.dump(2) + "\n");
    return 0;
}

int cli_main(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    try {
        const RunConfig cfg = parse_args(args);
        return run(cfg);
    } catch (const HelpRequested& h) {
        std::cout << h.what() << "\n";
        return 0;
    } catch (const ConfigError& err) {
        std::cerr << "burgers1d: " << err.what() << "\n";
        return 2;
    } catch (const NumericalError& err) {
        std::cerr << "burgers1d: numerical failure: " << err.what() << "\n";
        return 1;
    }
}

}  // namespace burgers1d::cli
