#include "hybridlie/runner.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <set>

#include "hybridlie/named_observables.hpp"
#include "hybridlie/poly_parser.hpp"
#include "hybridlie/positivity.hpp"
#include "hybridlie/uniqueness.hpp"

namespace hybridlie {

namespace {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Config schema (strict: unknown sections or keys are configuration errors).
// ---------------------------------------------------------------------------

const std::set<std::string> kTopKeys = {"name", "n", "n_c", "hbar", "seed", "output_dir"};

bool component_key(const std::string& key, const char* stem) {
    // q1..q99 or beta1..beta99 style keys.
    std::string s(stem);
    if (key.rfind(s, 0) != 0) return false;
    std::string tail = key.substr(s.size());
    if (tail.empty()) return false;
    for (char c : tail)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

void validate_section(const Scenario::Section& sec) {
    const std::string& name = sec.name;
    auto fail = [&](const std::string& key) {
        throw ConfigError("unknown config key '" + key + "' in section [" + name + "]");
    };
    for (const auto& e : sec.entries) {
        const std::string& k = e.key;
        if (name.empty()) {
            if (!kTopKeys.count(k)) fail(k);
        } else if (name == "hamiltonian" || name == "observable") {
            if (k != "a0" && !component_key(k, "q")) fail(k);
        } else if (name == "state") {
            if (k != "center_x" && k != "center_k" && k != "width" && k != "alpha" &&
                !component_key(k, "beta"))
                fail(k);
        } else if (name == "points") {
            if (k != "count" && k != "half_width" && k != "min_L") fail(k);
        } else if (name == "evolve") {
            if (k != "t_max" && k != "steps" && k != "order" && k != "quantities" &&
                k != "trajectory_points")
                fail(k);
        } else if (name == "spin-orbit") {
            if (k != "g" && k != "t" && k != "order" && k != "tolerance") fail(k);
        } else if (name == "positivity") {
            if (k != "g" && k != "t_max" && k != "tol" && k != "picture" && k != "evolution" &&
                k != "series_order" && k != "expect" && k != "coarse_steps")
                fail(k);
        } else if (name == "jacobi") {
            if (k != "bracket" && k != "alpha" && k != "beta" && k != "gamma" && k != "triples" &&
                k != "max_degree" && k != "tolerance")
                fail(k);
        } else if (name == "uniqueness") {
            if (k != "ns" && k != "grid_points" && k != "grid_min" && k != "grid_max" &&
                k != "instances" && k != "functional_samples")
                fail(k);
        } else {
            throw ConfigError("unknown config section [" + name + "]");
        }
    }
}

void validate_config(const Scenario& config) {
    for (const auto& sec : config.sections()) validate_section(sec);
}

// ---------------------------------------------------------------------------
// Builders.
// ---------------------------------------------------------------------------

struct Context {
    Scenario config;
    RunOptions options;
    std::string subcommand;
    BasisPtr basis;
    int n_c = 3;
    uint64_t seed = 0;
    bool seed_present = false;
    std::vector<std::pair<std::string, std::string>> manifest_files;

    std::filesystem::path out_path(const std::string& file) const {
        return std::filesystem::path(options.out_dir) / file;
    }
};

Context make_context(const std::string& subcommand, const Scenario& config,
                     const RunOptions& options) {
    Context ctx;
    ctx.config = config;
    ctx.options = options;
    ctx.subcommand = subcommand;
    int n = static_cast<int>(config.integer_or("", "n", 2));
    double hbar = config.number_or("", "hbar", 1.0);
    ctx.n_c = static_cast<int>(config.integer_or("", "n_c", 3));
    ctx.basis = std::make_shared<const SuBasis>(SuBasis::build(n, hbar));
    if (options.seed_override) {
        ctx.seed = *options.seed_override;
        ctx.seed_present = true;
    } else if (config.has("", "seed")) {
        ctx.seed = static_cast<uint64_t>(config.integer("", "seed"));
        ctx.seed_present = true;
    }
    std::filesystem::create_directories(options.out_dir);
    return ctx;
}

HybridObservable observable_from_section(const Context& ctx, const std::string& section) {
    if (!ctx.config.has_section(section))
        throw ConfigError("missing config section [" + section + "]");
    PhasePolynomial a0 = ctx.config.has(section, "a0")
                             ? parse_polynomial(ctx.config.get(section, "a0"), ctx.n_c)
                             : PhasePolynomial(ctx.n_c);
    HybridObservable obs(ctx.basis, a0,
                         std::vector<PhasePolynomial>(ctx.basis->size(), PhasePolynomial(ctx.n_c)));
    for (int i = 0; i < ctx.basis->size(); ++i) {
        std::string key = "q" + std::to_string(i + 1);
        if (ctx.config.has(section, key))
            obs.a(i) = parse_polynomial(ctx.config.get(section, key), ctx.n_c);
    }
    return obs;
}

DensityField state_from_section(const Context& ctx) {
    const std::string section = "state";
    if (!ctx.config.has_section(section))
        throw ConfigError("missing config section [state]");
    auto cx = ctx.config.numbers(section, "center_x");
    auto ck = ctx.config.numbers(section, "center_k");
    if (static_cast<int>(cx.size()) != ctx.n_c || static_cast<int>(ck.size()) != ctx.n_c)
        throw ConfigError("[state] center vectors must have n_c entries");
    double width = ctx.config.number(section, "width");
    PhasePoint center(cx, ck);
    GaussianField envelope = GaussianField::unit(center, width);
    GaussianField rho0 = parse_polynomial(ctx.config.get(section, "alpha"), ctx.n_c) * envelope;
    std::vector<GaussianField> rvec;
    for (int i = 0; i < ctx.basis->size(); ++i) {
        std::string key = "beta" + std::to_string(i + 1);
        if (ctx.config.has(section, key))
            rvec.push_back(parse_polynomial(ctx.config.get(section, key), ctx.n_c) * envelope);
        else
            rvec.push_back(envelope.with_poly(PhasePolynomial(ctx.n_c)));
    }
    return DensityField(ctx.basis, std::move(rho0), std::move(rvec));
}

std::vector<PhasePoint> points_from_section(const Context& ctx, double default_min_L) {
    int count = static_cast<int>(ctx.config.integer_or("points", "count", 40));
    if (ctx.options.points_override) count = *ctx.options.points_override;
    double half_width = ctx.config.number_or("points", "half_width", 2.0);
    double min_L = ctx.config.number_or("points", "min_L", default_min_L);
    return halton_points(ctx.n_c, count, half_width, min_L);
}

HybridObservable named_quantity(const Context& ctx, const std::string& name) {
    const auto& basis = ctx.basis;
    if (ctx.basis->dim() != 2 || ctx.n_c != 3)
        throw ConfigError("named quantities require n = 2 and n_c = 3");
    auto index_of = [&](char c) { return name[1] - '1'; };
    if (name.size() == 2 && name[1] >= '1' && name[1] <= '3') {
        switch (name[0]) {
            case 'J': return spin_half::total_angular(basis, index_of('J'));
            case 'L': return spin_half::orbital(basis, index_of('L'));
            case 'S': return spin_half::spin(basis, index_of('S'));
            case 'x': return spin_half::position(basis, index_of('x'));
            case 'k': return spin_half::momentum(basis, index_of('k'));
        }
    }
    if (name == "Lsq") return spin_half::orbital_squared(basis);
    if (name == "ksq") return spin_half::momentum_squared(basis);
    if (name == "Ssq") return spin_half::spin_squared(basis);
    if (name == "LdotS") return spin_half::spin_orbit_coupling(basis);
    throw ConfigError("unknown quantity name '" + name + "'");
}

// ---------------------------------------------------------------------------
// Artifact writers.
// ---------------------------------------------------------------------------

std::ofstream open_artifact(Context& ctx, const std::string& file) {
    std::ofstream out(ctx.out_path(file));
    if (!out) throw std::runtime_error("cannot write " + ctx.out_path(file).string());
    ctx.manifest_files.emplace_back(file, ctx.subcommand);
    return out;
}

void write_json(Context& ctx, const std::string& file, const json& j) {
    auto out = open_artifact(ctx, file);
    out << j.dump(2) << "\n";
}

void write_manifest(Context& ctx) {
    json j;
    j["name"] = ctx.config.get_or("", "name", "unnamed");
    j["subcommand"] = ctx.subcommand;
    j["config_hash"] = fnv1a_hex(ctx.config.serialize());
    json files = json::array();
    for (const auto& [file, sub] : ctx.manifest_files)
        files.push_back(json{{"file", file}, {"subcommand", sub}});
    files.push_back(json{{"file", "manifest.json"}, {"subcommand", ctx.subcommand}});
    j["files"] = files;
    std::ofstream out(ctx.out_path("manifest.json"));
    out << j.dump(2) << "\n";
}

std::string trajectory_header(int n, int n_c) {
    std::string h = "t,point_id";
    for (int i = 1; i <= n_c; ++i) h += ",x" + std::to_string(i);
    for (int i = 1; i <= n_c; ++i) h += ",k" + std::to_string(i);
    for (int r = 1; r <= n; ++r)
        for (int c = 1; c <= n; ++c) {
            std::string m = std::to_string(r) + std::to_string(c);
            h += ",re(m" + m + "),im(m" + m + ")";
        }
    return h;
}

void append_matrix_row(std::string& out, double t, size_t point_id, const PhasePoint& p,
                       const Matrix& m) {
    out += format_double(t);
    out += "," + std::to_string(point_id);
    for (double v : p.x) out += "," + format_double(v);
    for (double v : p.k) out += "," + format_double(v);
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) {
            out += "," + format_double(m(r, c).real());
            out += "," + format_double(m(r, c).imag());
        }
    out += "\n";
}

json rows_as_json(const std::string& header, const std::string& csv_body) {
    json j;
    j["header"] = header;
    json rows = json::array();
    std::istringstream in(csv_body);
    std::string line;
    while (std::getline(in, line)) rows.push_back(line);
    j["rows"] = rows;
    return j;
}

// ---------------------------------------------------------------------------
// Subcommands.
// ---------------------------------------------------------------------------

int run_evolve(Context& ctx) {
    auto h = observable_from_section(ctx, "hamiltonian");
    auto rho = state_from_section(ctx);
    double t_max = ctx.config.number_or("evolve", "t_max", 1.0);
    int steps = static_cast<int>(ctx.config.integer_or("evolve", "steps", 20));
    int order = static_cast<int>(ctx.config.integer_or("evolve", "order", 10));
    std::vector<double> times;
    for (int j = 1; j <= steps; ++j) times.push_back(t_max * j / steps);

    // Conservation table.
    std::map<std::string, HybridObservable> quantities;
    if (ctx.config.has("evolve", "quantities"))
        for (const auto& name : ctx.config.words("evolve", "quantities"))
            quantities.emplace(name, named_quantity(ctx, name));
    EvolutionReport report;
    if (!quantities.empty()) report = conservation_report(h, quantities, rho, times, order);

    json conservation;
    conservation["t_max"] = t_max;
    conservation["steps"] = steps;
    conservation["order"] = order;
    conservation["truncation_estimate"] = report.truncation_estimate;
    json drift;
    for (const auto& [name, d] : report.drift) drift[name] = d;
    conservation["drift"] = drift;
    json values;
    for (const auto& [name, vals] : report.values) values[name] = vals;
    conservation["values"] = values;
    write_json(ctx, "conservation.json", conservation);

    // Trajectories at sample points (both pictures).
    auto points = points_from_section(ctx, 0.0);
    int traj_points = static_cast<int>(
        ctx.config.integer_or("evolve", "trajectory_points",
                              std::min<long>(8, static_cast<long>(points.size()))));
    points.resize(std::min<size_t>(points.size(), traj_points));

    auto obs = ctx.config.has_section("observable") ? observable_from_section(ctx, "observable")
                                                    : named_quantity(ctx, "S1");
    std::string header = trajectory_header(ctx.basis->dim(), ctx.n_c);
    std::string heis_body, schro_body;
    auto obs_chain = heisenberg_ad_chain(obs, h, order);
    auto rho_chain = schrodinger_ad_chain(rho, h, order);
    std::vector<double> all_times = times;
    all_times.insert(all_times.begin(), 0.0);
    for (double t : all_times) {
        HybridObservable at = obs_chain[0];
        DensityField rt = rho_chain[0];
        double w = 1.0;
        for (int k = 1; k <= order; ++k) {
            w *= t / k;
            at += obs_chain[k] * w;
            rt += rho_chain[k] * w;
        }
        for (size_t pid = 0; pid < points.size(); ++pid) {
            append_matrix_row(heis_body, t, pid, points[pid], at.evaluate(points[pid]));
            append_matrix_row(schro_body, t, pid, points[pid], rt.evaluate(points[pid]));
        }
    }
    {
        auto out = open_artifact(ctx, "trajectory_heisenberg.csv");
        out << header << "\n" << heis_body;
    }
    {
        auto out = open_artifact(ctx, "trajectory_schrodinger.csv");
        out << header << "\n" << schro_body;
    }
    write_json(ctx, "trajectory_heisenberg.json", rows_as_json(header, heis_body));
    write_json(ctx, "trajectory_schrodinger.json", rows_as_json(header, schro_body));

    if (!ctx.options.quiet) {
        for (const auto& [name, d] : report.drift)
            std::cout << "drift " << name << " = " << format_double(d) << "\n";
    }
    return kExitOk;
}

int run_spin_orbit(Context& ctx) {
    double g = ctx.config.number_or("spin-orbit", "g", 1.0);
    double t = ctx.config.number_or("spin-orbit", "t", 0.15);
    int order = static_cast<int>(ctx.config.integer_or("spin-orbit", "order", 14));
    double tolerance = ctx.config.number_or("spin-orbit", "tolerance", 1e-6);
    if (ctx.basis->dim() != 2 || ctx.n_c != 3)
        throw ConfigError("spin-orbit requires n = 2 and n_c = 3");

    auto h = spin_half::spin_orbit_coupling(ctx.basis, g);
    auto obs = observable_from_section(ctx, "observable");
    auto rho = state_from_section(ctx);
    auto points = points_from_section(ctx, 0.4);

    auto heis_series = lie_series_heisenberg(obs, h, t, order);
    auto schro_series = lie_series_schrodinger(rho, h, t, order);
    auto heis_closed = spin_orbit_closed_form(obs, g, t, points);
    auto schro_closed = spin_orbit_schrodinger_closed_form(rho, g, t, points);

    std::string header = "picture,point_id,max_abs_diff,scale,rel_err";
    std::string body;
    double worst = 0.0;
    for (size_t pid = 0; pid < points.size(); ++pid) {
        Matrix sh = heis_series.value.evaluate(points[pid]);
        double scale_h = std::max(1e-12, sh.cwiseAbs().maxCoeff());
        double diff_h = (heis_closed[pid] - sh).cwiseAbs().maxCoeff();
        worst = std::max(worst, diff_h / scale_h);
        body += "heisenberg," + std::to_string(pid) + "," + format_double(diff_h) + "," +
                format_double(scale_h) + "," + format_double(diff_h / scale_h) + "\n";

        Matrix ss = schro_series.value.evaluate(points[pid]);
        double scale_s = std::max(1e-12, ss.cwiseAbs().maxCoeff());
        double diff_s = (schro_closed[pid] - ss).cwiseAbs().maxCoeff();
        worst = std::max(worst, diff_s / scale_s);
        body += "schrodinger," + std::to_string(pid) + "," + format_double(diff_s) + "," +
                format_double(scale_s) + "," + format_double(diff_s / scale_s) + "\n";
    }
    {
        auto out = open_artifact(ctx, "spin_orbit_compare.csv");
        out << header << "\n" << body;
    }
    json summary;
    summary["g"] = g;
    summary["t"] = t;
    summary["order"] = order;
    summary["points"] = points.size();
    summary["max_rel_err"] = worst;
    summary["tolerance"] = tolerance;
    summary["series_remainder_heisenberg"] = heis_series.remainder_estimate;
    summary["series_remainder_schrodinger"] = schro_series.remainder_estimate;
    summary["pass"] = worst <= tolerance;
    write_json(ctx, "spin_orbit_summary.json", summary);
    if (!ctx.options.quiet)
        std::cout << "spin-orbit closed form vs series: max rel err = " << format_double(worst)
                  << "\n";
    return worst <= tolerance ? kExitOk : kExitCheckFailure;
}

int run_positivity(Context& ctx) {
    std::string picture = ctx.config.get_or("positivity", "picture", "heisenberg");
    std::string evolution = ctx.config.get_or("positivity", "evolution", "closed-form");
    double g = ctx.config.number_or("positivity", "g", 1.0);
    double t_max = ctx.config.number_or("positivity", "t_max", 20.0 / g);
    double tol = ctx.config.number_or("positivity", "tol", 1e-6);
    int coarse = static_cast<int>(ctx.config.integer_or("positivity", "coarse_steps", 200));
    std::string expect = ctx.config.get_or("positivity", "expect", "any");

    auto points = points_from_section(ctx, evolution == "closed-form" ? 0.4 : 0.0);

    MarginCurve curve;
    PositivityScan initial;
    if (picture == "heisenberg") {
        auto obs = observable_from_section(ctx, "observable");
        initial = positivity_margin(obs, points);
        if (evolution == "closed-form") {
            curve = heisenberg_spin_orbit_margin(obs, g, points);
        } else {
            int order = static_cast<int>(ctx.config.integer_or("positivity", "series_order", 8));
            curve = heisenberg_series_margin(obs, observable_from_section(ctx, "hamiltonian"),
                                             points, order);
        }
    } else if (picture == "schrodinger") {
        auto rho = state_from_section(ctx);
        initial = positivity_margin(rho, points);
        if (evolution == "closed-form") {
            curve = schrodinger_spin_orbit_margin(rho, g, points);
        } else {
            int order = static_cast<int>(ctx.config.integer_or("positivity", "series_order", 8));
            curve = schrodinger_series_margin(rho, observable_from_section(ctx, "hamiltonian"),
                                              points, order);
        }
    } else {
        throw ConfigError("positivity picture must be heisenberg or schrodinger");
    }

    // Initial scan artifact.
    {
        auto out = open_artifact(ctx, "scan_initial.csv");
        std::string header = "point_id";
        for (int i = 1; i <= ctx.n_c; ++i) header += ",x" + std::to_string(i);
        for (int i = 1; i <= ctx.n_c; ++i) header += ",k" + std::to_string(i);
        header += ",min_eig";
        out << header << "\n";
        for (size_t pid = 0; pid < points.size(); ++pid) {
            out << pid;
            for (double v : points[pid].x) out << "," << format_double(v);
            for (double v : points[pid].k) out << "," << format_double(v);
            out << "," << format_double(initial.margins[pid]) << "\n";
        }
    }

    auto report = violation_time(curve, t_max, tol, coarse);
    {
        auto out = open_artifact(ctx, "margin_curve.csv");
        out << "t,global_margin\n";
        for (const auto& [t, m] : report.margin_curve)
            out << format_double(t) << "," << format_double(m) << "\n";
    }
    json violation;
    violation["picture"] = picture;
    violation["evolution"] = evolution;
    violation["g"] = g;
    violation["t_max"] = t_max;
    if (report.t_star) {
        violation["t_star"] = *report.t_star;
        json witness;
        witness["point_id"] = report.witness_index;
        if (report.witness_index >= 0) {
            json x = json::array(), k = json::array();
            for (double v : points[report.witness_index].x) x.push_back(v);
            for (double v : points[report.witness_index].k) k.push_back(v);
            witness["x"] = x;
            witness["k"] = k;
        }
        violation["witness_point"] = witness;
    } else {
        violation["t_star"] = nullptr;
    }
    json curve_json = json::array();
    for (const auto& [t, m] : report.margin_curve) curve_json.push_back(json{{"t", t}, {"margin", m}});
    violation["margin_curve"] = curve_json;
    write_json(ctx, "violation.json", violation);

    if (!ctx.options.quiet) {
        if (report.t_star)
            std::cout << "positivity violated at t* = " << format_double(*report.t_star) << "\n";
        else
            std::cout << "no positivity violation up to t_max = " << format_double(t_max) << "\n";
    }
    if (expect == "violation" && !report.t_star) return kExitCheckFailure;
    if (expect == "none" && report.t_star) return kExitCheckFailure;
    return kExitOk;
}

HybridObservable random_runner_observable(std::mt19937_64& rng, const BasisPtr& basis, int n_c,
                                          int max_degree) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_int_distribution<int> pick(0, basis->size() - 1);
    auto poly = [&](int terms) {
        PhasePolynomial p(n_c);
        std::uniform_int_distribution<int> deg(0, max_degree);
        std::uniform_int_distribution<int> var(0, 2 * n_c - 1);
        for (int t = 0; t < terms; ++t) {
            std::vector<int> exps(2 * n_c, 0);
            int budget = deg(rng);
            for (int d = 0; d < budget; ++d) exps[var(rng)] += 1;
            p.add_term(exps, coeff(rng));
        }
        return p;
    };
    HybridObservable h = HybridObservable::classical(basis, poly(3));
    int parts = 1 + static_cast<int>(rng() % 3);
    for (int c = 0; c < parts; ++c) h.a(pick(rng)) += poly(3);
    return h;
}

int run_jacobi(Context& ctx) {
    if (!ctx.seed_present) throw ConfigError("jacobi requires a seed");
    std::string bracket = ctx.config.get_or("jacobi", "bracket", "canonical");
    BracketKind kind;
    if (bracket == "canonical") {
        kind = BracketKind::canonical();
    } else if (bracket == "standard") {
        kind = BracketKind::standard();
    } else if (bracket == "anderson") {
        kind = BracketKind::anderson();
    } else if (bracket == "ansatz") {
        kind = BracketKind::ansatz(ctx.config.number_or("jacobi", "alpha", 0.0),
                                   ctx.config.number_or("jacobi", "beta", 1.0),
                                   ctx.config.number_or("jacobi", "gamma", 0.0));
    } else {
        throw ConfigError("jacobi bracket must be canonical, standard, anderson or ansatz");
    }
    int triples = static_cast<int>(ctx.config.integer_or("jacobi", "triples", 200));
    int max_degree = static_cast<int>(ctx.config.integer_or("jacobi", "max_degree", 3));
    double tolerance = ctx.config.number_or("jacobi", "tolerance", 1e-10);

    std::mt19937_64 rng(ctx.seed);
    std::string body;
    double worst_scaled = 0.0;
    int worst_trial = -1;
    std::vector<HybridObservable> worst_triple;
    for (int trial = 0; trial < triples; ++trial) {
        int n_c = 1 + static_cast<int>(rng() % std::min(3, ctx.n_c));
        auto a = random_runner_observable(rng, ctx.basis, n_c, max_degree);
        auto b = random_runner_observable(rng, ctx.basis, n_c, max_degree);
        auto c = random_runner_observable(rng, ctx.basis, n_c, max_degree);
        double scale = 1.0;
        double r = jacobi_residual(kind, a, b, c, &scale);
        body += std::to_string(trial) + "," + format_double(r) + "," + format_double(scale) +
                "," + format_double(r / scale) + "\n";
        if (r / scale > worst_scaled) {
            worst_scaled = r / scale;
            worst_trial = trial;
            worst_triple = {a, b, c};
        }
    }
    {
        auto out = open_artifact(ctx, "jacobi_residuals.csv");
        out << "trial,residual,scale,scaled\n" << body;
    }
    bool pass = worst_scaled <= tolerance;
    json summary;
    summary["bracket"] = bracket;
    if (bracket == "ansatz") {
        summary["alpha"] = kind.alpha;
        summary["beta"] = kind.beta;
        summary["gamma"] = kind.gamma;
    }
    summary["n"] = ctx.basis->dim();
    summary["triples"] = triples;
    summary["seed"] = ctx.seed;
    summary["tolerance"] = tolerance;
    summary["max_scaled_residual"] = worst_scaled;
    summary["pass"] = pass;
    write_json(ctx, "jacobi_summary.json", summary);

    if (!pass && worst_trial >= 0) {
        json witness;
        witness["trial"] = worst_trial;
        witness["scaled_residual"] = worst_scaled;
        const char* names[3] = {"A", "B", "C"};
        for (int i = 0; i < 3; ++i) {
            json obs;
            obs["a0"] = format_polynomial(worst_triple[i].a0());
            for (int j = 0; j < worst_triple[i].components(); ++j)
                if (!worst_triple[i].a(j).is_zero())
                    obs["q" + std::to_string(j + 1)] = format_polynomial(worst_triple[i].a(j));
            witness[names[i]] = obs;
        }
        write_json(ctx, "jacobi_witness.json", witness);
    }
    if (!ctx.options.quiet)
        std::cout << "jacobi[" << bracket << "]: max scaled residual = "
                  << format_double(worst_scaled) << (pass ? " (pass)" : " (violation)") << "\n";
    return pass ? kExitOk : kExitCheckFailure;
}

int run_uniqueness(Context& ctx) {
    if (!ctx.seed_present) throw ConfigError("uniqueness requires a seed");
    std::vector<int> ns;
    if (ctx.config.has("uniqueness", "ns"))
        for (double v : ctx.config.numbers("uniqueness", "ns")) ns.push_back(static_cast<int>(v));
    else
        ns = {2, 3, 4};
    int grid_points = static_cast<int>(ctx.config.integer_or("uniqueness", "grid_points", 9));
    double lo = ctx.config.number_or("uniqueness", "grid_min", -2.0);
    double hi = ctx.config.number_or("uniqueness", "grid_max", 2.0);
    int instances = static_cast<int>(ctx.config.integer_or("uniqueness", "instances", 4));
    int fsamples = static_cast<int>(ctx.config.integer_or("uniqueness", "functional_samples", 200));

    std::vector<double> grid;
    for (int i = 0; i < grid_points; ++i)
        grid.push_back(grid_points == 1 ? lo : lo + (hi - lo) * i / (grid_points - 1));

    bool pass = true;
    json summary;
    for (int n : ns) {
        auto results = ansatz_jacobi_scan(n, grid, grid, grid, instances, ctx.seed);
        // Always include the exact canonical node.
        auto basis = std::make_shared<const SuBasis>(SuBasis::build(n));
        results.push_back(ansatz_jacobi_residual(basis, 0.0, 1.0, 0.0, instances, ctx.seed));

        std::string file = "landscape_n" + std::to_string(n) + ".csv";
        auto out = open_artifact(ctx, file);
        out << "alpha,beta,gamma,residual\n";
        double canonical_residual = 0.0;
        double worst_floor = -1.0;  // smallest residual among constrained nodes
        for (const auto& r : results) {
            out << format_double(r.alpha) << "," << format_double(r.beta) << ","
                << format_double(r.gamma) << "," << format_double(r.jacobi) << "\n";
            bool canonical_node = r.alpha == 0.0 && r.beta == 1.0 && r.gamma == 0.0;
            if (canonical_node) canonical_residual = std::max(canonical_residual, r.jacobi);
            // For n = 2 the d tensor vanishes identically, so gamma is inert
            // and only alpha separates a node from the canonical bracket.
            double off_axis = n == 2 ? std::abs(r.alpha) : std::abs(r.alpha) + std::abs(r.gamma);
            if (off_axis >= 0.1) {
                if (worst_floor < 0.0 || r.jacobi < worst_floor) worst_floor = r.jacobi;
                if (r.jacobi <= 1e-3) pass = false;
            }
        }
        if (canonical_residual > 1e-10) pass = false;
        json per_n;
        per_n["canonical_residual"] = canonical_residual;
        per_n["min_offaxis_residual"] = worst_floor;
        summary["n" + std::to_string(n)] = per_n;
    }

    // Invariant-tensor facts.
    json tensors;
    for (int n : ns) {
        auto report = tensor_basis_check(n);
        json t;
        t["d_max_abs"] = report.d_max_abs;
        t["gram_rank"] = report.gram_rank;
        t["n3_identity_residual"] = report.n3_identity_residual;
        tensors["n" + std::to_string(n)] = t;
        if (n == 2 && (report.d_max_abs > 1e-12 || report.gram_rank != 3)) pass = false;
        if (n == 3 && (report.n3_identity_residual > 1e-12 || report.gram_rank != 8)) pass = false;
        if (n >= 4 && report.gram_rank != 9) pass = false;
    }
    write_json(ctx, "tensor_checks.json", tensors);

    // Functional-equation facts.
    std::mt19937_64 rng(ctx.seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<std::array<double, 3>> samples;
    for (int i = 0; i < fsamples; ++i) samples.push_back({u(rng), u(rng), u(rng)});
    double affine = appendix_functional_residual([](double v) { return 2.0 * v + 3.0; }, samples);
    double quadratic = appendix_functional_residual([](double v) { return v * v; }, samples);
    json functional;
    functional["affine_residual"] = affine;
    functional["quadratic_residual"] = quadratic;
    functional["samples"] = fsamples;
    write_json(ctx, "functional_check.json", functional);
    if (affine > 1e-12 || quadratic <= 1.0) pass = false;

    summary["pass"] = pass;
    write_json(ctx, "uniqueness_summary.json", summary);
    if (!ctx.options.quiet)
        std::cout << "uniqueness landscape: " << (pass ? "pass" : "violation") << "\n";
    return pass ? kExitOk : kExitCheckFailure;
}

}  // namespace

int run_subcommand(const std::string& subcommand, const Scenario& config,
                   const RunOptions& options) {
    try {
        validate_config(config);
        Context ctx = make_context(subcommand, config, options);
        int status;
        if (subcommand == "evolve")
            status = run_evolve(ctx);
        else if (subcommand == "spin-orbit")
            status = run_spin_orbit(ctx);
        else if (subcommand == "positivity")
            status = run_positivity(ctx);
        else if (subcommand == "jacobi")
            status = run_jacobi(ctx);
        else if (subcommand == "uniqueness")
            status = run_uniqueness(ctx);
        else
            throw ConfigError("unknown subcommand '" + subcommand + "'");
        write_manifest(ctx);
        return status;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
}

}  // namespace hybridlie
