#pragma once

// Command-line front end.  Decision commands exit 0 on a positive verdict
// and 1 on a negative one; input errors exit 2.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dmc/dmc.hpp"
#include "dmc/io.hpp"

namespace dmc::cli {

inline constexpr std::uint64_t kDefaultSeed = 0xD1A6;

enum class Exit : int { Ok = 0, False = 1, InputError = 2 };

struct Table {
    std::vector<std::string> header;
    std::vector<Vec> rows;
};

struct Output {
    Json json;
    std::optional<Table> table;
    Exit code = Exit::Ok;
};

struct RunConfig {
    std::string command;
    std::uint64_t seed = kDefaultSeed;
    std::size_t grid = 0;  // 0: command default
    std::optional<double> tol;
    std::string out;
    std::string format = "auto";
    std::string dump_grid;

    // inputs
    std::string body, body2, measure, xi, eta, dpball, spec, family, atoms;
    std::vector<std::string> u;
    std::vector<std::string> J;
    std::string mode = "auto";
    std::size_t count = 0;
    std::size_t generic_atoms = 0;
    double r = 0.0;
    double p = 0.0;
    double beta = 0.0;
    double rank_tol = 1e-10;
    std::size_t depth = 4;
    std::size_t candidates = 0;
};

// ---------------------------------------------------------------------------
// argument helpers

inline Vec parse_vector(const std::string& s, const char* what)
{
    Vec v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            const double x = std::stod(tok, &used);
            if (used != tok.size() || !std::isfinite(x)) throw std::invalid_argument(tok);
            v.push_back(x);
        } catch (const std::logic_error&) {
            throw Error(std::string(what) + ": cannot parse '" + tok + "' as a number");
        }
    }
    if (v.empty()) throw Error(std::string(what) + ": empty vector");
    return v;
}

/// Comma-separated 1-based indices, returned sorted and 0-based.
inline IndexSet parse_index_set(const std::string& s, std::size_t n)
{
    IndexSet J;
    for (double x : parse_vector(s, "--J")) {
        if (x != std::floor(x) || x < 1.0 || x > static_cast<double>(n))
            throw Error("--J: index " + Json(x).dump() + " outside 1.." + std::to_string(n));
        J.push_back(static_cast<Index>(x) - 1);
    }
    std::sort(J.begin(), J.end());
    if (std::adjacent_find(J.begin(), J.end()) != J.end()) throw Error("--J: repeated index");
    return J;
}

inline Json one_based(const IndexSet& J)
{
    Json a = Json::array();
    for (Index j : J) a.push_back(j + 1);
    return a;
}

inline std::vector<Vec> directions(const RunConfig& c, std::size_t n)
{
    if (c.u.empty()) throw Error("at least one --u vector is required");
    std::vector<Vec> out;
    for (const auto& s : c.u) {
        Vec v = parse_vector(s, "--u");
        require_dim(v.size(), n, "--u");
        out.push_back(std::move(v));
    }
    return out;
}

inline DecisionMode parse_mode(const std::string& m)
{
    if (m == "auto") return DecisionMode::Auto;
    if (m == "exact") return DecisionMode::Exact;
    if (m == "sampled") return DecisionMode::Sampled;
    throw Error("--mode: expected auto, exact or sampled");
}

inline const std::string& need(const std::string& path, const char* flag)
{
    if (path.empty()) throw Error(std::string("missing required input ") + flag);
    return path;
}

inline ConvexBody load_body(const std::string& f) { return load_file(f, [](const JsonNode& n) { return parse_body(n); }); }

inline DpBall load_dpball(const std::string& f) { return load_file(f, [](const JsonNode& n) { return parse_dpball(n); }); }

inline DiscreteRandomVector load_law(const std::string& f)
{
    return load_file(f, [](const JsonNode& n) { return parse_random_vector(n); });
}

inline Json decision_json(const Decision& d)
{
    Json j;
    j["verdict"] = d.value;
    j["exact"] = d.exact;
    j["witness"] = d.witness ? vec_json(*d.witness) : Json(nullptr);
    j["max_deviation"] = d.max_deviation;
    j["tolerance"] = d.tolerance;
    j["grid_size"] = d.grid_size;
    return j;
}

inline void dump_grid_csv(const std::string& file, const std::vector<Vec>& pts)
{
    if (file.empty()) return;
    std::ofstream os(file);
    if (!os) throw Error(file + ": cannot open for writing");
    const std::size_t n = pts.empty() ? 0 : pts.front().size();
    for (std::size_t i = 0; i < n; ++i) os << (i ? ",u" : "u") << i + 1;
    os << '\n' << std::setprecision(17);
    for (const auto& p : pts) {
        for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
        os << '\n';
    }
}

// ---------------------------------------------------------------------------
// commands

inline Output cmd_support_eval(const RunConfig& c)
{
    const ConvexBody k = load_body(need(c.body, "--body"));
    Output o;
    Table t{{}, {}};
    for (std::size_t i = 0; i < k.dim(); ++i) t.header.push_back("u" + std::to_string(i + 1));
    t.header.push_back("support");
    Json vals = Json::array();
    for (const auto& u : directions(c, k.dim())) {
        const double h = support(k, u);
        vals.push_back({{"u", u}, {"value", h}});
        Vec row = u;
        row.push_back(h);
        t.rows.push_back(std::move(row));
    }
    o.json["kind"] = k.kind();
    o.json["dim"] = k.dim();
    o.json["values"] = std::move(vals);
    if (const auto w = find_subadditivity_violation(k, 256, c.seed)) {
        o.json["warning"] = "sampled subadditivity violation: the body may not be convex";
        o.json["violation"] = {vec_json(w->first), vec_json(w->second)};
    }
    o.table = std::move(t);
    return o;
}

inline Output cmd_k_transform(const RunConfig& c)
{
    const ConvexBody k = load_body(need(c.body, "--body"));
    const SphereMeasure mu = load_file(need(c.measure, "--measure"), [](const JsonNode& n) { return parse_measure(n); });
    Output o;
    Table t;
    for (std::size_t i = 0; i < k.dim(); ++i) t.header.push_back("u" + std::to_string(i + 1));
    t.header.push_back("value");
    Json vals = Json::array();
    for (const auto& u : directions(c, k.dim())) {
        const double v = c.p > 0.0 ? lp_k_transform(k, mu, u, c.p) : k_transform(k, mu, u);
        vals.push_back({{"u", u}, {"value", v}});
        Vec row = u;
        row.push_back(v);
        t.rows.push_back(std::move(row));
    }
    if (c.p > 0.0) o.json["p"] = c.p;
    o.json["values"] = std::move(vals);
    o.table = std::move(t);
    return o;
}

inline Output cmd_zonoid_equiv(const RunConfig& c)
{
    const auto xi = load_law(need(c.xi, "--xi"));
    const auto eta = load_law(need(c.eta, "--eta"));
    const Decision d = zonoid_equivalent(xi, eta, parse_mode(c.mode));
    Output o;
    o.json = decision_json(d);
    if (d.witness) {
        const ConvexBody bx(zonoid_of(xi)), be(zonoid_of(eta));
        o.json["witness_values"] = {support(bx, *d.witness), support(be, *d.witness)};
    }
    o.code = d.value ? Exit::Ok : Exit::False;
    return o;
}

inline Output cmd_as_check(const RunConfig& c)
{
    const ConvexBody k = load_body(need(c.body, "--body"));
    std::vector<IndexSet> sets;
    for (const auto& s : c.J) sets.push_back(parse_index_set(s, k.dim()));
    if (sets.empty())
        sets = subsets_where(k.dim(), [](const IndexSet& J) { return J.size() >= 2 && J.size() % 2 == 0; });
    const DecisionMode mode = parse_mode(c.mode);
    Output o;
    Json checks = Json::array();
    bool all = true;
    for (const auto& J : sets) {
        const Decision d = as_condition(k, J, mode);
        Json e = decision_json(d);
        e["J"] = one_based(J);
        checks.push_back(std::move(e));
        all = all && d.value;
    }
    o.json["checks"] = std::move(checks);
    o.json["all_hold"] = all;
    o.code = all ? Exit::Ok : Exit::False;
    return o;
}

inline Json report_json(const UniversalityReport& r)
{
    Json j;
    j["verdict"] = r.verdict;
    j["status"] = r.status;
    j["failing_J"] = r.failing_J ? one_based(*r.failing_J) : Json(nullptr);
    j["singleton_failure"] = r.singleton_failure ? Json(*r.singleton_failure + 1) : Json(nullptr);
    j["witness"] = r.witness ? vec_json(*r.witness) : Json(nullptr);
    Json checks = Json::array();
    for (const auto& ch : r.checks) checks.push_back({{"J", one_based(ch.J)}, {"holds", ch.holds}, {"exact", ch.exact}});
    j["checks"] = std::move(checks);
    j["segment_summand"] = r.segment_summand;
    j["tolerance"] = kMergeTol;
    return j;
}

inline Output cmd_d_universal(const RunConfig& c)
{
    const auto r = d_universal(load_body(need(c.body, "--body")));
    return {report_json(r), std::nullopt, r.verdict ? Exit::Ok : Exit::False};
}

inline Output cmd_uncond_universal(const RunConfig& c)
{
    const auto r = unconditionally_d_universal(load_body(need(c.body, "--body")));
    return {report_json(r), std::nullopt, r.verdict ? Exit::Ok : Exit::False};
}

inline Output cmd_inject_probe(const RunConfig& c)
{
    const ConvexBody k = load_body(need(c.body, "--body"));
    std::vector<Vec> atoms;
    if (!c.atoms.empty()) {
        const auto mu = load_file(c.atoms, [](const JsonNode& n) { return parse_measure(n); });
        for (const auto& a : mu.atoms()) atoms.push_back(a.v);
    } else if (c.generic_atoms > 0) {
        atoms = generic_positive_atoms(k.dim(), c.generic_atoms, c.seed);
    } else {
        throw Error("inject-probe needs --atoms FILE or --generic-atoms N");
    }
    const std::size_t size = c.grid ? c.grid : std::max<std::size_t>(4 * atoms.size(), 64);
    const auto grid = DirectionGrid::fibonacci(k.dim(), size);
    dump_grid_csv(c.dump_grid, grid.points());
    const auto t = injectivity_probe(k, atoms, grid, c.tol.value_or(c.rank_tol));
    Output o;
    o.json["rank"] = t.rank;
    o.json["kernel_dim"] = t.kernel_dim();
    o.json["atoms"] = t.cols;
    o.json["singular_values"] = Vec(t.singular_values.data(), t.singular_values.data() + t.singular_values.size());
    o.json["sigma_max"] = t.sigma_max();
    o.json["sigma_min"] = t.sigma_min();
    o.json["rank_tol"] = t.rank_tol;
    o.json["residual"] = t.residual;
    o.json["residual_tol"] = 1e-6;
    o.json["grid_size"] = grid.size();
    o.json["fresh_grid_size"] = t.fresh_grid_size;
    Table tab;
    for (std::size_t j = 0; j < atoms.size(); ++j) tab.header.push_back("atom" + std::to_string(j + 1));
    for (Eigen::Index r = 0; r < t.entries.rows(); ++r) {
        Vec row(static_cast<std::size_t>(t.entries.cols()));
        for (Eigen::Index q = 0; q < t.entries.cols(); ++q) row[static_cast<std::size_t>(q)] = t.entries(r, q);
        tab.rows.push_back(std::move(row));
    }
    o.table = std::move(tab);
    return o;
}

inline Output cmd_mixed_volume(const RunConfig& c)
{
    const ConvexBody l = load_body(need(c.body2, "--L"));
    const auto* poly = l.get_if<Polygon2D>();
    if (!poly) throw Error("mixed-volume: --L must be a polygon2d body");
    const ConvexBody k = load_body(need(c.body, "--body"));
    const SphereMeasure s = surface_measure_2d(*poly);
    Output o;
    Table t{{"u1", "u2", "mixed_volume"}, {}};
    Json vals = Json::array();
    for (const auto& u : directions(c, 2)) {
        const double v = mixed_volume_transform(s, k, u);
        vals.push_back({{"u", u}, {"value", v}});
        t.rows.push_back({u[0], u[1], v});
    }
    o.json["surface_measure"] = measure_json(s);
    o.json["values"] = std::move(vals);
    o.table = std::move(t);
    return o;
}

inline Output cmd_mean_width(const RunConfig& c)
{
    const ConvexBody k = load_body(need(c.body, "--body"));
    const std::size_t size = c.grid ? c.grid : 4096;
    const auto grid = DirectionGrid::fibonacci(k.dim(), size);
    dump_grid_csv(c.dump_grid, grid.points());
    Output o;
    Table t;
    for (std::size_t i = 0; i < k.dim(); ++i) t.header.push_back("u" + std::to_string(i + 1));
    t.header.push_back("value");
    Json vals = Json::array();
    for (const auto& u : directions(c, k.dim())) {
        const auto q = mean_width_transform(k, u, grid);
        vals.push_back({{"u", u}, {"value", q.value}});
        Vec row = u;
        row.push_back(q.value);
        t.rows.push_back(std::move(row));
    }
    o.json["values"] = std::move(vals);
    o.json["grid_size"] = grid.size();
    o.json["grid_scheme"] = grid.scheme_name();
    o.table = std::move(t);
    return o;
}

/// {dim, maps: [{g: [[row], ...], w}]}
inline std::vector<LinearMapAtom> parse_family(const JsonNode& node)
{
    const std::size_t n = node["dim"].count();
    const JsonNode maps = node["maps"];
    std::vector<LinearMapAtom> out;
    for (std::size_t k = 0; k < maps.size(); ++k) {
        const JsonNode g = maps[k]["g"];
        if (g.size() != n) g.fail("expected " + std::to_string(n) + " rows");
        Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) {
            const Vec row = g[i].vec(n);
            for (std::size_t j = 0; j < n; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
        }
        out.push_back({std::move(m), maps[k]["w"].number()});
    }
    return out;
}

inline Output cmd_g_transform(const RunConfig& c)
{
    const ConvexBody k = load_body(need(c.body, "--body"));
    const auto fam = load_file(need(c.family, "--family"), [](const JsonNode& n) { return parse_family(n); });
    Output o;
    Table t;
    for (std::size_t i = 0; i < k.dim(); ++i) t.header.push_back("u" + std::to_string(i + 1));
    t.header.push_back("value");
    Json vals = Json::array();
    for (const auto& u : directions(c, k.dim())) {
        const double v = g_transform(k, fam, u);
        vals.push_back({{"u", u}, {"value", v}});
        Vec row = u;
        row.push_back(v);
        t.rows.push_back(std::move(row));
    }
    o.json["values"] = std::move(vals);
    o.table = std::move(t);
    return o;
}

inline Output cmd_dp_eval(const RunConfig& c)
{
    const DpBall l = load_dpball(need(c.dpball, "--dpball"));
    Output o;
    Table t;
    for (std::size_t i = 0; i < l.dim(); ++i) t.header.push_back("u" + std::to_string(i + 1));
    t.header.push_back("value");
    Json vals = Json::array();
    for (const auto& u : directions(c, l.dim())) {
        const double v = c.beta > 0.0 ? signed_power_functional(l, c.beta, u) : minkowski_functional(l, u);
        vals.push_back({{"u", u}, {"value", v}});
        Vec row = u;
        row.push_back(v);
        t.rows.push_back(std::move(row));
    }
    o.json["p"] = exponent_json(l.p());
    o.json["bounded"] = l.bounded();
    if (!l.bounded()) o.json["warning"] = "spectral measure is supported by a coordinate hyperplane: the set is unbounded";
    if (c.beta > 0.0) o.json["beta"] = c.beta;
    o.json["values"] = std::move(vals);
    o.table = std::move(t);
    return o;
}

inline Table sample_table(const std::vector<Vec>& xs, std::size_t n)
{
    Table t;
    for (std::size_t i = 0; i < n; ++i) t.header.push_back("x" + std::to_string(i + 1));
    t.rows = xs;
    return t;
}

inline Output cmd_stable_sample(const RunConfig& c)
{
    StableSpec spec;
    if (!c.spec.empty()) {
        spec = load_file(c.spec, [](const JsonNode& n) { return parse_stable_spec(n); });
    } else {
        spec = dp_to_stable(load_dpball(need(c.dpball, "--spec or --dpball")));
    }
    Rng rng(c.seed);
    const auto xs = sample_one_sided_stable(spec, c.count ? c.count : 1000, rng);
    Output o;
    o.json["spec"] = stable_spec_json(spec);
    o.json["samples"] = xs;
    o.table = sample_table(xs, spec.dim);
    return o;
}

inline Output cmd_maxstable_sample(const RunConfig& c)
{
    const DpBall l = load_dpball(need(c.dpball, "--dpball"));
    Rng rng(c.seed);
    const auto xs = sample_max_stable(l, c.count ? c.count : 1000, rng);
    Output o;
    o.json["samples"] = xs;
    o.table = sample_table(xs, l.dim());
    return o;
}

inline Output verification_output(const VerificationReport& r)
{
    Output o;
    o.json["grid"] = r.grid;
    o.json["empirical"] = r.empirical;
    o.json["exact"] = r.exact;
    o.json["three_sigma"] = r.three_sigma;
    o.json["max_abs_dev"] = r.max_abs_dev;
    o.json["tolerance"] = r.tolerance;
    o.json["n_samples"] = r.n_samples;
    o.json["seed"] = r.seed;
    o.json["passed"] = r.passed();
    Table t;
    for (std::size_t i = 0; i < (r.grid.empty() ? 0 : r.grid[0].size()); ++i) t.header.push_back("u" + std::to_string(i + 1));
    t.header.insert(t.header.end(), {"empirical", "exact", "three_sigma"});
    for (std::size_t k = 0; k < r.grid.size(); ++k) {
        Vec row = r.grid[k];
        row.insert(row.end(), {r.empirical[k], r.exact[k], r.three_sigma[k]});
        t.rows.push_back(std::move(row));
    }
    o.table = std::move(t);
    o.code = r.passed() ? Exit::Ok : Exit::False;
    return o;
}

inline Output cmd_laplace_verify(const RunConfig& c)
{
    const DpBall l = load_dpball(need(c.dpball, "--dpball"));
    const auto grid = product_grid(l.dim(), c.grid ? c.grid : 5, 0.1, 2.0);
    dump_grid_csv(c.dump_grid, grid);
    return verification_output(laplace_verify(l, c.count ? c.count : 200000, c.seed, grid, c.tol.value_or(0.005)));
}

inline Output cmd_cdf_verify(const RunConfig& c)
{
    const DpBall l = load_dpball(need(c.dpball, "--dpball"));
    const auto grid = product_grid(l.dim(), c.grid ? c.grid : 3, 0.5, 2.0);
    dump_grid_csv(c.dump_grid, grid);
    return verification_output(cdf_verify(l, c.count ? c.count : 100000, c.seed, grid, c.tol.value_or(0.01)));
}

inline Output cmd_rerepresent(const RunConfig& c)
{
    const DpBall l = load_dpball(need(c.dpball, "--dpball"));
    if (c.r == 0.0) throw Error("rerepresent needs --r");
    const std::size_t n = l.dim();
    const auto cands = positive_orthant_lattice(n, c.candidates ? c.candidates : 32 * n);
    const auto grid = DirectionGrid::fibonacci(n, c.grid ? c.grid : 512 * n);
    dump_grid_csv(c.dump_grid, grid.points());
    const auto res = rerepresent(l, c.r, cands, grid, c.seed);
    Output o;
    o.json["fitted"] = dpball_json(res.fitted);
    o.json["fit_residual"] = res.fit_residual;
    o.json["heldout_residual"] = res.heldout_residual;
    o.json["heldout_size"] = res.heldout_size;
    o.json["candidates"] = cands.size();
    o.json["eval_grid_size"] = grid.size();
    o.json["nnls"] = {{"projected_gradient", res.solver.projected_gradient},
                      {"iterations", res.solver.iterations},
                      {"converged", res.solver.converged},
                      {"stationarity_tol", 1e-10}};
    return o;
}

inline Output cmd_moment_oracle(const RunConfig& c)
{
    const auto xi = load_law(need(c.xi, "--xi"));
    const auto eta = load_law(need(c.eta, "--eta"));
    const auto r = moment_equivalence_oracle(xi, eta, c.depth);
    Output o;
    o.json["verdict"] = r.equivalent;
    o.json["E"] = r.E ? one_based(*r.E) : Json(nullptr);
    o.json["J"] = r.J ? one_based(*r.J) : Json(nullptr);
    o.json["alpha"] = r.alpha ? vec_json(*r.alpha) : Json(nullptr);
    o.json["max_deviation"] = r.max_deviation;
    o.json["tolerance"] = r.tolerance;
    o.json["checks"] = r.checks;
    o.json["depth"] = c.depth;
    o.code = r.equivalent ? Exit::Ok : Exit::False;
    return o;
}

// ---------------------------------------------------------------------------
// output

inline bool csv_by_default(const std::string& cmd) { return cmd == "stable-sample" || cmd == "maxstable-sample"; }

inline void write_output(const RunConfig& c, Output& o, std::ostream& os)
{
    const bool csv = c.format == "csv" || (c.format == "auto" && csv_by_default(c.command));
    if (csv) {
        if (!o.table) throw Error(c.command + " has no CSV output");
        os << "# command=" << c.command << " seed=" << c.seed;
        if (o.json.contains("tolerance")) os << " tol=" << o.json["tolerance"].dump();
        os << '\n';
        for (std::size_t i = 0; i < o.table->header.size(); ++i) os << (i ? "," : "") << o.table->header[i];
        os << '\n';
        os << std::setprecision(17);
        for (const auto& row : o.table->rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
            os << '\n';
        }
        return;
    }
    Json j;
    j["command"] = c.command;
    j["seed"] = c.seed;
    for (auto it = o.json.begin(); it != o.json.end(); ++it) j[it.key()] = it.value();
    os << j.dump(2) << '\n';
}

using Handler = Output (*)(const RunConfig&);

struct Command {
    const char* name;
    const char* help;
    Handler run;
    bool grid_output = false;
};

inline const std::vector<Command>& commands()
{
    static const std::vector<Command> cmds{
        {"support-eval", "support function h(K,u)", cmd_support_eval},
        {"k-transform", "K-transform of a sphere measure", cmd_k_transform},
        {"zonoid-equiv", "zonoid equivalence of two discrete laws", cmd_zonoid_equiv},
        {"as-check", "asymmetry condition for projections K_J", cmd_as_check},
        {"d-universal", "D-universality of a generalised zonoid", cmd_d_universal},
        {"uncond-universal", "sufficient condition for unconditional D-universality", cmd_uncond_universal},
        {"inject-probe", "numerical rank and kernel of the K-transform", cmd_inject_probe, true},
        {"mixed-volume", "mixed volume V(L,uK) of a polygon L", cmd_mixed_volume},
        {"mean-width", "mean-width transform by quadrature", cmd_mean_width, true},
        {"g-transform", "transform over a finite family of linear maps", cmd_g_transform},
        {"dp-eval", "Minkowski functional of a D_p-ball", cmd_dp_eval},
        {"stable-sample", "draws of a one-sided strictly stable vector", cmd_stable_sample},
        {"laplace-verify", "Monte-Carlo check of the stable Laplace transform", cmd_laplace_verify, true},
        {"maxstable-sample", "draws of a max-stable vector", cmd_maxstable_sample},
        {"cdf-verify", "Monte-Carlo check of the max-stable CDF", cmd_cdf_verify, true},
        {"rerepresent", "refit a D_p-ball as a D_r-ball", cmd_rerepresent, true},
        {"moment-oracle", "moment-based zonoid equivalence oracle", cmd_moment_oracle},
    };
    return cmds;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Diagonal Minkowski classes, zonoid equivalence and stable laws"};
    app.require_subcommand(1);
    RunConfig c;
    std::string seed_text = std::to_string(kDefaultSeed);
    double tol = 0.0;

    for (const auto& cmd : commands()) {
        CLI::App* s = app.add_subcommand(cmd.name, cmd.help);
        s->add_option("--seed", seed_text, "RNG seed (decimal or 0x hex)");
        s->add_option("--grid", c.grid, "grid size");
        s->add_option("--tol", tol, "tolerance override");
        s->add_option("--out", c.out, "output file (default stdout)");
        s->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"auto", "json", "csv"}));
        if (cmd.grid_output) s->add_option("--dump-grid", c.dump_grid, "write the evaluation grid as CSV");
        s->add_option("--body,--K", c.body, "body JSON file");
        s->add_option("--L", c.body2, "polygon body JSON file");
        s->add_option("--measure", c.measure, "sphere measure JSON file");
        s->add_option("--xi", c.xi, "random vector JSON file");
        s->add_option("--eta", c.eta, "random vector JSON file");
        s->add_option("--dpball", c.dpball, "D_p-ball JSON file");
        s->add_option("--spec", c.spec, "stable spec JSON file");
        s->add_option("--family", c.family, "linear map family JSON file");
        s->add_option("--atoms", c.atoms, "sphere measure JSON file whose atoms are probed");
        s->add_option("--generic-atoms", c.generic_atoms, "number of seeded generic atoms in S_+");
        s->add_option("--u", c.u, "direction, comma separated (repeatable)");
        s->add_option("--J", c.J, "1-based index set, comma separated (repeatable)");
        s->add_option("--mode", c.mode, "auto, exact or sampled")->check(CLI::IsMember({"auto", "exact", "sampled"}));
        s->add_option("--count", c.count, "number of draws");
        s->add_option("--r", c.r, "target exponent");
        s->add_option("--p", c.p, "exponent of the L_p variant");
        s->add_option("--beta", c.beta, "signed power exponent");
        s->add_option("--rank-tol", c.rank_tol, "relative singular value threshold");
        s->add_option("--depth", c.depth, "lattice depth");
        s->add_option("--candidates", c.candidates, "number of candidate atoms");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return static_cast<int>(Exit::InputError);
    }

    try {
        for (const auto& cmd : commands()) {
            if (!app.got_subcommand(cmd.name)) continue;
            c.command = cmd.name;
            const auto* sub = app.get_subcommand(cmd.name);
            c.seed = std::stoull(seed_text, nullptr, 0);
            if (sub->count("--tol")) c.tol = tol;
            Output o = cmd.run(c);
            if (c.tol) o.json["tolerance_override"] = *c.tol;
            if (c.out.empty()) {
                write_output(c, o, out);
            } else {
                std::ofstream f(c.out);
                if (!f) throw Error(c.out + ": cannot open for writing");
                write_output(c, o, f);
            }
            return static_cast<int>(o.code);
        }
    } catch (const std::invalid_argument&) {
        err << "error: --seed: expected an unsigned integer\n";
        return static_cast<int>(Exit::InputError);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(Exit::InputError);
    }
    return static_cast<int>(Exit::InputError);
}

}  // namespace dmc::cli
