#pragma once

// Decision procedures: zonoid equivalence of discrete laws, the asymmetry
// condition on sign-reflected sums, unconditionality, unconditional and full
// D-universality of generalised zonoids, and the moment-based equivalence
// oracle for symmetric laws.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dmc/body_ops.hpp"
#include "dmc/grid.hpp"
#include "dmc/measures.hpp"

namespace dmc {

enum class DecisionMode { Auto, Exact, Sampled };

inline std::string to_string(DecisionMode m)
{
    switch (m) {
    case DecisionMode::Exact: return "exact";
    case DecisionMode::Sampled: return "sampled";
    default: return "auto";
    }
}

/// Outcome of a decision procedure.  In sampled mode a negative answer only
/// means that no witness was found on the grid; `exact` records which
/// route produced the answer.
struct Decision {
    bool value = false;
    bool exact = false;
    std::optional<Vec> witness;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    std::size_t grid_size = 0;
};

/// Relative tolerance of sampled comparisons.
inline constexpr double kSampledTol = 1e-9;

inline std::size_t sampled_grid_size(std::size_t n) { return 64 * n * n; }

// ---------------------------------------------------------------------------
// sign patterns

/// A vector s in {-1, +1}^m.
struct SignPattern {
    std::vector<int> s;

    /// Product of the entries restricted to J (all entries when J is empty).
    int sigma(const IndexSet& J = {}) const
    {
        int r = 1;
        if (J.empty()) {
            for (int x : s) r *= x;
        } else {
            for (Index j : J) r *= s.at(j);
        }
        return r;
    }

    Vec as_vector() const { return Vec(s.begin(), s.end()); }
};

/// All 2^m sign patterns, (+1,...,+1) first.
inline std::vector<SignPattern> sign_patterns(std::size_t m)
{
    if (m >= 31) throw DomainError("sign_patterns: dimension too large");
    std::vector<SignPattern> out;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        SignPattern p{std::vector<int>(m, 1)};
        for (std::size_t i = 0; i < m; ++i)
            if (mask & (1u << i)) p.s[i] = -1;
        out.push_back(std::move(p));
    }
    return out;
}

namespace detail {

/// Looks for a direction where |f(u)| exceeds tol * scale(u), trying the
/// coordinate axes and the supplied extra directions before the grid.
/// Returns the first hit, or the overall maximiser when `fallback` is set.
struct WitnessSearch {
    std::optional<Vec> witness;
    double max_deviation = 0.0;
    double scale = 0.0;
    std::size_t evaluated = 0;
};

inline WitnessSearch search_witness(std::size_t n, const std::function<double(const Vec&)>& diff,
                                    const std::function<double(const Vec&)>& magnitude,
                                    const std::vector<Vec>& extra, const DirectionGrid& grid, double tol,
                                    bool fallback)
{
    WitnessSearch ws;
    std::vector<Vec> cands;
    for (std::size_t i = 0; i < n; ++i) cands.push_back(unit_vector(n, i));
    cands.insert(cands.end(), extra.begin(), extra.end());
    cands.insert(cands.end(), grid.points().begin(), grid.points().end());
    std::vector<double> diffs(cands.size());
    for (std::size_t k = 0; k < cands.size(); ++k) {
        diffs[k] = std::abs(diff(cands[k]));
        ws.scale = std::max(ws.scale, magnitude(cands[k]));
    }
    ws.evaluated = cands.size();
    const double thr = tol * std::max(ws.scale, 1e-300);
    std::size_t arg = 0;
    for (std::size_t k = 0; k < cands.size(); ++k) {
        if (diffs[k] > ws.max_deviation) {
            ws.max_deviation = diffs[k];
            arg = k;
        }
        if (!ws.witness && diffs[k] > thr) ws.witness = cands[k];
    }
    if (!ws.witness && fallback && !cands.empty()) ws.witness = cands[arg];
    return ws;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// zonoid equivalence

/// E|<u, xi>| == E|<u, eta>| for all u.  Exact mode compares canonical forms
/// of the two zonoids; sampled mode compares on a 64 n^2 grid.  A negative
/// answer carries a witness direction.
inline Decision zonoid_equivalent(const DiscreteRandomVector& xi, const DiscreteRandomVector& eta,
                                  DecisionMode mode = DecisionMode::Auto)
{
    require_dim(eta.dim(), xi.dim(), "zonoid_equivalent");
    const std::size_t n = xi.dim();
    const Zonotope zx = zonoid_of(xi);
    const Zonotope ze = zonoid_of(eta);
    const ConvexBody bx(zx), be(ze);
    auto diff = [&](const Vec& u) { return support(bx, u) - support(be, u); };
    auto mag = [&](const Vec& u) { return std::max(support(bx, u), support(be, u)); };
    const auto grid = DirectionGrid::fibonacci(n, sampled_grid_size(n));

    Decision d;
    d.grid_size = grid.size();
    if (mode == DecisionMode::Sampled) {
        d.tolerance = kSampledTol;
        const auto ws = detail::search_witness(n, diff, mag, {}, grid, kSampledTol, false);
        d.value = !ws.witness.has_value();
        d.witness = ws.witness;
        d.max_deviation = ws.max_deviation;
        return d;
    }
    d.exact = true;
    d.tolerance = kMergeTol;
    d.value = zonotopes_equal(zx, ze);
    if (!d.value) {
        std::vector<Vec> extra;
        for (const auto& g : canonical_zonotope(zx).generators) extra.push_back(normalized(g));
        for (const auto& g : canonical_zonotope(ze).generators) extra.push_back(normalized(g));
        const auto ws = detail::search_witness(n, diff, mag, extra, grid, kSampledTol, true);
        d.witness = ws.witness;
        d.max_deviation = ws.max_deviation;
    }
    return d;
}

// ---------------------------------------------------------------------------
// asymmetry condition

namespace detail {

inline std::vector<WeightedDirection> reflected_sum(const std::vector<WeightedDirection>& atoms, std::size_t m,
                                                    int wanted_sigma)
{
    std::vector<WeightedDirection> out;
    for (const auto& s : sign_patterns(m)) {
        if (s.sigma() != wanted_sigma) continue;
        const Vec sv = s.as_vector();
        for (const auto& a : atoms) out.push_back({hadamard(sv, a.v), a.w});
    }
    return out;
}

/// sum over s of sigma(s) h(L, s u).
inline double signed_reflection_sum(const ConvexBody& l, const Vec& u)
{
    double s = 0.0;
    for (const auto& p : sign_patterns(l.dim())) s += p.sigma() * support(l, hadamard(p.as_vector(), u));
    return s;
}

inline double reflection_magnitude(const ConvexBody& l, const Vec& u)
{
    double s = 0.0;
    for (const auto& p : sign_patterns(l.dim())) s += std::abs(support(l, hadamard(p.as_vector(), u)));
    return s;
}

}  // namespace detail

/// Asymmetry condition for the projection L_J: the sum of sL_J over sign
/// patterns with sigma(s) = +1 differs from the sum over sigma(s) = -1.
/// Odd |J| never satisfies the condition.  Exact mode needs L_J to reduce to
/// a generalised zonoid; sampled mode can only certify the inequality (a
/// negative sampled answer means "no witness found").  The witness lives in
/// the coordinates of R^J.
inline Decision as_condition(const ConvexBody& l, const IndexSet& J, DecisionMode mode = DecisionMode::Auto)
{
    check_index_set(J, l.dim());
    const std::size_t m = J.size();
    Decision d;
    if (m % 2 == 1) {
        d.exact = true;
        return d;
    }
    const ConvexBody lj = project(l, J);
    const auto grid = DirectionGrid::fibonacci(m, sampled_grid_size(m));
    d.grid_size = grid.size();
    auto diff = [&](const Vec& u) { return detail::signed_reflection_sum(lj, u); };
    auto mag = [&](const Vec& u) { return detail::reflection_magnitude(lj, u); };

    std::optional<GeneralizedZonoid> g;
    if (mode != DecisionMode::Sampled) g = as_genzonoid(lj);
    if (mode == DecisionMode::Exact && !g)
        throw DomainError("as_condition: exact mode needs a body reducible to a generalised zonoid");

    if (g) {
        d.exact = true;
        d.tolerance = kMergeTol;
        const auto plus = detail::reflected_sum(g->atoms, m, +1);
        const auto minus = detail::reflected_sum(g->atoms, m, -1);
        d.value = !atoms_equal(plus, minus);
        if (d.value) {
            std::vector<Vec> extra;
            for (const auto& a : g->atoms) extra.push_back(a.v);
            const auto ws = detail::search_witness(m, diff, mag, extra, grid, kSampledTol, true);
            d.witness = ws.witness;
            d.max_deviation = ws.max_deviation;
        }
        return d;
    }
    d.tolerance = kSampledTol;
    const auto ws = detail::search_witness(m, diff, mag, {}, grid, kSampledTol, false);
    d.value = ws.witness.has_value();
    d.witness = ws.witness;
    d.max_deviation = ws.max_deviation;
    return d;
}

// ---------------------------------------------------------------------------
// unconditionality

/// h(K, s u) == h(K, u) for every sign vector s.  Exact for bodies that
/// reduce to generalised zonoids (canonical comparison of s K with K);
/// sampled otherwise.  The witness is the offending sign vector.
inline Decision is_unconditional(const ConvexBody& k, DecisionMode mode = DecisionMode::Auto)
{
    const std::size_t n = k.dim();
    Decision d;
    d.value = true;
    std::optional<GeneralizedZonoid> g;
    if (mode != DecisionMode::Sampled) g = as_genzonoid(k);
    if (mode == DecisionMode::Exact && !g)
        throw DomainError("is_unconditional: exact mode needs a body reducible to a generalised zonoid");

    // single-coordinate reflections generate the whole group
    if (g) {
        d.exact = true;
        d.tolerance = kMergeTol;
        for (std::size_t i = 0; i < n; ++i) {
            Vec s = ones(n);
            s[i] = -1.0;
            std::vector<WeightedDirection> flipped;
            for (const auto& a : g->atoms) flipped.push_back({hadamard(s, a.v), a.w});
            if (!atoms_equal(g->atoms, flipped)) {
                d.value = false;
                d.witness = s;
                return d;
            }
        }
        return d;
    }
    const auto grid = DirectionGrid::fibonacci(n, sampled_grid_size(n));
    d.grid_size = grid.size();
    d.tolerance = kSampledTol;
    for (std::size_t i = 0; i < n; ++i) {
        Vec s = ones(n);
        s[i] = -1.0;
        auto diff = [&](const Vec& u) { return support(k, hadamard(s, u)) - support(k, u); };
        auto mag = [&](const Vec& u) { return support(k, u); };
        const auto ws = detail::search_witness(n, diff, mag, {}, grid, kSampledTol, false);
        d.max_deviation = std::max(d.max_deviation, ws.max_deviation);
        if (ws.witness) {
            d.value = false;
            d.witness = s;
            return d;
        }
    }
    return d;
}

// ---------------------------------------------------------------------------
// universality reports

struct ASCheck {
    IndexSet J;
    bool holds = false;
    bool exact = false;
};

struct UniversalityReport {
    bool verdict = false;
    /// "d-universal", "not-d-universal", "sufficient-condition-holds",
    /// "sufficient-condition-fails".
    std::string status;
    std::optional<IndexSet> failing_J;
    std::optional<Index> singleton_failure;
    std::optional<Vec> witness;
    std::vector<ASCheck> checks;
    /// Weights w of the wB_inf summand split off before the singleton test.
    Vec segment_summand;
};

inline GeneralizedZonoid require_genzonoid(const ConvexBody& k, const char* what)
{
    auto g = as_genzonoid(k);
    if (!g) throw DomainError(std::string(what) + ": body of kind '" + k.kind() + "' is not a generalised zonoid");
    g->atoms = canonical_atoms(std::move(g->atoms));
    return *g;
}

/// Sufficient condition for unconditional D-universality: all support sets
/// F(K, e_i) are singletons, i.e. the representing measure does not charge
/// any coordinate hyperplane.  A failed check does not prove the converse.
inline UniversalityReport unconditionally_d_universal(const ConvexBody& k)
{
    const auto g = require_genzonoid(k, "unconditionally_d_universal");
    UniversalityReport r;
    for (std::size_t i = 0; i < g.dim; ++i) {
        if (!atoms_avoid_hyperplane(g.atoms, i)) {
            r.singleton_failure = i;
            break;
        }
    }
    r.verdict = !r.singleton_failure.has_value();
    r.status = r.verdict ? "sufficient-condition-holds" : "sufficient-condition-fails";
    return r;
}

/// D-universality of a generalised zonoid.
///
/// Atoms on coordinate axes form a summand wB_inf; such a summand neither
/// helps nor hurts, and contributes equally to both sides of every
/// asymmetry check, so it is split off before testing that the support
/// sets of the remainder K0 are singletons.  A failing asymmetry check on
/// some even J proves non-universality outright.  If all checks hold but
/// K0 has a non-singleton support set the question is undecided and a
/// DomainError is thrown.  Intended for n <= 10 (2^{n-1} checks).
inline UniversalityReport d_universal(const ConvexBody& k)
{
    const auto g = require_genzonoid(k, "d_universal");
    const std::size_t n = g.dim;
    UniversalityReport r;
    r.segment_summand.assign(n, 0.0);

    std::vector<WeightedDirection> rest;
    for (const auto& a : g.atoms) {
        std::size_t nonzero = 0;
        Index axis = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (std::abs(a.v[i]) > kZeroTol) {
                ++nonzero;
                axis = i;
            }
        if (nonzero == 1) {
            r.segment_summand[axis] += a.w;
        } else {
            rest.push_back(a);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!atoms_avoid_hyperplane(rest, i)) {
            r.singleton_failure = i;
            break;
        }
    }

    const ConvexBody kk(g);
    const auto even_sets = subsets_where(n, [](const IndexSet& J) { return J.size() % 2 == 0; });
    for (const auto& J : even_sets) {
        const Decision d = as_condition(kk, J, DecisionMode::Exact);
        r.checks.push_back({J, d.value, d.exact});
        if (!d.value && !r.failing_J) r.failing_J = J;
    }
    if (r.failing_J) {
        r.verdict = false;
        r.status = "not-d-universal";
        return r;
    }
    if (r.singleton_failure) {
        throw DomainError("d_universal: precondition fails: support set in direction e_" +
                          std::to_string(*r.singleton_failure + 1) +
                          " is not a singleton after removing the coordinate-segment summand");
    }
    r.verdict = true;
    r.status = "d-universal";
    return r;
}

// ---------------------------------------------------------------------------
// moment oracle

/// Interior points of the barycentric lattice of the given depth on the
/// simplex over E (coordinates k/depth with every k >= 1).  The depth is
/// raised to |E| + 1 when needed so the interior is never empty.
inline std::vector<Vec> interior_simplex_lattice(const IndexSet& E, std::size_t n, std::size_t depth)
{
    const std::size_t m = E.size();
    depth = std::max(depth, m + 1);
    std::vector<Vec> out;
    std::vector<std::size_t> k(m, 1);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t left) {
        if (pos + 1 == m) {
            if (left < 1) return;
            k[pos] = left;
            Vec a(n, 0.0);
            for (std::size_t t = 0; t < m; ++t) a[E[t]] = static_cast<double>(k[t]) / static_cast<double>(depth);
            out.push_back(std::move(a));
            return;
        }
        for (std::size_t v = 1; v + (m - pos - 1) <= left; ++v) {
            k[pos] = v;
            rec(pos + 1, left - v);
        }
    };
    rec(0, depth);
    return out;
}

struct MomentOracleResult {
    bool equivalent = true;
    std::optional<IndexSet> E, J;
    std::optional<Vec> alpha;
    double max_deviation = 0.0;
    double tolerance = kSampledTol;
    std::size_t checks = 0;
};

/// Compares E(f_{alpha,J}(xi) 1{xi in A_E}) with the same functional of eta
/// for all J subset of E, E nonempty, over interior lattice points alpha.
/// Stops at the first deviation beyond 1e-9 (relative to the moment scale).
inline MomentOracleResult moment_equivalence_oracle(const DiscreteRandomVector& xi, const DiscreteRandomVector& eta,
                                                    std::size_t depth = 4)
{
    require_dim(eta.dim(), xi.dim(), "moment_equivalence_oracle");
    if (!DiscreteRandomVector::is_symmetric_law(xi.atoms()) || !DiscreteRandomVector::is_symmetric_law(eta.atoms()))
        throw DomainError("moment_equivalence_oracle: both laws must be symmetric");
    const std::size_t n = xi.dim();
    MomentOracleResult r;
    const auto all_e = subsets_where(n, [](const IndexSet&) { return true; });
    for (const auto& E : all_e) {
        std::vector<IndexSet> js{IndexSet{}};
        const auto sub = subsets_where(E.size(), [](const IndexSet&) { return true; });
        for (const auto& s : sub) {
            IndexSet J;
            for (Index t : s) J.push_back(E[t]);
            js.push_back(std::move(J));
        }
        for (const auto& alpha : interior_simplex_lattice(E, n, depth)) {
            const double scale =
                std::max({1.0, moment_f(xi, alpha, {}, E), moment_f(eta, alpha, {}, E)});
            for (const auto& J : js) {
                ++r.checks;
                const double dev = std::abs(moment_f(xi, alpha, J, E) - moment_f(eta, alpha, J, E));
                r.max_deviation = std::max(r.max_deviation, dev / scale);
                if (dev > r.tolerance * scale) {
                    r.equivalent = false;
                    r.E = E;
                    r.J = J;
                    r.alpha = alpha;
                    return r;
                }
            }
        }
    }
    return r;
}

// ---------------------------------------------------------------------------

/// Both sides of E h(u(K0 + wB_inf), xi) = E h(uK0, xi) + sum_i w_i |u_i| E|xi_i|.
inline std::pair<double, double> segment_summand_identity(const ConvexBody& k0, std::span<const double> w,
                                                          const DiscreteRandomVector& xi, std::span<const double> u)
{
    const std::size_t n = k0.dim();
    require_dim(w.size(), n, "segment_summand_identity");
    for (double x : w)
        if (!(x >= 0.0)) throw DomainError("segment_summand_identity: w must be nonnegative");
    const ConvexBody k = minkowski_sum({k0, hadamard(w, lp_ball(kInf, n))});
    const double lhs = expected_support(xi, k, u);
    double rhs = expected_support(xi, k0, u);
    for (std::size_t i = 0; i < n; ++i) {
        double m = 0.0;
        for (const auto& a : xi.atoms()) m += a.p * std::abs(a.x[i]);
        rhs += w[i] * std::abs(u[i]) * m;
    }
    return {lhs, rhs};
}

}  // namespace dmc
