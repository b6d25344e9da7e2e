#pragma once

// D_p-balls, their Minkowski functionals, and the correspondence with
// one-sided strictly stable and max-stable random vectors: samplers,
// Monte-Carlo verifiers, and re-representation of a D_p-ball as a D_r-ball
// by nonnegative least squares.

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dmc/body_ops.hpp"
#include "dmc/grid.hpp"
#include "dmc/measures.hpp"
#include "dmc/nnls.hpp"

namespace dmc {

/// Set with Minkowski functional ||u||_L = sum_j w_j ||u v_j||_p, spectral
/// atoms v_j in the closed positive orthant with w_j >= 0.
class DpBall {
public:
    DpBall(double p, SphereMeasure spectral) : p_(p), spectral_(std::move(spectral))
    {
        if (!(p >= 1.0)) throw DomainError("dpball: p must lie in [1, inf]");
        for (const auto& a : spectral_.atoms()) {
            if (!in_Splus(a.v)) throw DomainError("dpball: spectral atoms must lie in the positive orthant");
            if (a.w < 0.0) throw DomainError("dpball: spectral weights must be nonnegative");
        }
        if (spectral_.atoms().empty()) throw DomainError("dpball: spectral measure is empty");
        bounded_ = true;
        for (std::size_t i = 0; i < dim(); ++i) {
            bool charged = false;
            for (const auto& a : spectral_.atoms()) charged = charged || (a.w > 0.0 && a.v[i] > kZeroTol);
            bounded_ = bounded_ && charged;
        }
    }

    /// B_p as a D_p-ball: a single atom at (1,...,1)/sqrt(n) with weight sqrt(n).
    static DpBall lp_unit_ball(double p, std::size_t n)
    {
        const double s = std::sqrt(static_cast<double>(n));
        return DpBall(p, SphereMeasure(n, {{scaled(ones(n), 1.0 / s), s}}));
    }

    double p() const noexcept { return p_; }
    std::size_t dim() const noexcept { return spectral_.dim(); }
    const SphereMeasure& spectral() const noexcept { return spectral_; }
    /// False when the spectral measure lives on a coordinate hyperplane; the
    /// set is then unbounded in the corresponding direction.
    bool bounded() const noexcept { return bounded_; }

private:
    double p_;
    SphereMeasure spectral_;
    bool bounded_ = true;
};

/// Parameters of a one-sided strictly alpha-stable law with Laplace
/// transform exp(-sum_k a_k <u, v_k>^alpha), u in the positive orthant.
struct StableSpec {
    double alpha = 1.0;
    std::size_t dim = 0;
    std::vector<WeightedDirection> atoms;  // v in S_+, a > 0

    void validate() const
    {
        if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("stable spec: alpha must lie in (0, 1]");
        if (atoms.empty()) throw DomainError("stable spec: needs at least one atom");
        for (const auto& a : atoms) {
            require_dim(a.v.size(), dim, "stable spec atom");
            if (!is_unit(a.v) || !in_Splus(a.v)) throw DomainError("stable spec: atoms must be unit vectors in S_+");
            if (!(a.w > 0.0)) throw DomainError("stable spec: weights must be positive");
        }
    }
};

inline double minkowski_functional(const DpBall& l, std::span<const double> u)
{
    require_dim(u.size(), l.dim(), "minkowski_functional");
    double s = 0.0;
    for (const auto& a : l.spectral().atoms()) s += a.w * lp_norm(hadamard(u, a.v), l.p());
    return s;
}

/// Minkowski functional of the signed power L^<beta>:
/// ||u||_{L^<beta>} = ||u^<1/beta>||_L^beta.
inline double signed_power_functional(const DpBall& l, double beta, std::span<const double> u)
{
    if (!(beta > 0.0 && beta < 1.0)) throw DomainError("signed_power_functional: beta must lie in (0, 1)");
    return std::pow(minkowski_functional(l, signed_power(u, 1.0 / beta)), beta);
}

/// Spectral measure of the stable law attached to the D_{1/alpha}-ball L.
/// Each atom (m, b) maps to direction m^{1/alpha}/|m^{1/alpha}| with weight
/// b |m^{1/alpha}|^alpha, so that sum_k a_k <u, v_k>^alpha = ||u^alpha||_L.
inline StableSpec dp_to_stable(const DpBall& l)
{
    if (std::isinf(l.p())) throw DomainError("dp_to_stable: needs p < inf");
    StableSpec s;
    s.alpha = 1.0 / l.p();
    s.dim = l.dim();
    for (const auto& a : l.spectral().atoms()) {
        if (a.w == 0.0) continue;
        Vec m(a.v.size());
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::pow(std::max(a.v[i], 0.0), l.p());
        const double len = norm2(m);
        s.atoms.push_back({scaled(m, 1.0 / len), a.w * std::pow(len, s.alpha)});
    }
    s.validate();
    return s;
}

/// ||u^alpha||_L = sum_k a_k <u, v_k>^alpha evaluated from the stable spec.
inline double stable_exponent(const StableSpec& s, std::span<const double> u)
{
    require_dim(u.size(), s.dim, "stable_exponent");
    double r = 0.0;
    for (const auto& a : s.atoms) r += a.w * std::pow(std::max(dot(u, a.v), 0.0), s.alpha);
    return r;
}

/// exp(-||u^alpha||_L) with alpha = 1/p.
inline double exact_laplace_transform(const DpBall& l, std::span<const double> u)
{
    const double alpha = 1.0 / l.p();
    Vec ua(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) ua[i] = std::pow(u[i], alpha);
    return std::exp(-minkowski_functional(l, ua));
}

/// exp(-||u^{-1}||_L) for a D_inf-ball.
inline double exact_max_stable_cdf(const DpBall& l, std::span<const double> u)
{
    Vec inv(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) inv[i] = 1.0 / u[i];
    return std::exp(-minkowski_functional(l, inv));
}

// ---------------------------------------------------------------------------
// samplers

using Rng = std::mt19937_64;

inline double open_unit(Rng& rng)
{
    double u = 0.0;
    while (u <= 0.0 || u >= 1.0) u = std::generate_canonical<double, 53>(rng);
    return u;
}

inline double unit_exponential(Rng& rng) { return -std::log(open_unit(rng)); }

/// One draw of the positive strictly alpha-stable law with Laplace
/// transform exp(-s^alpha), by Kanter's representation
/// (A(theta) / W)^{(1-alpha)/alpha}, theta ~ U(0, pi), W ~ Exp(1).
inline double kanter_sample(double alpha, Rng& rng)
{
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("kanter_sample: alpha must lie in (0, 1)");
    const double theta = M_PI * open_unit(rng);
    const double w = unit_exponential(rng);
    const double log_a = (alpha * std::log(std::sin(alpha * theta)) +
                          (1.0 - alpha) * std::log(std::sin((1.0 - alpha) * theta)) - std::log(std::sin(theta))) /
                         (1.0 - alpha);
    return std::exp((1.0 - alpha) / alpha * (log_a - std::log(w)));
}

/// Draws sum_k zeta_k a_k^{1/alpha} v_k with independent Kanter variables;
/// alpha = 1 returns the deterministic point sum_k a_k v_k.
inline std::vector<Vec> sample_one_sided_stable(const StableSpec& spec, std::size_t count, Rng& rng)
{
    spec.validate();
    if (count == 0) throw DomainError("sample_one_sided_stable: count must be positive");
    std::vector<Vec> out(count, Vec(spec.dim, 0.0));
    std::vector<double> coef(spec.atoms.size());
    for (std::size_t k = 0; k < spec.atoms.size(); ++k) coef[k] = std::pow(spec.atoms[k].w, 1.0 / spec.alpha);
    for (auto& x : out) {
        for (std::size_t k = 0; k < spec.atoms.size(); ++k) {
            const double z = spec.alpha == 1.0 ? 1.0 : kanter_sample(spec.alpha, rng);
            for (std::size_t i = 0; i < spec.dim; ++i) x[i] += z * coef[k] * spec.atoms[k].v[i];
        }
    }
    return out;
}

/// Draws xi_i = max_j Z_j a_j v_{j,i} with independent unit Frechet Z_j.
inline std::vector<Vec> sample_max_stable(const DpBall& l, std::size_t count, Rng& rng)
{
    if (!std::isinf(l.p())) throw DomainError("sample_max_stable: needs a D_inf-ball");
    if (count == 0) throw DomainError("sample_max_stable: count must be positive");
    const std::size_t n = l.dim();
    std::vector<Vec> out(count, Vec(n, 0.0));
    for (auto& x : out) {
        for (const auto& a : l.spectral().atoms()) {
            const double z = 1.0 / unit_exponential(rng);
            for (std::size_t i = 0; i < n; ++i) x[i] = std::max(x[i], z * a.w * a.v[i]);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Monte-Carlo verification

struct VerificationReport {
    std::vector<Vec> grid;
    std::vector<double> empirical;
    std::vector<double> exact;
    std::vector<double> three_sigma;
    double max_abs_dev = 0.0;
    double tolerance = 0.005;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;

    bool passed() const { return max_abs_dev <= tolerance; }
};

/// Product grid of `per_axis` points in [lo, hi] per coordinate.
inline std::vector<Vec> product_grid(std::size_t n, std::size_t per_axis, double lo, double hi)
{
    if (n == 0 || per_axis == 0) throw DomainError("product_grid: empty request");
    std::vector<double> axis(per_axis);
    for (std::size_t k = 0; k < per_axis; ++k)
        axis[k] = per_axis == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(per_axis - 1);
    std::vector<Vec> out{Vec{}};
    for (std::size_t d = 0; d < n; ++d) {
        std::vector<Vec> next;
        for (const auto& p : out)
            for (double x : axis) {
                Vec q = p;
                q.push_back(x);
                next.push_back(std::move(q));
            }
        out = std::move(next);
    }
    return out;
}

namespace detail {

template <class Stat, class Exact>
VerificationReport empirical_vs_exact(const std::vector<Vec>& samples, const std::vector<Vec>& grid, Stat stat,
                                      Exact exact, double tol, std::uint64_t seed)
{
    VerificationReport r;
    r.grid = grid;
    r.tolerance = tol;
    r.n_samples = samples.size();
    r.seed = seed;
    const double nn = static_cast<double>(samples.size());
    for (const auto& u : grid) {
        double s = 0.0, s2 = 0.0;
        for (const auto& x : samples) {
            const double v = stat(u, x);
            s += v;
            s2 += v * v;
        }
        const double mean = s / nn;
        const double var = std::max(0.0, s2 / nn - mean * mean);
        r.empirical.push_back(mean);
        r.exact.push_back(exact(u));
        r.three_sigma.push_back(3.0 * std::sqrt(var / nn));
        r.max_abs_dev = std::max(r.max_abs_dev, std::abs(mean - r.exact.back()));
    }
    return r;
}

}  // namespace detail

/// Empirical Laplace transform of the stable law attached to L (p = 1/alpha)
/// against exp(-||u^alpha||_L) on the given grid of u.
inline VerificationReport laplace_verify(const DpBall& l, std::size_t count, std::uint64_t seed,
                                         const std::vector<Vec>& grid, double tol = 0.005)
{
    const StableSpec spec = dp_to_stable(l);
    Rng rng(seed);
    const auto samples = sample_one_sided_stable(spec, count, rng);
    return detail::empirical_vs_exact(
        samples, grid, [](const Vec& u, const Vec& x) { return std::exp(-dot(u, x)); },
        [&](const Vec& u) { return exact_laplace_transform(l, u); }, tol, seed);
}

/// Empirical P(xi <= u) of the max-stable law attached to the D_inf-ball L
/// against exp(-||u^{-1}||_L).
inline VerificationReport cdf_verify(const DpBall& l, std::size_t count, std::uint64_t seed,
                                     const std::vector<Vec>& grid, double tol = 0.01)
{
    Rng rng(seed);
    const auto samples = sample_max_stable(l, count, rng);
    return detail::empirical_vs_exact(
        samples, grid,
        [](const Vec& u, const Vec& x) {
            for (std::size_t i = 0; i < u.size(); ++i)
                if (x[i] > u[i]) return 0.0;
            return 1.0;
        },
        [&](const Vec& u) { return exact_max_stable_cdf(l, u); }, tol, seed);
}

// ---------------------------------------------------------------------------
// re-representation

struct RerepresentResult {
    DpBall fitted;
    double fit_residual = 0.0;      // max abs error on the evaluation directions
    double heldout_residual = 0.0;  // max abs error on held-out directions
    std::size_t heldout_size = 0;
    NnlsResult solver;
};

namespace detail {

inline Eigen::MatrixXd norm_design(const std::vector<Vec>& dirs, const std::vector<Vec>& atoms, double r)
{
    Eigen::MatrixXd a(static_cast<Eigen::Index>(dirs.size()), static_cast<Eigen::Index>(atoms.size()));
    for (std::size_t k = 0; k < dirs.size(); ++k)
        for (std::size_t j = 0; j < atoms.size(); ++j)
            a(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = lp_norm(hadamard(dirs[k], atoms[j]), r);
    return a;
}

inline std::vector<Vec> unit_candidates(const std::vector<Vec>& candidates, std::size_t n)
{
    if (candidates.empty()) throw DomainError("candidate grid is empty");
    std::vector<Vec> out;
    for (const auto& c : candidates) {
        require_dim(c.size(), n, "candidate direction");
        out.push_back(normalized(c));
    }
    return out;
}

}  // namespace detail

inline std::vector<Vec> default_candidates(std::size_t n) { return positive_orthant_lattice(n, 32 * n); }

/// Fits L as a D_r-ball on the candidate atoms: min over w >= 0 of
/// sum_k (sum_j w_j ||u_k v_j||_r - ||u_k||_L)^2 with u_k the evaluation
/// directions.  Residuals are reported on the evaluation set and on a
/// held-out seeded set.
inline RerepresentResult rerepresent(const DpBall& l, double r, const std::vector<Vec>& candidates,
                                     const DirectionGrid& eval_grid, std::uint64_t heldout_seed = 0xD1A6)
{
    if (!(r > l.p())) throw DomainError("rerepresent: target exponent r must exceed p");
    const std::size_t n = l.dim();
    require_dim(eval_grid.dim(), n, "rerepresent grid");
    const auto atoms = detail::unit_candidates(candidates, n);
    const auto dirs = eval_grid.half();
    if (dirs.empty()) throw DomainError("rerepresent: evaluation grid is empty");

    const Eigen::MatrixXd a = detail::norm_design(dirs, atoms, r);
    Eigen::VectorXd b(static_cast<Eigen::Index>(dirs.size()));
    for (std::size_t k = 0; k < dirs.size(); ++k) b(static_cast<Eigen::Index>(k)) = minkowski_functional(l, dirs[k]);

    NnlsResult sol = nnls(a, b, 1e-10);
    std::vector<WeightedDirection> fitted;
    for (std::size_t j = 0; j < atoms.size(); ++j)
        if (sol.x(static_cast<Eigen::Index>(j)) > 0.0) fitted.push_back({atoms[j], sol.x(static_cast<Eigen::Index>(j))});
    if (fitted.empty()) fitted.push_back({atoms.front(), 0.0});

    RerepresentResult res{DpBall(r, SphereMeasure(n, fitted)), 0.0, 0.0, 0, sol};
    res.fit_residual = (a * sol.x - b).cwiseAbs().maxCoeff();
    const auto heldout = DirectionGrid::uniform(n, 2 * std::max<std::size_t>(dirs.size(), 64), heldout_seed).half();
    res.heldout_size = heldout.size();
    for (const auto& u : heldout)
        res.heldout_residual =
            std::max(res.heldout_residual, std::abs(minkowski_functional(res.fitted, u) - minkowski_functional(l, u)));
    return res;
}

struct PolarZonoidReport {
    std::vector<WeightedDirection> atoms;  // nonnegative cosine-transform atoms
    double fit_residual = 0.0;
    double heldout_residual = 0.0;
    std::size_t candidates = 0;
    NnlsResult solver;
};

/// Numerical evidence that the polar of a D_p-ball (p in [1, 2]) is a
/// zonoid: NNLS fit of a nonnegative cosine transform to u -> ||u||_L.  The
/// candidate directions are the coordinate axes plus one representative of
/// each antipodal pair of the grid.  A small residual is evidence, not proof.
inline PolarZonoidReport polar_zonoid_check(const DpBall& l, const DirectionGrid& grid, std::uint64_t heldout_seed = 0xD1A6)
{
    if (l.p() > 2.0) throw DomainError("polar_zonoid_check: the zonoid property is only asserted for p in [1, 2]");
    const std::size_t n = l.dim();
    require_dim(grid.dim(), n, "polar_zonoid_check grid");
    std::vector<Vec> cands;
    for (std::size_t i = 0; i < n; ++i) cands.push_back(unit_vector(n, i));
    for (const auto& v : grid.half()) cands.push_back(v);
    const auto eval = DirectionGrid::fibonacci(n, 4 * grid.size()).half();

    Eigen::MatrixXd a(static_cast<Eigen::Index>(eval.size()), static_cast<Eigen::Index>(cands.size()));
    Eigen::VectorXd b(static_cast<Eigen::Index>(eval.size()));
    for (std::size_t k = 0; k < eval.size(); ++k) {
        b(static_cast<Eigen::Index>(k)) = minkowski_functional(l, eval[k]);
        for (std::size_t j = 0; j < cands.size(); ++j)
            a(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = std::abs(dot(eval[k], cands[j]));
    }
    PolarZonoidReport rep;
    rep.candidates = cands.size();
    rep.solver = nnls(a, b, 1e-10);
    for (std::size_t j = 0; j < cands.size(); ++j)
        if (rep.solver.x(static_cast<Eigen::Index>(j)) > 0.0)
            rep.atoms.push_back({cands[j], rep.solver.x(static_cast<Eigen::Index>(j))});
    rep.fit_residual = (a * rep.solver.x - b).cwiseAbs().maxCoeff();
    const auto heldout = DirectionGrid::uniform(n, 2 * eval.size(), heldout_seed).half();
    for (const auto& u : heldout) {
        double z = 0.0;
        for (const auto& at : rep.atoms) z += at.w * std::abs(dot(u, at.v));
        rep.heldout_residual = std::max(rep.heldout_residual, std::abs(z - minkowski_functional(l, u)));
    }
    return rep;
}

// ---------------------------------------------------------------------------

/// Whether the expectation body E(zeta L) = sum_i p_i x_i L has a singleton
/// support set in direction e_j.  Computed exactly when the assembled body
/// reduces to a generalised zonoid; otherwise decided by P(zeta_j = 0) = 0,
/// which requires F(L, e_j) to be a singleton.
inline bool support_singleton_expectation(const DiscreteRandomVector& zeta, const ConvexBody& l, Index j)
{
    require_dim(zeta.dim(), l.dim(), "support_singleton_expectation");
    if (j >= l.dim()) throw DomainError("support_singleton_expectation: coordinate out of range");
    MinkSum sum;
    const BodyPtr base = share(l);
    for (const auto& a : zeta.atoms()) sum.parts.push_back(share(ConvexBody(Scaled{a.p, share(hadamard(a.x, *base))})));
    const ConvexBody expectation(std::move(sum));
    if (as_genzonoid(expectation)) return support_set_singleton(expectation, j);
    const bool zero_mass = std::any_of(zeta.atoms().begin(), zeta.atoms().end(),
                                       [&](const VectorAtom& a) { return std::abs(a.x[j]) <= kZeroTol; });
    if (zero_mass) return false;
    if (!support_set_singleton(l, j))
        throw DomainError("support_singleton_expectation: F(L, e_j) must be a singleton for the converse direction");
    return true;
}

}  // namespace dmc
