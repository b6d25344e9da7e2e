#pragma once

// Finite signed measures on the unit sphere, finitely supported random
// vectors, and the moment functionals that connect them.

#include <algorithm>
#include <functional>
#include <utility>
#include <vector>

#include "dmc/bodies.hpp"
#include "dmc/body_ops.hpp"

namespace dmc {

/// Predicates on sphere points.
inline bool on_S0(std::span<const double> v)
{
    return std::any_of(v.begin(), v.end(), [](double x) { return std::abs(x) <= kZeroTol; });
}

inline bool in_Splus(std::span<const double> v)
{
    return std::all_of(v.begin(), v.end(), [](double x) { return x >= -kZeroTol; });
}

namespace detail {

/// Sums the weights of atoms sitting at the same point (no antipodal merge).
inline std::vector<WeightedDirection> merge_identical(std::vector<WeightedDirection> atoms, double tol)
{
    std::vector<WeightedDirection> out;
    for (auto& a : atoms) {
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const WeightedDirection& b) { return max_abs_diff(a.v, b.v) <= tol; });
        if (it == out.end()) {
            out.push_back(std::move(a));
        } else {
            it->w += a.w;
        }
    }
    return out;
}

}  // namespace detail

class SphereMeasure {
public:
    SphereMeasure() = default;

    /// Atoms must be unit vectors.  Atoms with |w| <= 1e-15 are dropped.
    /// With `even` set, invariance under v -> -v is verified.
    SphereMeasure(std::size_t dim, std::vector<WeightedDirection> atoms, bool even = false)
        : dim_(dim), even_(even)
    {
        if (dim == 0) throw DomainError("measure: dimension must be >= 1");
        for (auto& a : atoms) {
            require_dim(a.v.size(), dim, "measure atom");
            if (!is_unit(a.v)) throw DomainError("measure: atom direction is not a unit vector");
            if (!std::isfinite(a.w)) throw DomainError("measure: non-finite weight");
            if (std::abs(a.w) > 1e-15) atoms_.push_back(std::move(a));
        }
        if (even_ && !is_even_measure(atoms_))
            throw DomainError("measure: flagged even but atoms do not pair under v -> -v");
    }

    std::size_t dim() const noexcept { return dim_; }
    const std::vector<WeightedDirection>& atoms() const noexcept { return atoms_; }
    bool is_even() const noexcept { return even_; }

    double total_mass() const
    {
        double s = 0.0;
        for (const auto& a : atoms_) s += a.w;
        return s;
    }

    bool nonnegative() const
    {
        return std::all_of(atoms_.begin(), atoms_.end(), [](const WeightedDirection& a) { return a.w >= 0.0; });
    }

    static bool is_even_measure(const std::vector<WeightedDirection>& atoms, double tol = 1e-12)
    {
        const auto merged = detail::merge_identical(atoms, tol);
        double wmax = 0.0;
        for (const auto& a : merged) wmax = std::max(wmax, std::abs(a.w));
        for (const auto& a : merged) {
            const Vec m = negated(a.v);
            double w_opposite = 0.0;
            for (const auto& b : merged)
                if (max_abs_diff(b.v, m) <= tol) w_opposite += b.w;
            if (std::abs(w_opposite - a.w) > 1e-12 * std::max(1.0, wmax)) return false;
        }
        return true;
    }

private:
    std::size_t dim_ = 0;
    std::vector<WeightedDirection> atoms_;
    bool even_ = false;
};

/// Normalises x and folds its length into the weight.
inline WeightedDirection direction_atom(std::span<const double> x, double w)
{
    const double len = norm2(x);
    return {scaled(x, 1.0 / len), w * len};
}

/// (mu + reflected mu) / 2, with coincident atoms merged.
inline SphereMeasure evenize(const SphereMeasure& mu)
{
    std::vector<WeightedDirection> atoms;
    for (const auto& a : mu.atoms()) {
        atoms.push_back({a.v, 0.5 * a.w});
        atoms.push_back({negated(a.v), 0.5 * a.w});
    }
    return SphereMeasure(mu.dim(), detail::merge_identical(std::move(atoms), 1e-12), true);
}

// ---------------------------------------------------------------------------

struct VectorAtom {
    Vec x;
    double p = 0.0;
};

/// Finitely supported probability law on R^n.
class DiscreteRandomVector {
public:
    DiscreteRandomVector() = default;

    /// Probabilities must be positive; a total deviating from 1 by at most
    /// 1e-9 is renormalised, anything larger is rejected.  With `symmetric`
    /// set, invariance of the law under x -> -x is verified.
    DiscreteRandomVector(std::size_t dim, std::vector<VectorAtom> atoms, bool symmetric = false)
        : dim_(dim), atoms_(std::move(atoms)), symmetric_(symmetric)
    {
        if (dim == 0) throw DomainError("random vector: dimension must be >= 1");
        if (atoms_.empty()) throw DomainError("random vector: needs at least one atom");
        double total = 0.0;
        for (const auto& a : atoms_) {
            detail::check_vector(a.x, dim, "random vector atom");
            if (!(a.p > 0.0) || !std::isfinite(a.p))
                throw DomainError("random vector: probabilities must be positive");
            total += a.p;
        }
        if (std::abs(total - 1.0) > 1e-9)
            throw DomainError("random vector: probabilities sum to " + std::to_string(total) + ", not 1");
        for (auto& a : atoms_) a.p /= total;
        if (symmetric_ && !is_symmetric_law(atoms_))
            throw DomainError("random vector: flagged symmetric but the law is not invariant under x -> -x");
    }

    std::size_t dim() const noexcept { return dim_; }
    const std::vector<VectorAtom>& atoms() const noexcept { return atoms_; }
    bool symmetric() const noexcept { return symmetric_; }

    static bool is_symmetric_law(const std::vector<VectorAtom>& atoms, double tol = 1e-12)
    {
        for (const auto& a : atoms) {
            double here = 0.0, there = 0.0;
            const Vec m = negated(a.x);
            for (const auto& b : atoms) {
                if (max_abs_diff(b.x, a.x) <= tol) here += b.p;
                if (max_abs_diff(b.x, m) <= tol) there += b.p;
            }
            if (std::abs(here - there) > 1e-12) return false;
        }
        return true;
    }

private:
    std::size_t dim_ = 0;
    std::vector<VectorAtom> atoms_;
    bool symmetric_ = false;
};

/// Law of f(xi) for a deterministic map f.
inline DiscreteRandomVector map_law(const DiscreteRandomVector& xi, const std::function<Vec(const Vec&)>& f,
                                    bool symmetric)
{
    std::vector<VectorAtom> atoms;
    for (const auto& a : xi.atoms()) atoms.push_back({f(a.x), a.p});
    const std::size_t n = atoms.front().x.size();
    return DiscreteRandomVector(n, std::move(atoms), symmetric);
}

/// Law of (xi, -xi) mixed with equal weights.
inline DiscreteRandomVector symmetrize(const DiscreteRandomVector& xi)
{
    std::vector<VectorAtom> atoms;
    for (const auto& a : xi.atoms()) {
        atoms.push_back({a.x, 0.5 * a.p});
        atoms.push_back({negated(a.x), 0.5 * a.p});
    }
    return DiscreteRandomVector(xi.dim(), std::move(atoms), true);
}

/// Mixture lambda * law(a) + (1 - lambda) * law(b).
inline DiscreteRandomVector mixture(const DiscreteRandomVector& a, const DiscreteRandomVector& b, double lambda)
{
    require_dim(b.dim(), a.dim(), "mixture");
    if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("mixture: weight must lie in (0, 1)");
    std::vector<VectorAtom> atoms;
    for (const auto& x : a.atoms()) atoms.push_back({x.x, lambda * x.p});
    for (const auto& x : b.atoms()) atoms.push_back({x.x, (1.0 - lambda) * x.p});
    return DiscreteRandomVector(a.dim(), std::move(atoms), a.symmetric() && b.symmetric());
}

/// mu_xi(A) = E(|xi| 1{xi/|xi| in A}); zero atoms carry no mass.
inline SphereMeasure measure_of_vector(const DiscreteRandomVector& xi)
{
    std::vector<WeightedDirection> atoms;
    for (const auto& a : xi.atoms()) {
        if (norm2(a.x) == 0.0) continue;
        atoms.push_back(direction_atom(a.x, a.p));
    }
    bool even = xi.symmetric();
    return SphereMeasure(xi.dim(), std::move(atoms), even);
}

/// E h(uK, xi) = sum_i p_i h(K, u x_i).
inline double expected_support(const DiscreteRandomVector& xi, const ConvexBody& k, std::span<const double> u)
{
    require_dim(u.size(), k.dim(), "expected_support");
    require_dim(xi.dim(), k.dim(), "expected_support");
    double s = 0.0;
    for (const auto& a : xi.atoms()) s += a.p * support(k, hadamard(u, a.x));
    return s;
}

/// The zonoid of xi: generators p_i x_i, support E|<u, xi>|.
inline Zonotope zonoid_of(const DiscreteRandomVector& xi)
{
    Zonotope z{xi.dim(), {}};
    for (const auto& a : xi.atoms()) z.generators.push_back(scaled(a.x, a.p));
    return z;
}

// ---------------------------------------------------------------------------
// moment functionals

/// x in A_E: nonzero on E and zero off E (zero tested at kZeroTol).
inline bool in_A(std::span<const double> x, const IndexSet& E)
{
    std::size_t k = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const bool in_e = k < E.size() && E[k] == i;
        if (in_e) ++k;
        const bool zero = std::abs(x[i]) <= kZeroTol;
        if (in_e == zero) return false;
    }
    return true;
}

/// [x]^alpha prod_{j in J} sign(x_j), with the convention 0^0 = 1.
inline double f_alpha_J(std::span<const double> x, std::span<const double> alpha, const IndexSet& J)
{
    double r = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (alpha[i] == 0.0) continue;
        r *= std::pow(std::abs(x[i]), alpha[i]);
    }
    for (Index j : J) {
        if (x[j] == 0.0) return 0.0;
        if (x[j] < 0.0) r = -r;
    }
    return r;
}

inline void check_simplex(std::span<const double> alpha, const IndexSet& E, std::size_t n)
{
    require_dim(alpha.size(), n, "alpha");
    double s = 0.0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const bool in_e = k < E.size() && E[k] == i;
        if (in_e) ++k;
        if (alpha[i] < -1e-9) throw DomainError("alpha: negative coordinate");
        if (!in_e && std::abs(alpha[i]) > 1e-9) throw DomainError("alpha: mass outside E");
        s += alpha[i];
    }
    if (std::abs(s - 1.0) > 1e-9) throw DomainError("alpha: coordinates must sum to 1");
}

/// E( f_{alpha,J}(xi) 1{xi in A_E} ) for J subset of E.
inline double moment_f(const DiscreteRandomVector& xi, std::span<const double> alpha, const IndexSet& J,
                       const IndexSet& E)
{
    const std::size_t n = xi.dim();
    check_index_set(E, n);
    if (!J.empty()) check_index_set(J, n);
    if (!std::includes(E.begin(), E.end(), J.begin(), J.end())) throw DomainError("moment_f: J must be a subset of E");
    check_simplex(alpha, E, n);
    double s = 0.0;
    for (const auto& a : xi.atoms())
        if (in_A(a.x, E)) s += a.p * f_alpha_J(a.x, alpha, J);
    return s;
}

/// E |<u, xi>|^alpha.
inline double alpha_moment(const DiscreteRandomVector& xi, std::span<const double> u, double alpha)
{
    if (!(alpha > 0.0)) throw DomainError("alpha_moment: alpha must be positive");
    require_dim(u.size(), xi.dim(), "alpha_moment");
    double s = 0.0;
    for (const auto& a : xi.atoms()) s += a.p * std::pow(std::abs(dot(u, a.x)), alpha);
    return s;
}

/// E (max_i u_i xi_i)^alpha for xi and u in the nonnegative orthant.
inline double max_moment(const DiscreteRandomVector& xi, std::span<const double> u, double alpha)
{
    if (!(alpha > 0.0)) throw DomainError("max_moment: alpha must be positive");
    require_dim(u.size(), xi.dim(), "max_moment");
    if (!in_Splus(u)) throw DomainError("max_moment: u must be nonnegative");
    double s = 0.0;
    for (const auto& a : xi.atoms()) {
        if (!in_Splus(a.x)) throw DomainError("max_moment: xi must be supported in the nonnegative orthant");
        double m = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) m = std::max(m, u[i] * a.x[i]);
        s += a.p * std::pow(m, alpha);
    }
    return s;
}

}  // namespace dmc
