#pragma once

// Operations on bodies: diagonal (Hadamard) action, sums of diagonally
// transformed copies, coordinate projections, reduction of composite bodies
// to zonotopes / generalised zonoids, canonical zonotope forms and the
// support-set singleton test in coordinate directions.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "dmc/bodies.hpp"

namespace dmc {

// ---------------------------------------------------------------------------
// canonical forms

namespace detail {

/// Flips d so that its first coordinate with |d_k| > tol is positive.
inline void orient(Vec& d, double tol)
{
    for (double x : d) {
        if (std::abs(x) > tol) {
            if (x < 0) for (double& y : d) y = -y;
            return;
        }
    }
}

inline bool parallel_unit(const Vec& a, const Vec& b, double tol)
{
    double dp = 0.0, dm = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dp += (a[i] - b[i]) * (a[i] - b[i]);
        dm += (a[i] + b[i]) * (a[i] + b[i]);
    }
    return std::sqrt(std::min(dp, dm)) <= tol;
}

inline bool lex_less(const Vec& a, const Vec& b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/// Merges weighted directions that are parallel up to sign.  Weights add;
/// the output directions are oriented and sorted.
inline std::vector<WeightedDirection> merge_parallel(std::vector<WeightedDirection> atoms, double tol)
{
    std::vector<WeightedDirection> clusters;
    for (auto& a : atoms) {
        orient(a.v, tol);
        auto it = std::find_if(clusters.begin(), clusters.end(),
                               [&](const WeightedDirection& c) { return parallel_unit(c.v, a.v, tol); });
        if (it == clusters.end()) {
            clusters.push_back(std::move(a));
        } else {
            it->w += a.w;
        }
    }
    std::sort(clusters.begin(), clusters.end(),
              [](const WeightedDirection& a, const WeightedDirection& b) { return lex_less(a.v, b.v); });
    return clusters;
}

}  // namespace detail

/// Canonical generator list: zero generators dropped, parallel generators
/// merged, each oriented with first nonzero coordinate positive, sorted.
inline Zonotope canonical_zonotope(const Zonotope& z, double tol = kMergeTol)
{
    std::vector<WeightedDirection> atoms;
    for (const auto& g : z.generators) {
        const double len = norm2(g);
        if (len <= tol) continue;
        atoms.push_back({scaled(g, 1.0 / len), len});
    }
    Zonotope out{z.dim, {}};
    for (auto& c : detail::merge_parallel(std::move(atoms), tol)) out.generators.push_back(scaled(c.v, c.w));
    return out;
}

/// Canonical signed atom list of a generalised zonoid (equivalently of an
/// even signed measure): parallel atoms merged, vanishing weights dropped.
inline std::vector<WeightedDirection> canonical_atoms(std::vector<WeightedDirection> atoms,
                                                      double tol = kMergeTol)
{
    double wmax = 0.0;
    for (const auto& a : atoms) wmax = std::max(wmax, std::abs(a.w));
    auto merged = detail::merge_parallel(std::move(atoms), tol);
    const double drop = tol * std::max(1.0, wmax);
    std::erase_if(merged, [&](const WeightedDirection& a) { return std::abs(a.w) <= drop; });
    return merged;
}

namespace detail {

template <class Item, class Match>
bool perfect_greedy_match(const std::vector<Item>& a, const std::vector<Item>& b, Match match)
{
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const auto& x : a) {
        bool found = false;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (!used[j] && match(x, b[j])) {
                used[j] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace detail

/// Equality of zonotopes as convex bodies, decided on canonical forms.
inline bool zonotopes_equal(const Zonotope& a, const Zonotope& b, double tol = kMergeTol)
{
    if (a.dim != b.dim) return false;
    const Zonotope ca = canonical_zonotope(a, tol);
    const Zonotope cb = canonical_zonotope(b, tol);
    return detail::perfect_greedy_match(ca.generators, cb.generators, [&](const Vec& x, const Vec& y) {
        const double t = tol * std::max(1.0, norm2(x));
        return max_abs_diff(x, y) <= t || max_abs_diff(x, negated(y)) <= t;
    });
}

/// Equality of even signed measures given by atoms (hence of generalised
/// zonoids, by injectivity of the cosine transform on even measures).
inline bool atoms_equal(std::vector<WeightedDirection> a, std::vector<WeightedDirection> b,
                        double tol = kMergeTol)
{
    double wmax = 0.0;
    for (const auto& x : a) wmax = std::max(wmax, std::abs(x.w));
    for (const auto& x : b) wmax = std::max(wmax, std::abs(x.w));
    const auto ca = canonical_atoms(std::move(a), tol);
    const auto cb = canonical_atoms(std::move(b), tol);
    const double wt = tol * std::max(1.0, wmax);
    return detail::perfect_greedy_match(ca, cb, [&](const WeightedDirection& x, const WeightedDirection& y) {
        return detail::parallel_unit(x.v, y.v, tol) && std::abs(x.w - y.w) <= wt;
    });
}

// ---------------------------------------------------------------------------
// diagonal action and diagonal bodies

/// The body uK = {u x : x in K}.  Zonotopes are rewritten exactly.
inline ConvexBody hadamard(std::span<const double> u, const ConvexBody& k)
{
    require_dim(u.size(), k.dim(), "hadamard");
    if (const auto* z = k.get_if<Zonotope>()) {
        Zonotope out{z->dim, {}};
        out.generators.reserve(z->generators.size());
        for (const auto& g : z->generators) out.generators.push_back(hadamard(u, g));
        return ConvexBody(std::move(out));
    }
    return ConvexBody(DiagScaled{Vec(u.begin(), u.end()), share(k)});
}

struct DiagTerm {
    double c = 0.0;
    Vec v;
};

/// c_1 v_1 K + ... + c_m v_m K.
inline ConvexBody diag_body(const std::vector<DiagTerm>& terms, const ConvexBody& k)
{
    if (terms.empty()) throw DomainError("diag_body: needs at least one term");
    const BodyPtr base = share(k);
    MinkSum sum;
    for (const auto& t : terms) {
        if (!(t.c >= 0.0)) throw DomainError("diag_body: coefficients must be nonnegative");
        require_dim(t.v.size(), k.dim(), "diag_body");
        sum.parts.push_back(share(ConvexBody(Scaled{t.c, share(hadamard(t.v, *base))})));
    }
    return ConvexBody(std::move(sum));
}

// ---------------------------------------------------------------------------
// reductions

/// Zonogon generators of a symmetric polygon: half of its edge vectors.
inline Zonotope polygon_generators(const Polygon2D& p)
{
    Zonotope z{2, {}};
    const auto& v = p.vertices;
    const std::size_t m = v.size();
    for (std::size_t k = 0; k < m / 2; ++k) {
        const Point2& a = v[k];
        const Point2& b = v[k + 1];
        z.generators.push_back({0.5 * (b[0] - a[0]), 0.5 * (b[1] - a[1])});
    }
    return z;
}

/// Representing atoms of K when K is a generalised zonoid built from
/// zonotopes, generalised zonoids, segments-type balls and polygons through
/// diagonal maps, scalings and sums.  Returns nullopt otherwise.
inline std::optional<GeneralizedZonoid> as_genzonoid(const ConvexBody& k);

inline std::optional<Zonotope> as_zonotope(const ConvexBody& k);

namespace detail {

inline GeneralizedZonoid atoms_of(const Zonotope& z)
{
    GeneralizedZonoid g{z.dim, {}};
    for (const auto& gen : z.generators) {
        const double len = norm2(gen);
        if (len <= 0.0) continue;
        g.atoms.push_back({scaled(gen, 1.0 / len), len});
    }
    return g;
}

inline std::optional<Zonotope> lpball_zonotope(const LpBall& b)
{
    const std::size_t n = b.dim;
    if (n == 1) return Zonotope{1, {{1.0}}};
    if (std::isinf(b.q)) {
        Zonotope z{n, {}};
        for (std::size_t i = 0; i < n; ++i) z.generators.push_back(unit_vector(n, i));
        return z;
    }
    if (b.q == 1.0 && n == 2) return Zonotope{2, {{0.5, 0.5}, {0.5, -0.5}}};
    return std::nullopt;
}

struct GenzonoidReducer {
    std::optional<GeneralizedZonoid> operator()(const Zonotope& z) const { return atoms_of(z); }
    std::optional<GeneralizedZonoid> operator()(const GeneralizedZonoid& g) const { return g; }
    std::optional<GeneralizedZonoid> operator()(const LpBall& b) const
    {
        if (auto z = lpball_zonotope(b)) return atoms_of(*z);
        return std::nullopt;
    }
    std::optional<GeneralizedZonoid> operator()(const DiagScaled& d) const
    {
        auto inner = as_genzonoid(*d.inner);
        if (!inner) return std::nullopt;
        GeneralizedZonoid out{inner->dim, {}};
        for (const auto& a : inner->atoms) {
            Vec sv = hadamard(d.scale, a.v);
            const double len = norm2(sv);
            if (len <= 0.0) continue;
            out.atoms.push_back({scaled(sv, 1.0 / len), a.w * len});
        }
        return out;
    }
    std::optional<GeneralizedZonoid> operator()(const MinkSum& m) const
    {
        GeneralizedZonoid out{m.parts.front()->dim(), {}};
        for (const auto& p : m.parts) {
            auto g = as_genzonoid(*p);
            if (!g) return std::nullopt;
            out.atoms.insert(out.atoms.end(), g->atoms.begin(), g->atoms.end());
        }
        return out;
    }
    std::optional<GeneralizedZonoid> operator()(const Scaled& s) const
    {
        auto g = as_genzonoid(*s.inner);
        if (!g) return std::nullopt;
        if (s.c == 0.0) g->atoms.clear();
        for (auto& a : g->atoms) a.w *= s.c;
        return g;
    }
    std::optional<GeneralizedZonoid> operator()(const Polygon2D& p) const
    {
        return atoms_of(polygon_generators(p));
    }
};

}  // namespace detail

inline std::optional<GeneralizedZonoid> as_genzonoid(const ConvexBody& k)
{
    return std::visit(detail::GenzonoidReducer{}, k.variant());
}

/// Generators of K when K is a zonotope in disguise (nonnegative atoms after
/// merging).  Returns nullopt otherwise.
inline std::optional<Zonotope> as_zonotope(const ConvexBody& k)
{
    if (const auto* z = k.get_if<Zonotope>()) return *z;
    auto g = as_genzonoid(k);
    if (!g) return std::nullopt;
    auto atoms = std::move(g->atoms);
    const bool has_negative =
        std::any_of(atoms.begin(), atoms.end(), [](const WeightedDirection& a) { return a.w < 0.0; });
    if (has_negative) {
        atoms = canonical_atoms(std::move(atoms));
        if (std::any_of(atoms.begin(), atoms.end(), [](const WeightedDirection& a) { return a.w < 0.0; }))
            return std::nullopt;
    }
    Zonotope z{g->dim, {}};
    for (const auto& a : atoms) z.generators.push_back(scaled(a.v, a.w));
    return z;
}

// ---------------------------------------------------------------------------
// projections

namespace detail {

struct ProjectVisitor {
    const IndexSet& J;

    ConvexBody operator()(const Zonotope& z) const
    {
        Zonotope out{J.size(), {}};
        for (const auto& g : z.generators) out.generators.push_back(restrict_to(g, J));
        return ConvexBody(std::move(out));
    }
    ConvexBody operator()(const GeneralizedZonoid& g) const
    {
        GeneralizedZonoid out{J.size(), {}};
        for (const auto& a : g.atoms) {
            Vec vj = restrict_to(a.v, J);
            const double len = norm2(vj);
            if (len <= kZeroTol) continue;
            out.atoms.push_back({scaled(vj, 1.0 / len), a.w * len});
        }
        return ConvexBody(std::move(out));
    }
    ConvexBody operator()(const LpBall& b) const { return ConvexBody(LpBall{J.size(), b.q}); }
    ConvexBody operator()(const DiagScaled& d) const;
    ConvexBody operator()(const MinkSum& m) const;
    ConvexBody operator()(const Scaled& s) const;
    ConvexBody operator()(const Polygon2D& p) const
    {
        if (J.size() == 2) return ConvexBody(p);
        // a symmetric planar body projects onto the segment [-h(P,e_j), h(P,e_j)]
        double h = 0.0;
        for (const auto& x : p.vertices) h = std::max(h, x[J[0]]);
        return ConvexBody(Zonotope{1, {{h}}});
    }
};

}  // namespace detail

/// Orthogonal projection K_J onto the coordinate subspace spanned by e_j,
/// j in J, expressed in the coordinates of R^J.
inline ConvexBody project(const ConvexBody& k, const IndexSet& J)
{
    check_index_set(J, k.dim());
    return std::visit(detail::ProjectVisitor{J}, k.variant());
}

namespace detail {

inline ConvexBody ProjectVisitor::operator()(const DiagScaled& d) const
{
    return ConvexBody(DiagScaled{restrict_to(d.scale, J), share(project(*d.inner, J))});
}

inline ConvexBody ProjectVisitor::operator()(const MinkSum& m) const
{
    MinkSum out;
    for (const auto& p : m.parts) out.parts.push_back(share(project(*p, J)));
    return ConvexBody(std::move(out));
}

inline ConvexBody ProjectVisitor::operator()(const Scaled& s) const
{
    return ConvexBody(Scaled{s.c, share(project(*s.inner, J))});
}

}  // namespace detail

// ---------------------------------------------------------------------------
// support sets in coordinate directions

/// True when no representing atom lies on the hyperplane {v_i = 0}.
inline bool atoms_avoid_hyperplane(const std::vector<WeightedDirection>& atoms, Index i)
{
    return std::all_of(atoms.begin(), atoms.end(),
                       [&](const WeightedDirection& a) { return std::abs(a.v.at(i)) > kZeroTol; });
}

/// Whether the support set F(K, e_i) is a single point.
///
/// Generalised zonoids (and everything reducible to one): the canonical
/// representing atoms must all have a nonzero i-th coordinate.  l_q-balls:
/// q < inf.  Sums: every summand must have a singleton face.  Other
/// combinations are rejected.
inline bool support_set_singleton(const ConvexBody& k, Index i)
{
    if (i >= k.dim()) throw DomainError("support_set_singleton: coordinate out of range");
    if (auto g = as_genzonoid(k)) return atoms_avoid_hyperplane(canonical_atoms(std::move(g->atoms)), i);
    if (const auto* b = k.get_if<LpBall>()) return b->dim == 1 || !std::isinf(b->q);
    if (const auto* s = k.get_if<Scaled>()) return s->c == 0.0 || support_set_singleton(*s->inner, i);
    if (const auto* m = k.get_if<MinkSum>()) {
        return std::all_of(m->parts.begin(), m->parts.end(),
                           [&](const BodyPtr& p) { return support_set_singleton(*p, i); });
    }
    if (const auto* d = k.get_if<DiagScaled>()) {
        // F(sK, e_i) = s F(K, sign(s_i) e_i) when s_i != 0
        if (std::abs(d->scale[i]) > 0.0) return support_set_singleton(*d->inner, i);
    }
    throw DomainError("support_set_singleton: unsupported body of kind '" + k.kind() + "'");
}

}  // namespace dmc
