#pragma once

// Origin-symmetric convex bodies and their support functions.
//
// A ConvexBody is an immutable tagged union.  Composite variants share
// their children through shared_ptr<const ConvexBody>, so copies are cheap
// and bodies can be used concurrently without synchronisation.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "dmc/core.hpp"

namespace dmc {

class ConvexBody;
using BodyPtr = std::shared_ptr<const ConvexBody>;

/// A direction with a real weight; atom type for generalised zonoids and
/// sphere measures.
struct WeightedDirection {
    Vec v;
    double w = 0.0;
};

/// Minkowski sum of the segments [-g, g] over all generators g.
struct Zonotope {
    std::size_t dim = 0;
    std::vector<Vec> generators;
};

/// Body with support function sum_j w_j |<u, v_j>| (signed weights allowed).
struct GeneralizedZonoid {
    std::size_t dim = 0;
    std::vector<WeightedDirection> atoms;
};

/// Unit l_q-ball; q == kInf is the cube.
struct LpBall {
    std::size_t dim = 0;
    double q = 2.0;
};

/// Image of `inner` under diag(scale).
struct DiagScaled {
    Vec scale;
    BodyPtr inner;
};

struct MinkSum {
    std::vector<BodyPtr> parts;
};

struct Scaled {
    double c = 1.0;
    BodyPtr inner;
};

using Point2 = std::array<double, 2>;

/// Counterclockwise, origin-symmetric convex polygon.
struct Polygon2D {
    std::vector<Point2> vertices;
};

class ConvexBody {
public:
    using Variant =
        std::variant<Zonotope, GeneralizedZonoid, LpBall, DiagScaled, MinkSum, Scaled, Polygon2D>;

    // Each constructor validates the representation invariants.
    ConvexBody(Zonotope z);
    ConvexBody(GeneralizedZonoid g);
    ConvexBody(LpBall b);
    ConvexBody(DiagScaled d);
    ConvexBody(MinkSum m);
    ConvexBody(Scaled s);
    ConvexBody(Polygon2D p);

    const Variant& variant() const noexcept { return v_; }
    std::size_t dim() const noexcept { return dim_; }

    template <class T>
    const T* get_if() const noexcept
    {
        return std::get_if<T>(&v_);
    }

    template <class T>
    bool holds() const noexcept
    {
        return std::holds_alternative<T>(v_);
    }

    std::string kind() const;

private:
    Variant v_;
    std::size_t dim_ = 0;
};

inline BodyPtr share(ConvexBody k) { return std::make_shared<const ConvexBody>(std::move(k)); }

// ---------------------------------------------------------------------------
// validation

namespace detail {

inline void check_vector(const Vec& x, std::size_t n, const char* what)
{
    require_dim(x.size(), n, what);
    for (double c : x)
        if (!std::isfinite(c)) throw DomainError(std::string(what) + ": non-finite coordinate");
}

inline double cross(const Point2& a, const Point2& b) { return a[0] * b[1] - a[1] * b[0]; }

inline void validate_polygon(const Polygon2D& p)
{
    const auto& v = p.vertices;
    const std::size_t m = v.size();
    if (m < 4 || m % 2 != 0)
        throw DomainError("polygon2d: an origin-symmetric polygon needs an even number >= 4 of vertices");
    double scale = 0.0;
    for (const auto& x : v) {
        if (!std::isfinite(x[0]) || !std::isfinite(x[1]))
            throw DomainError("polygon2d: non-finite vertex");
        scale = std::max({scale, std::abs(x[0]), std::abs(x[1])});
    }
    if (scale == 0.0) throw DomainError("polygon2d: all vertices at the origin");
    const double tol = 1e-9 * scale;
    double area2 = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const Point2& a = v[k];
        const Point2& b = v[(k + 1) % m];
        const Point2& c = v[(k + 2) % m];
        const Point2 e1{b[0] - a[0], b[1] - a[1]};
        const Point2 e2{c[0] - b[0], c[1] - b[1]};
        if (std::hypot(e1[0], e1[1]) <= tol) throw DomainError("polygon2d: repeated vertex");
        // collinear triples are tolerated; reflex turns are not
        if (cross(e1, e2) < -tol * scale)
            throw DomainError("polygon2d: vertices are not in convex counterclockwise order");
        area2 += cross(a, b);
    }
    if (area2 <= 0.0) throw DomainError("polygon2d: vertices are not counterclockwise");
    for (const auto& x : v) {
        const bool found = std::any_of(v.begin(), v.end(), [&](const Point2& y) {
            return std::abs(x[0] + y[0]) <= tol && std::abs(x[1] + y[1]) <= tol;
        });
        if (!found) throw DomainError("polygon2d: vertex set is not symmetric under x -> -x");
    }
}

}  // namespace detail

inline ConvexBody::ConvexBody(Zonotope z) : dim_(z.dim)
{
    if (z.dim == 0) throw DomainError("zonotope: dimension must be >= 1");
    for (const auto& g : z.generators) detail::check_vector(g, z.dim, "zonotope generator");
    v_ = std::move(z);
}

inline ConvexBody::ConvexBody(GeneralizedZonoid g) : dim_(g.dim)
{
    if (g.dim == 0) throw DomainError("genzonoid: dimension must be >= 1");
    for (const auto& a : g.atoms) {
        detail::check_vector(a.v, g.dim, "genzonoid atom");
        if (!is_unit(a.v)) throw DomainError("genzonoid: atom direction is not a unit vector");
        if (!std::isfinite(a.w)) throw DomainError("genzonoid: non-finite weight");
    }
    v_ = std::move(g);
}

inline ConvexBody::ConvexBody(LpBall b) : dim_(b.dim)
{
    if (b.dim == 0) throw DomainError("lpball: dimension must be >= 1");
    if (!(b.q >= 1.0)) throw DomainError("lpball: q must lie in [1, inf]");
    v_ = b;
}

inline ConvexBody::ConvexBody(DiagScaled d)
{
    if (!d.inner) throw DomainError("diag: missing inner body");
    dim_ = d.inner->dim();
    detail::check_vector(d.scale, dim_, "diag scale");
    v_ = std::move(d);
}

inline ConvexBody::ConvexBody(MinkSum m)
{
    if (m.parts.empty()) throw DomainError("minksum: needs at least one part");
    for (const auto& p : m.parts)
        if (!p) throw DomainError("minksum: missing part");
    dim_ = m.parts.front()->dim();
    for (const auto& p : m.parts) require_dim(p->dim(), dim_, "minksum part");
    v_ = std::move(m);
}

inline ConvexBody::ConvexBody(Scaled s)
{
    if (!s.inner) throw DomainError("scaled: missing inner body");
    if (!(s.c >= 0.0) || !std::isfinite(s.c)) throw DomainError("scaled: coefficient must be finite and >= 0");
    dim_ = s.inner->dim();
    v_ = std::move(s);
}

inline ConvexBody::ConvexBody(Polygon2D p) : dim_(2)
{
    detail::validate_polygon(p);
    v_ = std::move(p);
}

inline std::string ConvexBody::kind() const
{
    struct Name {
        std::string operator()(const Zonotope&) const { return "zonotope"; }
        std::string operator()(const GeneralizedZonoid&) const { return "genzonoid"; }
        std::string operator()(const LpBall&) const { return "lpball"; }
        std::string operator()(const DiagScaled&) const { return "diag"; }
        std::string operator()(const MinkSum&) const { return "minksum"; }
        std::string operator()(const Scaled&) const { return "scaled"; }
        std::string operator()(const Polygon2D&) const { return "polygon2d"; }
    };
    return std::visit(Name{}, v_);
}

// ---------------------------------------------------------------------------
// convenience constructors

inline ConvexBody make_zonotope(std::vector<Vec> generators)
{
    if (generators.empty()) throw DomainError("make_zonotope: use Zonotope{dim, {}} for an empty generator list");
    const std::size_t n = generators.front().size();
    return ConvexBody(Zonotope{n, std::move(generators)});
}

/// The segment with end points -(1,...,1) and (1,...,1).
inline ConvexBody unit_segment(std::size_t n) { return ConvexBody(Zonotope{n, {ones(n)}}); }

inline ConvexBody lp_ball(double q, std::size_t n) { return ConvexBody(LpBall{n, q}); }

inline ConvexBody make_genzonoid(std::size_t n, std::vector<WeightedDirection> atoms)
{
    return ConvexBody(GeneralizedZonoid{n, std::move(atoms)});
}

inline ConvexBody make_polygon(std::vector<Point2> vertices)
{
    return ConvexBody(Polygon2D{std::move(vertices)});
}

inline ConvexBody minkowski_sum(std::vector<ConvexBody> parts)
{
    MinkSum m;
    for (auto& p : parts) m.parts.push_back(share(std::move(p)));
    return ConvexBody(std::move(m));
}

inline ConvexBody scale_body(double c, ConvexBody k) { return ConvexBody(Scaled{c, share(std::move(k))}); }

// ---------------------------------------------------------------------------
// support function

namespace detail {

struct SupportVisitor {
    std::span<const double> u;

    double operator()(const Zonotope& z) const
    {
        double s = 0.0;
        for (const auto& g : z.generators) s += std::abs(dot(g, u));
        return s;
    }
    double operator()(const GeneralizedZonoid& g) const
    {
        double s = 0.0;
        for (const auto& a : g.atoms) s += a.w * std::abs(dot(a.v, u));
        return s;
    }
    double operator()(const LpBall& b) const { return lp_norm(u, conjugate_exponent(b.q)); }
    double operator()(const DiagScaled& d) const;
    double operator()(const MinkSum& m) const;
    double operator()(const Scaled& s) const;
    double operator()(const Polygon2D& p) const
    {
        double best = -kInf;
        for (const auto& x : p.vertices) best = std::max(best, x[0] * u[0] + x[1] * u[1]);
        return best;
    }
};

}  // namespace detail

/// h(K, u) = sup over x in K of <u, x>.
inline double support(const ConvexBody& k, std::span<const double> u)
{
    require_dim(u.size(), k.dim(), "support");
    return std::visit(detail::SupportVisitor{u}, k.variant());
}

namespace detail {

inline double SupportVisitor::operator()(const DiagScaled& d) const
{
    const Vec su = hadamard(d.scale, u);
    return support(*d.inner, su);
}

inline double SupportVisitor::operator()(const MinkSum& m) const
{
    double s = 0.0;
    for (const auto& p : m.parts) s += support(*p, u);
    return s;
}

inline double SupportVisitor::operator()(const Scaled& s) const
{
    return s.c == 0.0 ? 0.0 : s.c * support(*s.inner, u);
}

}  // namespace detail

/// Samples direction triples (u, v, u+v) and returns a witness pair (u, v)
/// violating subadditivity if one is found.  Only meaningful for bodies with
/// signed representations; every other variant is subadditive by construction.
inline std::optional<std::pair<Vec, Vec>> find_subadditivity_violation(const ConvexBody& k,
                                                                       std::size_t samples = 2000,
                                                                       std::uint64_t seed = 0x5AB)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::size_t n = k.dim();
    Vec u(n), v(n), w(n);
    for (std::size_t t = 0; t < samples; ++t) {
        for (std::size_t i = 0; i < n; ++i) {
            u[i] = gauss(rng);
            v[i] = gauss(rng);
            w[i] = u[i] + v[i];
        }
        const double lhs = support(k, w);
        const double rhs = support(k, u) + support(k, v);
        if (lhs > rhs + 1e-9 * std::max(1.0, std::abs(rhs))) return std::make_pair(u, v);
    }
    return std::nullopt;
}

}  // namespace dmc
