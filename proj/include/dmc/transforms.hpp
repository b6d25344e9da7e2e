#pragma once

// Integral transforms of discrete sphere measures: the K-transform and its
// special cases, numerical injectivity probes, surface area measures of
// polygons with the associated mixed-volume transform, the mean-width
// transform, and transforms over a finite family of linear maps.

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <ostream>
#include <vector>

#include "dmc/bodies.hpp"
#include "dmc/body_ops.hpp"
#include "dmc/grid.hpp"
#include "dmc/measures.hpp"
#include "dmc/parallel.hpp"

namespace dmc {

/// (T_K mu)(u) = sum_j w_j h(v_j K, u).
inline double k_transform(const ConvexBody& k, const SphereMeasure& mu, std::span<const double> u)
{
    require_dim(mu.dim(), k.dim(), "k_transform");
    require_dim(u.size(), k.dim(), "k_transform");
    double s = 0.0;
    // h(vK, u) = h(K, v u)
    for (const auto& a : mu.atoms()) s += a.w * support(k, hadamard(a.v, u));
    return s;
}

/// sum_j w_j |<u, v_j>|.
inline double cosine_transform(const SphereMeasure& mu, std::span<const double> u)
{
    require_dim(u.size(), mu.dim(), "cosine_transform");
    double s = 0.0;
    for (const auto& a : mu.atoms()) s += a.w * std::abs(dot(u, a.v));
    return s;
}

/// (sum_j w_j h(v_j K, u)^p)^{1/p} for a nonnegative measure and p >= 1.
inline double lp_k_transform(const ConvexBody& k, const SphereMeasure& mu, std::span<const double> u, double p)
{
    if (!(p >= 1.0) || std::isinf(p)) throw DomainError("lp_k_transform: p must lie in [1, inf)");
    if (!mu.nonnegative()) throw DomainError("lp_k_transform: measure must be nonnegative");
    require_dim(mu.dim(), k.dim(), "lp_k_transform");
    double s = 0.0;
    for (const auto& a : mu.atoms()) s += a.w * std::pow(support(k, hadamard(a.v, u)), p);
    return std::pow(s, 1.0 / p);
}

// ---------------------------------------------------------------------------
// injectivity probe

/// Matrix M[k][j] = h(v_j K, u_k) with its singular spectrum and kernel.
struct TransformMatrix {
    std::vector<Vec> rows;  // directions u_k
    std::vector<Vec> cols;  // atoms v_j
    Eigen::MatrixXd entries;
    Eigen::VectorXd singular_values;
    double rank_tol = 1e-10;
    std::size_t rank = 0;
    Eigen::MatrixXd kernel;  // orthonormal columns
    /// max over kernel vectors c and fresh directions u of
    /// |sum_j c_j h(v_j K, u)| / (|c| * max |M|).
    double residual = 0.0;
    std::size_t fresh_grid_size = 0;

    std::size_t kernel_dim() const { return static_cast<std::size_t>(kernel.cols()); }
    double sigma_max() const { return singular_values.size() ? singular_values(0) : 0.0; }
    double sigma_min() const
    {
        return singular_values.size() ? singular_values(singular_values.size() - 1) : 0.0;
    }

    void write_csv(std::ostream& os) const
    {
        os.precision(17);
        for (Eigen::Index r = 0; r < entries.rows(); ++r) {
            for (Eigen::Index c = 0; c < entries.cols(); ++c) {
                if (c) os << ',';
                os << entries(r, c);
            }
            os << '\n';
        }
    }
};

inline Eigen::MatrixXd assemble_transform(const ConvexBody& k, const std::vector<Vec>& atoms,
                                          const std::vector<Vec>& directions)
{
    Eigen::MatrixXd m(static_cast<Eigen::Index>(directions.size()), static_cast<Eigen::Index>(atoms.size()));
    parallel_for(directions.size(), [&](std::size_t r) {
        for (std::size_t c = 0; c < atoms.size(); ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                support(k, hadamard(atoms[c], directions[r]));
    }, 64);
    return m;
}

/// Numerical rank and kernel of the K-transform restricted to measures on
/// the given atoms (one representative per antipodal pair).  Kernel vectors
/// are re-checked on `fresh`, or on an independent seeded grid when omitted.
inline TransformMatrix injectivity_probe(const ConvexBody& k, const std::vector<Vec>& atoms,
                                         const DirectionGrid& grid, double rank_tol = 1e-10,
                                         const DirectionGrid* fresh = nullptr)
{
    if (atoms.empty()) throw DomainError("injectivity_probe: no atoms");
    for (const auto& v : atoms) {
        require_dim(v.size(), k.dim(), "injectivity_probe atom");
        if (!is_unit(v)) throw DomainError("injectivity_probe: atoms must be unit vectors");
    }
    require_dim(grid.dim(), k.dim(), "injectivity_probe grid");
    if (grid.size() < 2 * atoms.size())
        throw DomainError("injectivity_probe: grid must contain at least twice as many directions as atoms");
    if (!(rank_tol > 0.0)) throw DomainError("injectivity_probe: rank tolerance must be positive");

    TransformMatrix t;
    t.rows = grid.points();
    t.cols = atoms;
    t.rank_tol = rank_tol;
    t.entries = assemble_transform(k, atoms, t.rows);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(t.entries, Eigen::ComputeFullV);
    t.singular_values = svd.singularValues();
    const double smax = t.sigma_max();
    const auto ncols = t.entries.cols();
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < t.singular_values.size(); ++i)
        if (t.singular_values(i) > rank_tol * smax) ++rank;
    t.rank = rank;
    t.kernel = svd.matrixV().rightCols(ncols - static_cast<Eigen::Index>(rank));

    const DirectionGrid other =
        fresh ? *fresh : DirectionGrid::uniform(k.dim(), grid.size(), 0x9E3779B97F4A7C15ULL ^ grid.size());
    t.fresh_grid_size = other.size();
    if (t.kernel.cols() > 0) {
        const Eigen::MatrixXd m2 = assemble_transform(k, atoms, other.points());
        const double scale = std::max(t.entries.cwiseAbs().maxCoeff(), m2.cwiseAbs().maxCoeff());
        for (Eigen::Index c = 0; c < t.kernel.cols(); ++c) {
            const Eigen::VectorXd image = m2 * t.kernel.col(c);
            const double rel = image.cwiseAbs().maxCoeff() / (t.kernel.col(c).norm() * std::max(scale, 1e-300));
            t.residual = std::max(t.residual, rel);
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// surface area measures and mixed volumes

/// Edge normals of a symmetric polygon weighted by edge lengths; collinear
/// consecutive edges are merged into one atom.
inline SphereMeasure surface_measure_2d(const Polygon2D& p)
{
    std::vector<WeightedDirection> atoms;
    const auto& v = p.vertices;
    const std::size_t m = v.size();
    for (std::size_t k = 0; k < m; ++k) {
        const Point2& a = v[k];
        const Point2& b = v[(k + 1) % m];
        const double ex = b[0] - a[0], ey = b[1] - a[1];
        const double len = std::hypot(ex, ey);
        Vec normal{ey / len, -ex / len};
        if (!atoms.empty() && max_abs_diff(atoms.back().v, normal) <= 1e-9) {
            atoms.back().w += len;
        } else {
            atoms.push_back({std::move(normal), len});
        }
    }
    if (atoms.size() > 1 && max_abs_diff(atoms.back().v, atoms.front().v) <= 1e-9) {
        atoms.front().w += atoms.back().w;
        atoms.pop_back();
    }
    for (auto& a : atoms) a.v = normalized(a.v);
    return SphereMeasure(2, std::move(atoms), false);
}

/// V(L, ..., L, uK) = (1/n) sum_j S_j h(uK, n_j) for the surface area
/// measure S of L.
inline double mixed_volume_transform(const SphereMeasure& s, const ConvexBody& k, std::span<const double> u)
{
    require_dim(s.dim(), k.dim(), "mixed_volume_transform");
    require_dim(u.size(), k.dim(), "mixed_volume_transform");
    double total = 0.0;
    for (const auto& a : s.atoms()) total += a.w * support(k, hadamard(u, a.v));
    return total / static_cast<double>(k.dim());
}

struct QuadratureEstimate {
    double value = 0.0;
    std::size_t grid_size = 0;
};

/// (1/n) * integral over the sphere of h(uK, v) dv, by equal-weight averaging
/// over the symmetric grid times the sphere area.
inline QuadratureEstimate mean_width_transform(const ConvexBody& k, std::span<const double> u,
                                               const DirectionGrid& grid)
{
    require_dim(u.size(), k.dim(), "mean_width_transform");
    require_dim(grid.dim(), k.dim(), "mean_width_transform grid");
    const auto& pts = grid.points();
    std::vector<double> vals(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) { vals[i] = support(k, hadamard(u, pts[i])); }, 2048);
    double s = 0.0;
    for (double x : vals) s += x;
    const double n = static_cast<double>(k.dim());
    return {sphere_area(k.dim()) * s / static_cast<double>(pts.size()) / n, pts.size()};
}

// ---------------------------------------------------------------------------
// transforms over finite families of linear maps

struct LinearMapAtom {
    Eigen::MatrixXd g;
    double w = 0.0;
};

/// sum_g w_g h(gK, u), using h(gK, u) = h(K, g^T u).
inline double g_transform(const ConvexBody& k, const std::vector<LinearMapAtom>& family, std::span<const double> u)
{
    require_dim(u.size(), k.dim(), "g_transform");
    const auto n = static_cast<Eigen::Index>(k.dim());
    const Eigen::Map<const Eigen::VectorXd> uu(u.data(), n);
    double s = 0.0;
    for (const auto& a : family) {
        if (a.g.rows() != a.g.cols()) throw DomainError("g_transform: matrices must be square");
        if (a.g.rows() != n) throw DimensionError("g_transform: matrix dimension mismatch");
        const Eigen::VectorXd gt = a.g.transpose() * uu;
        s += a.w * support(k, std::span<const double>(gt.data(), static_cast<std::size_t>(n)));
    }
    return s;
}

}  // namespace dmc
