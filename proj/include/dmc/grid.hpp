#pragma once

// Deterministic direction sets on the unit sphere.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dmc/core.hpp"

namespace dmc {

enum class GridScheme { FibonacciSymmetric, UniformSeeded };

/// Evaluation directions, closed under v -> -v.  Points are stored in
/// antipodal pairs: points()[2k + 1] == -points()[2k] exactly.
class DirectionGrid {
public:
    /// Low-discrepancy lattice: equally spaced half circle for n = 2, a
    /// Fibonacci hemisphere for n = 3, a Kronecker sequence pushed through the
    /// Box-Muller map for n >= 4.  `size` is rounded up to an even count.
    static DirectionGrid fibonacci(std::size_t n, std::size_t size)
    {
        DirectionGrid g(n, GridScheme::FibonacciSymmetric, 0);
        const std::size_t pairs = half_count(n, size);
        for (std::size_t k = 0; k < pairs; ++k) g.push_pair(lattice_point(n, k, pairs));
        return g;
    }

    /// Independent Gaussian directions from a seeded mt19937_64.
    static DirectionGrid uniform(std::size_t n, std::size_t size, std::uint64_t seed)
    {
        DirectionGrid g(n, GridScheme::UniformSeeded, seed);
        const std::size_t pairs = half_count(n, size);
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        Vec v(n);
        for (std::size_t k = 0; k < pairs; ++k) {
            double len = 0.0;
            while (len < 1e-6) {
                for (double& x : v) x = gauss(rng);
                len = norm2(v);
            }
            g.push_pair(scaled(v, 1.0 / len));
        }
        return g;
    }

    std::size_t dim() const noexcept { return n_; }
    std::size_t size() const noexcept { return points_.size(); }
    GridScheme scheme() const noexcept { return scheme_; }
    std::uint64_t seed() const noexcept { return seed_; }
    const std::vector<Vec>& points() const noexcept { return points_; }

    /// One representative per antipodal pair.
    std::vector<Vec> half() const
    {
        std::vector<Vec> r;
        for (std::size_t k = 0; k < points_.size(); k += 2) r.push_back(points_[k]);
        return r;
    }

    std::string scheme_name() const
    {
        return scheme_ == GridScheme::FibonacciSymmetric ? "fibonacci-symmetric" : "uniform-seeded";
    }

private:
    DirectionGrid(std::size_t n, GridScheme s, std::uint64_t seed) : n_(n), scheme_(s), seed_(seed)
    {
        if (n == 0) throw DomainError("direction grid: dimension must be >= 1");
    }

    static std::size_t half_count(std::size_t n, std::size_t size)
    {
        if (size == 0) throw DomainError("direction grid: size must be positive");
        if (n == 1) return 1;
        return (size + 1) / 2;
    }

    void push_pair(Vec v)
    {
        Vec m = negated(v);
        points_.push_back(std::move(v));
        points_.push_back(std::move(m));
    }

    static Vec lattice_point(std::size_t n, std::size_t k, std::size_t pairs)
    {
        const double t = (static_cast<double>(k) + 0.5) / static_cast<double>(pairs);
        if (n == 1) return {1.0};
        if (n == 2) return {std::cos(M_PI * t), std::sin(M_PI * t)};
        if (n == 3) {
            const double golden = M_PI * (3.0 - std::sqrt(5.0));
            const double z = t;
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double phi = golden * static_cast<double>(k);
            return {r * std::cos(phi), r * std::sin(phi), z};
        }
        // generalised golden ratio (R_d) sequence in [0,1)^m, m even >= n
        const std::size_t m = n + (n % 2);
        double phi = 2.0;
        for (int it = 0; it < 64; ++it) phi = std::pow(1.0 + phi, 1.0 / static_cast<double>(m + 1));
        Vec v(n);
        double a = 1.0;
        std::vector<double> coords(m);
        for (std::size_t d = 0; d < m; ++d) {
            a /= phi;
            const double x = 0.5 + a * static_cast<double>(k + 1);
            coords[d] = x - std::floor(x);
        }
        for (std::size_t d = 0; d + 1 < m; d += 2) {
            const double u1 = std::max(coords[d], 1e-12);
            const double r = std::sqrt(-2.0 * std::log(u1));
            const double ang = 2.0 * M_PI * coords[d + 1];
            if (d < n) v[d] = r * std::cos(ang);
            if (d + 1 < n) v[d + 1] = r * std::sin(ang);
        }
        const double len = norm2(v);
        if (len < 1e-9) return unit_vector(n, k % n);
        return scaled(v, 1.0 / len);
    }

    std::size_t n_;
    GridScheme scheme_;
    std::uint64_t seed_;
    std::vector<Vec> points_;
};

/// Directions in S_+ = sphere intersected with the closed positive orthant.
/// n = 2: equally spaced angles including both axes.  n >= 3: the axes, the
/// diagonal, then absolute values of lattice points until `count` is reached.
inline std::vector<Vec> positive_orthant_lattice(std::size_t n, std::size_t count)
{
    if (n == 0 || count == 0) throw DomainError("positive_orthant_lattice: empty request");
    std::vector<Vec> out;
    if (n == 1) return {{1.0}};
    if (n == 2) {
        if (count == 1) return {{M_SQRT1_2, M_SQRT1_2}};
        for (std::size_t k = 0; k < count; ++k) {
            const double t = 0.5 * M_PI * static_cast<double>(k) / static_cast<double>(count - 1);
            out.push_back({std::cos(t), std::sin(t)});
        }
        out.front() = {1.0, 0.0};
        out.back() = {0.0, 1.0};
        return out;
    }
    for (std::size_t i = 0; i < n && out.size() < count; ++i) out.push_back(unit_vector(n, i));
    if (out.size() < count) out.push_back(scaled(ones(n), 1.0 / std::sqrt(static_cast<double>(n))));
    if (out.size() < count) {
        const auto grid = DirectionGrid::fibonacci(n, 2 * (count - out.size()));
        for (const auto& p : grid.half()) {
            if (out.size() >= count) break;
            Vec a(p);
            for (double& x : a) x = std::abs(x);
            out.push_back(std::move(a));
        }
    }
    return out;
}

/// m seeded directions in S_+ in general position.  For n = 2 the angles are
/// jittered strata of [0, pi/2], so neighbours are at least pi/(4m) apart; for
/// n >= 3 coordinates are independent |N(0,1)|.
inline std::vector<Vec> generic_positive_atoms(std::size_t n, std::size_t m, std::uint64_t seed)
{
    if (n == 0 || m == 0) throw DomainError("generic_positive_atoms: empty request");
    std::mt19937_64 rng(seed);
    std::vector<Vec> out;
    if (n == 1) return std::vector<Vec>(1, Vec{1.0});
    if (n == 2) {
        std::uniform_real_distribution<double> jitter(-0.25, 0.25);
        for (std::size_t k = 0; k < m; ++k) {
            const double t = 0.5 * M_PI * (static_cast<double>(k) + 0.5 + jitter(rng)) / static_cast<double>(m);
            out.push_back({std::cos(t), std::sin(t)});
        }
        return out;
    }
    std::normal_distribution<double> g(0.0, 1.0);
    while (out.size() < m) {
        Vec v(n);
        for (double& x : v) x = std::abs(g(rng));
        if (norm2(v) > 1e-6) out.push_back(normalized(v));
    }
    return out;
}

}  // namespace dmc
