#pragma once

#include <algorithm>
#include <random>

#include "dmc/dmc.hpp"

namespace dmc::testing {

inline Vec gauss_vec(std::mt19937_64& rng, std::size_t n, double sd = 1.0)
{
    std::normal_distribution<double> g(0.0, sd);
    Vec v(n);
    for (double& x : v) x = g(rng);
    return v;
}

inline Vec unit_gauss(std::mt19937_64& rng, std::size_t n) { return normalized(gauss_vec(rng, n)); }

inline Vec positive_unit(std::mt19937_64& rng, std::size_t n)
{
    Vec v = gauss_vec(rng, n);
    for (double& x : v) x = std::abs(x) + 1e-3;
    return normalized(v);
}

inline double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t uniform_count(std::mt19937_64& rng, std::size_t lo, std::size_t hi)
{
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline ConvexBody random_zonotope(std::mt19937_64& rng, std::size_t n, std::size_t m)
{
    std::vector<Vec> g;
    for (std::size_t k = 0; k < m; ++k) g.push_back(gauss_vec(rng, n));
    return make_zonotope(std::move(g));
}

inline SphereMeasure random_measure(std::mt19937_64& rng, std::size_t n, std::size_t m, bool signed_weights)
{
    std::vector<WeightedDirection> a;
    for (std::size_t k = 0; k < m; ++k)
        a.push_back({unit_gauss(rng, n), signed_weights ? uniform(rng, -1.0, 1.0) : uniform(rng, 0.1, 1.0)});
    return SphereMeasure(n, std::move(a));
}

/// Symmetric law with m antipodal pairs of atoms.
inline DiscreteRandomVector random_symmetric_law(std::mt19937_64& rng, std::size_t n, std::size_t m)
{
    std::vector<VectorAtom> a;
    std::vector<double> w(m);
    double total = 0.0;
    for (double& x : w) total += (x = uniform(rng, 0.2, 1.0));
    for (std::size_t k = 0; k < m; ++k) {
        const Vec x = gauss_vec(rng, n);
        a.push_back({x, 0.5 * w[k] / total});
        a.push_back({negated(x), 0.5 * w[k] / total});
    }
    return DiscreteRandomVector(n, std::move(a), true);
}

inline DiscreteRandomVector random_law(std::mt19937_64& rng, std::size_t n, std::size_t m)
{
    std::vector<VectorAtom> a;
    for (std::size_t k = 0; k < m; ++k) a.push_back({gauss_vec(rng, n), 1.0 / static_cast<double>(m)});
    return DiscreteRandomVector(n, std::move(a));
}

/// Replaces each atom x by t x with mass p/t plus mass p(1 - 1/t) at the
/// origin; the zonoid is unchanged.
inline DiscreteRandomVector split_twin(const DiscreteRandomVector& xi, std::mt19937_64& rng)
{
    std::vector<VectorAtom> atoms;
    for (const auto& a : xi.atoms()) {
        const double t = uniform(rng, 1.5, 3.0);
        atoms.push_back({scaled(a.x, t), a.p / t});
        atoms.push_back({Vec(a.x.size(), 0.0), a.p * (1.0 - 1.0 / t)});
    }
    std::shuffle(atoms.begin(), atoms.end(), rng);
    return DiscreteRandomVector(xi.dim(), std::move(atoms), false);
}

}  // namespace dmc::testing
