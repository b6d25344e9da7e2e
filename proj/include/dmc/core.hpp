#pragma once

// Shared vocabulary: dense vectors, error types, norms and the small
// numeric helpers every other header leans on.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dmc {

using Vec = std::vector<double>;
using Index = std::size_t;
using IndexSet = std::vector<Index>;  // sorted, 0-based coordinate indices

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Tolerance for unit-norm checks on directions.
inline constexpr double kUnitTol = 1e-12;
/// Absolute tolerance deciding that a coordinate is zero (S_0 and A_E tests).
inline constexpr double kZeroTol = 1e-12;
/// Parallel-merge tolerance used by canonical zonotope forms.
inline constexpr double kMergeTol = 1e-9;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

inline void require_dim(std::size_t got, std::size_t want, const char* what)
{
    if (got != want) {
        throw DimensionError(std::string(what) + ": dimension mismatch (got " +
                             std::to_string(got) + ", expected " +
                             std::to_string(want) + ")");
    }
}

inline double dot(std::span<const double> a, std::span<const double> b)
{
    require_dim(b.size(), a.size(), "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(std::span<const double> a)
{
    // hypot-style scaling avoids overflow for large generators
    double scale = 0.0;
    for (double x : a) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) return 0.0;
    double s = 0.0;
    for (double x : a) {
        const double y = x / scale;
        s += y * y;
    }
    return scale * std::sqrt(s);
}

/// l_p norm for p in [1, inf]; p == kInf gives the max norm.
inline double lp_norm(std::span<const double> a, double p)
{
    if (!(p >= 1.0)) throw DomainError("lp_norm: p must lie in [1, inf]");
    double m = 0.0;
    for (double x : a) m = std::max(m, std::abs(x));
    if (std::isinf(p) || m == 0.0) return m;
    if (p == 1.0) {
        double s = 0.0;
        for (double x : a) s += std::abs(x);
        return s;
    }
    if (p == 2.0) return norm2(a);
    double s = 0.0;
    for (double x : a) s += std::pow(std::abs(x) / m, p);
    return m * std::pow(s, 1.0 / p);
}

/// Conjugate exponent with the boundary cases handled symbolically.
inline double conjugate_exponent(double q)
{
    if (!(q >= 1.0)) throw DomainError("conjugate_exponent: q must lie in [1, inf]");
    if (std::isinf(q)) return 1.0;
    if (q == 1.0) return kInf;
    return q / (q - 1.0);
}

inline Vec hadamard(std::span<const double> a, std::span<const double> b)
{
    require_dim(b.size(), a.size(), "hadamard");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * b[i];
    return r;
}

inline Vec scaled(std::span<const double> a, double c)
{
    Vec r(a.begin(), a.end());
    for (double& x : r) x *= c;
    return r;
}

inline Vec negated(std::span<const double> a) { return scaled(a, -1.0); }

inline Vec normalized(std::span<const double> a)
{
    const double n = norm2(a);
    if (n == 0.0) throw DomainError("normalized: zero vector has no direction");
    return scaled(a, 1.0 / n);
}

inline bool is_unit(std::span<const double> a, double tol = kUnitTol)
{
    return std::abs(norm2(a) - 1.0) <= tol;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b)
{
    require_dim(b.size(), a.size(), "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

/// Signed power t^<beta> = |t|^beta sign(t), applied componentwise.
inline double signed_power(double t, double beta)
{
    if (t == 0.0) return 0.0;
    return std::copysign(std::pow(std::abs(t), beta), t);
}

inline Vec signed_power(std::span<const double> a, double beta)
{
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = signed_power(a[i], beta);
    return r;
}

inline Vec unit_vector(std::size_t n, Index i)
{
    Vec e(n, 0.0);
    e.at(i) = 1.0;
    return e;
}

inline Vec ones(std::size_t n) { return Vec(n, 1.0); }

/// Zero-pads u (given on the coordinates J) to R^n.
inline Vec embed(std::span<const double> u, const IndexSet& J, std::size_t n)
{
    require_dim(u.size(), J.size(), "embed");
    Vec r(n, 0.0);
    for (std::size_t k = 0; k < J.size(); ++k) r.at(J[k]) = u[k];
    return r;
}

inline Vec restrict_to(std::span<const double> x, const IndexSet& J)
{
    Vec r(J.size());
    for (std::size_t k = 0; k < J.size(); ++k) r[k] = x[J.at(k)];
    return r;
}

/// Validates J as a nonempty strictly increasing subset of {0..n-1}.
inline void check_index_set(const IndexSet& J, std::size_t n)
{
    if (J.empty()) throw DomainError("index set must be nonempty");
    for (std::size_t k = 0; k < J.size(); ++k) {
        if (J[k] >= n) throw DomainError("index set: coordinate out of range");
        if (k > 0 && J[k] <= J[k - 1])
            throw DomainError("index set must be strictly increasing");
    }
}

/// All nonempty subsets of {0..n-1} whose cardinality satisfies pred.
template <class Pred>
std::vector<IndexSet> subsets_where(std::size_t n, Pred pred)
{
    std::vector<IndexSet> out;
    if (n >= 63) throw DomainError("subsets_where: dimension too large");
    for (unsigned long long mask = 1; mask < (1ULL << n); ++mask) {
        IndexSet J;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1ULL << i)) J.push_back(i);
        if (pred(J)) out.push_back(std::move(J));
    }
    std::stable_sort(out.begin(), out.end(), [](const IndexSet& a, const IndexSet& b) {
        return a.size() < b.size();
    });
    return out;
}

/// Surface area of the unit sphere S^{n-1}.
inline double sphere_area(std::size_t n)
{
    const double h = 0.5 * static_cast<double>(n);
    return 2.0 * std::pow(M_PI, h) / std::tgamma(h);
}

}  // namespace dmc
