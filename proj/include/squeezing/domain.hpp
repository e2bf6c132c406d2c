#pragma once

// General ellipsoids D_P = { |z_n|^2 + P(z') < 1 } and the horosphere-like
// subdomains D_P^{s,r} = { |z_n - (1-s)|^2 + (s/r) P(z') < s^2 }.

#include "squeezing/wpoly.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <functional>
#include <optional>
#include <ostream>

namespace squeezing {

template <class Real>
class GeneralEllipsoid {
public:
    GeneralEllipsoid() = default;

    /// Rejects P that fails the sampled positivity scan.
    explicit GeneralEllipsoid(WeightedPolynomial<Real> P, std::size_t positivity_samples = 2048,
                              std::uint64_t positivity_seed = 0x5eed)
        : P_(std::move(P)) {
        const auto rep = positivity_scan(P_, positivity_samples, positivity_seed);
        if (!rep.positive) {
            throw ValidationError("GeneralEllipsoid: P is not positive on the unit sphere (min " +
                                  std::to_string(rep.min_value) + ")");
        }
    }

    const WeightedPolynomial<Real>& polynomial() const { return P_; }
    const MultiWeight& weights() const { return P_.weights(); }
    std::size_t dim() const { return P_.dim(); }

    /// rho(z) = |z_n|^2 - 1 + P(z').
    Real rho(const cvector<Real>& z) const {
        using std::norm;
        check_arity(z);
        return norm(z.back()) - Real(1) + P_.eval_prefix(z);
    }

    bool contains(const cvector<Real>& z) const { return rho(z) < Real(0); }

    static cvector<Real> tangential(const cvector<Real>& z) { return cvector<Real>(z.begin(), z.end() - 1); }

    template <class To>
    GeneralEllipsoid<To> cast() const {
        return GeneralEllipsoid<To>(P_.template cast<To>());
    }

private:
    void check_arity(const cvector<Real>& z) const {
        if (z.size() != dim()) throw ParameterError("GeneralEllipsoid: point has wrong dimension");
    }

    WeightedPolynomial<Real> P_;
};

using Ellipsoid = GeneralEllipsoid<double>;

template <class Real>
struct SubdomainParams {
    Real s = 1;
    Real r = 1;

    SubdomainParams() = default;
    SubdomainParams(Real s_, Real r_) : s(std::move(s_)), r(std::move(r_)) {
        if (!(s > 0 && s <= 1)) throw ParameterError("SubdomainParams: s must lie in (0, 1]");
        if (!(r > 0 && r <= 1)) throw ParameterError("SubdomainParams: r must lie in (0, 1]");
    }
    /// Center of the z_n disk.
    Real b() const { return Real(1) - s; }
};

/// Membership in D_P^{s,r}.
template <class Real>
bool contains_sub(const GeneralEllipsoid<Real>& D, const SubdomainParams<Real>& sp, const cvector<Real>& z) {
    using std::norm;
    const Real lhs = norm(z.back() - complex_t<Real>(sp.b())) + (sp.s / sp.r) * D.polynomial()(D.tangential(z));
    return lhs < sp.s * sp.s;
}

// --- boundary geometry (double precision) ------------------------------------

struct BoundaryPoint {
    cvec z;
    double residual = 0;
};

namespace detail {

/// Smallest t > 0 with rho(t u) = 0: geometric bracket scan from t = 1e-4 by
/// factor 1.2, then bisection to the last representable midpoint.
inline std::optional<double> radial_root(const std::function<double(double)>& f, double cap = 1e8) {
    double lo = 0.0;
    double t = 1e-4;
    double flo = f(0.0);
    if (!(flo < 0)) return std::nullopt;
    double ft = f(t);
    while (ft < 0) {
        lo = t;
        flo = ft;
        t *= 1.2;
        if (t > cap) return std::nullopt;
        ft = f(t);
    }
    double hi = t;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (f(mid) < 0) lo = mid;
        else hi = mid;
    }
    return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

inline cvec scaled(const cvec& u, double t) {
    cvec out(u);
    for (auto& c : out) c *= t;
    return out;
}

}  // namespace detail

/// First boundary crossing along the ray t*u, if any, within a radius cap.
inline std::optional<BoundaryPoint> ray_boundary(const Ellipsoid& D, const cvec& u) {
    cvec buf(u.size());
    auto t = detail::radial_root([&](double s) {
        for (std::size_t k = 0; k < u.size(); ++k) buf[k] = s * u[k];
        return D.rho(buf);
    });
    if (!t) return std::nullopt;
    BoundaryPoint bp{detail::scaled(u, *t), 0.0};
    bp.residual = std::abs(D.rho(bp.z));
    return bp;
}

/// Same, starting from a guess for the crossing radius. Falls back to the
/// full scan unless [hint / 1.05, hint * 1.05] brackets a sign change with the
/// segment below it inside D.
inline std::optional<BoundaryPoint> ray_boundary(const Ellipsoid& D, const cvec& u, double hint) {
    cvec buf(u.size());
    auto f = [&](double s) {
        for (std::size_t k = 0; k < u.size(); ++k) buf[k] = s * u[k];
        return D.rho(buf);
    };
    const double lo = hint / 1.05, hi = hint * 1.05;
    const double flo = f(lo), fhi = f(hi);
    if (!(flo < 0 && fhi >= 0) || !(f(0.5 * lo) < 0)) return ray_boundary(D, u);
    std::uintmax_t iters = 100;
    const auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi,
                                                     boost::math::tools::eps_tolerance<double>(50), iters);
    const double t = std::abs(f(r.first)) <= std::abs(f(r.second)) ? r.first : r.second;
    BoundaryPoint bp{detail::scaled(u, t), 0.0};
    bp.residual = std::abs(D.rho(bp.z));
    return bp;
}

/// `count` boundary points along seeded uniformly random directions. The
/// direction stream is sequential, so the first k points of a larger request
/// equal a request for k points with the same seed.
inline std::vector<BoundaryPoint> boundary_sample(const Ellipsoid& D, std::size_t count, std::uint64_t seed) {
    if (count < 1) throw ParameterError("boundary_sample: count must be >= 1");
    Rng rng(seed);
    std::normal_distribution<double> normal;
    std::vector<BoundaryPoint> out;
    out.reserve(count);
    std::size_t attempts = 0;
    while (out.size() < count) {
        if (++attempts > 100 * count + 1000) throw NumericalError("boundary_sample: too many rejected directions");
        const cvec u = random_unit_vector(D.dim(), rng, normal);
        auto bp = ray_boundary(D, u);
        if (!bp || bp->residual > 1e-10) continue;
        out.push_back(std::move(*bp));
    }
    return out;
}

/// max |F(xi)| over the given boundary points, refined by a seeded local
/// search over ray directions around the `keep` best of them.
inline double max_boundary_norm(const Ellipsoid& D, const std::function<cvec(const cvec&)>& F,
                                const std::vector<BoundaryPoint>& pts, std::uint64_t seed, std::size_t keep = 8) {
    if (pts.empty()) throw ParameterError("max_boundary_norm: no boundary points");
    std::vector<std::pair<double, std::size_t>> ranked;
    ranked.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) ranked.emplace_back(detail::abs_vec<double>(F(pts[i].z)), i);
    keep = std::min(keep, ranked.size());
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep), ranked.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });

    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> normal;
    double overall = ranked.front().first;
    for (std::size_t i = 0; i < keep; ++i) {
        double value = ranked[i].first;
        cvec u = pts[ranked[i].second].z;
        double radius = detail::abs_vec<double>(u);
        for (auto& c : u) c /= radius;
        double step = 0.05;
        int misses = 0;
        while (step > 1e-8) {
            cvec trial(u);
            for (auto& c : trial) c += step * cplx(normal(rng), normal(rng));
            const double nt = detail::abs_vec<double>(trial);
            for (auto& c : trial) c /= nt;
            auto bp = ray_boundary(D, trial, radius);
            const double v = bp ? detail::abs_vec<double>(F(bp->z)) : -1.0;
            if (v > value) {
                value = v;
                radius = detail::abs_vec<double>(bp->z);
                u = std::move(trial);
                misses = 0;
            } else if (++misses >= 8) {
                step *= 0.5;
                misses = 0;
            }
        }
        overall = std::max(overall, value);
    }
    return overall;
}

inline double max_boundary_norm(const Ellipsoid& D, const std::function<cvec(const cvec&)>& F,
                                std::size_t count, std::uint64_t seed) {
    return max_boundary_norm(D, F, boundary_sample(D, count, seed), seed);
}

/// R with D inside ball(0, R): refined max |xi| over the boundary times (1 + margin).
inline double bounding_radius(const Ellipsoid& D, std::size_t count = 20000, std::uint64_t seed = 17,
                              double margin = 0.01) {
    const double r = max_boundary_norm(D, [](const cvec& z) { return z; }, count, seed);
    return r * (1.0 + margin);
}

/// dr/dconj(z_j) of rho, i.e. the complex normal direction.
inline Eigen::VectorXcd rho_gradient_zbar(const Ellipsoid& D, const cvec& z) {
    const std::size_t n = D.dim();
    Eigen::VectorXcd g(static_cast<Eigen::Index>(n));
    const Eigen::VectorXcd gp = gradient(D.polynomial(), D.tangential(z));
    for (std::size_t j = 0; j + 1 < n; ++j) g(static_cast<Eigen::Index>(j)) = std::conj(gp(static_cast<Eigen::Index>(j)));
    g(static_cast<Eigen::Index>(n - 1)) = z.back();
    return g;
}

/// d^2 rho / dz_j dconj(z_k).
inline Eigen::MatrixXcd rho_complex_hessian(const Ellipsoid& D, const cvec& z) {
    const auto n = static_cast<Eigen::Index>(D.dim());
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(n, n);
    H.topLeftCorner(n - 1, n - 1) = complex_hessian(D.polynomial(), D.tangential(z));
    H(n - 1, n - 1) = 1.0;
    return H;
}

/// Orthonormal basis (columns) of the Hermitian complement of `normal`.
inline Eigen::MatrixXcd orthogonal_complement(const Eigen::VectorXcd& normal) {
    const Eigen::Index n = normal.size();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(normal);
    Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
    return Q.rightCols(n - 1);
}

/// Hermitian form sum_{jk} H_{jk} v_j conj(v_k) restricted to span(T) in the
/// basis given by the columns of T.
inline Eigen::MatrixXcd restrict_levi(const Eigen::MatrixXcd& H, const Eigen::MatrixXcd& T) {
    Eigen::MatrixXcd M = T.adjoint() * H.transpose() * T;
    return 0.5 * (M + M.adjoint());
}

/// Smallest eigenvalue of the Levi form of rho on the complex tangent space at xi.
inline double levi_min_eig(const Ellipsoid& D, const cvec& xi) {
    const Eigen::VectorXcd normal = rho_gradient_zbar(D, xi);
    if (normal.norm() < 1e-14) throw NumericalError("levi_min_eig: gradient of rho vanishes");
    const Eigen::MatrixXcd T = orthogonal_complement(normal);
    const Eigen::MatrixXcd M = restrict_levi(rho_complex_hessian(D, xi), T);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

/// |rho(z)| / |grad_R rho(z)|, a first-order distance-to-boundary estimate.
inline double distance_estimate(const Ellipsoid& D, const cvec& z) {
    const double g = 2.0 * rho_gradient_zbar(D, z).norm();
    return std::abs(D.rho(z)) / g;
}

struct WbScanReport {
    double min_levi = std::numeric_limits<double>::infinity();
    cvec argmin;
    std::size_t used = 0;
    std::size_t excluded = 0;
    double tube = 0;
    bool pass = false;
};

/// Strong pseudoconvexity scan of the boundary away from the circle
/// {(0', e^{i theta})}: points with |z'| < tube are skipped.
inline WbScanReport wb_scan(const Ellipsoid& D, std::size_t count, std::uint64_t seed, double tube = 1e-2) {
    WbScanReport rep;
    rep.tube = tube;
    for (const auto& bp : boundary_sample(D, count, seed)) {
        if (detail::abs_vec<double>(D.tangential(bp.z)) < tube) {
            ++rep.excluded;
            continue;
        }
        const double l = levi_min_eig(D, bp.z);
        ++rep.used;
        if (l < rep.min_levi) {
            rep.min_levi = l;
            rep.argmin = bp.z;
        }
    }
    rep.pass = rep.used > 0 && rep.min_levi > 0;
    return rep;
}

}  // namespace squeezing
