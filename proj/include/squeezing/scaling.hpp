#pragma once

// Scaling along a sequence eta_j -> xi_0 for a polynomial defining function:
// tau-distances along complex lines, a greedy orthonormal frame of maximal
// tau, and the rescaled functions
//
//   rho~(w) = (1/eps) rho(eta + U diag(tau) w),
//
// with U = [e_1 ... e_n] the frame. Compositions are done on coefficient
// tables, so rho~ is exact up to the rounding of its coefficients.

#include "squeezing/domain.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <map>
#include <set>

namespace squeezing {

/// Monomial z^alpha conj(z)^beta.
using MonomialKey = std::pair<MultiIndex, MultiIndex>;
using CoeffTable = std::map<MonomialKey, cplx>;

namespace detail {

inline CoeffTable multiply(const CoeffTable& a, const CoeffTable& b) {
    CoeffTable out;
    for (const auto& [ka, ca] : a) {
        for (const auto& [kb, cb] : b) {
            MonomialKey k = ka;
            for (std::size_t j = 0; j < k.first.size(); ++j) {
                k.first[j] += kb.first[j];
                k.second[j] += kb.second[j];
            }
            out[k] += ca * cb;
        }
    }
    return out;
}

inline void add_scaled(CoeffTable& into, const CoeffTable& t, cplx s) {
    for (const auto& [k, c] : t) into[k] += s * c;
}

inline CoeffTable constant_table(std::size_t n, cplx c) {
    return CoeffTable{{MonomialKey{MultiIndex(n, 0), MultiIndex(n, 0)}, c}};
}

inline int total_degree(const MonomialKey& k) {
    return std::accumulate(k.first.begin(), k.first.end(), 0) + std::accumulate(k.second.begin(), k.second.end(), 0);
}

}  // namespace detail

/// Real polynomial in (z, conj z) over n variables with a Hermitian
/// coefficient table: c(beta, alpha) = conj(c(alpha, beta)).
class DefiningFunctionPoly {
public:
    DefiningFunctionPoly() = default;

    /// `reps` lists each unordered pair {alpha, beta} once; conjugate partners
    /// are materialized. Diagonal coefficients must be real.
    DefiningFunctionPoly(std::size_t n, const std::vector<std::tuple<MultiIndex, MultiIndex, cplx>>& reps) : n_(n) {
        if (n < 1) throw ValidationError("DefiningFunctionPoly: need n >= 1");
        std::set<MonomialKey> seen;
        for (const auto& [a, b, c] : reps) {
            if (a.size() != n || b.size() != n) throw ValidationError("DefiningFunctionPoly: multi-index length mismatch");
            for (std::size_t j = 0; j < n; ++j) {
                if (a[j] < 0 || b[j] < 0) throw ValidationError("DefiningFunctionPoly: negative exponent");
            }
            const MonomialKey key = a < b ? MonomialKey{a, b} : MonomialKey{b, a};
            if (!seen.insert(key).second) throw ValidationError("DefiningFunctionPoly: unordered pair listed twice");
            if (a == b) {
                if (c.imag() != 0.0) throw ValidationError("DefiningFunctionPoly: diagonal coefficient must be real");
                table_[{a, b}] += c;
            } else {
                table_[{a, b}] += c;
                table_[{b, a}] += std::conj(c);
            }
        }
    }

    /// Table built by composition; made exactly Hermitian by averaging each
    /// coefficient with the conjugate of its partner.
    static DefiningFunctionPoly from_table(std::size_t n, const CoeffTable& t) {
        DefiningFunctionPoly p;
        p.n_ = n;
        for (const auto& [k, c] : t) {
            if (k.first.size() != n || k.second.size() != n) throw ValidationError("from_table: multi-index length mismatch");
            const MonomialKey partner{k.second, k.first};
            const auto it = t.find(partner);
            const cplx cp = it == t.end() ? cplx(0.0) : it->second;
            const cplx v = 0.5 * (c + std::conj(cp));
            const cplx vv = k.first == k.second ? cplx(v.real(), 0.0) : v;
            if (vv != cplx(0.0)) p.table_[k] = vv;
        }
        return p;
    }

    /// |z_n|^2 - 1 + P(z').
    static DefiningFunctionPoly from_ellipsoid(const Ellipsoid& D) {
        const std::size_t n = D.dim();
        CoeffTable t;
        for (const auto& term : D.polynomial().terms()) {
            MultiIndex a(term.K), b(term.L);
            a.push_back(0);
            b.push_back(0);
            t[{a, b}] += term.coeff;
        }
        MultiIndex en(n, 0);
        en.back() = 1;
        t[{en, en}] += 1.0;
        t[{MultiIndex(n, 0), MultiIndex(n, 0)}] += -1.0;
        return from_table(n, t);
    }

    std::size_t dim() const { return n_; }
    const CoeffTable& table() const { return table_; }

    cplx coefficient(const MultiIndex& a, const MultiIndex& b) const {
        const auto it = table_.find({a, b});
        return it == table_.end() ? cplx(0.0) : it->second;
    }

    int degree() const {
        int d = 0;
        for (const auto& kv : table_) d = std::max(d, detail::total_degree(kv.first));
        return d;
    }

    double operator()(const cvec& z) const {
        check(z);
        cplx s(0.0);
        for (const auto& [k, c] : table_) s += c * monomial(k.first, k.second, z);
        return s.real();
    }

    double at_origin() const { return coefficient(MultiIndex(n_, 0), MultiIndex(n_, 0)).real(); }

    /// (d rho / d conj z_j)_j.
    Eigen::VectorXcd gradient_zbar(const cvec& z) const {
        check(z);
        Eigen::VectorXcd g = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n_));
        for (const auto& [k, c] : table_) {
            for (std::size_t j = 0; j < n_; ++j) {
                if (k.second[j] == 0) continue;
                MultiIndex b = k.second;
                b[j] -= 1;
                g(static_cast<Eigen::Index>(j)) += c * static_cast<double>(k.second[j]) * monomial(k.first, b, z);
            }
        }
        return g;
    }

    /// H_{jk} = d^2 rho / dz_j dconj(z_k), Hermitian.
    Eigen::MatrixXcd complex_hessian(const cvec& z) const {
        check(z);
        const auto n = static_cast<Eigen::Index>(n_);
        Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(n, n);
        for (const auto& [key, c] : table_) {
            for (Eigen::Index j = 0; j < n; ++j) {
                if (key.first[static_cast<std::size_t>(j)] == 0) continue;
                for (Eigen::Index l = 0; l < n; ++l) {
                    if (key.second[static_cast<std::size_t>(l)] == 0) continue;
                    MultiIndex a = key.first, b = key.second;
                    const double f = static_cast<double>(a[static_cast<std::size_t>(j)]) *
                                     static_cast<double>(b[static_cast<std::size_t>(l)]);
                    a[static_cast<std::size_t>(j)] -= 1;
                    b[static_cast<std::size_t>(l)] -= 1;
                    H(j, l) += c * f * monomial(a, b, z);
                }
            }
        }
        return 0.5 * (H + H.adjoint());
    }

    /// Table of rho(origin + M w) in the variables w (m = M.cols()).
    CoeffTable compose_affine(const Eigen::VectorXcd& origin, const Eigen::MatrixXcd& M) const {
        const auto m = static_cast<std::size_t>(M.cols());
        if (static_cast<std::size_t>(origin.size()) != n_ || static_cast<std::size_t>(M.rows()) != n_) {
            throw ParameterError("compose_affine: dimension mismatch");
        }
        // ell_j(w) = origin_j + sum_k M_jk w_k, and its conjugate in conj(w).
        std::vector<CoeffTable> ell(n_), ellbar(n_);
        for (std::size_t j = 0; j < n_; ++j) {
            const auto J = static_cast<Eigen::Index>(j);
            ell[j] = detail::constant_table(m, origin(J));
            ellbar[j] = detail::constant_table(m, std::conj(origin(J)));
            for (std::size_t k = 0; k < m; ++k) {
                const cplx a = M(J, static_cast<Eigen::Index>(k));
                if (a == cplx(0.0)) continue;
                MultiIndex e(m, 0);
                e[k] = 1;
                ell[j][{e, MultiIndex(m, 0)}] += a;
                ellbar[j][{MultiIndex(m, 0), e}] += std::conj(a);
            }
        }
        std::map<std::pair<std::size_t, int>, CoeffTable> pw, pwbar;
        auto power = [&](std::map<std::pair<std::size_t, int>, CoeffTable>& cache, const std::vector<CoeffTable>& base,
                         std::size_t j, int e) -> const CoeffTable& {
            auto key = std::make_pair(j, e);
            auto it = cache.find(key);
            if (it != cache.end()) return it->second;
            CoeffTable r = detail::constant_table(m, 1.0);
            for (int i = 0; i < e; ++i) r = detail::multiply(r, base[j]);
            return cache.emplace(key, std::move(r)).first->second;
        };
        CoeffTable out;
        for (const auto& [k, c] : table_) {
            CoeffTable term = detail::constant_table(m, c);
            for (std::size_t j = 0; j < n_; ++j) {
                if (k.first[j]) term = detail::multiply(term, power(pw, ell, j, k.first[j]));
                if (k.second[j]) term = detail::multiply(term, power(pwbar, ellbar, j, k.second[j]));
            }
            detail::add_scaled(out, term, 1.0);
        }
        return out;
    }

private:
    void check(const cvec& z) const {
        if (z.size() != n_) throw ParameterError("DefiningFunctionPoly: point has wrong dimension");
    }

    static cplx monomial(const MultiIndex& a, const MultiIndex& b, const cvec& z) {
        cplx v(1.0);
        for (std::size_t j = 0; j < z.size(); ++j) {
            for (int e = 0; e < a[j]; ++e) v *= z[j];
            if (b[j]) {
                const cplx zb = std::conj(z[j]);
                for (int e = 0; e < b[j]; ++e) v *= zb;
            }
        }
        return v;
    }

    std::size_t n_ = 0;
    CoeffTable table_;
};

/// Largest coefficient difference over the union of both tables.
inline double max_coefficient_deviation(const DefiningFunctionPoly& a, const DefiningFunctionPoly& b) {
    if (a.dim() != b.dim()) throw ParameterError("max_coefficient_deviation: dimension mismatch");
    double d = 0;
    for (const auto& kv : a.table()) d = std::max(d, std::abs(kv.second - b.coefficient(kv.first.first, kv.first.second)));
    for (const auto& kv : b.table()) d = std::max(d, std::abs(kv.second - a.coefficient(kv.first.first, kv.first.second)));
    return d;
}

// --- tau ------------------------------------------------------------------------

/// lambda -> rho(eta + lambda v) - rho(eta), stored as exponent-pair terms.
class LineRestriction {
public:
    LineRestriction(const DefiningFunctionPoly& rho, const cvec& eta, const cvec& v) {
        const auto n = static_cast<Eigen::Index>(rho.dim());
        if (eta.size() != rho.dim() || v.size() != rho.dim()) throw ParameterError("tau: dimension mismatch");
        Eigen::VectorXcd o(n);
        Eigen::MatrixXcd M(n, 1);
        for (Eigen::Index j = 0; j < n; ++j) {
            o(j) = eta[static_cast<std::size_t>(j)];
            M(j, 0) = v[static_cast<std::size_t>(j)];
        }
        for (const auto& [k, c] : rho.compose_affine(o, M)) {
            if (k.first[0] == 0 && k.second[0] == 0) continue;
            if (c == cplx(0.0)) continue;
            terms_.push_back({k.first[0], k.second[0], c});
        }
    }

    /// Value at lambda = r e^{i theta}.
    double operator()(double r, double theta) const {
        double s = 0;
        for (const auto& t : terms_) {
            const double mag = std::pow(r, t.a + t.b);
            const double ph = static_cast<double>(t.a - t.b) * theta;
            s += mag * (t.c.real() * std::cos(ph) - t.c.imag() * std::sin(ph));
        }
        return s;
    }

    bool empty() const { return terms_.empty(); }

private:
    struct T {
        int a;
        int b;
        cplx c;
    };
    std::vector<T> terms_;
};

struct CircleMax {
    double value;
    double theta;
};

/// max over theta of f(r e^{i theta}): 256-point grid, Brent refinement around the best cell.
inline CircleMax circle_max(const LineRestriction& f, double r, int grid = 256) {
    const double h = 2.0 * M_PI / grid;
    int best = 0;
    double bv = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i) {
        const double v = f(r, i * h);
        if (v > bv) {
            bv = v;
            best = i;
        }
    }
    const auto neg = [&](double th) { return -f(r, th); };
    const auto res = boost::math::tools::brent_find_minima(neg, (best - 1) * h, (best + 1) * h, 52);
    CircleMax out{bv, best * h};
    // Keep the grid point unless refinement improves it beyond rounding, so
    // phase-independent maxima report theta = 0.
    if (-res.second > bv + 1e-13 * std::abs(bv)) {
        out.value = -res.second;
        out.theta = res.first;
    }
    out.theta = std::remainder(out.theta, 2.0 * M_PI);
    return out;
}

struct TauResult {
    double tau = 0;
    double theta = 0;  ///< phase of the maximizing lambda on |lambda| = tau
};

struct TauOptions {
    double rel_tol = 1e-14;
    double start = 1e-12;
    double cap = 1e4;
};

/// sup{ r : max_{|lambda| <= r} rho(eta + lambda v) - rho(eta) < eps }, with
/// the disk maximum taken on the circle |lambda| = r at the bracketing radii.
inline TauResult tau(const DefiningFunctionPoly& rho, const cvec& eta, const cvec& v, double eps,
                     const TauOptions& opt = {}) {
    if (!(eps > 0)) throw ParameterError("tau: eps must be positive");
    if (std::abs(detail::abs_vec<double>(v) - 1.0) > 1e-10) throw ParameterError("tau: v must be a unit vector");
    const LineRestriction f(rho, eta, v);
    if (f.empty()) throw NumericalError("tau: rho is constant along the line (cap " + std::to_string(opt.cap) + ")");
    // circle_max is nondecreasing in r.
    double lo = 0.0, hi = opt.start;
    double fhi = circle_max(f, hi).value - eps;
    while (fhi < 0) {
        lo = hi;
        hi *= 16.0;
        if (hi > opt.cap) throw NumericalError("tau: no crossing below search cap " + std::to_string(opt.cap));
        fhi = circle_max(f, hi).value - eps;
    }
    double t = hi;
    if (fhi > 0) {
        const auto g = [&](double r) { return circle_max(f, r).value - eps; };
        const auto done = [&](double a, double b) { return b - a <= opt.rel_tol * b; };
        std::uintmax_t iters = 200;
        const auto br = boost::math::tools::toms748_solve(g, lo, hi, g(lo), fhi, done, iters);
        t = 0.5 * (br.first + br.second);
    }
    return {t, circle_max(f, t).theta};
}

// --- frame ----------------------------------------------------------------------

struct FrameOptions {
    std::size_t starts = 8;
    std::uint64_t seed = 11;
    double tol = 1e-8;  ///< relative convergence in tau
    std::size_t max_iter = 200;
    TauOptions tau;
};

struct ScalingFrame {
    cvec eta;
    double eps = 0;
    Eigen::MatrixXcd U;        ///< columns e_1, ..., e_n
    std::vector<double> tau;   ///< tau_1, ..., tau_n
    std::vector<cvec> points;  ///< p_k = eta + tau_k e_k
    std::vector<double> start_spread;  ///< per k < n: (max - min) / max of tau over the starts
};

namespace detail {

/// Rotate e so that the maximizing lambda of the tau problem is real positive.
inline cvec phase_fixed(const cvec& e, double theta) {
    cvec out(e);
    const cplx ph = std::polar(1.0, theta);
    for (auto& c : out) c *= ph;
    return out;
}

inline cvec column(const Eigen::MatrixXcd& Q, Eigen::Index j) {
    cvec v(static_cast<std::size_t>(Q.rows()));
    for (Eigen::Index i = 0; i < Q.rows(); ++i) v[static_cast<std::size_t>(i)] = Q(i, j);
    return v;
}

}  // namespace detail

/// e_n from the normalized (d rho / d conj z) at eta, then greedily the unit
/// vector of maximal tau in the complement of the vectors chosen so far.
inline ScalingFrame build_frame(const DefiningFunctionPoly& rho, const cvec& eta, double eps,
                                const FrameOptions& opt = {}) {
    const auto n = static_cast<Eigen::Index>(rho.dim());
    const Eigen::VectorXcd G = rho.gradient_zbar(eta);
    if (!(G.norm() > 1e-14)) throw NumericalError("build_frame: gradient of rho vanishes at eta");

    ScalingFrame fr;
    fr.eta = eta;
    fr.eps = eps;
    fr.U = Eigen::MatrixXcd::Zero(n, n);
    fr.tau.assign(static_cast<std::size_t>(n), 0.0);
    fr.points.assign(static_cast<std::size_t>(n), cvec());

    std::vector<Eigen::VectorXcd> chosen;
    {
        const Eigen::VectorXcd en = G / G.norm();
        const cvec v = detail::column(en, 0);
        const auto t = tau(rho, eta, v, eps, opt.tau);
        const cvec e = detail::phase_fixed(v, t.theta);
        for (Eigen::Index i = 0; i < n; ++i) fr.U(i, n - 1) = e[static_cast<std::size_t>(i)];
        fr.tau.back() = t.tau;
        chosen.push_back(fr.U.col(n - 1));
    }

    Rng rng(opt.seed);
    std::normal_distribution<double> normal;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        Eigen::MatrixXcd C(n, static_cast<Eigen::Index>(chosen.size()));
        for (std::size_t i = 0; i < chosen.size(); ++i) C.col(static_cast<Eigen::Index>(i)) = chosen[i];
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(C);
        const Eigen::MatrixXcd Qfull = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
        const Eigen::MatrixXcd Q = Qfull.rightCols(n - C.cols());
        const auto d = static_cast<std::size_t>(Q.cols());

        auto embed = [&](const cvec& c) {
            Eigen::VectorXcd cc(static_cast<Eigen::Index>(d));
            for (std::size_t i = 0; i < d; ++i) cc(static_cast<Eigen::Index>(i)) = c[i];
            const Eigen::VectorXcd g = Q * cc;
            return detail::column(g / g.norm(), 0);
        };
        auto tau_of = [&](const cvec& c) { return tau(rho, eta, embed(c), eps, opt.tau); };

        cvec best_c;
        TauResult best{-1.0, 0.0};
        double lo_start = std::numeric_limits<double>::infinity();
        const std::size_t starts = d == 1 ? 1 : std::max<std::size_t>(1, opt.starts);
        for (std::size_t s = 0; s < starts; ++s) {
            cvec c = d == 1 ? cvec{cplx(1.0)} : random_unit_vector(d, rng, normal);
            TauResult cur = tau_of(c);
            if (d > 1) {
                // Projected ascent on the sphere with forward differences in the 2d real coordinates.
                double step = 0.1;
                for (std::size_t it = 0; it < opt.max_iter && step > 1e-10; ++it) {
                    const double h = 1e-6;
                    std::vector<double> grad(2 * d);
                    for (std::size_t i = 0; i < 2 * d; ++i) {
                        cvec cp(c);
                        cp[i / 2] += (i % 2 == 0) ? cplx(h, 0.0) : cplx(0.0, h);
                        const double nc = detail::abs_vec<double>(cp);
                        for (auto& x : cp) x /= nc;
                        grad[i] = (tau_of(cp).tau - cur.tau) / h;
                    }
                    double gn = 0;
                    for (double g : grad) gn += g * g;
                    gn = std::sqrt(gn);
                    if (gn == 0) break;
                    cvec trial(c);
                    for (std::size_t i = 0; i < 2 * d; ++i) {
                        trial[i / 2] += (step / gn) * ((i % 2 == 0) ? cplx(grad[i], 0.0) : cplx(0.0, grad[i]));
                    }
                    const double nt = detail::abs_vec<double>(trial);
                    for (auto& x : trial) x /= nt;
                    const TauResult next = tau_of(trial);
                    if (next.tau > cur.tau) {
                        const bool done = next.tau - cur.tau <= opt.tol * next.tau;
                        c = std::move(trial);
                        cur = next;
                        step *= 1.5;
                        if (done) break;
                    } else {
                        step *= 0.5;
                    }
                }
            }
            lo_start = std::min(lo_start, cur.tau);
            if (cur.tau > best.tau) {
                best = cur;
                best_c = c;
            }
        }
        const cvec e = detail::phase_fixed(embed(best_c), best.theta);
        for (Eigen::Index i = 0; i < n; ++i) fr.U(i, k) = e[static_cast<std::size_t>(i)];
        fr.tau[static_cast<std::size_t>(k)] = best.tau;
        fr.start_spread.push_back((best.tau - lo_start) / best.tau);
        chosen.push_back(fr.U.col(k));
    }

    for (Eigen::Index k = 0; k < n; ++k) {
        cvec p(eta);
        for (Eigen::Index i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] += fr.tau[static_cast<std::size_t>(k)] * fr.U(i, k);
        fr.points[static_cast<std::size_t>(k)] = std::move(p);
    }
    return fr;
}

struct TauNormalReport {
    std::vector<double> ratios;  ///< tau_n / eps
    double min_ratio = 0;
    double max_ratio = 0;
    bool pass = false;  ///< max / min <= 2
};

/// tau along the normalized (d rho / d conj z) at each eta, divided by eps.
inline TauNormalReport check_tau_normal(const DefiningFunctionPoly& rho, const std::vector<cvec>& etas,
                                        const std::vector<double>& epss, const TauOptions& opt = {}) {
    if (etas.size() != epss.size() || etas.empty()) throw ParameterError("check_tau_normal: need matching non-empty sequences");
    TauNormalReport rep;
    for (std::size_t i = 0; i < etas.size(); ++i) {
        const Eigen::VectorXcd G = rho.gradient_zbar(etas[i]);
        if (!(G.norm() > 1e-14)) throw NumericalError("check_tau_normal: gradient of rho vanishes");
        const cvec v = detail::column(G / G.norm(), 0);
        rep.ratios.push_back(tau(rho, etas[i], v, epss[i], opt).tau / epss[i]);
    }
    rep.min_ratio = *std::min_element(rep.ratios.begin(), rep.ratios.end());
    rep.max_ratio = *std::max_element(rep.ratios.begin(), rep.ratios.end());
    rep.pass = rep.min_ratio > 0 && rep.max_ratio / rep.min_ratio <= 2.0;
    return rep;
}

// --- scaled functions ---------------------------------------------------------

struct ScaledFunction {
    DefiningFunctionPoly table;  ///< rho~ in the variables w
    cvec eta;
    double eps = 0;
    Eigen::MatrixXcd U;
    std::vector<double> tau;

    /// Gamma(z) = diag(tau)^{-1} U^* (z - eta).
    cvec gamma(const cvec& z) const {
        const auto n = static_cast<Eigen::Index>(z.size());
        Eigen::VectorXcd d(n);
        for (Eigen::Index i = 0; i < n; ++i) d(i) = z[static_cast<std::size_t>(i)] - eta[static_cast<std::size_t>(i)];
        const Eigen::VectorXcd w = U.adjoint() * d;
        cvec out(static_cast<std::size_t>(n));
        for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = w(i) / tau[static_cast<std::size_t>(i)];
        return out;
    }

    /// Gamma^{-1}(w) = eta + U diag(tau) w.
    cvec gamma_inverse(const cvec& w) const {
        const auto n = static_cast<Eigen::Index>(w.size());
        cvec out(eta);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index k = 0; k < n; ++k) {
                out[static_cast<std::size_t>(i)] += U(i, k) * tau[static_cast<std::size_t>(k)] * w[static_cast<std::size_t>(k)];
            }
        }
        return out;
    }
};

inline ScaledFunction scaled_function(const DefiningFunctionPoly& rho, const ScalingFrame& fr) {
    const auto n = static_cast<Eigen::Index>(rho.dim());
    Eigen::VectorXcd o(n);
    for (Eigen::Index i = 0; i < n; ++i) o(i) = fr.eta[static_cast<std::size_t>(i)];
    Eigen::MatrixXcd M = fr.U;
    for (Eigen::Index k = 0; k < n; ++k) M.col(k) *= fr.tau[static_cast<std::size_t>(k)];
    CoeffTable t = rho.compose_affine(o, M);
    for (auto& kv : t) kv.second /= fr.eps;
    return {DefiningFunctionPoly::from_table(rho.dim(), t), fr.eta, fr.eps, fr.U, fr.tau};
}

struct CoefficientTrace {
    MonomialKey key;
    std::vector<cplx> values;     ///< one per scaled function
    std::vector<double> cauchy;   ///< |c_{j+1} - c_j|
    bool divergent = false;
};

struct LimitReport {
    std::vector<CoefficientTrace> traces;
    DefiningFunctionPoly limit;  ///< the last table, taken as the limit estimate
    double max_last_delta = 0;
    bool converged = true;
    double min_levi = std::numeric_limits<double>::infinity();
    bool psd = false;  ///< min complex Hessian eigenvalue >= -1e-8 on the grid
    int degree = 0;
    int degree_bound = 0;  ///< 2m when m > 0 was supplied, else 0
    bool degree_ok = true;
};

/// Cauchy differences of the coefficient tables, plurisubharmonicity of the
/// last table on a seeded grid in the polydisk |w_j| <= grid_radius, and the
/// degree of the last table against 2m.
inline LimitReport limit_diagnostics(const std::vector<ScaledFunction>& seq, int m = 0, double tol = 1e-6,
                                     std::size_t grid = 256, double grid_radius = 1.0, std::uint64_t seed = 5) {
    if (seq.size() < 3) throw ParameterError("limit_diagnostics: need at least 3 scaled functions");
    const std::size_t n = seq.front().table.dim();
    std::set<MonomialKey> keys;
    for (const auto& s : seq) {
        if (s.table.dim() != n) throw ParameterError("limit_diagnostics: dimension mismatch");
        for (const auto& kv : s.table.table()) keys.insert(kv.first);
    }
    LimitReport rep;
    for (const auto& k : keys) {
        CoefficientTrace tr;
        tr.key = k;
        for (const auto& s : seq) tr.values.push_back(s.table.coefficient(k.first, k.second));
        for (std::size_t j = 0; j + 1 < tr.values.size(); ++j) tr.cauchy.push_back(std::abs(tr.values[j + 1] - tr.values[j]));
        const double last = tr.cauchy.back();
        const double prev = tr.cauchy[tr.cauchy.size() - 2];
        tr.divergent = last > tol && last >= prev;
        rep.max_last_delta = std::max(rep.max_last_delta, last);
        if (tr.divergent) rep.converged = false;
        rep.traces.push_back(std::move(tr));
    }
    rep.limit = seq.back().table;
    rep.degree = rep.limit.degree();
    if (m > 0) {
        rep.degree_bound = 2 * m;
        rep.degree_ok = rep.degree <= 2 * m;
    }
    Rng rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::size_t i = 0; i <= grid; ++i) {
        cvec w(n, cplx(0.0));
        if (i > 0) {
            for (auto& c : w) c = std::polar(grid_radius * std::sqrt(unif(rng)), 2.0 * M_PI * unif(rng));
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rep.limit.complex_hessian(w), Eigen::EigenvaluesOnly);
        rep.min_levi = std::min(rep.min_levi, es.eigenvalues().minCoeff());
    }
    rep.psd = rep.min_levi >= -1e-8;
    return rep;
}

}  // namespace squeezing
