#pragma once

// Lower bounds for the squeezing function sigma_D(p) from explicit embedding
// chains f: D -> B^n with f(p) = 0. For each chain the radius of the largest
// centered ball inside f(D) is estimated by radial first-exit searches along
// seeded directions of the image ball:
//
//   r(u) = min { t in (0, 1] : rho(f^{-1}(t u)) >= 0 },   sigma_hat = min_u r(u).
//
// Each r(u) is attained by a boundary point of D, so sigma_hat is the min of
// |f(xi)| over sampled boundary points xi, approached from above as the
// direction count grows. Leading automorphisms of D in a chain are skipped
// when testing membership in D, since they preserve it.

#include "squeezing/automorphism.hpp"
#include "squeezing/sequence.hpp"

#include <boost/math/tools/roots.hpp>

#include <variant>

namespace squeezing {

/// Classical involutive automorphism of the unit ball with phi_c(c) = 0:
///   phi_c(z) = (c - P_c z - s_c Q_c z) / (1 - <z, c>),  s_c = sqrt(1 - |c|^2),
/// P_c the orthogonal projection onto span(c), Q_c = I - P_c. phi_0 = -id.
class BallAutomorphism {
public:
    BallAutomorphism() = default;
    explicit BallAutomorphism(cvec c) : c_(std::move(c)) {
        c2_ = detail::norm2<double>(c_);
        if (!(c2_ < 1.0)) throw ParameterError("BallAutomorphism: need |c| < 1");
        const double a = std::sqrt(c2_);
        s_ = std::sqrt((1.0 - a) * (1.0 + a));
    }

    const cvec& center() const { return c_; }

    cvec operator()(const cvec& z) const {
        cvec w(z);
        apply(w);
        return w;
    }

    void apply(cvec& z) const {
        if (z.size() != c_.size()) throw ParameterError("BallAutomorphism: point has wrong dimension");
        if (c2_ == 0.0) {
            for (auto& x : z) x = -x;
            return;
        }
        cplx zc(0.0);
        for (std::size_t k = 0; k < z.size(); ++k) zc += z[k] * std::conj(c_[k]);
        const cplx den = 1.0 - zc;
        const cplx coef = zc / c2_;
        for (std::size_t k = 0; k < z.size(); ++k) {
            const cplx pz = coef * c_[k];
            z[k] = (c_[k] - pz - s_ * (z[k] - pz)) / den;
        }
    }

    std::string describe() const {
        std::ostringstream os;
        os.precision(6);
        os << "ball(|c|=" << std::sqrt(c2_) << ")";
        return os.str();
    }

private:
    cvec c_;
    double c2_ = 0;
    double s_ = 1;
};

/// z -> z / R.
struct Rescale {
    double R = 1;

    void apply(cvec& z) const {
        for (auto& x : z) x /= R;
    }
    void unapply(cvec& z) const {
        for (auto& x : z) x *= R;
    }
    std::string describe() const {
        std::ostringstream os;
        os.precision(10);
        os << "rescale(R=" << R << ")";
        return os.str();
    }
};

/// z -> target + A (z - origin), A invertible.
struct AffineMap {
    Eigen::VectorXcd origin;
    Eigen::VectorXcd target;
    Eigen::MatrixXcd A;
    Eigen::MatrixXcd A_inv;
    std::string label = "affine";

    AffineMap() = default;
    AffineMap(Eigen::VectorXcd o, Eigen::VectorXcd t, Eigen::MatrixXcd a, std::string l = "affine")
        : origin(std::move(o)), target(std::move(t)), A(std::move(a)), label(std::move(l)) {
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(A);
        if (!lu.isInvertible()) throw ParameterError("AffineMap: matrix is singular");
        A_inv = lu.inverse();
    }

    void apply(cvec& z) const { map(z, A, origin, target); }
    void unapply(cvec& z) const { map(z, A_inv, target, origin); }
    std::string describe() const { return label; }

private:
    static void map(cvec& z, const Eigen::MatrixXcd& M, const Eigen::VectorXcd& from, const Eigen::VectorXcd& to) {
        const auto n = static_cast<Eigen::Index>(z.size());
        cplx v[16];
        if (n > 16) {
            Eigen::VectorXcd d(n);
            for (Eigen::Index k = 0; k < n; ++k) d(k) = z[static_cast<std::size_t>(k)] - from(k);
            const Eigen::VectorXcd w = to + M * d;
            for (Eigen::Index k = 0; k < n; ++k) z[static_cast<std::size_t>(k)] = w(k);
            return;
        }
        for (Eigen::Index k = 0; k < n; ++k) v[k] = z[static_cast<std::size_t>(k)] - from(k);
        for (Eigen::Index r = 0; r < n; ++r) {
            cplx acc = to(r);
            for (Eigen::Index k = 0; k < n; ++k) acc += M(r, k) * v[k];
            z[static_cast<std::size_t>(r)] = acc;
        }
    }
};

/// An automorphism of D_P together with its inverse.
struct AutomorphismStep {
    Automorphism forward;
    Automorphism backward;

    explicit AutomorphismStep(Automorphism f) : forward(std::move(f)), backward(forward.inverse()) {}
    std::string describe() const { return forward.describe(); }
};

using ChainStep = std::variant<AutomorphismStep, Rescale, AffineMap, BallAutomorphism>;

class EmbeddingChain {
public:
    EmbeddingChain() = default;
    EmbeddingChain(cvec basepoint, std::vector<ChainStep> steps, std::string label = "")
        : p_(std::move(basepoint)), steps_(std::move(steps)), label_(std::move(label)) {
        while (leading_ < steps_.size() && std::holds_alternative<AutomorphismStep>(steps_[leading_])) ++leading_;
    }

    const cvec& basepoint() const { return p_; }
    const std::vector<ChainStep>& steps() const { return steps_; }
    const std::string& label() const { return label_; }
    /// Number of leading D_P automorphism steps.
    std::size_t leading_automorphisms() const { return leading_; }

    cvec operator()(const cvec& z) const {
        cvec w(z);
        for (const auto& s : steps_) {
            std::visit(
                [&](const auto& st) {
                    using T = std::decay_t<decltype(st)>;
                    if constexpr (std::is_same_v<T, AutomorphismStep>) w = st.forward(w);
                    else st.apply(w);
                },
                s);
        }
        return w;
    }

    /// Inverse of the steps after the leading automorphisms, in place.
    void inverse_tail(cvec& w) const {
        for (std::size_t i = steps_.size(); i-- > leading_;) unapply(steps_[i], w);
    }

    /// Inverse of the leading automorphisms, applied after inverse_tail.
    void inverse_head(cvec& w) const {
        for (std::size_t i = leading_; i-- > 0;) unapply(steps_[i], w);
    }

    cvec inverse(const cvec& w) const {
        cvec z(w);
        inverse_tail(z);
        inverse_head(z);
        return z;
    }

    /// The chain g o psi with basepoint q, where psi(q) is this chain's basepoint.
    EmbeddingChain precompose(const Automorphism& psi, cvec q) const {
        std::vector<ChainStep> steps;
        steps.emplace_back(AutomorphismStep(psi));
        steps.insert(steps.end(), steps_.begin(), steps_.end());
        return EmbeddingChain(std::move(q), std::move(steps), label_);
    }

    /// |f(p)|.
    double basepoint_residual() const { return detail::abs_vec<double>((*this)(p_)); }

    /// Throws unless f(p) = 0 to `tol`.
    void validate(double tol = 1e-10) const {
        const double r = basepoint_residual();
        if (!(r <= tol)) throw NumericalError("EmbeddingChain: basepoint image has norm " + std::to_string(r));
    }

    std::string descriptor() const {
        std::string out = label_.empty() ? "" : label_ + ":";
        for (std::size_t i = 0; i < steps_.size(); ++i) {
            if (i) out += " > ";
            out += std::visit([](const auto& st) { return st.describe(); }, steps_[i]);
        }
        return out;
    }

private:
    static void unapply(const ChainStep& s, cvec& w) {
        std::visit(
            [&](const auto& st) {
                using T = std::decay_t<decltype(st)>;
                if constexpr (std::is_same_v<T, AutomorphismStep>) w = st.backward(w);
                else if constexpr (std::is_same_v<T, BallAutomorphism>) st.apply(w);
                else st.unapply(w);
            },
            s);
    }

    cvec p_;
    std::vector<ChainStep> steps_;
    std::string label_;
    std::size_t leading_ = 0;
};

/// Signed level function, negative exactly on the domain.
using LevelFunction = std::function<double(const cvec&)>;

struct RadiusOptions {
    std::size_t scan_steps = 16;  ///< uniform bracketing steps on (0, 1]
    std::size_t block = 2000;     ///< the best direction of each full block is locally refined
    bool refine = true;
    std::size_t refine_iterations = 300;
};

struct RadiusResult {
    double value = 1;
    double half_value = 1;  ///< same estimate from the first half of the directions
    std::size_t samples = 0;
    std::size_t saturated = 0;  ///< directions with no exit in (0, 1]
    std::size_t refined = 0;
};

namespace detail {

inline std::vector<cvec> direction_stream(std::size_t dim, std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    std::normal_distribution<double> normal;
    std::vector<cvec> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(random_unit_vector(dim, rng, normal));
    return out;
}

/// First exit of t -> t u from the chain image; 1 when there is none.
class ExitSearch {
public:
    ExitSearch(const Ellipsoid& D, const EmbeddingChain& g, const LevelFunction* omega, std::size_t scan_steps)
        : D_(D), g_(g), omega_(omega), steps_(std::max<std::size_t>(scan_steps, 1)) {}

    double level(const cvec& u, double t) const {
        buf_ = u;
        for (auto& x : buf_) x *= t;
        g_.inverse_tail(buf_);
        const double r = D_.rho(buf_);
        if (!omega_ || !(r < 0)) return r;
        g_.inverse_head(buf_);
        return std::max(r, (*omega_)(buf_));
    }

    double operator()(const cvec& u) const {
        double lo = 0.0;
        double flo = -1.0;
        const double pre[] = {1.0 / 1024.0, 1.0 / 128.0};
        for (double t : pre) {
            if (t * static_cast<double>(steps_) >= 1.0) continue;
            const double f = level(u, t);
            if (f >= 0) return root(u, lo, t, flo, f);
            lo = t;
            flo = f;
        }
        for (std::size_t k = 1; k <= steps_; ++k) {
            const double t = static_cast<double>(k) / static_cast<double>(steps_);
            if (t <= lo) continue;
            const double f = level(u, t);
            if (f >= 0) return root(u, lo, t, flo, f);
            lo = t;
            flo = f;
        }
        return 1.0;
    }

private:
    double root(const cvec& u, double lo, double hi, double flo, double fhi) const {
        if (fhi == 0.0) return hi;
        if (lo == 0.0) flo = level(u, 0.0);
        if (!(flo < 0)) return 0.0;
        std::uintmax_t iters = 100;
        auto f = [&](double t) { return level(u, t); };
        const auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi,
                                                         boost::math::tools::eps_tolerance<double>(44), iters);
        return r.first;
    }

    const Ellipsoid& D_;
    const EmbeddingChain& g_;
    const LevelFunction* omega_;
    std::size_t steps_;
    mutable cvec buf_;
};

}  // namespace detail

/// Radii r(u) for each direction, without refinement.
inline std::vector<double> exit_radii(const EmbeddingChain& g, const Ellipsoid& D, const std::vector<cvec>& dirs,
                                      const RadiusOptions& opt = {}, const LevelFunction* omega = nullptr) {
    g.validate();
    detail::ExitSearch search(D, g, omega, opt.scan_steps);
    std::vector<double> out;
    out.reserve(dirs.size());
    for (const auto& u : dirs) out.push_back(search(u));
    return out;
}

/// min_u r(u) over `dirs`, with the best direction of each full block refined
/// by a seeded local search. Refinement only ever lowers the value and the
/// refined set for a prefix of the directions is a subset of that for the whole.
inline RadiusResult inscribed_radius(const EmbeddingChain& g, const Ellipsoid& D, const std::vector<cvec>& dirs,
                                     std::uint64_t seed, const RadiusOptions& opt = {},
                                     const LevelFunction* omega = nullptr) {
    if (dirs.empty()) throw ParameterError("inscribed_radius: need at least one direction");
    g.validate();
    detail::ExitSearch search(D, g, omega, opt.scan_steps);
    RadiusResult res;
    res.samples = dirs.size();
    const std::size_t half = std::max<std::size_t>(1, dirs.size() / 2);
    double best = 1.0;
    std::size_t block_best = 0;
    double block_val = 2.0;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        const double r = search(dirs[i]);
        if (r >= 1.0) ++res.saturated;
        best = std::min(best, r);
        if (r < block_val) {
            block_val = r;
            block_best = i;
        }
        const bool block_done = opt.block > 0 && (i + 1) % opt.block == 0;
        if (opt.refine && block_done && block_val < 1.0) {
            Rng rng(seed ^ (0xa24baed4963ee407ULL * ((i + 1) / opt.block)));
            std::normal_distribution<double> normal;
            cvec u = dirs[block_best];
            double val = block_val;
            double step = 0.05;
            int misses = 0;
            for (std::size_t it = 0; it < opt.refine_iterations && step > 1e-7; ++it) {
                cvec trial(u);
                for (auto& c : trial) c += step * cplx(normal(rng), normal(rng));
                const double nt = detail::abs_vec<double>(trial);
                for (auto& c : trial) c /= nt;
                const double v = search(trial);
                if (v < val) {
                    val = v;
                    u = std::move(trial);
                    misses = 0;
                } else if (++misses >= 8) {
                    step *= 0.5;
                    misses = 0;
                }
            }
            best = std::min(best, val);
            ++res.refined;
        }
        if (block_done) block_val = 2.0;
        if (i + 1 == half) res.half_value = best;
    }
    res.value = best;
    return res;
}

inline double inscribed_radius(const EmbeddingChain& g, const Ellipsoid& D, std::size_t count, std::uint64_t seed) {
    if (count < 1) throw ParameterError("inscribed_radius: count must be >= 1");
    return inscribed_radius(g, D, detail::direction_stream(D.dim(), count, seed), seed).value;
}

struct SqueezeOptions {
    std::size_t samples = 20000;  ///< directions per chain
    std::uint64_t seed = 1;
    std::size_t boundary_samples = 20000;  ///< boundary points for the enclosing radii
    std::uint64_t boundary_seed = 17;
    double radius_margin = 1e-9;
    std::vector<double> stretch_scales{1.25, 1.5};
    std::vector<double> osculating_scales{0.5, 1.0};
    std::size_t radius_keep = 3;  ///< boundary maxima refined per chain radius
    std::size_t chain_boundary_samples = 4000;  ///< boundary prefix used for per-point chain radii
    double saturation = 1.0 - 1e-6;  ///< stop trying chains once one reaches this
    RadiusOptions radius;
};

struct SqueezeEstimate {
    cvec point;
    double value = 0;  ///< lower-bound estimate of sigma_D(p)
    EmbeddingChain chain;
    std::size_t samples = 0;
    double band = 0;  ///< estimate from half the directions minus the full estimate
    std::size_t saturated = 0;
    std::vector<std::pair<std::string, double>> candidates;

    std::string descriptor() const { return chain.descriptor(); }
};

class SqueezeEstimator {
public:
    explicit SqueezeEstimator(Ellipsoid D, SqueezeOptions opt = {}) : D_(std::move(D)), opt_(std::move(opt)) {
        if (opt_.samples < 1) throw ParameterError("SqueezeEstimator: samples must be >= 1");
        dirs_ = detail::direction_stream(D_.dim(), opt_.samples, opt_.seed);
        boundary_ = boundary_sample(D_, opt_.boundary_samples, opt_.boundary_seed);
        boundary_head_.assign(boundary_.begin(),
                              boundary_.begin() + static_cast<std::ptrdiff_t>(
                                                      std::clamp<std::size_t>(opt_.chain_boundary_samples, 1, boundary_.size())));
        R_ = max_boundary_norm(D_, [](const cvec& z) { return z; }, boundary_, opt_.boundary_seed) *
             (1.0 + opt_.radius_margin);
        for (double alpha : opt_.stretch_scales) {
            if (!(alpha > 0)) throw ParameterError("SqueezeEstimator: stretch scales must be positive");
            const AffineMap L = stretch_map(alpha);
            const auto F = [&](const cvec& z) {
                cvec w(z);
                L.apply(w);
                return w;
            };
            stretch_R_.push_back(max_boundary_norm(D_, F, boundary_, opt_.boundary_seed) * (1.0 + opt_.radius_margin));
        }
    }

    const Ellipsoid& domain() const { return D_; }
    const SqueezeOptions& options() const { return opt_; }
    const std::vector<cvec>& directions() const { return dirs_; }
    /// Radius of a centered ball containing D_P.
    double enclosing_radius() const { return R_; }

    /// Number of chains in the strategy family (some may be inadmissible at a given p).
    std::size_t family_size() const { return 2 + opt_.stretch_scales.size() + opt_.osculating_scales.size(); }

    /// Chain `index` of the strategy family at p, if admissible there. In order:
    /// normalize p to the slice, rescale into the ball and center; the same
    /// with the tangential variables stretched first; the same with the slice
    /// boundary point osculated by the unit sphere at the configured scales;
    /// and rescale-and-center without normalizing.
    std::optional<EmbeddingChain> family_chain(const cvec& p, std::size_t index) const {
        if (!D_.contains(p)) throw DomainError("strategy_family: p is not in D_P");
        if (index >= family_size()) throw ParameterError("family_chain: index out of range");
        const auto np = normalize_point(D_, p);
        const AutomorphismStep psi(np.map);
        // The ball center is the image of p under the chain prefix, so that
        // f(p) = 0 holds up to the rounding of the last step only.
        auto centered = [&](std::vector<ChainStep> prefix, std::string label) -> std::optional<EmbeddingChain> {
            const cvec c = EmbeddingChain(p, prefix)(p);
            if (!(detail::abs_vec<double>(c) < 1.0)) return std::nullopt;
            prefix.emplace_back(BallAutomorphism(c));
            return EmbeddingChain(p, std::move(prefix), std::move(label));
        };

        if (index == 0) return centered({psi, Rescale{R_}}, "normalized");
        if (index + 1 == family_size()) return centered({Rescale{R_}}, "direct");
        std::size_t i = index - 1;
        if (i < opt_.stretch_scales.size()) {
            const AffineMap L = stretch_map(opt_.stretch_scales[i]);
            return centered({psi, L, Rescale{stretch_R_[i]}}, L.label);
        }
        i -= opt_.stretch_scales.size();
        auto aff = osculating_map(np.b, opt_.osculating_scales[i]);
        if (!aff) return std::nullopt;
        const auto F = [&](const cvec& z) {
            cvec w(z);
            aff->apply(w);
            return w;
        };
        const double Rk =
            max_boundary_norm(D_, F, boundary_head_, opt_.boundary_seed, opt_.radius_keep) * (1.0 + opt_.radius_margin);
        return centered({psi, *aff, Rescale{Rk}}, aff->label);
    }

    std::vector<EmbeddingChain> strategy_family(const cvec& p) const {
        std::vector<EmbeddingChain> out;
        for (std::size_t i = 0; i < family_size(); ++i) {
            if (auto g = family_chain(p, i)) out.push_back(std::move(*g));
        }
        return out;
    }

    RadiusResult inscribed_radius(const EmbeddingChain& g, const LevelFunction* omega = nullptr) const {
        return squeezing::inscribed_radius(g, D_, dirs_, opt_.seed, opt_.radius, omega);
    }

    std::vector<double> exit_radii(const EmbeddingChain& g) const {
        return squeezing::exit_radii(g, D_, dirs_, opt_.radius);
    }

    /// Best chain over the strategy family. With `omega`, estimates for the
    /// subdomain {omega < 0} of D_P instead; the chains stay those of D_P.
    SqueezeEstimate estimate(const cvec& p, const LevelFunction* omega = nullptr) const {
        if (!D_.contains(p)) throw DomainError("squeeze estimate: p is not in D_P");
        if (omega && !((*omega)(p) < 0)) throw DomainError("squeeze estimate: p is not in the subdomain");
        SqueezeEstimate best;
        best.point = p;
        best.samples = dirs_.size();
        bool have = false;
        for (std::size_t i = 0; i < family_size(); ++i) {
            const auto g = family_chain(p, i);
            if (!g) continue;
            const RadiusResult r = inscribed_radius(*g, omega);
            best.candidates.emplace_back(g->label(), r.value);
            if (!have || r.value > best.value) {
                have = true;
                best.value = r.value;
                best.band = r.half_value - r.value;
                best.saturated = r.saturated;
                best.chain = *g;
            }
            if (best.value >= opt_.saturation) break;
        }
        if (!have) throw NumericalError("squeeze estimate: no admissible chain");
        return best;
    }

private:
    /// z' -> alpha z', z_n fixed.
    AffineMap stretch_map(double alpha) const {
        const auto n = static_cast<Eigen::Index>(D_.dim());
        Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(n, n);
        for (Eigen::Index k = 0; k + 1 < n; ++k) A(k, k) = alpha;
        std::ostringstream label;
        label << "stretch(a=" << alpha << ")";
        return AffineMap(Eigen::VectorXcd::Zero(n), Eigen::VectorXcd::Zero(n), A, label.str());
    }

    /// w = N + A (z - xi0) where xi0 = (delta_{1/P(b')} b', 0) is the boundary
    /// point of the slice behind b, N the unit outward normal there, and
    /// A = kappa N N^* + T S T^* with S^2 = (kappa / |d rho|) times the Levi
    /// matrix, so the image of D_P osculates the unit sphere at N to second
    /// order along the complex tangent space.
    std::optional<AffineMap> osculating_map(const cvec& b, double kappa) const {
        const auto& P = D_.polynomial();
        const double pb = P.eval_prefix(b);
        if (!(pb > 1e-12) || !(kappa > 0)) return std::nullopt;
        cvec xi = P.dilation(1.0 / pb, D_.tangential(b));
        xi.push_back(cplx(0.0));
        const Eigen::VectorXcd G = rho_gradient_zbar(D_, xi);
        const double g = G.norm();
        if (!(g > 1e-12)) return std::nullopt;
        const Eigen::VectorXcd N = G / g;
        const Eigen::MatrixXcd T = orthogonal_complement(N);
        const Eigen::MatrixXcd M = restrict_levi(rho_complex_hessian(D_, xi), T);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M);
        if (!(es.eigenvalues().minCoeff() > 1e-12)) return std::nullopt;
        const Eigen::MatrixXcd S = std::sqrt(kappa / g) * es.operatorSqrt();
        const Eigen::MatrixXcd A = kappa * N * N.adjoint() + T * S * T.adjoint();
        Eigen::VectorXcd origin(static_cast<Eigen::Index>(xi.size()));
        for (std::size_t k = 0; k < xi.size(); ++k) origin(static_cast<Eigen::Index>(k)) = xi[k];
        std::ostringstream label;
        label << "osculating(k=" << kappa << ")";
        return AffineMap(origin, N, A, label.str());
    }

    Ellipsoid D_;
    SqueezeOptions opt_;
    std::vector<cvec> dirs_;
    std::vector<BoundaryPoint> boundary_;
    std::vector<BoundaryPoint> boundary_head_;
    double R_ = 1;
    std::vector<double> stretch_R_;
};

inline SqueezeEstimate squeeze_lower_bound(const Ellipsoid& D, const cvec& p, std::size_t count, std::uint64_t seed) {
    SqueezeOptions opt;
    opt.samples = count;
    opt.seed = seed;
    return SqueezeEstimator(D, opt).estimate(p);
}

/// Estimates along a sequence. With `omegas` (one level function per term),
/// term j is estimated in the subdomain {omegas[j] < 0}.
inline std::vector<SqueezeEstimate> squeeze_profile(const SqueezeEstimator& est, const std::vector<cvec>& terms,
                                                    const std::vector<LevelFunction>* omegas = nullptr) {
    if (omegas && omegas->size() != terms.size()) throw ParameterError("squeeze_profile: one subdomain per term");
    std::vector<SqueezeEstimate> out;
    out.reserve(terms.size());
    for (std::size_t j = 0; j < terms.size(); ++j) out.push_back(est.estimate(terms[j], omegas ? &(*omegas)[j] : nullptr));
    return out;
}

struct FloorReport {
    double s = 0;
    double r = 0;
    double floor = 1;
    cvec argmin;
    std::size_t points = 0;
    std::uint64_t seed = 0;
    std::vector<cvec> grid;
    std::vector<double> values;
};

/// Seeded points of D_P^{s,r}: the center (0', 1-s) first, then
/// z_n = (1-s) + s rho e^{i phi} with rho^2 uniform on [0,1), and z' on the
/// level P(z') = v (r/s)(s^2 - |z_n - (1-s)|^2), v uniform on [0,1), along a
/// uniformly random direction.
inline std::vector<cvec> subdomain_grid(const Ellipsoid& D, double s, double r, std::size_t count, std::uint64_t seed) {
    if (!(s > 0 && s <= 1)) throw ParameterError("subdomain_grid: s must lie in (0, 1]");
    if (!(r > 0 && r < 1)) throw ParameterError("subdomain_grid: r must lie in (0, 1)");
    if (count < 1) throw ParameterError("subdomain_grid: count must be >= 1");
    const std::size_t k = D.weights().tangential_dim();
    const double b = 1.0 - s;
    const SubdomainParams<double> sp(s, r);
    Rng rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> normal;
    std::vector<cvec> out;
    cvec center(k + 1, cplx(0.0));
    center.back() = b;
    out.push_back(center);
    std::size_t attempts = 0;
    while (out.size() < count) {
        if (++attempts > 100 * count) throw NumericalError("subdomain_grid: too many rejected points");
        const double rad = s * std::sqrt(unif(rng));
        const double phi = 2.0 * M_PI * unif(rng);
        const double v = unif(rng);
        const cvec u = random_unit_vector(k, rng, normal);
        cvec z(k + 1);
        z.back() = b + rad * cplx(std::cos(phi), std::sin(phi));
        const double level = v * (r / s) * (s * s - rad * rad);
        const cvec zp = detail::on_weighted_level(D.polynomial(), u, level);
        std::copy(zp.begin(), zp.end(), z.begin());
        if (!contains_sub(D, sp, z) || !D.contains(z)) continue;
        out.push_back(std::move(z));
    }
    return out;
}

/// Minimum estimate over subdomain_grid: a lower bound for sigma at every
/// grid point and an empirical stand-in for the uniform floor on D_P^{s,r}.
inline FloorReport gamma_floor(const SqueezeEstimator& est, double s, double r, std::size_t grid_count,
                               std::uint64_t seed) {
    FloorReport rep;
    rep.s = s;
    rep.r = r;
    rep.seed = seed;
    rep.grid = subdomain_grid(est.domain(), s, r, grid_count, seed);
    rep.points = rep.grid.size();
    for (const auto& z : rep.grid) {
        const double v = est.estimate(z).value;
        rep.values.push_back(v);
        if (rep.argmin.empty() || v < rep.floor) {
            rep.floor = v;
            rep.argmin = z;
        }
    }
    return rep;
}

struct AnalyticFloor {
    double delta = 0;     ///< half the sampled distance between {P = r} and {P = 1}
    double diameter = 0;  ///< 2 max |xi| over the boundary
    double value = 0;     ///< delta / diameter
};

/// delta / d with delta = dist({P = r}, {P = 1}) / 2 in C^{n-1} and d = diam D_P,
/// from sampled level-set points; the distance is a sampled minimum, so the
/// result can overestimate the exact quantity.
inline AnalyticFloor analytic_floor(const Ellipsoid& D, double r, std::size_t count = 400, std::uint64_t seed = 23) {
    if (!(r > 0 && r < 1)) throw ParameterError("analytic_floor: r must lie in (0, 1)");
    const auto& P = D.polynomial();
    const std::size_t k = D.weights().tangential_dim();
    Rng rng(seed);
    std::normal_distribution<double> normal;
    std::vector<cvec> inner, outer;
    while (inner.size() < count) {
        const cvec u = random_unit_vector(k, rng, normal);
        const double pu = P(u);
        if (!(pu > 0)) continue;
        inner.push_back(P.dilation(r / pu, u));
        outer.push_back(P.dilation(1.0 / pu, u));
    }
    double dist = std::numeric_limits<double>::infinity();
    for (const auto& a : inner) {
        for (const auto& b : outer) dist = std::min(dist, detail::distance(a, b));
    }
    AnalyticFloor out;
    out.delta = dist / 2.0;
    out.diameter = 2.0 * max_boundary_norm(D, [](const cvec& z) { return z; }, 4000, seed);
    out.value = out.delta / out.diameter;
    return out;
}

}  // namespace squeezing
