#pragma once

// Convergence of domain sequences Omega_i -> Omega_0, checked on finite point
// clouds standing in for compact sets:
//   (i)  every compact K in Omega_0 lies in Omega_i for all large i;
//   (ii) a compact K lying in Omega_i for all large i lies in Omega_0.
// Verdicts are qualified by the tested indices and cloud resolution.

#include "squeezing/automorphism.hpp"

namespace squeezing {

struct DomainOracle {
    std::function<bool(const cvec&)> contains;
    double radius = 0;  ///< the domain lies in the centered ball of this radius
    std::string label;
};

inline DomainOracle ellipsoid_oracle(const Ellipsoid& D, double radius, std::string label = "D_P") {
    return {[D](const cvec& z) { return D.contains(z); }, radius, std::move(label)};
}

/// { z : psi_a(z) in D_P^{s} } with psi_a the exhausting automorphism, a real in (0, 1).
inline DomainOracle pullback_oracle(const Ellipsoid& D, double s, double a, double radius) {
    const SubdomainParams<double> sp(s, 1.0);
    const Automorphism psi(D.weights(), cplx(a), 0.0, MobiusConvention::Exhausting);
    std::ostringstream label;
    label.precision(17);
    label << "pullback(s=" << s << ",a=" << a << ")";
    return {[D, sp, psi](const cvec& z) {
                const cplx den = 1.0 + std::conj(psi.a()) * z.back();
                if (std::abs(den) < 1e-300) return false;
                return contains_sub(D, sp, psi(z));
            },
            radius, label.str()};
}

/// t * D_P.
inline DomainOracle scaled_oracle(const Ellipsoid& D, double t, double radius) {
    std::ostringstream label;
    label.precision(17);
    label << "scaled(t=" << t << ")";
    return {[D, t](const cvec& z) {
                cvec w(z);
                for (auto& c : w) c /= t;
                return D.contains(w);
            },
            radius * t, label.str()};
}

struct Witness {
    std::size_t index = 0;  ///< 1-based position in the tested sequence (0 for Omega_0)
    cvec point;
};

struct ConditionIResult {
    bool pass = false;
    std::size_t i0 = 0;  ///< 1-based; meaningful when pass
    std::vector<Witness> witnesses;
};

struct ConditionIIResult {
    bool vacuous = false;
    bool pass = false;
    std::size_t i0 = 0;  ///< first index from which K stays inside, when not vacuous
    std::vector<Witness> witnesses;
};

struct ConvergenceReport {
    ConditionIResult condition_i;
    ConditionIIResult condition_ii;
    std::size_t tested = 0;   ///< number of sequence members
    std::size_t cloud = 0;    ///< number of points in K
    double margin = 0;
    bool pass = false;
};

namespace detail {

inline std::vector<cvec> outside(const DomainOracle& dom, const std::vector<cvec>& K) {
    std::vector<cvec> out;
    for (const auto& z : K) {
        if (!dom.contains(z)) out.push_back(z);
    }
    return out;
}

}  // namespace detail

/// Throws DomainError unless every point of K and its 4n axis offsets of size
/// `margin` lie in Omega_0.
inline void check_margin(const DomainOracle& omega0, const std::vector<cvec>& K, double margin) {
    if (!(margin > 0)) throw ParameterError("check_margin: margin must be positive");
    for (const auto& z : K) {
        if (!omega0.contains(z)) throw DomainError("compact cloud: a point lies outside " + omega0.label);
        for (std::size_t j = 0; j < z.size(); ++j) {
            for (const cplx d : {cplx(margin, 0.0), cplx(-margin, 0.0), cplx(0.0, margin), cplx(0.0, -margin)}) {
                cvec w(z);
                w[j] += d;
                if (!omega0.contains(w)) {
                    throw DomainError("compact cloud: a point is closer than the margin to the boundary of " +
                                      omega0.label);
                }
            }
        }
    }
}

inline ConditionIResult check_condition_i(const std::vector<DomainOracle>& seq, const DomainOracle& omega0,
                                          const std::vector<cvec>& K, double margin) {
    if (seq.empty()) throw ParameterError("check_condition_i: empty sequence");
    check_margin(omega0, K, margin);
    ConditionIResult res;
    std::size_t i0 = seq.size() + 1;
    for (std::size_t i = seq.size(); i-- > 0;) {
        auto bad = detail::outside(seq[i], K);
        if (!bad.empty()) {
            if (i + 1 == seq.size()) {
                for (auto& z : bad) res.witnesses.push_back({i + 1, std::move(z)});
            }
            break;
        }
        i0 = i + 1;
    }
    res.pass = i0 <= seq.size();
    res.i0 = res.pass ? i0 : 0;
    return res;
}

inline ConditionIIResult check_condition_ii(const std::vector<DomainOracle>& seq, const DomainOracle& omega0,
                                            const std::vector<cvec>& K) {
    if (seq.empty()) throw ParameterError("check_condition_ii: empty sequence");
    ConditionIIResult res;
    std::size_t i0 = seq.size() + 1;
    for (std::size_t i = seq.size(); i-- > 0;) {
        if (!detail::outside(seq[i], K).empty()) break;
        i0 = i + 1;
    }
    if (i0 > seq.size()) {
        res.vacuous = true;
        res.pass = true;
        return res;
    }
    res.i0 = i0;
    for (auto& z : detail::outside(omega0, K)) res.witnesses.push_back({0, std::move(z)});
    res.pass = res.witnesses.empty();
    return res;
}

inline ConvergenceReport check_convergence(const std::vector<DomainOracle>& seq, const DomainOracle& omega0,
                                           const std::vector<cvec>& K, double margin) {
    ConvergenceReport rep;
    rep.condition_i = check_condition_i(seq, omega0, K, margin);
    rep.condition_ii = check_condition_ii(seq, omega0, K);
    rep.tested = seq.size();
    rep.cloud = K.size();
    rep.margin = margin;
    rep.pass = rep.condition_i.pass && rep.condition_ii.pass;
    return rep;
}

/// Seeded cloud in the closed ball of radius `radius` about `center`.
inline std::vector<cvec> ball_cloud(const cvec& center, double radius, std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double dim = 2.0 * static_cast<double>(center.size());
    std::vector<cvec> out;
    for (std::size_t i = 0; i < count; ++i) {
        cvec u = random_unit_vector(center.size(), rng, normal);
        const double t = radius * std::pow(unif(rng), 1.0 / dim);
        for (std::size_t k = 0; k < u.size(); ++k) u[k] = center[k] + t * u[k];
        out.push_back(std::move(u));
    }
    return out;
}

struct ExhaustionRow {
    double a = 0;
    std::size_t failures = 0;  ///< cloud points z with psi_a(z) outside closure(D_P) cap U
    cvec witness;
    PullbackCoefficients<double> coeffs{};
    std::size_t coefficient_mismatches = 0;
};

struct ExhaustionReport {
    double s = 0;
    double eps = 0;
    double u_radius = 0;
    std::size_t cloud = 0;
    std::size_t excluded = 0;  ///< sampled points dropped for lying in B((0', -1), eps)
    std::vector<ExhaustionRow> rows;
    std::optional<std::size_t> first_index;  ///< 0-based grid index where inclusion first holds
    bool persists = false;                   ///< inclusion holds at every later grid index too
};

/// For each a in the grid, tests whether psi_a maps a cloud on
/// closure(D_P) minus B((0', -1), eps) into closure(D_P) cap U, with U the ball
/// of radius u_radius about (0', 1). Also compares membership of psi_a(z) in
/// D_P^s against the closed-form pullback inequality on the same cloud.
inline ExhaustionReport lemma22_exhaustion_check(const Ellipsoid& D, double s, const std::vector<double>& a_grid,
                                                 double eps, double u_radius, std::size_t count,
                                                 std::uint64_t seed) {
    if (!(eps > 0 && eps < 0.5)) throw ParameterError("lemma22_exhaustion_check: eps must lie in (0, 1/2)");
    if (!(u_radius > 0)) throw ParameterError("lemma22_exhaustion_check: U radius must be positive");
    for (std::size_t i = 0; i < a_grid.size(); ++i) {
        if (!(a_grid[i] > 0 && a_grid[i] < 1)) throw ParameterError("lemma22_exhaustion_check: a must lie in (0, 1)");
        if (i && !(a_grid[i] > a_grid[i - 1])) throw ParameterError("lemma22_exhaustion_check: a-grid must increase");
    }
    const std::size_t n = D.dim();
    cvec south(n, cplx(0.0));
    south.back() = -1.0;
    cvec north(n, cplx(0.0));
    north.back() = 1.0;

    ExhaustionReport rep;
    rep.s = s;
    rep.eps = eps;
    rep.u_radius = u_radius;
    std::vector<cvec> cloud;
    Rng rng(seed ^ 0x5bd1e995ULL);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (const auto& bp : boundary_sample(D, count, seed)) {
        // Half the cloud on the boundary, half scaled into the interior.
        cvec z = bp.z;
        if (cloud.size() % 2 == 1) {
            const double t = unif(rng);
            for (auto& c : z) c *= t;
        }
        if (detail::distance(z, south) < eps) {
            ++rep.excluded;
            continue;
        }
        cloud.push_back(std::move(z));
    }
    rep.cloud = cloud.size();

    const SubdomainParams<double> sp(s, 1.0);
    const double b = 1.0 - s;
    for (double a : a_grid) {
        ExhaustionRow row;
        row.a = a;
        const Automorphism psi(D.weights(), cplx(a), 0.0, MobiusConvention::Exhausting);
        row.coeffs = pullback_coeffs(b, a);
        for (const auto& z : cloud) {
            const cvec w = psi(z);
            const bool ok = D.rho(w) <= 1e-9 && detail::distance(w, north) <= u_radius;
            if (!ok) {
                if (row.failures == 0) row.witness = z;
                ++row.failures;
            }
            const double lhs = std::norm(z.back() - row.coeffs.c1) + row.coeffs.c2 * D.polynomial().eval_prefix(z);
            if (std::abs(lhs - row.coeffs.c3) > 1e-9 && (lhs < row.coeffs.c3) != contains_sub(D, sp, w)) {
                ++row.coefficient_mismatches;
            }
        }
        rep.rows.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        if (rep.rows[i].failures == 0) {
            rep.first_index = i;
            break;
        }
    }
    if (rep.first_index) {
        rep.persists = std::all_of(rep.rows.begin() + static_cast<std::ptrdiff_t>(*rep.first_index), rep.rows.end(),
                                   [](const ExhaustionRow& r) { return r.failures == 0; });
    }
    return rep;
}

}  // namespace squeezing
