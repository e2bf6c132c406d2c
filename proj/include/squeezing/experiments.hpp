#pragma once

// Tables for the named experiments and the CSV schemas of each module.

#include "squeezing/convergence.hpp"
#include "squeezing/io.hpp"
#include "squeezing/sequence.hpp"
#include "squeezing/squeeze.hpp"

namespace squeezing {

/// E_{1,2}: P(z_1) = |z_1|^4.
inline Ellipsoid e12() {
    return Ellipsoid(Polynomial(MultiWeight(std::vector<int>{2}), {{{2}, {2}, cplx(1.0)}}));
}

/// Unit ball of C^n: P(z') = |z'|^2.
inline Ellipsoid unit_ball(std::size_t n) {
    if (n < 2) throw ParameterError("unit_ball: need n >= 2");
    std::vector<Term<double>> terms;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        MultiIndex e(n - 1, 0);
        e[j] = 1;
        terms.push_back({e, e, cplx(1.0)});
    }
    return Ellipsoid(Polynomial(MultiWeight(std::vector<int>(n - 1, 1)), terms));
}

/// Re z_2 + |z_1|^4.
inline DefiningFunctionPoly graph_model_e12() {
    return DefiningFunctionPoly(2, {{{0, 1}, {0, 0}, cplx(0.5)}, {{2, 0}, {2, 0}, cplx(1.0)}});
}

/// -1 + Re w_2 + |w_1|^4.
inline DefiningFunctionPoly graph_model_limit() {
    return DefiningFunctionPoly(2, {{{0, 0}, {0, 0}, cplx(-1.0)}, {{0, 1}, {0, 0}, cplx(0.5)}, {{2, 0}, {2, 0}, cplx(1.0)}});
}

inline std::vector<long long> log_spaced(long long lo, long long hi, int per_decade) {
    if (lo < 1 || hi < lo || per_decade < 1) throw ParameterError("log_spaced: need 1 <= lo <= hi");
    std::vector<long long> out;
    const double a = std::log10(static_cast<double>(lo)), b = std::log10(static_cast<double>(hi));
    const int steps = std::max(1, static_cast<int>(std::ceil((b - a) * per_decade)));
    for (int i = 0; i <= steps; ++i) {
        const auto v = static_cast<long long>(std::llround(std::pow(10.0, a + (b - a) * i / steps)));
        if (out.empty() || v > out.back()) out.push_back(v);
    }
    return out;
}

inline std::vector<std::string> coordinate_columns(std::size_t n, const std::string& prefix) {
    std::vector<std::string> c;
    for (std::size_t j = 1; j <= n; ++j) {
        c.push_back("re_" + prefix + std::to_string(j));
        c.push_back("im_" + prefix + std::to_string(j));
    }
    return c;
}

inline void push_coordinates(std::vector<Cell>& row, const cvec& z) {
    for (const auto& c : z) {
        row.emplace_back(c.real());
        row.emplace_back(c.imag());
    }
}

inline std::string coordinates_string(const cvec& z) {
    std::string s;
    for (const auto& c : z) {
        if (!s.empty()) s += ' ';
        s += format_double(c.real()) + ' ' + format_double(c.imag());
    }
    return s;
}

// --- classify ---------------------------------------------------------------

inline const std::vector<double>& classify_radii() {
    static const std::vector<double> r{0.25, 0.5, 0.75, 0.9, 0.99};
    return r;
}

template <class Real>
Table classify_table(const GeneralEllipsoid<Real>& D, const Real& s, const ApproachSequence<Real>& seq,
                     const ClassificationRecord& rec) {
    Table t;
    t.columns = {"j", "abs_rho", "normal_gap", "P_prime", "r_star"};
    for (double r : classify_radii()) t.columns.push_back("in_D_s_r_" + format_double(r));
    for (std::size_t i = 0; i < rec.rows.size(); ++i) {
        const auto& row = rec.rows[i];
        std::vector<Cell> cells{row.j, row.abs_rho, row.normal_gap, row.p_prime, row.r_star};
        for (double r : classify_radii()) {
            const SubdomainParams<Real> sp(s, Real(r));
            cells.emplace_back(static_cast<long long>(contains_sub(D, sp, seq.terms[i])));
        }
        t.add(std::move(cells));
    }
    return t;
}

// --- squeeze ----------------------------------------------------------------

/// floor_r is the same value on every row; NaN when no floor was computed.
inline Table squeeze_table(const std::vector<long long>& j, const std::vector<SqueezeEstimate>& est, double floor_r) {
    if (j.size() != est.size()) throw ParameterError("squeeze_table: one index per estimate");
    Table t;
    t.columns = {"j"};
    if (!est.empty()) {
        const auto c = coordinate_columns(est.front().point.size(), "p");
        t.columns.insert(t.columns.end(), c.begin(), c.end());
    }
    for (const char* c : {"sigma_hat", "chain_descriptor", "samples", "floor_r"}) t.columns.emplace_back(c);
    for (std::size_t i = 0; i < est.size(); ++i) {
        std::vector<Cell> row{j[i]};
        push_coordinates(row, est[i].point);
        row.emplace_back(est[i].value);
        row.emplace_back(est[i].descriptor());
        row.emplace_back(static_cast<long long>(est[i].samples));
        row.emplace_back(floor_r);
        t.add(std::move(row));
    }
    return t;
}

inline Table floor_table(const FloorReport& rep) {
    Table t;
    t.columns = {"i"};
    if (!rep.grid.empty()) {
        const auto c = coordinate_columns(rep.grid.front().size(), "z");
        t.columns.insert(t.columns.end(), c.begin(), c.end());
    }
    t.columns.emplace_back("sigma_hat");
    for (std::size_t i = 0; i < rep.grid.size(); ++i) {
        std::vector<Cell> row{static_cast<long long>(i)};
        push_coordinates(row, rep.grid[i]);
        row.emplace_back(rep.values[i]);
        t.add(std::move(row));
    }
    return t;
}

// --- domain -----------------------------------------------------------------

/// Boundary samples with residual and Levi eigenvalue; levi_min is NaN inside
/// the excluded tube |z'| < tube.
inline Table wbscan_table(const Ellipsoid& D, std::size_t count, std::uint64_t seed, double tube) {
    Table t;
    t.columns = coordinate_columns(D.dim(), "z");
    t.columns.emplace_back("residual");
    t.columns.emplace_back("levi_min");
    for (const auto& bp : boundary_sample(D, count, seed)) {
        std::vector<Cell> row;
        push_coordinates(row, bp.z);
        row.emplace_back(bp.residual);
        const bool excluded = detail::abs_vec<double>(D.tangential(bp.z)) < tube;
        row.emplace_back(excluded ? std::numeric_limits<double>::quiet_NaN() : levi_min_eig(D, bp.z));
        t.add(std::move(row));
    }
    return t;
}

// --- tangential example sequence ------------------------------------------

struct Example11Result {
    Table table;  ///< n, rho, r_star, P_b_prime, sigma_hat
    std::vector<SqueezeEstimate> estimates;
};

/// a_n on E_{1,2}-type domains: rho(a_n), r*_n at s, P(b_n') after
/// normalize_point (all in quad precision), and sigma_hat in double.
inline Example11Result example11(const Ellipsoid& D, const std::vector<long long>& ns, double s,
                                 const SqueezeOptions& opt) {
    const GeneralEllipsoid<quad> Dq = D.cast<quad>();
    const auto seq = generate(Dq, SequenceKind::Example11, ns);
    SqueezeEstimator est(D, opt);
    Example11Result res;
    res.table.columns = {"n", "rho", "r_star", "P_b_prime", "sigma_hat"};
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const auto& a = seq.terms[i];
        const auto np = normalize_point(Dq, a);
        const quad pb = Dq.polynomial()(Dq.tangential(np.b));
        res.estimates.push_back(est.estimate(detail::cast_vector<double, quad>(a)));
        res.table.add({ns[i], static_cast<double>(Dq.rho(a)), static_cast<double>(tangency_ratio(Dq, quad(s), a)),
                       static_cast<double>(pb), res.estimates.back().value});
    }
    return res;
}

// --- pullback coefficient limits -------------------------------------------

/// (c1, c2, c3)(b, a) over a = 1 - 2^{-k}, k = 1..kmax, in quad precision.
inline Table lemma22_limits(double b, int kmax) {
    if (kmax < 1 || kmax > 100) throw ParameterError("lemma22_limits: kmax must lie in [1, 100]");
    Table t;
    t.columns = {"k", "a", "c1", "c2", "c3"};
    for (int k = 1; k <= kmax; ++k) {
        const quad a = quad(1) - boost::multiprecision::ldexp(quad(1), -k);
        const auto c = pullback_coeffs(quad(b), a);
        t.add({static_cast<long long>(k), static_cast<double>(a), static_cast<double>(c.c1), static_cast<double>(c.c2),
               static_cast<double>(c.c3)});
    }
    return t;
}

// --- convergence ------------------------------------------------------------

/// Rows: one per sequence member for "K in Omega_i", then the condition (i)
/// and (ii) verdicts, then one per exhaustion grid value.
inline Table convergence_table(const std::vector<long long>& indices, const std::vector<double>& a,
                               const std::vector<DomainOracle>& seq, const std::vector<cvec>& K,
                               const ConvergenceReport& rep, const ExhaustionReport* ex) {
    Table t;
    t.columns = {"i", "a", "condition", "result", "witness_count", "witness"};
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const auto bad = detail::outside(seq[i], K);
        t.add({indices[i], a[i], std::string("K_in_Omega_i"), std::string(bad.empty() ? "pass" : "fail"),
               static_cast<long long>(bad.size()), bad.empty() ? std::string() : coordinates_string(bad.front())});
    }
    const auto nan = std::numeric_limits<double>::quiet_NaN();
    const auto& ci = rep.condition_i;
    t.add({static_cast<long long>(ci.pass ? indices[ci.i0 - 1] : 0), nan, std::string("i"),
           std::string(ci.pass ? "pass" : "fail"), static_cast<long long>(ci.witnesses.size()),
           ci.witnesses.empty() ? std::string() : coordinates_string(ci.witnesses.front().point)});
    const auto& cii = rep.condition_ii;
    t.add({static_cast<long long>(cii.vacuous ? 0 : indices[cii.i0 - 1]), nan, std::string("ii"),
           std::string(cii.vacuous ? "vacuous" : (cii.pass ? "pass" : "fail")),
           static_cast<long long>(cii.witnesses.size()),
           cii.witnesses.empty() ? std::string() : coordinates_string(cii.witnesses.front().point)});
    if (ex) {
        for (std::size_t k = 0; k < ex->rows.size(); ++k) {
            const auto& row = ex->rows[k];
            t.add({static_cast<long long>(k), row.a, std::string("exhaustion"),
                   std::string(row.failures == 0 ? "pass" : "fail"), static_cast<long long>(row.failures),
                   row.failures == 0 ? std::string() : coordinates_string(row.witness)});
        }
    }
    return t;
}

// --- scaling ----------------------------------------------------------------

struct ScalingDemo {
    std::vector<double> deltas;
    std::vector<ScalingFrame> frames;
    std::vector<ScaledFunction> scaled;
    LimitReport limit;
    std::vector<double> deviation;  ///< per j, against the reference table when given
};

/// eta_j = xi0 - delta_j N with N the unit (d rho / d conj z) at xi0.
inline ScalingDemo scaling_demo(const DefiningFunctionPoly& rho, const cvec& xi0, const std::vector<double>& deltas,
                                const FrameOptions& opt, int m = 0, const DefiningFunctionPoly* reference = nullptr) {
    if (std::abs(rho(xi0)) > 1e-12) throw DomainError("scaling_demo: base point is not on {rho = 0}");
    const Eigen::VectorXcd G = rho.gradient_zbar(xi0);
    if (!(G.norm() > 1e-14)) throw NumericalError("scaling_demo: gradient vanishes at the base point");
    const Eigen::VectorXcd N = G / G.norm();
    ScalingDemo out;
    out.deltas = deltas;
    for (double d : deltas) {
        if (!(d > 0)) throw ParameterError("scaling_demo: deltas must be positive");
        cvec eta(xi0);
        for (std::size_t i = 0; i < eta.size(); ++i) eta[i] -= d * N(static_cast<Eigen::Index>(i));
        const double eps = -rho(eta);
        if (!(eps > 0)) throw DomainError("scaling_demo: eta is not inside {rho < 0}");
        out.frames.push_back(build_frame(rho, eta, eps, opt));
        out.scaled.push_back(scaled_function(rho, out.frames.back()));
        if (reference) out.deviation.push_back(max_coefficient_deviation(out.scaled.back().table, *reference));
    }
    out.limit = limit_diagnostics(out.scaled, m);
    return out;
}

inline std::string monomial_key_string(const MonomialKey& k) {
    auto idx = [](const MultiIndex& m) {
        std::string s;
        for (int e : m) s += (s.empty() ? "" : " ") + std::to_string(e);
        return s;
    };
    return "(" + idx(k.first) + "|" + idx(k.second) + ")";
}

/// key, j, re, im, cauchy_delta (|c_j - c_{j-1}|, 0 at j = 1).
inline Table scaling_diagnostics_table(const LimitReport& rep) {
    Table t;
    t.columns = {"key", "j", "re", "im", "cauchy_delta"};
    for (const auto& tr : rep.traces) {
        for (std::size_t j = 0; j < tr.values.size(); ++j) {
            t.add({monomial_key_string(tr.key), static_cast<long long>(j + 1), tr.values[j].real(), tr.values[j].imag(),
                   j == 0 ? 0.0 : tr.cauchy[j - 1]});
        }
    }
    return t;
}

inline Table scaling_frames_table(const ScalingDemo& demo) {
    Table t;
    t.columns = {"j", "delta", "eps"};
    const std::size_t n = demo.frames.empty() ? 0 : demo.frames.front().tau.size();
    for (std::size_t k = 1; k <= n; ++k) t.columns.push_back("tau_" + std::to_string(k));
    t.columns.emplace_back("deviation");
    for (std::size_t j = 0; j < demo.frames.size(); ++j) {
        std::vector<Cell> row{static_cast<long long>(j + 1), demo.deltas[j], demo.frames[j].eps};
        for (double v : demo.frames[j].tau) row.emplace_back(v);
        row.emplace_back(demo.deviation.empty() ? std::numeric_limits<double>::quiet_NaN() : demo.deviation[j]);
        t.add(std::move(row));
    }
    return t;
}

}  // namespace squeezing
