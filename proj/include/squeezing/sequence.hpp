#pragma once

// Approach sequences to p = (0', 1) and their tangency classification against
// the subdomains D_P^{s,r}.

#include "squeezing/automorphism.hpp"

#include <limits>

namespace squeezing {

enum class SequenceKind {
    Example11,  ///< a_j' on the weighted sphere with P(a_j') = 2/j - 2/j^2, a_jn = 1 - 1/j
    Normal,     ///< (0', 1 - 1/j)
    Cone,       ///< a_jn = 1 - 1/j and P(a_j') chosen so the tangency ratio is a fixed r0
    Custom,
};

inline std::string to_string(SequenceKind k) {
    switch (k) {
        case SequenceKind::Example11: return "example11";
        case SequenceKind::Normal: return "normal";
        case SequenceKind::Cone: return "cone";
        case SequenceKind::Custom: return "custom";
    }
    return "?";
}

inline SequenceKind sequence_kind_from_string(const std::string& s) {
    if (s == "example11") return SequenceKind::Example11;
    if (s == "normal") return SequenceKind::Normal;
    if (s == "cone") return SequenceKind::Cone;
    if (s == "custom") return SequenceKind::Custom;
    throw ParameterError("unknown sequence kind '" + s + "'");
}

template <class Real>
struct SequenceOptions {
    Real s = Real(1) / Real(2);    ///< subdomain parameter used by the cone kind
    Real cone_ratio = Real(1) / Real(2);
    cvector<Real> direction;       ///< tangential direction; defaults to e_1
};

template <class Real>
struct ApproachSequence {
    SequenceKind kind = SequenceKind::Custom;
    std::vector<long long> indices;
    std::vector<cvector<Real>> terms;
};

namespace detail {

template <class Real>
cvector<Real> on_weighted_level(const WeightedPolynomial<Real>& P, const cvector<Real>& u, const Real& level) {
    if (level == Real(0)) return cvector<Real>(u.size(), complex_t<Real>(Real(0)));
    const Real pu = P(u);
    if (!(pu > Real(0))) throw ParameterError("sequence direction has P(u) <= 0");
    return P.dilation(level / pu, u);
}

}  // namespace detail

template <class Real>
ApproachSequence<Real> generate(const GeneralEllipsoid<Real>& D, SequenceKind kind,
                                const std::vector<long long>& indices, const SequenceOptions<Real>& opt = {}) {
    if (indices.empty()) throw ParameterError("generate: need at least one index");
    if (kind == SequenceKind::Custom) throw ParameterError("generate: custom sequences are built with make_custom");
    const std::size_t k = D.weights().tangential_dim();
    cvector<Real> u = opt.direction;
    if (u.empty()) {
        u.assign(k, complex_t<Real>(Real(0)));
        u[0] = complex_t<Real>(Real(1));
    }
    if (u.size() != k) throw ParameterError("generate: direction has wrong dimension");

    ApproachSequence<Real> seq;
    seq.kind = kind;
    seq.indices = indices;
    for (long long j : indices) {
        if (j < 1) throw ParameterError("generate: indices start at 1");
        const Real h = Real(1) / Real(j);
        cvector<Real> z(k + 1);
        z.back() = complex_t<Real>(Real(1) - h);
        cvector<Real> zp;
        switch (kind) {
            case SequenceKind::Normal:
                zp.assign(k, complex_t<Real>(Real(0)));
                break;
            case SequenceKind::Example11:
                zp = detail::on_weighted_level(D.polynomial(), u, Real(2) * h - Real(2) * h * h);
                break;
            case SequenceKind::Cone: {
                const Real b = Real(1) - opt.s;
                const Real gap = Real(1) - h - b;
                const Real room = opt.s * opt.s - gap * gap;
                if (!(room > Real(0))) throw ParameterError("generate: cone index lies outside D_P^s");
                zp = detail::on_weighted_level(D.polynomial(), u, opt.cone_ratio * room / opt.s);
                break;
            }
            case SequenceKind::Custom: break;
        }
        std::copy(zp.begin(), zp.end(), z.begin());
        if (!D.contains(z)) throw DomainError("generate: term " + std::to_string(j) + " is not in D_P");
        seq.terms.push_back(std::move(z));
    }
    return seq;
}

template <class Real>
ApproachSequence<Real> generate(const GeneralEllipsoid<Real>& D, SequenceKind kind, long long count,
                                const SequenceOptions<Real>& opt = {}) {
    std::vector<long long> idx(static_cast<std::size_t>(count));
    for (long long j = 0; j < count; ++j) idx[static_cast<std::size_t>(j)] = j + 1;
    return generate(D, kind, idx, opt);
}

template <class Real>
ApproachSequence<Real> make_custom(const GeneralEllipsoid<Real>& D, std::vector<cvector<Real>> terms) {
    ApproachSequence<Real> seq;
    seq.kind = SequenceKind::Custom;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (!D.contains(terms[i])) throw DomainError("make_custom: term " + std::to_string(i + 1) + " is not in D_P");
        seq.indices.push_back(static_cast<long long>(i + 1));
    }
    seq.terms = std::move(terms);
    return seq;
}

/// r* = s P(a') / (s^2 - |a_n - (1-s)|^2), or +inf when the denominator is not
/// positive. a lies in D_P^{s,r} exactly when r > r*.
template <class Real>
Real tangency_ratio(const GeneralEllipsoid<Real>& D, const Real& s, const cvector<Real>& a) {
    using std::norm;
    const Real den = s * s - norm(a.back() - complex_t<Real>(Real(1) - s));
    if (!(den > Real(0))) return std::numeric_limits<Real>::infinity();
    return s * D.polynomial()(D.tangential(a)) / den;
}

enum class Verdict { Tangential, Nontangential, Inconclusive };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Tangential: return "tangential";
        case Verdict::Nontangential: return "nontangential";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct ClassificationThresholds {
    double tail_fraction = 0.5;      ///< trailing share of terms that decides the verdict
    double tangential_tol = 1e-6;    ///< tangential iff min tail r* >= 1 - tol
    double nontangential_margin = 1e-3;  ///< nontangential iff max tail r* <= 1 - margin
    bool rotate_to_real = true;      ///< rotate each a_jn onto the positive axis first
};

struct ClassificationRow {
    long long j;
    double abs_rho;
    double normal_gap;  ///< |Re(a_jn) - 1|
    double p_prime;     ///< P(a_j')
    double r_star;
};

struct ClassificationRecord {
    double s;
    std::vector<ClassificationRow> rows;
    double tail_min_r = 0;
    double tail_max_r = 0;
    Verdict verdict = Verdict::Inconclusive;
    ClassificationThresholds thresholds;
};

template <class Real>
ClassificationRecord classify(const GeneralEllipsoid<Real>& D, const Real& s, const ApproachSequence<Real>& seq,
                              const ClassificationThresholds& th = {}) {
    using std::abs;
    if (seq.terms.empty()) throw ParameterError("classify: empty sequence");
    ClassificationRecord rec;
    rec.s = static_cast<double>(s);
    rec.thresholds = th;
    for (std::size_t i = 0; i < seq.terms.size(); ++i) {
        cvector<Real> a = seq.terms[i];
        if (th.rotate_to_real) {
            const auto& an = a.back();
            if (an.imag() != Real(0) || an.real() < Real(0)) a.back() = complex_t<Real>(abs(an));
        }
        const Real rstar = tangency_ratio(D, s, a);
        rec.rows.push_back({seq.indices[i], static_cast<double>(abs(D.rho(a))),
                            static_cast<double>(abs(a.back().real() - Real(1))),
                            static_cast<double>(D.polynomial()(D.tangential(a))), static_cast<double>(rstar)});
    }
    const std::size_t n = rec.rows.size();
    const auto tail = std::max<std::size_t>(1, static_cast<std::size_t>(th.tail_fraction * static_cast<double>(n)));
    rec.tail_min_r = std::numeric_limits<double>::infinity();
    rec.tail_max_r = -std::numeric_limits<double>::infinity();
    for (std::size_t i = n - tail; i < n; ++i) {
        rec.tail_min_r = std::min(rec.tail_min_r, rec.rows[i].r_star);
        rec.tail_max_r = std::max(rec.tail_max_r, rec.rows[i].r_star);
    }
    if (rec.tail_min_r >= 1.0 - th.tangential_tol) rec.verdict = Verdict::Tangential;
    else if (rec.tail_max_r <= 1.0 - th.nontangential_margin) rec.verdict = Verdict::Nontangential;
    else rec.verdict = Verdict::Inconclusive;
    return rec;
}

}  // namespace squeezing
