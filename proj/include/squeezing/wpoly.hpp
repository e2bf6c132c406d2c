#pragma once

// Weighted homogeneous Hermitian polynomials
//
//   P(z') = sum_{wt(K) = wt(L) = 1/2} a_{KL} z'^K conj(z')^L,   a_{KL} = conj(a_{LK}),
//
// with wt(K) = sum_j k_j / (2 m_j) for a multiweight (1/m_1, ..., 1/m_{n-1}).

#include "squeezing/core.hpp"

#include <Eigen/Dense>
#include <boost/rational.hpp>

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <utility>

namespace squeezing {

using MultiIndex = std::vector<int>;
using Rational = boost::rational<long long>;

/// The integer exponents (m_1, ..., m_{n-1}); ambient dimension is n = m.size() + 1.
class MultiWeight {
public:
    MultiWeight() = default;
    explicit MultiWeight(std::vector<int> m) : m_(std::move(m)) {
        if (m_.empty()) throw ValidationError("MultiWeight: need at least one exponent (n >= 2)");
        for (int mj : m_) {
            if (mj < 1) throw ValidationError("MultiWeight: exponents m_j must be >= 1");
        }
    }

    const std::vector<int>& exponents() const { return m_; }
    int operator[](std::size_t j) const { return m_[j]; }
    /// n, the ambient complex dimension.
    std::size_t dim() const { return m_.size() + 1; }
    /// n - 1, the number of tangential variables.
    std::size_t tangential_dim() const { return m_.size(); }
    int max_exponent() const { return *std::max_element(m_.begin(), m_.end()); }

    friend bool operator==(const MultiWeight&, const MultiWeight&) = default;

private:
    std::vector<int> m_;
};

/// Exact weight sum_j k_j / (2 m_j).
inline Rational weight(const MultiIndex& K, const MultiWeight& w) {
    if (K.size() != w.tangential_dim()) {
        throw ParameterError("weight: multi-index length " + std::to_string(K.size()) +
                             " does not match n-1 = " + std::to_string(w.tangential_dim()));
    }
    Rational total(0);
    for (std::size_t j = 0; j < K.size(); ++j) {
        if (K[j] < 0) throw ParameterError("weight: negative exponent");
        total += Rational(K[j], 2LL * w[j]);
    }
    return total;
}

inline bool admissible(const MultiIndex& K, const MultiWeight& w) {
    return weight(K, w) == Rational(1, 2);
}

template <class Real>
struct Term {
    MultiIndex K;
    MultiIndex L;
    complex_t<Real> coeff;
};

/// Raw Hermitian sum before the real part is taken, with the magnitude used to
/// judge round-off in its imaginary part.
template <class Real>
struct HermitianSum {
    complex_t<Real> value;
    Real scale;  ///< 1 + sum |a_KL| |z'|^{|K|+|L|}
};

namespace detail {

inline int degree(const MultiIndex& K) { return std::accumulate(K.begin(), K.end(), 0); }

template <class Real>
complex_t<Real> monomial(const Term<Real>& t, const cvector<Real>& zp) {
    using std::conj;
    complex_t<Real> v = t.coeff;
    for (std::size_t j = 0; j < zp.size(); ++j) {
        for (int k = 0; k < t.K[j]; ++k) v *= zp[j];
        if (t.L[j] > 0) {
            const complex_t<Real> zb = conj(zp[j]);
            for (int l = 0; l < t.L[j]; ++l) v *= zb;
        }
    }
    return v;
}

template <class Real>
complex_t<Real> monomial_prefix(const Term<Real>& t, const cvector<Real>& z, std::size_t k) {
    using std::conj;
    complex_t<Real> v = t.coeff;
    for (std::size_t j = 0; j < k; ++j) {
        for (int e = 0; e < t.K[j]; ++e) v *= z[j];
        if (t.L[j] > 0) {
            const complex_t<Real> zb = conj(z[j]);
            for (int l = 0; l < t.L[j]; ++l) v *= zb;
        }
    }
    return v;
}

}  // namespace detail

template <class Real>
class WeightedPolynomial {
public:
    using complex_type = complex_t<Real>;

    WeightedPolynomial() = default;

    /// `terms` lists each unordered pair {K, L} once; the conjugate partner is
    /// materialized here. Inadmissible weights, duplicate pairs, and non-real
    /// diagonal coefficients are rejected.
    WeightedPolynomial(MultiWeight w, const std::vector<Term<Real>>& terms) : w_(std::move(w)) {
        using std::abs;
        std::map<std::pair<MultiIndex, MultiIndex>, bool> seen;
        for (const auto& t : terms) {
            if (t.K.size() != w_.tangential_dim() || t.L.size() != w_.tangential_dim()) {
                throw ValidationError("WeightedPolynomial: multi-index length mismatch");
            }
            for (std::size_t j = 0; j < t.K.size(); ++j) {
                if (t.K[j] < 0 || t.L[j] < 0) throw ValidationError("WeightedPolynomial: negative exponent");
            }
            if (!admissible(t.K, w_) || !admissible(t.L, w_)) {
                throw ValidationError("WeightedPolynomial: term has weight != 1/2");
            }
            auto key = t.K < t.L ? std::make_pair(t.K, t.L) : std::make_pair(t.L, t.K);
            if (seen.count(key)) throw ValidationError("WeightedPolynomial: unordered pair listed twice");
            seen[key] = true;

            if (t.K == t.L) {
                if (abs(t.coeff.imag()) > Real(0)) {
                    throw ValidationError("WeightedPolynomial: diagonal coefficient must be real");
                }
                table_.push_back({t.K, t.L, complex_type(t.coeff.real(), Real(0))});
                reps_.push_back(table_.back());
            } else {
                using std::conj;
                table_.push_back(t);
                table_.push_back({t.L, t.K, conj(t.coeff)});
                reps_.push_back(t);
            }
        }
        if (table_.empty()) throw ValidationError("WeightedPolynomial: no terms");
    }

    const MultiWeight& weights() const { return w_; }
    std::size_t dim() const { return w_.dim(); }
    /// Full table including materialized conjugates.
    const std::vector<Term<Real>>& terms() const { return table_; }
    /// One representative per unordered pair, as ingested.
    const std::vector<Term<Real>>& representatives() const { return reps_; }

    HermitianSum<Real> hermitian_sum(const cvector<Real>& zp) const {
        using std::abs;
        using std::pow;
        check_arity(zp);
        complex_type s(0);
        Real scale(1);
        const Real r = detail::abs_vec<Real>(zp);
        for (const auto& t : table_) {
            s += detail::monomial(t, zp);
            scale += abs(t.coeff) * pow(r, detail::degree(t.K) + detail::degree(t.L));
        }
        return {s, scale};
    }

    /// Real part of the Hermitian sum.
    Real operator()(const cvector<Real>& zp) const {
        check_arity(zp);
        Real s(0);
        for (const auto& t : table_) s += detail::monomial(t, zp).real();
        return s;
    }

    /// P evaluated on the first n-1 coordinates of a point of C^n (or C^{n-1}).
    Real eval_prefix(const cvector<Real>& z) const {
        if (z.size() < w_.tangential_dim()) throw ParameterError("WeightedPolynomial: point too short");
        Real s(0);
        for (const auto& t : table_) s += detail::monomial_prefix(t, z, w_.tangential_dim()).real();
        return s;
    }

    /// (t^{1/(2m_1)} z_1, ..., t^{1/(2m_{n-1})} z_{n-1}).
    cvector<Real> dilation(const Real& t, const cvector<Real>& zp) const {
        using std::pow;
        if (!(t > 0)) throw ParameterError("weighted dilation: t must be positive");
        check_arity(zp);
        cvector<Real> out(zp);
        for (std::size_t j = 0; j < out.size(); ++j) {
            const Real f = pow(t, Real(1) / Real(2 * w_[j]));
            out[j] *= f;
        }
        return out;
    }

    /// P(delta_t zp); equals t * P(zp) by weighted homogeneity.
    Real weighted_dilate(const Real& t, const cvector<Real>& zp) const { return (*this)(dilation(t, zp)); }

    int max_degree() const {
        int d = 0;
        for (const auto& t : table_) d = std::max(d, detail::degree(t.K) + detail::degree(t.L));
        return d;
    }

    template <class To>
    WeightedPolynomial<To> cast() const {
        std::vector<Term<To>> out;
        for (const auto& t : reps_) {
            out.push_back({t.K, t.L,
                           complex_t<To>(static_cast<To>(t.coeff.real()), static_cast<To>(t.coeff.imag()))});
        }
        return WeightedPolynomial<To>(w_, out);
    }

private:
    void check_arity(const cvector<Real>& zp) const {
        if (zp.size() != w_.tangential_dim()) {
            throw ParameterError("WeightedPolynomial: expected " + std::to_string(w_.tangential_dim()) +
                                 " coordinates, got " + std::to_string(zp.size()));
        }
    }

    MultiWeight w_;
    std::vector<Term<Real>> table_;
    std::vector<Term<Real>> reps_;
};

using Polynomial = WeightedPolynomial<double>;

// --- exact differentiation (double precision) -------------------------------

/// (dP/dz_1, ..., dP/dz_{n-1}).
inline Eigen::VectorXcd gradient(const Polynomial& P, const cvec& zp) {
    const std::size_t k = zp.size();
    Eigen::VectorXcd g = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(k));
    for (const auto& t : P.terms()) {
        for (std::size_t j = 0; j < k; ++j) {
            if (t.K[j] == 0) continue;
            Term<double> d = t;
            d.coeff *= static_cast<double>(t.K[j]);
            d.K[j] -= 1;
            g(static_cast<Eigen::Index>(j)) += detail::monomial(d, zp);
        }
    }
    return g;
}

/// H_{jk} = d^2 P / dz_j dconj(z_k). Lower triangle is the conjugate of the
/// upper one and the diagonal is real, so H == H^* exactly.
inline Eigen::MatrixXcd complex_hessian(const Polynomial& P, const cvec& zp) {
    const auto k = static_cast<Eigen::Index>(zp.size());
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(k, k);
    for (const auto& t : P.terms()) {
        for (Eigen::Index j = 0; j < k; ++j) {
            if (t.K[j] == 0) continue;
            for (Eigen::Index l = j; l < k; ++l) {
                if (t.L[l] == 0) continue;
                Term<double> d = t;
                d.coeff *= static_cast<double>(t.K[j]) * static_cast<double>(t.L[l]);
                d.K[j] -= 1;
                d.L[l] -= 1;
                H(j, l) += detail::monomial(d, zp);
            }
        }
    }
    for (Eigen::Index j = 0; j < k; ++j) {
        H(j, j) = cplx(H(j, j).real(), 0.0);
        for (Eigen::Index l = j + 1; l < k; ++l) H(l, j) = std::conj(H(j, l));
    }
    return H;
}

// --- positivity --------------------------------------------------------------

struct PositivityReport {
    double min_value = std::numeric_limits<double>::infinity();
    cvec argmin;
    std::size_t samples = 0;
    bool positive = false;
};

/// Sampled check of P > 0 on the Euclidean unit sphere of C^{n-1}. The
/// coordinate axes are always probed first, then `count` seeded random points.
/// Heuristic: a passing report does not certify positivity.
template <class Real>
PositivityReport positivity_scan(const WeightedPolynomial<Real>& P, std::size_t count, std::uint64_t seed) {
    if (count < 1) throw ParameterError("positivity_scan: count must be >= 1");
    const std::size_t k = P.weights().tangential_dim();
    PositivityReport rep;
    auto probe = [&](const cvec& u) {
        const double v = static_cast<double>(P(detail::cast_vector<Real, double>(u)));
        ++rep.samples;
        if (v < rep.min_value) {
            rep.min_value = v;
            rep.argmin = u;
        }
    };
    for (std::size_t j = 0; j < k; ++j) {
        cvec e(k, cplx(0.0));
        e[j] = 1.0;
        probe(e);
    }
    Rng rng(seed);
    std::normal_distribution<double> normal;
    for (std::size_t i = 0; i < count; ++i) probe(random_unit_vector(k, rng, normal));
    rep.positive = rep.min_value > 0.0;
    return rep;
}

}  // namespace squeezing
