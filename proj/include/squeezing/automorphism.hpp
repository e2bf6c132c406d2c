#pragma once

// The automorphisms of D_P that act by a Moebius map in z_n:
//
//   z_k -> (1 - |a|^2)^{1/(2 m_k)} / (1 + conj(c) w)^{1/m_k} * z_k,   k < n
//   z_n -> (w + c) / (1 + conj(c) w),                                 w = e^{i theta} z_n
//
// with c = a (exhausting convention) or c = -a (normalizing convention, which
// sends a to 0). Fractional powers use the principal branch; Re(1 + conj(c) w)
// >= 1 - |a| > 0 on the closed unit disk so the branch is continuous there.

#include "squeezing/domain.hpp"

#include <sstream>

namespace squeezing {

enum class MobiusConvention {
    Normalizing,  ///< (z_n - a) / (1 - conj(a) z_n)
    Exhausting,   ///< (z_n + a) / (1 + conj(a) z_n)
};

template <class Real>
class EllipsoidAutomorphism {
public:
    using complex_type = complex_t<Real>;

    EllipsoidAutomorphism() = default;

    EllipsoidAutomorphism(MultiWeight w, complex_type a, Real theta = Real(0),
                          MobiusConvention conv = MobiusConvention::Normalizing)
        : w_(std::move(w)), a_(std::move(a)), theta_(std::move(theta)), conv_(conv) {
        using std::abs;
        if (!(abs(a_) < Real(1))) throw ParameterError("EllipsoidAutomorphism: need |a| < 1");
    }

    const MultiWeight& weights() const { return w_; }
    const complex_type& a() const { return a_; }
    const Real& theta() const { return theta_; }
    MobiusConvention convention() const { return conv_; }

    cvector<Real> operator()(const cvector<Real>& z) const {
        using std::abs;
        using std::conj;
        using std::cos;
        using std::pow;
        using std::sin;
        if (z.size() != w_.dim()) throw ParameterError("EllipsoidAutomorphism: point has wrong dimension");
        const complex_type c = signed_parameter();
        const complex_type rot(cos(theta_), sin(theta_));
        const complex_type w = theta_ == Real(0) ? z.back() : rot * z.back();
        const complex_type den = complex_type(Real(1)) + conj(c) * w;
        const Real abs_a = abs(a_);
        const Real lambda = (Real(1) - abs_a) * (Real(1) + abs_a);

        cvector<Real> out(z.size());
        for (std::size_t k = 0; k + 1 < z.size(); ++k) {
            const Real mk(w_[k]);
            const Real num = pow(lambda, Real(1) / (Real(2) * mk));
            const complex_type root = fractional_root(den, w_[k]);
            out[k] = z[k] * num / root;
        }
        out.back() = (w + c) / den;
        return out;
    }

    /// (M_c o R_theta)^{-1} = R_{-theta} o M_{-c} = M_{-c e^{-i theta}} o R_{-theta}.
    EllipsoidAutomorphism inverse() const {
        using std::cos;
        using std::sin;
        const complex_type unrot(cos(theta_), -sin(theta_));
        const complex_type a_inv = theta_ == Real(0) ? a_ : a_ * unrot;
        const auto flipped =
            conv_ == MobiusConvention::Normalizing ? MobiusConvention::Exhausting : MobiusConvention::Normalizing;
        return EllipsoidAutomorphism(w_, a_inv, -theta_, flipped);
    }

    std::string describe() const {
        std::ostringstream os;
        os.precision(6);
        os << (conv_ == MobiusConvention::Normalizing ? "psi-" : "psi+") << "(a=" << static_cast<double>(a_.real());
        if (a_.imag() != Real(0)) os << (a_.imag() < Real(0) ? "" : "+") << static_cast<double>(a_.imag()) << "i";
        if (theta_ != Real(0)) os << ";theta=" << static_cast<double>(theta_);
        os << ")";
        return os.str();
    }

    /// Principal m-th root of z.
    static complex_type fractional_root(const complex_type& z, int m) {
        using std::pow;
        using std::sqrt;
        if (m == 1) return z;
        if (m == 2) return sqrt(z);
        return pow(z, Real(1) / Real(m));
    }

private:
    complex_type signed_parameter() const { return conv_ == MobiusConvention::Normalizing ? -a_ : a_; }

    MultiWeight w_;
    complex_type a_{};
    Real theta_{};
    MobiusConvention conv_ = MobiusConvention::Normalizing;
};

using Automorphism = EllipsoidAutomorphism<double>;

/// Result of moving q to the slice {z_n = 0}: rotate z_n by theta so that
/// e^{i theta} q_n = a >= 0, then apply the normalizing map with parameter a.
template <class Real>
struct NormalizedPoint {
    Real theta;
    Real a;
    Real lambda;    ///< 1 - a^2
    cvector<Real> b;  ///< (q' lambda^{-1/(2 m_k)}, 0)
    EllipsoidAutomorphism<Real> map;
};

template <class Real>
NormalizedPoint<Real> normalize_point(const GeneralEllipsoid<Real>& D, const cvector<Real>& q) {
    using std::abs;
    using std::atan2;
    using std::pow;
    if (!D.contains(q)) throw DomainError("normalize_point: q is not in D_P");
    const auto& qn = q.back();
    Real theta(0);
    if (qn.imag() != Real(0) || qn.real() < Real(0)) theta = -atan2(qn.imag(), qn.real());
    const Real a = theta == Real(0) ? qn.real() : abs(qn);
    const Real lambda = (Real(1) - a) * (Real(1) + a);

    cvector<Real> b(q.size());
    for (std::size_t k = 0; k + 1 < q.size(); ++k) {
        b[k] = q[k] / pow(lambda, Real(1) / Real(2 * D.weights()[k]));
    }
    b.back() = complex_t<Real>(Real(0));
    return {theta, a, lambda, std::move(b),
            EllipsoidAutomorphism<Real>(D.weights(), complex_t<Real>(a), theta, MobiusConvention::Normalizing)};
}

template <class Real>
struct PullbackCoefficients {
    Real c1;  ///< center shift of the z_n disk
    Real c2;  ///< coefficient of P
    Real c3;  ///< right-hand side
};

/// For the exhausting map psi_a with real a and D_P^s with center b = 1 - s:
///   psi_a(z) in D_P^s  <=>  |z_n - c1|^2 + c2 P(z') < c3.
template <class Real>
PullbackCoefficients<Real> pullback_coeffs(const Real& b, const Real& a) {
    if (!(b >= Real(0) && b < Real(1))) throw ParameterError("pullback_coeffs: b must lie in [0, 1)");
    if (!(a > Real(0) && a < Real(1))) throw ParameterError("pullback_coeffs: a must lie in (0, 1)");
    const Real den = Real(1) + a - Real(2) * a * b;
    const Real c1 = b * (Real(1) - a) / den;
    const Real c2 = (Real(1) - b) * (Real(1) + a) / den;
    const Real c3 = (Real(1) + a - Real(2) * b) / den + c1 * c1;
    return {c1, c2, c3};
}

}  // namespace squeezing
