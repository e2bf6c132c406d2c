#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace squeezing {

/// 113-bit binary float. Used where double cancellation near (0',1) is too lossy.
using quad = boost::multiprecision::cpp_bin_float_quad;

template <class Real>
struct complex_of {
    using type = std::complex<Real>;
};

template <>
struct complex_of<quad> {
    using type = boost::multiprecision::cpp_complex_quad;
};

template <class Real>
using complex_t = typename complex_of<Real>::type;

/// Point of C^k stored coordinate-wise.
template <class Real>
using cvector = std::vector<complex_t<Real>>;

using cplx = std::complex<double>;
using cvec = cvector<double>;

/// Malformed input data (coefficient tables, configs).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Out-of-range parameter passed to an operation.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A point that was required to lie in a domain does not.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An iterative search failed to bracket or converge.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Rng = std::mt19937_64;

namespace detail {

template <class Real>
Real norm2(const cvector<Real>& z) {
    using std::norm;
    Real s = 0;
    for (const auto& c : z) s += norm(c);
    return s;
}

template <class Real>
Real abs_vec(const cvector<Real>& z) {
    using std::sqrt;
    return sqrt(norm2<Real>(z));
}

inline double distance(const cvec& a, const cvec& b) {
    double s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += std::norm(a[k] - b[k]);
    return std::sqrt(s);
}

template <class To, class From>
cvector<To> cast_vector(const cvector<From>& z) {
    cvector<To> out;
    out.reserve(z.size());
    for (const auto& c : z) {
        out.emplace_back(static_cast<To>(c.real()), static_cast<To>(c.imag()));
    }
    return out;
}

template <class Real>
complex_t<Real> make_complex(const Real& re, const Real& im) {
    return complex_t<Real>(re, im);
}

}  // namespace detail

/// Uniformly distributed unit vector of C^k (normalized complex Gaussian).
/// Consumes exactly 2k normal draws from `normal`, so streams stay prefix-stable.
inline cvec random_unit_vector(std::size_t k, Rng& rng, std::normal_distribution<double>& normal) {
    cvec u(k);
    double s = 0;
    do {
        s = 0;
        for (auto& c : u) {
            const double re = normal(rng);
            const double im = normal(rng);
            c = cplx(re, im);
            s += re * re + im * im;
        }
    } while (s == 0.0);
    const double inv = 1.0 / std::sqrt(s);
    for (auto& c : u) c *= inv;
    return u;
}

}  // namespace squeezing
