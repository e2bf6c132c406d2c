#include "squeezing/experiments.hpp"

#include <gtest/gtest.h>

using namespace squeezing;

namespace {

Ellipsoid mixed3() {
    return Ellipsoid(Polynomial(MultiWeight(std::vector<int>{2, 1}),
                                {{{2, 0}, {2, 0}, cplx(1.0)}, {{0, 1}, {0, 1}, cplx(1.0)}, {{2, 0}, {0, 1}, cplx(0.25, 0.1)}}));
}

struct Param {
    cplx a;
    double theta;
    MobiusConvention conv;
};

std::vector<Param> random_params(std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<Param> out;
    for (std::size_t i = 0; i < count; ++i) {
        const double r = 0.95 * std::sqrt(unif(rng));
        const cplx a = std::polar(r, 2 * M_PI * unif(rng));
        const double th = unif(rng) < 0.5 ? 0.0 : 2 * M_PI * unif(rng) - M_PI;
        out.push_back({a, th, i % 2 ? MobiusConvention::Exhausting : MobiusConvention::Normalizing});
    }
    return out;
}

std::vector<cvec> interior_points(const Ellipsoid& D, std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<cvec> out;
    for (const auto& bp : boundary_sample(D, count, seed)) out.push_back(detail::scaled(bp.z, std::sqrt(unif(rng))));
    return out;
}

}  // namespace

TEST(AutomorphismProperty, BoundaryPreserved) {
    for (const auto& D : {e12(), mixed3()}) {
        const auto pts = boundary_sample(D, 1000, 31);
        for (const auto& p : random_params(20, 32)) {
            const Automorphism psi(D.weights(), p.a, p.theta, p.conv);
            for (const auto& bp : pts) EXPECT_LE(std::abs(D.rho(psi(bp.z))), 1e-9) << psi.describe();
        }
    }
}

TEST(AutomorphismProperty, InteriorMapsToInterior) {
    const auto D = mixed3();
    const auto pts = interior_points(D, 500, 33);
    for (const auto& p : random_params(20, 34)) {
        const Automorphism psi(D.weights(), p.a, p.theta, p.conv);
        for (const auto& z : pts) EXPECT_TRUE(D.contains(psi(z)));
    }
}

TEST(AutomorphismProperty, InverseRoundTrip) {
    for (const auto& D : {e12(), mixed3()}) {
        const auto pts = interior_points(D, 1000, 35);
        for (const auto& p : random_params(20, 36)) {
            const Automorphism psi(D.weights(), p.a, p.theta, p.conv);
            const Automorphism inv = psi.inverse();
            for (const auto& z : pts) {
                EXPECT_LE(detail::distance(inv(psi(z)), z), 1e-12);
                EXPECT_LE(detail::distance(psi(inv(z)), z), 1e-12);
            }
        }
    }
}

TEST(Automorphism, ExhaustingMovesOriginToA) {
    const auto D = e12();
    const Automorphism psi(D.weights(), cplx(0.3, 0.4), 0.0, MobiusConvention::Exhausting);
    const cvec w = psi({cplx(0.0), cplx(0.0)});
    EXPECT_NEAR(std::abs(w[1] - cplx(0.3, 0.4)), 0.0, 1e-15);
    EXPECT_EQ(w[0], cplx(0.0));
}

TEST(Automorphism, RejectsParameterOnCircle) {
    EXPECT_THROW(Automorphism(MultiWeight(std::vector<int>{2}), cplx(1.0)), ParameterError);
}

TEST(NormalizePoint, TangentialExampleAtTen) {
    const auto D = e12();
    const auto seq = generate(D, SequenceKind::Example11, std::vector<long long>{10});
    const auto np = normalize_point(D, seq.terms[0]);
    const double pb = D.polynomial()(D.tangential(np.b));
    EXPECT_NEAR(pb, 0.18 / 0.19, 1e-14);
    EXPECT_NEAR(pb, 0.9474, 1e-4);
    EXPECT_LE(detail::distance(np.map(seq.terms[0]), np.b), 1e-14);
}

TEST(NormalizePoint, ClosedFormSlicePoint) {
    const auto D = e12();
    const cvec q{cplx(std::pow(0.5, 0.25)), cplx(0.5)};
    const auto np = normalize_point(D, q);
    EXPECT_NEAR(np.b[0].real(), std::pow(2.0 / 3.0, 0.25), 1e-15);
    EXPECT_EQ(np.b[1], cplx(0.0));
    EXPECT_NEAR(np.lambda, 0.75, 1e-16);
}

TEST(NormalizePoint, RotatesComplexLastCoordinate) {
    const auto D = mixed3();
    const cvec q{cplx(0.2, 0.1), cplx(0.1, -0.2), std::polar(0.7, 2.0)};
    ASSERT_TRUE(D.contains(q));
    const auto np = normalize_point(D, q);
    const cvec w = np.map(q);
    EXPECT_LE(std::abs(w.back()), 1e-15);
    EXPECT_LE(detail::distance(w, np.b), 1e-14);
    EXPECT_NEAR(np.a, 0.7, 1e-15);
}

TEST(NormalizePoint, RejectsOutsidePoint) {
    EXPECT_THROW(normalize_point(e12(), cvec{cplx(1.0), cplx(0.5)}), DomainError);
}

TEST(Pullback, ClosedFormAtPointNine) {
    const auto c = pullback_coeffs(0.5, 0.9);
    EXPECT_NEAR(c.c1, 0.05, 1e-12);
    EXPECT_NEAR(c.c2, 0.95, 1e-12);
    EXPECT_NEAR(c.c3, 0.9025, 1e-12);
}

TEST(Pullback, MonotoneLimits) {
    PullbackCoefficients<quad> prev{};
    for (int k = 1; k <= 30; ++k) {
        const quad a = quad(1) - boost::multiprecision::ldexp(quad(1), -k);
        const auto c = pullback_coeffs(quad(0.5), a);
        if (k > 1) {
            EXPECT_LT(c.c1, prev.c1);
            EXPECT_GT(c.c2, prev.c2);
            EXPECT_GT(c.c3, prev.c3);
        }
        prev = c;
    }
    EXPECT_LE(abs(prev.c1), 1e-6);
    EXPECT_LE(abs(prev.c2 - 1), 1e-6);
    EXPECT_LE(abs(prev.c3 - 1), 1e-6);
    EXPECT_THROW(pullback_coeffs(0.5, 1.0), ParameterError);
    EXPECT_THROW(pullback_coeffs(1.0, 0.5), ParameterError);
}

TEST(Pullback, MatchesMembership) {
    const auto D = mixed3();
    Rng rng(37);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (double s : {0.25, 0.5, 0.9}) {
        const SubdomainParams<double> sp(s, 1.0);
        for (double a : {0.1, 0.5, 0.9, 0.99}) {
            const Automorphism psi(D.weights(), cplx(a), 0.0, MobiusConvention::Exhausting);
            const auto c = pullback_coeffs(1.0 - s, a);
            int checked = 0;
            for (int i = 0; i < 2000; ++i) {
                const cvec z{cplx(unif(rng), unif(rng)), cplx(unif(rng), unif(rng)), cplx(unif(rng), unif(rng))};
                if (!D.contains(z)) continue;
                const double lhs = std::norm(z.back() - c.c1) + c.c2 * D.polynomial()(D.tangential(z));
                if (std::abs(lhs - c.c3) < 1e-9) continue;
                EXPECT_EQ(lhs < c.c3, contains_sub(D, sp, psi(z)));
                ++checked;
            }
            EXPECT_GT(checked, 100);
        }
    }
}
