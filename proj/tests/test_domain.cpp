#include "squeezing/experiments.hpp"

#include <gtest/gtest.h>

using namespace squeezing;

namespace {

cvec random_in_box(std::size_t n, Rng& rng, double half) {
    std::uniform_real_distribution<double> unif(-half, half);
    cvec z(n);
    for (auto& c : z) c = cplx(unif(rng), unif(rng));
    return z;
}

double levi_fd(const Ellipsoid& D, const cvec& xi) {
    const Eigen::MatrixXcd T = orthogonal_complement(rho_gradient_zbar(D, xi));
    const double h = 1e-4;
    auto f = [&](cplx t) {
        cvec w(xi);
        for (std::size_t j = 0; j < w.size(); ++j) w[j] += t * T(static_cast<Eigen::Index>(j), 0);
        return D.rho(w);
    };
    return (f({h, 0}) + f({-h, 0}) + f({0, h}) + f({0, -h}) - 4 * f({0, 0})) / (4 * h * h);
}

}  // namespace

TEST(Ellipsoid, RejectsDegeneratePolynomial) {
    const Polynomial deg(MultiWeight(std::vector<int>{2, 2}), {{{1, 1}, {1, 1}, cplx(1.0)}});
    EXPECT_THROW(Ellipsoid{deg}, ValidationError);
}

TEST(Ellipsoid, DefiningFunction) {
    const auto D = e12();
    EXPECT_DOUBLE_EQ(D.rho({cplx(0.0), cplx(0.0)}), -1.0);
    EXPECT_DOUBLE_EQ(D.rho({cplx(0.0), cplx(1.0)}), 0.0);
    EXPECT_TRUE(D.contains({cplx(0.5), cplx(0.5)}));
    EXPECT_FALSE(D.contains({cplx(1.0), cplx(0.1)}));
    EXPECT_THROW(D.rho({cplx(0.0)}), ParameterError);
}

TEST(DomainProperty, SignOfRhoAroundBoundarySamples) {
    for (const auto& D : {e12(), unit_ball(3)}) {
        const auto pts = boundary_sample(D, 10000, 11);
        ASSERT_EQ(pts.size(), 10000u);
        for (const auto& bp : pts) {
            EXPECT_LE(std::abs(D.rho(bp.z)), 1e-10);
            EXPECT_LT(D.rho(detail::scaled(bp.z, 0.99)), 0.0);
            EXPECT_GT(D.rho(detail::scaled(bp.z, 1.01)), 0.0);
        }
    }
}

TEST(DomainProperty, SubdomainMonotoneInR) {
    const auto D = e12();
    Rng rng(12);
    const std::vector<double> rs{0.1, 0.25, 0.5, 0.75, 0.9, 1.0};
    for (int i = 0; i < 10000; ++i) {
        const cvec z = random_in_box(2, rng, 1.1);
        for (std::size_t k = 0; k + 1 < rs.size(); ++k) {
            if (contains_sub(D, SubdomainParams<double>(0.5, rs[k]), z)) {
                EXPECT_TRUE(contains_sub(D, SubdomainParams<double>(0.5, rs[k + 1]), z));
            }
        }
    }
}

TEST(DomainProperty, SubdomainInsideDomain) {
    const auto D = e12();
    Rng rng(13);
    for (double s : {0.25, 0.5, 1.0}) {
        const SubdomainParams<double> sp(s, 1.0);
        for (int i = 0; i < 10000; ++i) {
            const cvec z = random_in_box(2, rng, 1.1);
            if (contains_sub(D, sp, z)) {
                EXPECT_TRUE(D.contains(z));
            }
        }
    }
}

TEST(Subdomain, ParameterRanges) {
    EXPECT_THROW(SubdomainParams<double>(0.0, 0.5), ParameterError);
    EXPECT_THROW(SubdomainParams<double>(1.5, 0.5), ParameterError);
    EXPECT_THROW(SubdomainParams<double>(0.5, 0.0), ParameterError);
    EXPECT_NO_THROW(SubdomainParams<double>(1.0, 1.0));
}

TEST(BoundingRadius, CoversEverySample) {
    for (const auto& D : {e12(), unit_ball(2)}) {
        const double R = bounding_radius(D, 4000, 3);
        for (const auto& bp : boundary_sample(D, 10000, 21)) EXPECT_LE(detail::abs_vec<double>(bp.z), R);
    }
    // max |xi|^2 on dE_{1,2} is 5/4 at |z_1|^2 = 1/2.
    EXPECT_NEAR(bounding_radius(e12(), 4000, 3, 0.0), std::sqrt(1.25), 1e-9);
}

TEST(Levi, BallIsOne) {
    const auto D = unit_ball(3);
    for (const auto& bp : boundary_sample(D, 50, 4)) EXPECT_NEAR(levi_min_eig(D, bp.z), 1.0, 1e-12);
}

TEST(Levi, E12VanishesOnTheCircle) {
    const auto D = e12();
    for (double th : {0.0, 1.0, 2.5, -2.0}) EXPECT_NEAR(levi_min_eig(D, {cplx(0.0), std::polar(1.0, th)}), 0.0, 1e-14);
}

TEST(Levi, E12MatchesFiniteDifferences) {
    const auto D = e12();
    const cvec xi{cplx(std::pow(0.5, 0.25)), cplx(std::sqrt(0.5))};
    ASSERT_NEAR(D.rho(xi), 0.0, 1e-15);
    const double l = levi_min_eig(D, xi);
    EXPECT_GT(l, 0.0);
    EXPECT_NEAR(l, levi_fd(D, xi), 1e-6);
    for (const auto& bp : boundary_sample(D, 200, 5)) EXPECT_NEAR(levi_min_eig(D, bp.z), levi_fd(D, bp.z), 1e-6);
}

TEST(Levi, VanishingGradientThrows) {
    EXPECT_THROW(levi_min_eig(e12(), {cplx(0.0), cplx(0.0)}), NumericalError);
}

TEST(WbScan, BallAndE12) {
    const auto ball = wb_scan(unit_ball(2), 2000, 6);
    EXPECT_TRUE(ball.pass);
    EXPECT_NEAR(ball.min_levi, 1.0, 1e-12);

    const auto wide = wb_scan(e12(), 4000, 6, 1e-1);
    const auto narrow = wb_scan(e12(), 4000, 6, 1e-2);
    EXPECT_TRUE(wide.pass);
    EXPECT_TRUE(narrow.pass);
    EXPECT_LE(narrow.min_levi, wide.min_levi);
    EXPECT_LE(narrow.excluded, wide.excluded);
    EXPECT_EQ(narrow.excluded + narrow.used, 4000u);
}

TEST(DistanceEstimate, BallNearBoundary) {
    const auto D = unit_ball(2);
    for (double d : {1e-2, 1e-4, 1e-6}) {
        const cvec z{cplx(0.0), cplx(1.0 - d)};
        EXPECT_NEAR(distance_estimate(D, z) / d, 1.0, 2 * d);
    }
}
