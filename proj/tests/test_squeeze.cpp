#include "squeezing/experiments.hpp"

#include <gtest/gtest.h>

using namespace squeezing;

namespace {

cvec random_ball_point(std::size_t n, Rng& rng, double max_radius) {
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    cvec u = random_unit_vector(n, rng, normal);
    const double r = max_radius * std::pow(unif(rng), 1.0 / (2.0 * static_cast<double>(n)));
    for (auto& c : u) c *= r;
    return u;
}

SqueezeOptions small_options(std::size_t samples, std::uint64_t seed = 1) {
    SqueezeOptions opt;
    opt.samples = samples;
    opt.seed = seed;
    opt.boundary_samples = 4000;
    return opt;
}

const SqueezeEstimator& e12_estimator() {
    static const SqueezeEstimator est(e12(), small_options(2000));
    return est;
}

}  // namespace

TEST(BallAutomorphism, InvolutionAndCenter) {
    Rng rng(41);
    for (int i = 0; i < 1000; ++i) {
        const cvec c = random_ball_point(3, rng, 0.99);
        const cvec z = random_ball_point(3, rng, 0.99);
        const BallAutomorphism phi(c);
        EXPECT_LE(detail::distance(phi(phi(z)), z), 1e-12);
        EXPECT_LE(detail::abs_vec<double>(phi(c)), 1e-14);
        EXPECT_NEAR(detail::abs_vec<double>(phi(cvec(3, cplx(0.0)))), detail::abs_vec<double>(c), 1e-15);
        EXPECT_LT(detail::abs_vec<double>(phi(z)), 1.0);
    }
}

TEST(BallAutomorphism, SpherePreservedAndZeroCase) {
    Rng rng(42);
    std::normal_distribution<double> normal;
    const BallAutomorphism phi(cvec{cplx(0.3, -0.2), cplx(0.5, 0.1)});
    for (int i = 0; i < 200; ++i) {
        const cvec u = random_unit_vector(2, rng, normal);
        EXPECT_NEAR(detail::abs_vec<double>(phi(u)), 1.0, 1e-13);
    }
    const BallAutomorphism zero(cvec(2, cplx(0.0)));
    const cvec z{cplx(0.1, 0.2), cplx(-0.3, 0.0)};
    EXPECT_EQ(zero(z), (cvec{cplx(-0.1, -0.2), cplx(0.3, -0.0)}));
    EXPECT_THROW(BallAutomorphism(cvec{cplx(1.0), cplx(0.0)}), ParameterError);
}

TEST(AffineMap, InverseAndSingular) {
    Eigen::MatrixXcd A(2, 2);
    A << cplx(2, 1), cplx(0.5), cplx(0, -1), cplx(1.5);
    const AffineMap L(Eigen::VectorXcd::Ones(2), Eigen::VectorXcd::Zero(2), A);
    cvec z{cplx(0.3, 0.1), cplx(-0.2, 0.4)};
    const cvec z0 = z;
    L.apply(z);
    L.unapply(z);
    EXPECT_LE(detail::distance(z, z0), 1e-15);
    EXPECT_THROW(AffineMap(Eigen::VectorXcd::Zero(2), Eigen::VectorXcd::Zero(2), Eigen::MatrixXcd::Zero(2, 2)),
                 ParameterError);
}

TEST(EmbeddingChain, ValidationAndDescriptor) {
    const cvec p{cplx(0.2), cplx(0.1)};
    const EmbeddingChain good(p, {Rescale{2.0}, BallAutomorphism(cvec{cplx(0.1), cplx(0.05)})}, "t");
    EXPECT_NO_THROW(good.validate());
    EXPECT_EQ(good.descriptor(), "t:rescale(R=2) > ball(|c|=0.111803)");
    EXPECT_LE(detail::distance(good.inverse(good(p)), p), 1e-15);
    const EmbeddingChain bad(p, {Rescale{2.0}});
    EXPECT_THROW(bad.validate(), NumericalError);
}

TEST(Squeeze, DirectChainOnE12AtOrigin) {
    const auto& est = e12_estimator();
    EXPECT_NEAR(est.enclosing_radius(), std::sqrt(1.25), 1e-8);
    const auto g = est.family_chain(cvec{cplx(0.0), cplx(0.0)}, est.family_size() - 1);
    ASSERT_TRUE(g);
    EXPECT_NEAR(est.inscribed_radius(*g).value, 1.0 / std::sqrt(1.25), 1e-8);
}

TEST(Squeeze, NormalApproachUsesRescaledSlice) {
    const auto e = e12_estimator().estimate(cvec{cplx(0.0), cplx(1.0 - 1e-3)});
    EXPECT_NEAR(e.value, 0.894427, 1e-6);
    EXPECT_LE(e.value, 1.0);
    EXPECT_LE(e.chain.basepoint_residual(), 1e-10);
}

TEST(Squeeze, BallPointsNearOne) {
    const auto ball = unit_ball(2);
    const SqueezeEstimator est(ball, small_options(5000));
    Rng rng(43);
    for (int i = 0; i < 4; ++i) {
        const auto e = est.estimate(random_ball_point(2, rng, 0.95));
        EXPECT_NEAR(e.value, 1.0, 1e-3);
    }
    cvec p{cplx(0.9), cplx(0.0)};
    EXPECT_NEAR(est.estimate(p).value, 1.0, 1e-3);
}

TEST(SqueezeProperty, AutomorphismConsistency) {
    const auto& est = e12_estimator();
    const auto& D = est.domain();
    Rng rng(44);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int compared = 0;
    for (int trial = 0; trial < 6; ++trial) {
        const cvec p{std::polar(0.6 * unif(rng), 6.0 * unif(rng)), std::polar(0.7 * unif(rng), 6.0 * unif(rng))};
        ASSERT_TRUE(D.contains(p));
        const Automorphism psi(D.weights(), std::polar(0.8 * unif(rng), 6.0 * unif(rng)), 1.3 * unif(rng),
                               trial % 2 ? MobiusConvention::Exhausting : MobiusConvention::Normalizing);
        const cvec q = psi(p);
        for (const auto& g : est.strategy_family(q)) {
            const EmbeddingChain h = g.precompose(psi, p);
            auto a = est.exit_radii(g);
            auto b = est.exit_radii(h);
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            EXPECT_EQ(a, b) << g.descriptor();
            EXPECT_EQ(est.inscribed_radius(g).value, est.inscribed_radius(h).value);
            ++compared;
        }
    }
    EXPECT_GE(compared, 12);
}

TEST(SqueezeProperty, MonotoneInSamples) {
    const auto D = e12();
    const SqueezeEstimator small(D, small_options(2000, 9));
    const SqueezeEstimator large(D, small_options(4000, 9));
    Rng rng(45);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < 4; ++i) {
        const cvec p{std::polar(0.5 * unif(rng), 6.0 * unif(rng)), std::polar(0.9 * unif(rng), 6.0 * unif(rng))};
        for (const auto& g : small.strategy_family(p)) {
            EXPECT_LE(large.inscribed_radius(g).value, small.inscribed_radius(g).value) << g.descriptor();
        }
        EXPECT_LE(large.estimate(p).value, small.estimate(p).value);
    }
}

TEST(SqueezeProperty, EstimatesAreValidLowerBounds) {
    const auto& est = e12_estimator();
    Rng rng(46);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < 5; ++i) {
        const cvec p{std::polar(0.7 * unif(rng), 6.0 * unif(rng)), std::polar(0.7 * unif(rng), 6.0 * unif(rng))};
        const auto e = est.estimate(p);
        EXPECT_GT(e.value, 0.0);
        EXPECT_LE(e.value, 1.0);
        EXPECT_NO_THROW(e.chain.validate());
        EXPECT_FALSE(e.candidates.empty());
        EXPECT_GE(e.band, -1e-15);
    }
    EXPECT_THROW(est.estimate(cvec{cplx(1.0), cplx(0.5)}), DomainError);
}

TEST(GammaFloor, NormalSequenceAboveFloor) {
    const auto& est = e12_estimator();
    const auto rep = gamma_floor(est, 0.5, 0.5, 30, 7);
    EXPECT_GT(rep.floor, 0.0);
    EXPECT_EQ(rep.points, 30u);
    const auto seq = generate(est.domain(), SequenceKind::Normal, std::vector<long long>{3, 10, 100, 1000});
    for (const auto& e : squeeze_profile(est, seq.terms)) EXPECT_GE(e.value, rep.floor);
}

TEST(GammaFloor, FloorIsGridMinimum) {
    const auto& est = e12_estimator();
    const auto rep = gamma_floor(est, 0.5, 1e-3, 10, 8);
    ASSERT_EQ(rep.values.size(), 10u);
    EXPECT_EQ(rep.floor, *std::min_element(rep.values.begin(), rep.values.end()));
    EXPECT_EQ(rep.grid.front(), (cvec{cplx(0.0), cplx(0.5)}));
    EXPECT_EQ(rep.values.front(), est.estimate(cvec{cplx(0.0), cplx(0.5)}).value);
}

TEST(GammaFloor, ThinSubdomainNearCenterValue) {
    // |b'| scales like r^{1/4} after normalization.
    const auto& est = e12_estimator();
    const double center = est.estimate(cvec{cplx(0.0), cplx(0.5)}).value;
    const auto rep = gamma_floor(est, 0.5, 1e-8, 20, 8);
    EXPECT_NEAR(rep.floor, center, 2e-2);
    EXPECT_LE(rep.floor, center);
}

TEST(GammaFloor, GridInsideSubdomain) {
    const auto D = e12();
    const SubdomainParams<double> sp(0.5, 0.5);
    const auto grid = subdomain_grid(D, 0.5, 0.5, 500, 9);
    EXPECT_EQ(grid.size(), 500u);
    for (const auto& z : grid) EXPECT_TRUE(contains_sub(D, sp, z));
    EXPECT_THROW(subdomain_grid(D, 0.5, 1.0, 10, 9), ParameterError);
}

TEST(GammaFloor, AnalyticInterpretation) {
    const auto af = analytic_floor(e12(), 0.5);
    EXPECT_NEAR(af.delta, (1.0 - std::pow(0.5, 0.25)) / 2.0, 1e-6);
    EXPECT_NEAR(af.diameter, 2.0 * std::sqrt(1.25), 1e-8);
    EXPECT_GT(af.value, 0.0);
}

TEST(Squeeze, SubdomainEstimation) {
    const auto& est = e12_estimator();
    const double s = 0.5;
    const LevelFunction omega = [s](const cvec& z) {
        return std::norm(z.back() - (1.0 - s)) + s * std::pow(std::abs(z[0]), 4) - s * s;
    };
    const std::vector<cvec> terms{{cplx(0.0), cplx(0.9)}, {cplx(0.0), cplx(0.99)}};
    const std::vector<LevelFunction> omegas(terms.size(), omega);
    const auto res = squeeze_profile(est, terms, &omegas);
    for (const auto& e : res) {
        EXPECT_GT(e.value, 0.0);
        EXPECT_LE(e.value, 1.0);
    }
    EXPECT_THROW(est.estimate(cvec{cplx(0.0), cplx(-0.5)}, &omega), DomainError);
}
