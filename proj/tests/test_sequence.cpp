#include "squeezing/experiments.hpp"

#include <gtest/gtest.h>

using namespace squeezing;

namespace {

const GeneralEllipsoid<quad>& e12q() {
    static const GeneralEllipsoid<quad> D = e12().cast<quad>();
    return D;
}

double ulp_distance(double a, double b) {
    return std::abs(a - b) / std::numeric_limits<double>::epsilon() / std::max(std::abs(a), std::abs(b));
}

}  // namespace

TEST(TangentialExample, IdentitiesInQuad) {
    const auto& D = e12q();
    const auto ns = log_spaced(2, 1000000, 4);
    const auto seq = generate(D, SequenceKind::Example11, ns);
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const quad n(ns[i]);
        const auto& a = seq.terms[i];
        const quad rho = D.rho(a);
        EXPECT_LE(static_cast<double>(abs((rho + 1 / (n * n)) * n * n)), 1e-12) << ns[i];
        const double gap = static_cast<double>(abs(a.back().real() - 1));
        const double p = static_cast<double>(D.polynomial()(D.tangential(a)));
        EXPECT_LE(ulp_distance(gap, static_cast<double>(1 / n)), 1.0) << ns[i];
        EXPECT_LE(ulp_distance(p, static_cast<double>(2 / n - 2 / (n * n))), 1.0) << ns[i];
    }
}

TEST(TangentialExample, TangencyRatioIsOne) {
    const auto& D = e12q();
    std::vector<long long> ns;
    for (long long n = 3; n <= 200; ++n) ns.push_back(n);
    for (long long n : log_spaced(200, 1000000, 8)) ns.push_back(n);
    const auto seq = generate(D, SequenceKind::Example11, ns);
    const quad s(0.5);
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const double r = static_cast<double>(tangency_ratio(D, s, seq.terms[i]));
        EXPECT_NEAR(r, 1.0, 1e-10) << ns[i];
        EXPECT_FALSE(contains_sub(D, SubdomainParams<quad>(s, quad(1 - 1e-3)), seq.terms[i]));
    }
    // r = 1 + 1e-3 lies outside the parameter range, so straddle with the
    // closed-form inequality directly.
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const auto& a = seq.terms[i];
        const quad lhs_hi = norm(a.back() - complex_t<quad>(1 - s)) + (s / quad(1 + 1e-3)) * D.polynomial()(D.tangential(a));
        EXPECT_LT(lhs_hi, s * s) << ns[i];
    }
}

TEST(Classify, Verdicts) {
    const auto& D = e12q();
    const quad s(0.5);
    const auto idx = log_spaced(3, 1000000, 2);
    const auto ex = classify(D, s, generate(D, SequenceKind::Example11, idx));
    EXPECT_EQ(ex.verdict, Verdict::Tangential);

    const auto normal = classify(D, s, generate(D, SequenceKind::Normal, idx));
    EXPECT_EQ(normal.verdict, Verdict::Nontangential);
    for (const auto& r : normal.rows) EXPECT_EQ(r.r_star, 0.0);

    SequenceOptions<quad> opt;
    opt.cone_ratio = quad(0.5);
    const auto cone = classify(D, s, generate(D, SequenceKind::Cone, idx, opt));
    EXPECT_EQ(cone.verdict, Verdict::Nontangential);
    for (const auto& r : cone.rows) EXPECT_NEAR(r.r_star, 0.5, 1e-12);
}

TEST(Classify, InconclusiveWhenTailStraddles) {
    const auto& D = e12q();
    SequenceOptions<quad> opt;
    opt.cone_ratio = quad(1) - quad(1e-4);
    const auto rec = classify(D, quad(0.5), generate(D, SequenceKind::Cone, log_spaced(3, 1000, 2), opt));
    EXPECT_EQ(rec.verdict, Verdict::Inconclusive);
}

TEST(SequenceProperty, MembershipMatchesTangencyRatio) {
    const auto D = e12();
    const double s = 0.5;
    SequenceOptions<double> opt;
    for (double ratio : {0.1, 0.3, 0.6, 0.95}) {
        opt.cone_ratio = ratio;
        const auto seq = generate(D, SequenceKind::Cone, log_spaced(3, 100000, 3), opt);
        for (const auto& a : seq.terms) {
            const double rstar = tangency_ratio(D, s, a);
            for (int k = 1; k <= 100; ++k) {
                const double r = k / 100.0;
                if (std::abs(r - rstar) < 1e-9) continue;
                EXPECT_EQ(contains_sub(D, SubdomainParams<double>(s, r), a), r > rstar);
            }
        }
    }
}

TEST(SequenceProperty, RotationInvariance) {
    const auto& D = e12q();
    const quad s(0.5);
    const auto idx = log_spaced(3, 100000, 2);
    for (auto kind : {SequenceKind::Example11, SequenceKind::Normal}) {
        const auto seq = generate(D, kind, idx);
        const auto base = classify(D, s, seq);
        for (double th : {0.3, 1.7, -2.9}) {
            auto rot = seq;
            const complex_t<quad> e(cos(quad(th)), sin(quad(th)));
            for (auto& t : rot.terms) t.back() *= e;
            const auto rec = classify(D, s, rot);
            EXPECT_EQ(rec.verdict, base.verdict);
            for (std::size_t i = 0; i < rec.rows.size(); ++i) EXPECT_NEAR(rec.rows[i].r_star, base.rows[i].r_star, 1e-20);
        }
    }
}

TEST(TangencyRatio, OutsideSubdomainIsInfinite) {
    const auto D = e12();
    EXPECT_TRUE(std::isinf(tangency_ratio(D, 0.5, cvec{cplx(0.0), cplx(-0.1)})));
    EXPECT_EQ(tangency_ratio(D, 0.5, cvec{cplx(0.0), cplx(0.9)}), 0.0);
}

TEST(Sequence, InputValidation) {
    const auto D = e12();
    EXPECT_THROW(generate(D, SequenceKind::Normal, std::vector<long long>{}), ParameterError);
    EXPECT_THROW(generate(D, SequenceKind::Normal, std::vector<long long>{0}), ParameterError);
    EXPECT_THROW(make_custom(D, {cvec{cplx(2.0), cplx(0.0)}}), DomainError);
    EXPECT_THROW(sequence_kind_from_string("spiral"), ParameterError);
    const auto c = make_custom(D, {cvec{cplx(0.1), cplx(0.2)}});
    EXPECT_EQ(c.indices, std::vector<long long>{1});
}
