#include "squeezing/experiments.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace squeezing;

TEST(PolynomialJson, RoundTrip) {
    const json j = json::parse(R"({"m": [2, 1], "terms": [
        {"K": [2, 0], "L": [2, 0], "re": 1},
        {"K": [0, 1], "L": [0, 1], "re": 1},
        {"K": [2, 0], "L": [0, 1], "re": 0.25, "im": 0.1}]})");
    const Polynomial P = polynomial_from_json(j);
    EXPECT_EQ(P.dim(), 3u);
    EXPECT_EQ(polynomial_from_json(polynomial_to_json(P)).terms().size(), P.terms().size());
    const cvec z{cplx(0.3, 0.1), cplx(-0.2, 0.4)};
    EXPECT_DOUBLE_EQ(polynomial_from_json(polynomial_to_json(P))(z), P(z));
}

TEST(PolynomialJson, SchemaErrors) {
    EXPECT_THROW(polynomial_from_json(json::parse(R"({"terms": []})")), ValidationError);
    EXPECT_THROW(polynomial_from_json(json::parse(R"({"m": [2], "terms": [{"K": [2], "L": [2]}]})")), ValidationError);
    EXPECT_THROW(polynomial_from_json(json::parse(R"({"m": [2], "terms": [{"K": [2], "L": [2], "re": "1"}]})")),
                 ValidationError);
    EXPECT_THROW(polynomial_from_json(json::parse(R"({"m": [2], "terms": [{"K": [1], "L": [1], "re": 1}]})")),
                 ValidationError);
    EXPECT_THROW(polynomial_from_json(json::parse(R"({"m": [2], "extra": 1, "terms": []})")), ValidationError);
    EXPECT_THROW(polynomial_from_json(json::parse(R"({"m": [2.5], "terms": []})")), ValidationError);
}

TEST(DefiningFunctionJson, RoundTrip) {
    const auto f = graph_model_limit();
    const auto g = defining_function_from_json(defining_function_to_json(f));
    EXPECT_EQ(max_coefficient_deviation(f, g), 0.0);
    EXPECT_THROW(defining_function_from_json(json::parse(R"({"n": 0, "terms": []})")), ValidationError);
}

TEST(Points, Parse) {
    const cvec z = point_from_json(json::parse("[[1, 2], [0.5, -1]]"), "p");
    EXPECT_EQ(z, (cvec{cplx(1, 2), cplx(0.5, -1)}));
    EXPECT_THROW(point_from_json(json::parse("[[1, 2, 3]]"), "p"), ValidationError);
}

TEST(Csv, SeventeenDigitsAndQuoting) {
    Table t;
    t.columns = {"a", "b", "c"};
    t.add({0.1, 3LL, std::string("x, y")});
    t.add({1.0 / 3.0, -7LL, std::string("plain")});
    std::ostringstream os;
    write_csv(os, t);
    EXPECT_EQ(os.str(), "a,b,c\n0.10000000000000001,3,\"x, y\"\n0.33333333333333331,-7,plain\n");
    EXPECT_THROW(t.add({1.0}), ParameterError);
    EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(Tables, ClassifySchema) {
    const auto D = e12().cast<quad>();
    const auto seq = generate(D, SequenceKind::Example11, std::vector<long long>{3, 10});
    const auto rec = classify(D, quad(0.5), seq);
    const Table t = classify_table(D, quad(0.5), seq, rec);
    EXPECT_EQ(t.columns, (std::vector<std::string>{"j", "abs_rho", "normal_gap", "P_prime", "r_star", "in_D_s_r_0.25",
                                                   "in_D_s_r_0.5", "in_D_s_r_0.75", "in_D_s_r_0.90000000000000002",
                                                   "in_D_s_r_0.98999999999999999"}));
    for (const auto& row : t.rows) {
        for (std::size_t k = 5; k < row.size(); ++k) EXPECT_EQ(std::get<long long>(row[k]), 0);
    }
}

TEST(Tables, PullbackLimitRows) {
    const Table t = lemma22_limits(0.5, 3);
    ASSERT_EQ(t.rows.size(), 3u);
    EXPECT_EQ(std::get<double>(t.rows[0][1]), 0.5);
    EXPECT_THROW(lemma22_limits(0.5, 0), ParameterError);
}

TEST(Tables, LogSpaced) {
    const auto v = log_spaced(2, 1000000, 2);
    EXPECT_EQ(v.front(), 2);
    EXPECT_EQ(v.back(), 1000000);
    EXPECT_TRUE(std::is_sorted(v.begin(), v.end()));
}
