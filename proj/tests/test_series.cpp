#include <gtest/gtest.h>

#include "avoider_lab/series.hpp"
#include "avoider_lab/verify.hpp"

using namespace avoider_lab;

namespace {

std::vector<BigInt> big(std::initializer_list<long long> values)
{
    std::vector<BigInt> out;
    for (auto v : values) out.emplace_back(v);
    return out;
}

IntSeries geometric(int order)
{
    return IntSeries(std::vector<BigInt>(static_cast<std::size_t>(order) + 1, BigInt(1)));
}

} // namespace

// Brute-force class sizes computed independently (exhaustive search over all
// permutations) and cross-checked against a closed-form series expansion.
const std::vector<long long> kAllAvoiders{1, 1, 2, 6, 22, 89, 380, 1678, 7584, 34875};
const std::vector<long long> kIndecomposableAvoiders{0, 1, 1, 3, 11, 44, 185, 804, 3579, 16229};

TEST(IntSeries, TruncationRules)
{
    IntSeries a = geometric(5);
    IntSeries b = geometric(3);
    EXPECT_EQ((a * b).order(), 3);
    EXPECT_EQ((a + b).order(), 3);
    EXPECT_EQ(a.shifted().order(), 6);
    EXPECT_THROW(a[6], InvalidInput);
    EXPECT_THROW(b.truncated(4), InvalidInput);
    EXPECT_THROW(IntSeries::zero(-1), InvalidInput);
}

TEST(CatalanSeries, Examples)
{
    EXPECT_EQ(catalan_series(4).coefficients(), big({1, 1, 2, 5, 14}));
    EXPECT_EQ(catalan_series(0)[0], 1);
    IntSeries c = catalan_series(10);
    for (int n = 0; n <= 10; ++n) EXPECT_EQ(c[n], ballot(n, 0));
}

TEST(CatalanSeries, SatisfiesFunctionalEquation)
{
    // C = 1 + x C^2
    IntSeries c = catalan_series(30);
    IntSeries rhs = IntSeries::constant(1, 30) + (c * c).shifted().truncated(30);
    EXPECT_EQ(c, rhs);
}

TEST(SeriesCompose, Examples)
{
    IntSeries c = catalan_series(5);
    IntSeries x_c = c.shifted().truncated(5);
    EXPECT_EQ(series_compose(c, x_c).shifted().truncated(5).coefficients(), big({0, 1, 1, 3, 11, 44}));

    IntSeries f(big({3, -1, 4, 1, -5, 9}));
    EXPECT_EQ(series_compose(f, IntSeries::x(5)), f);

    IntSeries x_squared(big({0, 0, 1, 0, 0, 0, 0}));
    EXPECT_EQ(series_compose(geometric(6), x_squared).coefficients(), big({1, 0, 1, 0, 1, 0, 1}));

    EXPECT_THROW(series_compose(f, geometric(5)), InvalidInput);
}

TEST(SeriesReciprocal, Examples)
{
    IntSeries one_minus_x(big({1, -1, 0, 0, 0, 0}));
    EXPECT_EQ(series_reciprocal(one_minus_x), geometric(5));
    IntSeries one_plus_x(big({1, 1, 0, 0, 0}));
    EXPECT_EQ(series_reciprocal(one_plus_x).coefficients(), big({1, -1, 1, -1, 1}));
    EXPECT_EQ(f_series(4).coefficients(), big({1, 1, 2, 6, 22}));
    EXPECT_THROW(series_reciprocal(IntSeries(big({2, 1}))), InvalidInput);
    EXPECT_THROW(series_reciprocal(IntSeries(big({0, 1}))), InvalidInput);
    IntSeries minus_one(big({-1, 3, 2}));
    EXPECT_EQ(minus_one * series_reciprocal(minus_one), IntSeries::constant(1, 2));
}

TEST(UByFormula, Examples)
{
    EXPECT_EQ(u_by_formula(0), 0);
    EXPECT_EQ(u_by_formula(1), 1);
    EXPECT_EQ(u_by_formula(3), 3);
    EXPECT_EQ(u_by_formula(4), 11);
    EXPECT_EQ(u_by_formula(5), 44);
    EXPECT_THROW(u_by_formula(-1), InvalidInput);
}

TEST(UByFormula, FrozenHighOrderValues)
{
    EXPECT_EQ(u_by_formula(20), BigInt("505235129250"));
    EXPECT_EQ(u_by_formula(40), BigInt("61833451495358525229656570"));
    IntSeries f = f_series(40);
    EXPECT_EQ(f[20], BigInt("1185256302910"));
    EXPECT_EQ(f[40], BigInt("151604521940977209923648720"));
}

TEST(Series, MatchesFrozenBruteForceCounts)
{
    IntSeries g = g_series(9);
    IntSeries f = f_series(9);
    for (int n = 0; n <= 9; ++n) {
        EXPECT_EQ(g[n], kIndecomposableAvoiders[n]) << n;
        EXPECT_EQ(f[n], kAllAvoiders[n]) << n;
        EXPECT_EQ(u_by_formula(n), kIndecomposableAvoiders[n]) << n;
    }
}

TEST(Series, BruteForceCountsThroughEight)
{
    for (int n = 0; n <= 8; ++n) {
        EXPECT_EQ(count_avoiders(n, avoider_patterns(), false), static_cast<std::uint64_t>(kAllAvoiders[n]));
        EXPECT_EQ(count_avoiders(n, avoider_patterns(), true), static_cast<std::uint64_t>(kIndecomposableAvoiders[n]));
    }
}

TEST(Transforms, Examples)
{
    auto catalan = catalan_series(5).coefficients();
    auto ct = transform(catalan, Transform::catalan);
    std::vector<BigInt> shifted{0};
    shifted.insert(shifted.end(), ct.begin(), ct.end() - 1);
    EXPECT_EQ(shifted, big({0, 1, 1, 3, 11, 44}));

    std::vector<BigInt> g = big({0, 1, 1, 3, 11});
    EXPECT_EQ(transform(g, Transform::invert), big({1, 1, 2, 6, 22}));
    EXPECT_EQ(invert_transform(big({0, 0, 0, 0})), big({1, 0, 0, 0}));
    EXPECT_THROW(invert_transform(big({1, 1})), InvalidInput);
}

TEST(Series, ExactAlgebraToOrderForty)
{
    Tally t = check_series_algebra(40);
    EXPECT_TRUE(t.ok()) << (t.samples.empty() ? "" : t.samples.front());
}

TEST(Emission, BfileAndJson)
{
    auto values = big({0, 1, 1, 3});
    EXPECT_EQ(to_bfile(values), "0 0\n1 1\n2 1\n3 3\n");
    EXPECT_EQ(to_bfile(values, 1), "1 0\n2 1\n3 1\n4 3\n");
    EXPECT_EQ(to_json_array(values), "[0,1,1,3]");
    EXPECT_EQ(to_csv_line(values), "0,1,1,3");
    EXPECT_EQ(to_json_array({}), "[]");
}
