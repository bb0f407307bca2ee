#include <gtest/gtest.h>

#include <random>

#include "avoider_lab/permutation.hpp"
#include "oracles.hpp"

using namespace avoider_lab;

namespace {

std::vector<int> v(const Permutation& p) { return p.to_vector(); }

} // namespace

TEST(Permutation, RejectsNonPermutations)
{
    EXPECT_THROW(Permutation({1, 1}), InvalidInput);
    EXPECT_THROW(Permutation({0, 1}), InvalidInput);
    EXPECT_THROW(Permutation({1, 3}), InvalidInput);
    EXPECT_NO_THROW(Permutation{});
}

TEST(Permutation, TextForms)
{
    EXPECT_EQ(parse_permutation("2735164"), Permutation({2, 7, 3, 5, 1, 6, 4}));
    EXPECT_EQ(parse_permutation("2,7,3,5,1,6,4"), Permutation({2, 7, 3, 5, 1, 6, 4}));
    EXPECT_EQ(parse_permutation("10,1,2,3,4,5,6,7,8,9").size(), 10);
    EXPECT_EQ(parse_permutation("1"), Permutation({1}));
    EXPECT_EQ(parse_permutation(""), Permutation{});
    EXPECT_EQ(to_string(Permutation({2, 7, 3, 5, 1, 6, 4})), "2,7,3,5,1,6,4");
    EXPECT_THROW(parse_permutation("2x1"), InvalidInput);
    EXPECT_THROW(parse_permutation("1,,2"), InvalidInput);
    EXPECT_THROW(parse_permutation("113"), InvalidInput);
}

TEST(Standardize, Examples)
{
    EXPECT_EQ(v(standardize(std::vector<int>{7, 3, 9})), (std::vector<int>{2, 1, 3}));
    EXPECT_EQ(v(standardize(std::vector<int>{3, 1, 2})), (std::vector<int>{3, 1, 2}));
    EXPECT_EQ(v(standardize(std::vector<int>{6, 5, 4, 7})), (std::vector<int>{3, 2, 1, 4}));
    EXPECT_THROW(standardize(std::vector<int>{4, 2, 4}), InvalidInput);
}

TEST(ContainsPattern, Examples)
{
    EXPECT_TRUE(contains_pattern({6, 1, 7, 4, 2, 3, 5}, {3, 2, 1}));
    EXPECT_FALSE(contains_pattern({2, 7, 3, 5, 1, 6, 4}, {3, 2, 4, 1}));
    EXPECT_FALSE(contains_pattern({1, 2, 3}, {3, 2, 1}));
    EXPECT_TRUE(contains_pattern({4, 3, 2, 1}, {4, 3, 2, 1}));
    EXPECT_THROW(contains_pattern({1}, Permutation{}), InvalidInput);
}

TEST(ContainsPattern, WitnessIsLexicographicallyLeast)
{
    // 321 occurrences in 6174235 by position: (1,4,5), (1,4,6), (3,4,5), ...
    auto w = find_pattern({6, 1, 7, 4, 2, 3, 5}, {3, 2, 1});
    ASSERT_TRUE(w);
    EXPECT_EQ(*w, (std::vector<int>{1, 4, 5}));
    EXPECT_FALSE(find_pattern({2, 7, 3, 5, 1, 6, 4}, {4, 3, 2, 1}));
}

TEST(ContainsPattern, AgreesWithBruteForceExhaustively)
{
    std::vector<Permutation> pats{{3, 2, 1}, {4, 3, 2, 1}, {3, 2, 4, 1}, {1, 3, 2}, {2, 1}};
    for (int n = 0; n <= 7; ++n)
        for (const auto& p : oracle::permutations(n))
            for (const auto& pat : pats)
                ASSERT_EQ(contains_pattern(Permutation(p), pat), oracle::contains(p, pat.to_vector()))
                    << to_string(Permutation(p)) << " / " << to_string(pat);
}

TEST(ContainsPattern, PrefixMonotonicity)
{
    std::mt19937 rng(20130612);
    for (int trial = 0; trial < 500; ++trial) {
        int n = 3 + static_cast<int>(rng() % 8);
        std::vector<int> e(n);
        for (int i = 0; i < n; ++i) e[i] = i + 1;
        std::shuffle(e.begin(), e.end(), rng);
        Permutation p(e);
        for (int len = 1; len <= n; ++len) {
            Permutation prefix = standardize(std::span<const int>(e).first(len));
            if (contains_pattern(prefix, {3, 2, 1})) EXPECT_TRUE(contains_pattern(p, {3, 2, 1}));
        }
    }
}

TEST(Components, Examples)
{
    auto blocks = components({3, 1, 2, 6, 5, 4, 7});
    ASSERT_EQ(blocks.size(), 3u);
    EXPECT_EQ(blocks[0], Permutation({3, 1, 2}));
    EXPECT_EQ(blocks[1], Permutation({3, 2, 1}));
    EXPECT_EQ(blocks[2], Permutation({1}));

    EXPECT_EQ(components({1}).size(), 1u);
    EXPECT_TRUE(is_indecomposable({1}));
    EXPECT_TRUE(components(Permutation{}).empty());
    EXPECT_FALSE(is_indecomposable(Permutation{}));
    EXPECT_EQ(components({2, 7, 3, 5, 1, 6, 4}).size(), 1u);
    EXPECT_TRUE(is_indecomposable({2, 7, 3, 5, 1, 6, 4}));
}

TEST(Components, IndecomposableAgreesWithOracle)
{
    for (int n = 0; n <= 7; ++n)
        for (const auto& p : oracle::permutations(n))
            ASSERT_EQ(is_indecomposable(Permutation(p)), oracle::indecomposable(p));
}

TEST(DeleteInsert, Examples)
{
    EXPECT_EQ(delete_entry({4, 1, 5, 2, 3}, 2), Permutation({3, 1, 4, 2}));
    EXPECT_EQ(delete_entry({3, 2, 1}, 1), Permutation({2, 1}));
    EXPECT_EQ(delete_entry({2, 7, 3, 5, 1, 6, 4}, 6), Permutation({2, 6, 3, 5, 1, 4}));

    EXPECT_EQ(insert_entry({3, 1, 4, 2}, 4, 2), Permutation({4, 1, 5, 2, 3}));
    EXPECT_EQ(insert_entry(Permutation{}, 1, 1), Permutation({1}));
    EXPECT_EQ(insert_entry({2, 3, 1}, 3, 3), Permutation({2, 4, 3, 1}));
}

TEST(DeleteInsert, RangeErrors)
{
    EXPECT_THROW(delete_entry({2, 1}, 0), InvalidInput);
    EXPECT_THROW(delete_entry({2, 1}, 3), InvalidInput);
    EXPECT_THROW(delete_entry(Permutation{}, 1), InvalidInput);
    EXPECT_THROW(insert_entry({2, 1}, 4, 1), InvalidInput);
    EXPECT_THROW(insert_entry({2, 1}, 1, 4), InvalidInput);
    EXPECT_THROW(insert_entry({2, 1}, 0, 1), InvalidInput);
}

TEST(DeleteInsert, RandomRoundTrips)
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 2000; ++trial) {
        int n = static_cast<int>(rng() % 12);
        std::vector<int> e(n);
        for (int i = 0; i < n; ++i) e[i] = i + 1;
        std::shuffle(e.begin(), e.end(), rng);
        Permutation p(e);
        int i = 1 + static_cast<int>(rng() % (n + 1));
        int y = 1 + static_cast<int>(rng() % (n + 1));
        Permutation q = insert_entry(p, i, y);
        ASSERT_EQ(Permutation(q.to_vector()), q);  // still a valid permutation
        ASSERT_EQ(q.at(i), y);
        ASSERT_EQ(delete_entry(q, y), p);
        if (n > 0) {
            int z = 1 + static_cast<int>(rng() % n);
            ASSERT_EQ(insert_entry(delete_entry(p, z), p.position_of(z), z), p);
        }
    }
}

TEST(LeftToRightMaxima, Examples)
{
    EXPECT_EQ(left_to_right_maxima({2, 7, 3, 5, 1, 6, 4}), (std::vector<int>{2, 7}));
    EXPECT_EQ(left_to_right_maxima({1, 2, 3}), (std::vector<int>{1, 2, 3}));
    EXPECT_EQ(left_to_right_maxima({3, 2, 1}), (std::vector<int>{3}));
    EXPECT_TRUE(left_to_right_maxima(Permutation{}).empty());
}

TEST(Enumerate, Examples)
{
    EXPECT_EQ(count_avoiders(3, avoider_patterns(), false), 6u);
    EXPECT_EQ(count_avoiders(4, avoider_patterns(), false), 22u);
    auto indecomposable_321 = enumerate_avoiders(3, pattern_321(), true);
    ASSERT_EQ(indecomposable_321.size(), 2u);
    EXPECT_EQ(indecomposable_321[0], Permutation({2, 3, 1}));
    EXPECT_EQ(indecomposable_321[1], Permutation({3, 1, 2}));
}

TEST(Enumerate, EmptyAndUnrestricted)
{
    EXPECT_EQ(count_avoiders(0, avoider_patterns(), false), 1u);
    EXPECT_EQ(count_avoiders(0, avoider_patterns(), true), 0u);
    std::uint64_t factorial = 1;
    for (int n = 1; n <= 7; ++n) {
        factorial *= n;
        EXPECT_EQ(count_avoiders(n, PatternSet{}, false), factorial);
    }
    EXPECT_THROW(count_avoiders(-1, PatternSet{}, false), InvalidInput);
}

TEST(Enumerate, LexicographicAndMatchesOracleFilter)
{
    for (int n = 0; n <= 7; ++n) {
        std::vector<Permutation> expected;
        for (const auto& p : oracle::permutations(n))
            if (oracle::avoider(p)) expected.push_back(Permutation(p));
        auto got = enumerate_avoiders(n, avoider_patterns(), true);
        EXPECT_EQ(got, expected) << "n=" << n;
        EXPECT_TRUE(std::is_sorted(got.begin(), got.end()));
    }
}

TEST(Enumerate, ThreadCountDoesNotChangeOutput)
{
    auto one = enumerate_avoiders(8, avoider_patterns(), false, 1);
    auto four = enumerate_avoiders(8, avoider_patterns(), false, 4);
    EXPECT_EQ(one, four);
    EXPECT_EQ(count_avoiders(8, avoider_patterns(), true, 1), count_avoiders(8, avoider_patterns(), true, 5));
}

TEST(Enumerate, ForEachStreamsInOrder)
{
    std::vector<Permutation> streamed;
    for_each_avoider(6, pattern_321(), false, [&](const Permutation& p) { streamed.push_back(p); });
    EXPECT_EQ(streamed, enumerate_avoiders(6, pattern_321(), false));
    EXPECT_EQ(streamed.size(), 132u);  // Catalan C_6
}

TEST(Enumerate, AvoidanceIsComponentwise)
{
    for (int n = 0; n <= 7; ++n)
        for (const auto& e : oracle::permutations(n)) {
            Permutation p(e);
            bool all = true;
            for (const auto& c : components(p)) all = all && avoids(c, avoider_patterns());
            ASSERT_EQ(avoids(p, avoider_patterns()), all) << to_string(p);
        }
}
