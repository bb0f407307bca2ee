#pragma once

// Exhaustive small-scale checks of every module's invariants. Each check
// returns a Tally; work is split into contiguous chunks across threads and
// merged in order, so results do not depend on the thread count.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <exception>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "bijection.hpp"
#include "paths.hpp"
#include "permutation.hpp"
#include "series.hpp"

namespace avoider_lab {

struct Tally {
    static constexpr std::size_t kMaxSamples = 10;

    std::uint64_t checked = 0;
    std::uint64_t failed = 0;
    std::vector<std::string> samples;

    void pass() { ++checked; }

    void fail(std::string message)
    {
        ++checked;
        ++failed;
        if (samples.size() < kMaxSamples) samples.push_back(std::move(message));
    }

    void expect(bool ok, const std::string& message)
    {
        if (ok) pass();
        else fail(message);
    }

    void merge(const Tally& other)
    {
        checked += other.checked;
        failed += other.failed;
        for (const auto& s : other.samples)
            if (samples.size() < kMaxSamples) samples.push_back(s);
    }

    bool ok() const { return failed == 0; }
};

/// Applies `check(item, tally)` to every item; exceptions count as failures.
template <typename Item, typename Check>
Tally parallel_tally(const std::vector<Item>& items, unsigned threads, Check check)
{
    threads = std::max(1u, threads);
    std::size_t chunks = std::min<std::size_t>(threads, std::max<std::size_t>(items.size(), 1));
    std::vector<Tally> partial(chunks);
    auto run_chunk = [&](std::size_t c) {
        std::size_t lo = items.size() * c / chunks;
        std::size_t hi = items.size() * (c + 1) / chunks;
        for (std::size_t i = lo; i < hi; ++i) {
            try {
                check(items[i], partial[c]);
            } catch (const std::exception& e) {
                partial[c].fail(std::string("exception: ") + e.what());
            }
        }
    };
    if (chunks == 1) {
        run_chunk(0);
    } else {
        std::vector<std::thread> workers;
        for (std::size_t c = 0; c < chunks; ++c) workers.emplace_back(run_chunk, c);
        for (auto& w : workers) w.join();
    }
    Tally total;
    for (const auto& t : partial) total.merge(t);
    return total;
}

inline std::vector<Permutation> all_permutations(int n)
{
    std::vector<Permutation> out;
    std::vector<int> e(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) e[i] = i + 1;
    do out.push_back(Permutation::from_trusted(e));
    while (std::next_permutation(e.begin(), e.end()));
    return out;
}

inline std::vector<Permutation> all_avoiders(int n, unsigned threads = 1)
{
    return enumerate_avoiders(n, avoider_patterns(), true, threads);
}

// ---------------------------------------------------------------------------
// perm-core

inline Tally check_insert_delete_round_trip(int max_n)
{
    Tally t;
    for (int n = 0; n <= max_n; ++n) {
        for (const auto& p : all_permutations(n)) {
            for (int y = 1; y <= n + 1; ++y)
                for (int i = 1; i <= n + 1; ++i)
                    t.expect(delete_entry(insert_entry(p, i, y), y) == p,
                             "delete(insert(" + to_string(p) + "," + std::to_string(i) + "," + std::to_string(y) + "))");
            for (int y = 1; y <= n; ++y)
                t.expect(insert_entry(delete_entry(p, y), p.position_of(y), y) == p,
                         "insert(delete(" + to_string(p) + "," + std::to_string(y) + "))");
        }
    }
    return t;
}

inline Tally check_components(int max_n)
{
    Tally t;
    for (int n = 0; n <= max_n; ++n) {
        for (const auto& p : all_permutations(n)) {
            auto blocks = components(p);
            std::vector<int> rebuilt;
            bool every_block_avoids = true;
            for (const auto& block : blocks) {
                int offset = static_cast<int>(rebuilt.size());
                for (int v : block) rebuilt.push_back(v + offset);
                every_block_avoids = every_block_avoids && avoids(block, avoider_patterns());
            }
            t.expect(rebuilt == p.to_vector(), "components do not reassemble " + to_string(p));
            t.expect(is_indecomposable(p) == (blocks.size() == 1), "indecomposable flag of " + to_string(p));
            t.expect(avoids(p, avoider_patterns()) == every_block_avoids,
                     "avoidance differs from componentwise avoidance for " + to_string(p));
        }
    }
    return t;
}

/// Pruned enumeration equals the filtered list of all n! permutations, in order.
inline Tally check_enumeration(int max_n)
{
    Tally t;
    for (int n = 0; n <= max_n; ++n) {
        auto all = all_permutations(n);
        t.expect(enumerate_avoiders(n, PatternSet{}, false) == all, "unrestricted enumeration at n=" + std::to_string(n));
        for (bool indecomposable_only : {false, true}) {
            for (const PatternSet* pats : {&avoider_patterns(), &pattern_321()}) {
                std::vector<Permutation> filtered;
                for (const auto& p : all)
                    if (avoids(p, *pats) && (!indecomposable_only || is_indecomposable(p))) filtered.push_back(p);
                t.expect(enumerate_avoiders(n, *pats, indecomposable_only) == filtered,
                         "pruned enumeration differs from filter at n=" + std::to_string(n));
                t.expect(count_avoiders(n, *pats, indecomposable_only, 3) == filtered.size(),
                         "parallel count differs at n=" + std::to_string(n));
            }
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// paths-ballot

/// All 2^len step sequences that stay nonnegative, for len <= max_steps.
inline std::vector<LatticePath> nonnegative_paths(int max_steps)
{
    std::vector<LatticePath> out;
    for (int len = 0; len <= max_steps; ++len) {
        for (std::uint32_t mask = 0; mask < (1u << len); ++mask) {
            std::vector<Step> steps;
            for (int i = 0; i < len; ++i) steps.push_back((mask >> (len - 1 - i)) & 1u ? Step::Down : Step::Up);
            LatticePath path(std::move(steps));
            if (classify_path(path).nonnegative) out.push_back(std::move(path));
        }
    }
    return out;
}

inline Tally check_path_round_trip(int max_steps)
{
    Tally t;
    for (const auto& path : nonnegative_paths(max_steps)) {
        HeightSequence h = path_to_heights(path);
        int m = path.up_count() - path.down_count();
        t.expect(h.length() == path.down_count() && h.bound() == m, "height context of " + path.str());
        t.expect(heights_to_path(h, m) == path, "heights_to_path(path_to_heights(" + path.str() + "))");
    }
    return t;
}

inline Tally check_height_sequence_counts(int max_sum)
{
    Tally t;
    for (int k = 0; k <= max_sum; ++k)
        for (int r = -1; k + r <= max_sum; ++r) {
            std::uint64_t count = 0;
            for_each_height_sequence(k, r, [&](const HeightSequence&) { ++count; });
            t.expect(BigInt(count) == ballot(k, r), "|C_{" + std::to_string(k) + "," + std::to_string(r) + "}|");
        }
    return t;
}

inline Tally check_indecomposable_dyck_counts(int max_size)
{
    Tally t;
    std::vector<std::uint64_t> count(static_cast<std::size_t>(max_size) + 1, 0);
    for (const auto& path : nonnegative_paths(2 * max_size)) {
        auto cls = classify_path(path);
        if (cls.dyck && cls.component_count == 1) ++count[path.size() / 2];
    }
    for (int n = 1; n <= max_size; ++n)
        t.expect(BigInt(count[n]) == ballot(n - 1, 0), "indecomposable Dyck paths of size " + std::to_string(n));
    return t;
}

inline Tally check_indecomposable_321_counts(int max_n, unsigned threads = 1)
{
    Tally t;
    for (int n = 1; n <= max_n; ++n)
        t.expect(BigInt(count_avoiders(n, pattern_321(), true, threads)) == catalan(n - 1),
                 "indecomposable 321-avoiders of length " + std::to_string(n));
    return t;
}

// ---------------------------------------------------------------------------
// bijection

struct KCount {
    int k = 0;
    std::uint64_t avoiders = 0;
    std::uint64_t product = 0;   // |I_{n-k}(321)| * |C_{k,n-k-2}|, by enumeration
    BigInt formula = 0;          // C_{n-1-k} * ballot(k, n-k-2)
};

struct LengthReport {
    int n = 0;
    std::vector<KCount> per_k;
    Tally forward;   // p -> (q, L) -> p, plus image validity and |L| = |blue|
    Tally backward;  // (q, L) -> p -> (q, L), plus p validity
    Tally counts;    // per-k equalities

    bool ok() const { return forward.ok() && backward.ok() && counts.ok(); }
};

inline LengthReport check_bijection(int n, OrderingRule rule = OrderingRule::canonical, unsigned threads = 1)
{
    LengthReport report;
    report.n = n;
    for (int k = 0; k <= n - 2; ++k) report.per_k.push_back(KCount{k});

    auto avoiders = all_avoiders(n, threads);
    std::vector<std::uint64_t> per_k(static_cast<std::size_t>(std::max(n - 1, 0)), 0);
    report.forward = parallel_tally(avoiders, threads, [&](const Permutation& p, Tally& t) {
        MapImage image = forward_map(p, rule);
        bool q_ok = is_indecomposable(image.q) && avoids(image.q, pattern_321());
        bool size_ok = image.q.size() + image.heights.length() == n && image.heights.bound() == image.q.size() - 2;
        bool blue_ok = static_cast<std::size_t>(image.heights.length()) == detail::blue_entries(p).size();
        bool round_trip = inverse_map(image, rule) == p;
        t.expect(q_ok && size_ok && blue_ok && round_trip,
                 "forward " + to_string(p) + " -> (" + to_string(image.q) + "; " + to_string(image.heights) + ")" +
                     (q_ok ? "" : " [q invalid]") + (size_ok ? "" : " [sizes]") + (blue_ok ? "" : " [|L| != |blue|]") +
                     (round_trip ? "" : " [round trip]"));
    });
    if (n >= 2)
        for (const auto& p : avoiders) {
            // Forward failures are already recorded; count by blue entries, the independent statistic.
            std::size_t k = detail::blue_entries(p).size();
            if (k < per_k.size()) ++per_k[k];
            else report.counts.fail("avoider " + to_string(p) + " has " + std::to_string(k) + " blue entries");
        }

    struct Pair {
        Permutation q;
        int k;
    };
    std::vector<Pair> sources;
    for (int k = 0; k <= n - 2; ++k) {
        auto qs = enumerate_avoiders(n - k, pattern_321(), true);
        std::uint64_t sequences = 0;
        for_each_height_sequence(k, n - k - 2, [&](const HeightSequence&) { ++sequences; });
        report.per_k[k].product = qs.size() * sequences;
        for (auto& q : qs) sources.push_back(Pair{std::move(q), k});
    }
    report.backward = parallel_tally(sources, threads, [&](const Pair& src, Tally& t) {
        for_each_height_sequence(src.k, n - src.k - 2, [&](const HeightSequence& heights) {
            try {
                Permutation p = inverse_map(src.q, heights.heights(), rule);
                bool p_ok = p.size() == n && is_avoider(p) && detail::blue_entries(p).size() == static_cast<std::size_t>(src.k);
                MapImage back = forward_map(p, rule);
                t.expect(p_ok && back.q == src.q && back.heights == heights,
                         "backward (" + to_string(src.q) + "; " + to_string(heights) + ") -> " + to_string(p));
            } catch (const std::exception& e) {
                t.fail("backward (" + to_string(src.q) + "; " + to_string(heights) + "): " + e.what());
            }
        });
    });

    for (int k = 0; k <= n - 2; ++k) {
        KCount& row = report.per_k[k];
        row.avoiders = per_k[k];
        row.formula = catalan(n - 1 - k) * ballot(k, n - k - 2);
        report.counts.expect(BigInt(row.avoiders) == row.formula && BigInt(row.product) == row.formula,
                             "n=" + std::to_string(n) + " k=" + std::to_string(k) + ": avoiders " +
                                 std::to_string(row.avoiders) + ", product " + std::to_string(row.product) +
                                 ", formula " + row.formula.str());
    }
    return report;
}

/// Brute force over every (y, i): p (+)_i y is an avoider whose peak blue is y
/// and which has exactly one more blue entry than p. The passing pairs must be
/// exactly the insertion set paired with insertion_position.
inline Tally check_insertion_uniqueness(int max_n, unsigned threads = 1)
{
    Tally total;
    for (int n = 1; n <= max_n; ++n) {
        total.merge(parallel_tally(all_avoiders(n), threads, [&](const Permutation& p, Tally& t) {
            std::size_t blue = detail::blue_entries(p).size();
            std::set<std::pair<int, int>> found;
            for (int y = 1; y <= n + 1; ++y)
                for (int i = 1; i <= n + 1; ++i) {
                    Permutation q = insert_entry(p, i, y);
                    if (!is_avoider(q) || !detail::last_one_position(q.entries())) continue;
                    if (detail::peak_blue(q) == y && detail::blue_entries(q).size() == blue + 1) found.emplace(y, i);
                }
            std::set<std::pair<int, int>> expected;
            for (int y : peak_insertion_set(p)) expected.emplace(y, insertion_position(p, y));
            t.expect(found == expected, "insertion candidates of " + to_string(p));
        }));
    }
    return total;
}

/// Inserting the h-th element of the insertion list yields a list of length h+1.
inline Tally check_growth_law(int max_n, OrderingRule rule = OrderingRule::canonical, unsigned threads = 1)
{
    Tally total;
    for (int n = 1; n <= max_n; ++n) {
        total.merge(parallel_tally(all_avoiders(n), threads, [&](const Permutation& p, Tally& t) {
            Triple triple = detail::associated_triple(p);
            auto list = detail::peak_insertion_list(p, triple, rule);
            for (std::size_t h = 1; h <= list.size(); ++h) {
                int y = list[h - 1];
                Permutation next = insert_entry(p, detail::insertion_position(p, triple, y), y);
                auto next_list = detail::peak_insertion_list(next, detail::associated_triple(next), rule);
                t.expect(next_list.size() == h + 1,
                         "growth at " + to_string(p) + " h=" + std::to_string(h) + ": list length " +
                             std::to_string(next_list.size()));
            }
        }));
    }
    return total;
}

/// Deleting the peak blue keeps an avoider and removes exactly that blue entry.
inline Tally check_deletion_stability(int max_n, unsigned threads = 1)
{
    Tally total;
    for (int n = 1; n <= max_n; ++n) {
        total.merge(parallel_tally(all_avoiders(n), threads, [&](const Permutation& p, Tally& t) {
            if (!detail::last_one_position(p.entries())) return;
            int y = detail::peak_blue(p);
            auto blue = detail::blue_entries(p);
            Permutation next = delete_entry(p, y);
            std::vector<int> expected;
            for (int v : blue)
                if (v != y) expected.push_back(v > y ? v - 1 : v);
            bool in_blue = std::binary_search(blue.begin(), blue.end(), y);
            t.expect(in_blue && is_avoider(next) && detail::blue_entries(next) == expected,
                     "deleting peak blue " + std::to_string(y) + " from " + to_string(p));
        }));
    }
    return total;
}

/// Triple facts over every 321-containing avoider: a witness w > b before b;
/// finite c exceeds b; entries after a are >= finite c; b+1 lies left of b
/// when c is infinite or c > b+1; infinite c puts a last; every z > b left of
/// c is a left-to-right maximum. Also checks the run decomposition shape and
/// that the insertion list is a permutation of the insertion set.
inline Tally check_structure(int max_n, unsigned threads = 1)
{
    Tally total;
    for (int n = 1; n <= max_n; ++n) {
        total.merge(parallel_tally(all_avoiders(n), threads, [&](const Permutation& p, Tally& t) {
            Triple triple = detail::associated_triple(p);
            std::string who = to_string(p) + " " + to_string(triple);

            auto list = detail::peak_insertion_list(p, triple, OrderingRule::canonical);
            std::vector<int> sorted_list = list;
            std::sort(sorted_list.begin(), sorted_list.end());
            std::vector<int> set;
            for (int y = 1; y <= n; ++y)
                if (detail::in_insertion_set(triple, n, y)) set.push_back(y);
            t.expect(sorted_list == set, "insertion list is not the insertion set for " + who);

            if (n >= 2 && triple.c.is_finite()) {
                auto runs = detail::run_decomposition(p, triple.c.value());
                bool shape = runs.a_runs.size() == runs.b_runs.size() && !runs.b_runs.empty() &&
                             runs.b_runs.front().head == triple.c.value() && runs.a_runs.back().back() == n;
                t.expect(shape, "run decomposition shape for " + who);
            }

            if (triple.degenerate) {
                t.expect(detail::blue_entries(p).empty(), "321-avoider with blue entries: " + who);
                return;
            }
            int a = *triple.a, b = *triple.b;
            int a_pos = p.position_of(a), b_pos = p.position_of(b);
            auto e = p.entries();

            bool witness = false;
            for (int i = 0; i + 1 < b_pos && !witness; ++i) witness = e[i] > b;
            t.expect(witness, "no w with wba a 321 in " + who);

            auto blue = detail::blue_entries(p);
            t.expect(std::binary_search(blue.begin(), blue.end(), detail::peak_blue(p)), "peak blue is not blue in " + who);

            if (triple.c.is_finite()) {
                int c = triple.c.value();
                t.expect(c > b, "finite c <= b in " + who);
                bool after_a = true;
                for (int j = a_pos; j < n; ++j) after_a = after_a && e[j] >= c;
                t.expect(after_a, "entry after a below c in " + who);
            } else {
                t.expect(a_pos == n, "c infinite but a is not last in " + who);
            }

            if (triple.c.is_infinite() || triple.c.value() > b + 1)
                t.expect(b + 1 <= n && p.position_of(b + 1) < b_pos, "b+1 not left of b in " + who);

            int c_pos = triple.c.is_finite() ? p.position_of(triple.c.value()) : n + 1;
            std::vector<char> is_lrmax(n + 1, 0);
            for (int v : left_to_right_maxima(p)) is_lrmax[v] = 1;
            bool lrmax_ok = true;
            for (int j = 0; j + 1 < c_pos; ++j)
                if (e[j] > b && !is_lrmax[e[j]]) lrmax_ok = false;
            t.expect(lrmax_ok, "entry above b left of c is not a LRMax in " + who);
        }));
    }
    return total;
}

// ---------------------------------------------------------------------------
// series

/// F * (1 - G) = 1, G_n = u_n, and the transform route, to `order`.
inline Tally check_series_algebra(int order)
{
    Tally t;
    IntSeries g = g_series(order);
    IntSeries f = f_series(order);
    IntSeries one_minus_g = IntSeries::constant(1, order) - g;
    t.expect(f * one_minus_g == IntSeries::constant(1, order), "F * (1 - G) != 1");
    for (int n = 0; n <= order; ++n) t.expect(g[n] == u_by_formula(n), "G_" + std::to_string(n) + " != u_" + std::to_string(n));

    IntSeries c = catalan_series(order);
    for (int n = 0; n <= order; ++n) t.expect(c[n] == catalan(n), "C_" + std::to_string(n) + " != ballot(n, 0)");

    auto transformed = catalan_transform(c.coefficients());
    std::vector<BigInt> shifted(transformed.size());
    for (std::size_t i = 1; i < shifted.size(); ++i) shifted[i] = transformed[i - 1];
    t.expect(shifted == g.coefficients(), "x * catalan_transform(C) != G");
    t.expect(invert_transform(shifted) == f.coefficients(), "invert_transform(G) != F");
    return t;
}

/// Series coefficients against brute-force class sizes.
inline Tally check_series_counts(int max_n, unsigned threads = 1)
{
    Tally t;
    IntSeries g = g_series(std::max(max_n, 0));
    IntSeries f = f_series(std::max(max_n, 0));
    for (int n = 0; n <= max_n; ++n) {
        BigInt all = count_avoiders(n, avoider_patterns(), false, threads);
        BigInt indecomposable = count_avoiders(n, avoider_patterns(), true, threads);
        t.expect(f[n] == all, "F_" + std::to_string(n) + " != " + all.str() + " avoiders");
        t.expect(g[n] == indecomposable && u_by_formula(n) == indecomposable,
                 "G_" + std::to_string(n) + " or u_" + std::to_string(n) + " != " + indecomposable.str());
    }
    return t;
}

// ---------------------------------------------------------------------------
// Full run

struct VerifyOptions {
    int max_n = 7;
    unsigned threads = 1;
    OrderingRule rule = OrderingRule::canonical;
};

struct SuiteResult {
    std::string name;
    Tally tally;
};

struct VerificationReport {
    int max_n = 0;
    std::vector<LengthReport> lengths;
    std::uint64_t round_trip_failures = 0;
    std::vector<SuiteResult> suites;
    double duration_seconds = 0;

    bool passed() const
    {
        return round_trip_failures == 0 &&
               std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.tally.ok(); });
    }
};

inline VerificationReport run_verification(const VerifyOptions& options)
{
    auto start = std::chrono::steady_clock::now();
    VerificationReport report;
    int n = options.max_n;
    unsigned th = options.threads;
    report.max_n = n;

    report.suites.push_back({"perm_core.insert_delete_round_trip", check_insert_delete_round_trip(std::min(n, 6))});
    report.suites.push_back({"perm_core.components", check_components(std::min(n, 7))});
    report.suites.push_back({"perm_core.enumeration", check_enumeration(std::min(n, 7))});

    report.suites.push_back({"paths.round_trip", check_path_round_trip(12)});
    report.suites.push_back({"paths.height_sequence_counts", check_height_sequence_counts(10)});
    report.suites.push_back({"paths.indecomposable_dyck_counts", check_indecomposable_dyck_counts(8)});
    report.suites.push_back({"paths.indecomposable_321_counts", check_indecomposable_321_counts(n, th)});

    Tally forward, backward, counts;
    for (int len = 2; len <= n; ++len) {
        LengthReport lr = check_bijection(len, options.rule, th);
        forward.merge(lr.forward);
        backward.merge(lr.backward);
        counts.merge(lr.counts);
        report.lengths.push_back(std::move(lr));
    }
    report.round_trip_failures = forward.failed + backward.failed;
    report.suites.push_back({"bijection.forward_round_trip", forward});
    report.suites.push_back({"bijection.backward_round_trip", backward});
    report.suites.push_back({"bijection.per_k_counts", counts});
    report.suites.push_back({"bijection.insertion_uniqueness", check_insertion_uniqueness(std::min(n, 7), th)});
    report.suites.push_back({"bijection.growth_law", check_growth_law(std::min(n, 8), options.rule, th)});
    report.suites.push_back({"bijection.deletion_stability", check_deletion_stability(std::min(n, 8), th)});
    report.suites.push_back({"bijection.structure", check_structure(std::min(n, 9), th)});

    report.suites.push_back({"series.algebra", check_series_algebra(40)});
    report.suites.push_back({"series.brute_force_counts", check_series_counts(std::min(n, 9), th)});

    report.duration_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace avoider_lab
