#pragma once

// The bijection between indecomposable {4321, 3241}-avoiders of length n with
// k blue entries and pairs (q, L), where q is an indecomposable 321-avoider of
// length n-k and L is a height sequence in C_{k, n-k-2}.
//
// Vocabulary used throughout:
//   avoider       indecomposable permutation avoiding 4321 and 3241
//   blue entry    an entry serving as the "2" of a 321 or of a 4312
//   peak blue     the larger of the last "1" of a 321 and its predecessor
//   triple        (a, b, c): a is the last "1" of a 321, b the rightmost
//                 entry left of a exceeding a, c the first non-LRMax after a
//                 (or infinite); a 321-avoider gets the degenerate c = 1
//   insertion set [a+1, b+1] u [c+1, n], or [2, n] in the degenerate case
//   height        position of the deleted peak blue in the insertion list of
//                 the permutation it was deleted from

#include <algorithm>
#include <cassert>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "paths.hpp"
#include "permutation.hpp"

namespace avoider_lab {

/// Finite integer or +infinity.
class Bound {
public:
    static Bound finite(int value) { return Bound(value); }
    static Bound infinite() { return Bound(); }

    bool is_infinite() const { return !value_.has_value(); }
    bool is_finite() const { return value_.has_value(); }

    int value() const
    {
        if (!value_) throw InvariantViolation("value() of an infinite bound");
        return *value_;
    }

    std::string str() const { return value_ ? std::to_string(*value_) : "inf"; }

    bool operator==(const Bound&) const = default;

private:
    Bound() = default;
    explicit Bound(int value) : value_(value) {}

    std::optional<int> value_;
};

struct Triple {
    /// True for a 321-avoider: c = 1 and a, b absent.
    bool degenerate = true;
    std::optional<int> a;
    std::optional<int> b;
    Bound c = Bound::finite(1);

    static Triple for_321_avoider() { return Triple{}; }
    static Triple of(int a, int b, Bound c) { return Triple{false, a, b, c}; }

    bool operator==(const Triple&) const = default;
};

inline std::string to_string(const Triple& t)
{
    if (t.degenerate) return "(c=1, degenerate)";
    return "(" + std::to_string(*t.a) + "," + std::to_string(*t.b) + "," + t.c.str() + ")";
}

/// First entry of a maximal consecutive run of B, plus the rest of that run.
struct BRun {
    int head = 0;
    std::vector<int> tail;

    bool operator==(const BRun&) const = default;
};

/// Maximal consecutive runs of A (LRMax entries > c) and B (non-LRMax entries >= c).
struct RunDecomposition {
    std::vector<std::vector<int>> a_runs;
    std::vector<BRun> b_runs;

    int t() const { return static_cast<int>(a_runs.size()); }

    bool operator==(const RunDecomposition&) const = default;
};

/// How the run groups are emitted. `terminal_rotated` is a deliberately wrong
/// rule (b+1 moved to the front of the terminal segment), used as a negative
/// control by the verification harness.
enum class OrderingRule { canonical, terminal_rotated };

struct MapImage {
    Permutation q;
    HeightSequence heights;

    bool operator==(const MapImage&) const = default;
};

// ---------------------------------------------------------------------------
// Domain checks

/// Indecomposable and {4321, 3241}-avoiding.
inline bool is_avoider(const Permutation& p) { return is_indecomposable(p) && avoids(p, avoider_patterns()); }

namespace detail {

inline std::string positions_text(const std::vector<int>& positions)
{
    std::string out;
    for (std::size_t i = 0; i < positions.size(); ++i) out += (i ? "," : "") + std::to_string(positions[i]);
    return out;
}

inline std::string pattern_text(const Permutation& pat)
{
    std::string out;
    for (int v : pat) out += std::to_string(v);
    return out;
}

} // namespace detail

/// Throws DomainError naming the first violated precondition.
inline void require_avoider(const Permutation& p, const char* operation)
{
    std::string prefix = std::string(operation) + ": " + (p.empty() ? "empty permutation" : to_string(p));
    for (const auto& pat : avoider_patterns().patterns()) {
        if (auto hit = find_pattern(p, pat))
            throw DomainError(prefix + " contains " + detail::pattern_text(pat) + " at positions " +
                              detail::positions_text(*hit));
    }
    if (!is_indecomposable(p)) throw DomainError(prefix + " is not indecomposable");
}

inline void require_indecomposable_321_avoider(const Permutation& p, const char* operation)
{
    std::string prefix = std::string(operation) + ": " + (p.empty() ? "empty permutation" : to_string(p));
    if (auto hit = find_pattern(p, Permutation{3, 2, 1}))
        throw DomainError(prefix + " contains 321 at positions " + detail::positions_text(*hit));
    if (!is_indecomposable(p)) throw DomainError(prefix + " is not indecomposable");
}

#ifndef NDEBUG
#define AVOIDER_LAB_DEBUG_REQUIRE_AVOIDER(p) assert(::avoider_lab::is_avoider(p))
#else
#define AVOIDER_LAB_DEBUG_REQUIRE_AVOIDER(p) ((void)0)
#endif

// ---------------------------------------------------------------------------
// Unchecked kernels. Callers guarantee the avoider precondition.

namespace detail {

/// 1-based position of the last "1" of a 321, if p contains 321.
inline std::optional<int> last_one_position(std::span<const int> e)
{
    int n = static_cast<int>(e.size());
    // middle[j]: e[j] has a larger entry somewhere to its left.
    std::vector<char> middle(e.size(), 0);
    int running_max = 0;
    for (int j = 0; j < n; ++j) {
        middle[j] = running_max > e[j];
        running_max = std::max(running_max, e[j]);
    }
    for (int l = n - 1; l >= 2; --l)
        for (int j = 1; j < l; ++j)
            if (middle[j] && e[j] > e[l]) return l + 1;
    return std::nullopt;
}

inline std::vector<int> blue_entries(const Permutation& p)
{
    auto e = p.entries();
    int n = p.size();
    std::vector<char> middle(e.size(), 0);
    int running_max = 0;
    for (int j = 0; j < n; ++j) {
        middle[j] = running_max > e[j];
        running_max = std::max(running_max, e[j]);
    }
    std::vector<int> blue;
    for (int l = 0; l < n; ++l) {
        // "2" of a 321: larger entry before, smaller entry after.
        bool is_blue = false;
        if (middle[l])
            for (int r = l + 1; r < n && !is_blue; ++r) is_blue = e[r] < e[l];
        // "2" of a 4312 (last letter): some k < l with e[k] < e[l], and j < k
        // with e[j] > e[l] that itself has a larger entry before it.
        for (int k = 1; k < l && !is_blue; ++k) {
            if (e[k] >= e[l]) continue;
            for (int j = 1; j < k && !is_blue; ++j) is_blue = middle[j] && e[j] > e[l];
        }
        if (is_blue) blue.push_back(e[l]);
    }
    std::sort(blue.begin(), blue.end());
    return blue;
}

inline Triple associated_triple(const Permutation& p)
{
    auto e = p.entries();
    auto last_one = last_one_position(e);
    if (!last_one) return Triple::for_321_avoider();
    int ai = *last_one - 1;
    int a = e[ai];
    int b = 0;
    for (int j = ai - 1; j >= 0; --j) {
        if (e[j] > a) {
            b = e[j];
            break;
        }
    }
    int running_max = 0;
    for (int j = 0; j <= ai; ++j) running_max = std::max(running_max, e[j]);
    Bound c = Bound::infinite();
    for (int j = ai + 1; j < p.size(); ++j) {
        if (e[j] < running_max) {
            c = Bound::finite(e[j]);
            break;
        }
        running_max = e[j];
    }
    detail::ensure(c.is_infinite() || c.value() > b, "associated triple: finite c must exceed b");
    return Triple::of(a, b, c);
}

inline int peak_blue(const Permutation& p)
{
    auto last_one = last_one_position(p.entries());
    if (!last_one) throw DomainError("peak_blue: " + to_string(p) + " avoids 321");
    int pos = *last_one;
    return std::max(p.entries()[pos - 1], p.entries()[pos - 2]);
}

inline RunDecomposition run_decomposition(const Permutation& p, int c)
{
    int n = p.size();
    std::vector<char> is_lrmax(n + 1, 0);
    for (int v : left_to_right_maxima(p)) is_lrmax[v] = 1;
    RunDecomposition runs;
    // Values c..n alternate between B-runs (non-LRMax) and A-runs (LRMax > c).
    int v = c;
    while (v <= n) {
        bool in_a = v > c && is_lrmax[v];
        int start = v;
        while (v + 1 <= n && (v + 1 > c && is_lrmax[v + 1]) == in_a) ++v;
        if (in_a) {
            std::vector<int> run;
            for (int x = start; x <= v; ++x) run.push_back(x);
            runs.a_runs.push_back(std::move(run));
        } else {
            BRun run{start, {}};
            for (int x = start + 1; x <= v; ++x) run.tail.push_back(x);
            runs.b_runs.push_back(std::move(run));
        }
        ++v;
    }
    return runs;
}

inline void validate_runs(const Triple& triple, int n, const RunDecomposition& runs)
{
    if (triple.c.is_infinite()) {
        if (!runs.a_runs.empty() || !runs.b_runs.empty())
            throw InvalidInput("order_runs: runs given although c is infinite");
        return;
    }
    int c = triple.c.value();
    if (runs.a_runs.size() != runs.b_runs.size())
        throw InvalidInput("order_runs: A and B must have the same number of runs");
    if (runs.b_runs.empty()) throw InvalidInput("order_runs: need at least one run pair when c is finite");
    // Runs must tile [c, n] as b_1B_1 A_1 b_2B_2 A_2 ... A_t.
    int expect = c;
    for (std::size_t i = 0; i < runs.b_runs.size(); ++i) {
        const BRun& br = runs.b_runs[i];
        if (br.head != expect) throw InvalidInput("order_runs: B-run " + std::to_string(i + 1) + " does not start at " + std::to_string(expect));
        ++expect;
        for (int x : br.tail)
            if (x != expect++) throw InvalidInput("order_runs: B-run " + std::to_string(i + 1) + " is not consecutive");
        const auto& ar = runs.a_runs[i];
        if (ar.empty()) throw InvalidInput("order_runs: empty A-run");
        for (int x : ar)
            if (x != expect++) throw InvalidInput("order_runs: A-run " + std::to_string(i + 1) + " is not consecutive after its B-run");
    }
    if (expect != n + 1) throw InvalidInput("order_runs: runs do not end at n");
}

inline std::vector<int> order_runs_unchecked(const Triple& triple, const RunDecomposition& runs, OrderingRule rule)
{
    std::vector<int> list;
    int t = runs.t();
    // A_t B_t^r A_{t-1} b_t B_{t-1}^r ... A_1 b_2 B_1^r
    for (int i = t - 1; i >= 0; --i) {
        const auto& ar = runs.a_runs[i];
        list.insert(list.end(), ar.begin(), ar.end());
        if (i + 1 < t) list.push_back(runs.b_runs[i + 1].head);
        const auto& tail = runs.b_runs[i].tail;
        list.insert(list.end(), tail.rbegin(), tail.rend());
    }
    if (!triple.degenerate) {
        int a = *triple.a;
        int b = *triple.b;
        if (rule == OrderingRule::terminal_rotated) list.push_back(b + 1);
        for (int y = b; y >= a + 1; --y) list.push_back(y);
        if (rule == OrderingRule::canonical) list.push_back(b + 1);
    }
    return list;
}

inline std::vector<int> peak_insertion_list(const Permutation& p, const Triple& triple, OrderingRule rule)
{
    if (p.size() <= 1) return {};
    RunDecomposition runs;
    if (triple.c.is_finite()) runs = run_decomposition(p, triple.c.value());
    return order_runs_unchecked(triple, runs, rule);
}

inline bool in_insertion_set(const Triple& triple, int n, int y)
{
    if (n <= 1) return false;
    if (triple.c.is_finite() && y >= triple.c.value() + 1 && y <= n) return true;
    return !triple.degenerate && y >= *triple.a + 1 && y <= *triple.b + 1;
}

inline int insertion_position(const Permutation& p, const Triple& triple, int y)
{
    auto e = p.entries();
    if (triple.c.is_finite() && y > triple.c.value()) {
        // Immediately left of the rightmost entry smaller than y.
        for (int j = p.size() - 1; j >= 0; --j)
            if (e[j] < y) return j + 1;
        throw InvariantViolation("insertion_position: no entry below y");
    }
    int a_pos = p.position_of(*triple.a);
    return y == *triple.b + 1 ? a_pos : a_pos + 1;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Public, domain-checked operations

/// Sorted blue entries of an avoider; empty iff p avoids 321.
inline std::vector<int> blue_entries(const Permutation& p)
{
    require_avoider(p, "blue_entries");
    return detail::blue_entries(p);
}

inline int peak_blue(const Permutation& p)
{
    require_avoider(p, "peak_blue");
    return detail::peak_blue(p);
}

inline Triple associated_triple(const Permutation& p)
{
    require_avoider(p, "associated_triple");
    return detail::associated_triple(p);
}

/// The runs of A and B over [c, n]; empty when c is infinite or n <= 1.
inline RunDecomposition run_decomposition(const Permutation& p)
{
    require_avoider(p, "run_decomposition");
    Triple triple = detail::associated_triple(p);
    if (p.size() <= 1 || triple.c.is_infinite()) return {};
    return detail::run_decomposition(p, triple.c.value());
}

/// Emits A_t B_t^r A_{t-1} b_t B_{t-1}^r ... A_1 b_2 B_1^r, followed by
/// b, b-1, ..., a+1, b+1 unless the triple is degenerate. The runs must tile [c, n].
inline std::vector<int> order_runs(const Triple& triple, int n, const RunDecomposition& runs,
                                   OrderingRule rule = OrderingRule::canonical)
{
    detail::validate_runs(triple, n, runs);
    return detail::order_runs_unchecked(triple, runs, rule);
}

/// Sorted peak-insertion set; empty for the length-1 avoider.
inline std::vector<int> peak_insertion_set(const Permutation& p)
{
    require_avoider(p, "peak_insertion_set");
    Triple triple = detail::associated_triple(p);
    std::vector<int> set;
    for (int y = 1; y <= p.size(); ++y)
        if (detail::in_insertion_set(triple, p.size(), y)) set.push_back(y);
    return set;
}

inline std::vector<int> peak_insertion_list(const Permutation& p, OrderingRule rule = OrderingRule::canonical)
{
    require_avoider(p, "peak_insertion_list");
    return detail::peak_insertion_list(p, detail::associated_triple(p), rule);
}

/// The unique position i at which inserting y makes y the new peak blue entry.
inline int insertion_position(const Permutation& p, int y)
{
    require_avoider(p, "insertion_position");
    Triple triple = detail::associated_triple(p);
    if (!detail::in_insertion_set(triple, p.size(), y))
        throw DomainError("insertion_position: " + std::to_string(y) + " is not in the peak-insertion set of " +
                          to_string(p));
    return detail::insertion_position(p, triple, y);
}

/// Deletes peak blue entries until a 321-avoider q remains, prepending each height.
inline MapImage forward_map(const Permutation& p, OrderingRule rule = OrderingRule::canonical)
{
    require_avoider(p, "forward_map");
    Permutation current = p;
    std::vector<int> recorded;
    while (detail::last_one_position(current.entries())) {
        AVOIDER_LAB_DEBUG_REQUIRE_AVOIDER(current);
        int y = detail::peak_blue(current);
        Permutation next = delete_entry(current, y);
        auto list = detail::peak_insertion_list(next, detail::associated_triple(next), rule);
        auto it = std::find(list.begin(), list.end(), y);
        if (it == list.end())
            throw InvariantViolation("forward_map: peak blue " + std::to_string(y) + " of " + to_string(current) +
                                     " is missing from the insertion list of " + to_string(next));
        recorded.push_back(static_cast<int>(it - list.begin()) + 1);
        current = std::move(next);
    }
    std::vector<int> heights(recorded.rbegin(), recorded.rend());
    int bound = current.size() - 2;
    return MapImage{current, HeightSequence(std::move(heights), bound)};
}

/// Rebuilds the avoider from (q, L) by inserting the L[j]-th element of the
/// current insertion list at its insertion position, j = 1..k.
inline Permutation inverse_map(const Permutation& q, const std::vector<int>& heights,
                               OrderingRule rule = OrderingRule::canonical)
{
    require_indecomposable_321_avoider(q, "inverse_map");
    HeightSequence checked(heights, q.size() - 2);
    Permutation current = q;
    for (int h : checked.heights()) {
        Triple triple = detail::associated_triple(current);
        auto list = detail::peak_insertion_list(current, triple, rule);
        if (h > static_cast<int>(list.size()))
            throw InvalidHeight("inverse_map: height " + std::to_string(h) + " exceeds the insertion list length " +
                                std::to_string(list.size()) + " of " + to_string(current));
        int y = list[h - 1];
        current = insert_entry(current, detail::insertion_position(current, triple, y), y);
    }
    return current;
}

inline Permutation inverse_map(const MapImage& image, OrderingRule rule = OrderingRule::canonical)
{
    return inverse_map(image.q, image.heights.heights(), rule);
}

// ---------------------------------------------------------------------------
// Analysis dump

struct Analysis {
    Permutation perm;
    std::vector<int> blue;
    std::optional<int> peak_blue;
    Triple triple;
    std::vector<int> insertion_set;
    std::vector<int> insertion_list;
    MapImage image;
};

inline Analysis analyze_avoider(const Permutation& p)
{
    require_avoider(p, "analyze");
    Analysis out;
    out.perm = p;
    out.blue = detail::blue_entries(p);
    if (detail::last_one_position(p.entries())) out.peak_blue = detail::peak_blue(p);
    out.triple = detail::associated_triple(p);
    for (int y = 1; y <= p.size(); ++y)
        if (detail::in_insertion_set(out.triple, p.size(), y)) out.insertion_set.push_back(y);
    out.insertion_list = detail::peak_insertion_list(p, out.triple, OrderingRule::canonical);
    out.image = forward_map(p);
    return out;
}

} // namespace avoider_lab
