#pragma once

// Permutations of [n] in one-line form, classical pattern containment,
// component structure, single-entry deletion/insertion, and pruned
// enumeration of pattern classes.
//
// Positions and values are 1-indexed in every public signature.

#include <algorithm>
#include <atomic>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "errors.hpp"

namespace avoider_lab {

class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<int> entries) : entries_(std::move(entries))
    {
        std::vector<char> seen(entries_.size() + 1, 0);
        for (int v : entries_) {
            if (v < 1 || static_cast<std::size_t>(v) > entries_.size() || seen[v])
                throw InvalidInput("not a permutation of 1.." + std::to_string(entries_.size()));
            seen[v] = 1;
        }
    }

    Permutation(std::initializer_list<int> entries) : Permutation(std::vector<int>(entries)) {}

    /// Skips validation; callers guarantee the entries form a permutation of [n].
    static Permutation from_trusted(std::vector<int> entries)
    {
        Permutation p;
        p.entries_ = std::move(entries);
        return p;
    }

    static Permutation identity(int n)
    {
        std::vector<int> e(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) e[i] = i + 1;
        return from_trusted(std::move(e));
    }

    int size() const { return static_cast<int>(entries_.size()); }
    bool empty() const { return entries_.empty(); }

    std::span<const int> entries() const { return entries_; }
    const std::vector<int>& to_vector() const { return entries_; }

    /// Entry at 1-based position `pos`.
    int at(int pos) const
    {
        if (pos < 1 || pos > size()) throw InvalidInput("position out of range: " + std::to_string(pos));
        return entries_[pos - 1];
    }

    /// 1-based position of value `y`.
    int position_of(int y) const
    {
        auto it = std::find(entries_.begin(), entries_.end(), y);
        if (it == entries_.end()) throw InvalidInput("value not present: " + std::to_string(y));
        return static_cast<int>(it - entries_.begin()) + 1;
    }

    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    bool operator==(const Permutation&) const = default;
    auto operator<=>(const Permutation&) const = default;

private:
    std::vector<int> entries_;
};

// ---------------------------------------------------------------------------
// Text forms

/// Comma form "2,7,3,5,1,6,4". The empty permutation prints as "".
inline std::string to_string(const Permutation& p)
{
    std::string out;
    for (int i = 0; i < p.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(p.entries()[i]);
    }
    return out;
}

/// Parses a comma-separated integer list; surrounding whitespace is ignored.
inline std::vector<int> parse_int_list(std::string_view text)
{
    std::vector<int> values;
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text.empty()) return values;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        std::string_view token = trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
        if (token.empty()) throw InvalidInput("empty item in list \"" + std::string(text) + "\"");
        int value = 0;
        for (char ch : token) {
            if (ch < '0' || ch > '9') throw InvalidInput("not an integer: \"" + std::string(token) + "\"");
            value = value * 10 + (ch - '0');
            if (value > 1'000'000) throw InvalidInput("integer too large: \"" + std::string(token) + "\"");
        }
        values.push_back(value);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return values;
}

/// Accepts the comma form, or a compact digit string such as "2735164".
inline Permutation parse_permutation(std::string_view text)
{
    bool compact = !text.empty() && text.find(',') == std::string_view::npos && text.size() > 1;
    if (compact) {
        std::vector<int> values;
        for (char ch : text) {
            if (ch < '1' || ch > '9') throw InvalidInput("bad permutation text \"" + std::string(text) + "\"");
            values.push_back(ch - '0');
        }
        return Permutation(std::move(values));
    }
    return Permutation(parse_int_list(text));
}

// ---------------------------------------------------------------------------
// Standardization

/// Order-isomorphic standard permutation of distinct positive values.
inline Permutation standardize(std::span<const int> values)
{
    std::vector<std::size_t> order(values.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return values[l] < values[r]; });
    std::vector<int> ranks(values.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
        if (values[order[r]] < 1) throw InvalidInput("values must be positive");
        if (r > 0 && values[order[r]] == values[order[r - 1]])
            throw InvalidInput("duplicate value " + std::to_string(values[order[r]]));
        ranks[order[r]] = static_cast<int>(r) + 1;
    }
    return Permutation::from_trusted(std::move(ranks));
}

// ---------------------------------------------------------------------------
// Pattern containment

namespace detail {

// Depth-first choice of increasing indices into `values` matching `pat` in
// relative order. `chosen` receives 0-based indices. Indices are tried in
// increasing order, so the first success is the lexicographically least.
inline bool match_from(std::span<const int> values, std::span<const int> pat, std::size_t first_index,
                       std::size_t last_index_bound, std::vector<std::size_t>& chosen)
{
    std::size_t depth = chosen.size();
    if (depth == pat.size()) return true;
    std::size_t remaining = pat.size() - depth;
    if (last_index_bound < remaining) return false;
    for (std::size_t idx = first_index; idx + remaining <= last_index_bound; ++idx) {
        bool consistent = true;
        for (std::size_t j = 0; j < depth && consistent; ++j)
            consistent = (values[chosen[j]] < values[idx]) == (pat[j] < pat[depth]);
        if (!consistent) continue;
        chosen.push_back(idx);
        if (match_from(values, pat, idx + 1, last_index_bound, chosen)) return true;
        chosen.pop_back();
    }
    return false;
}

// Like match_from, but every chosen value must also stand in the pattern's
// relation to a fixed final element (`tail_value` playing `tail_letter`).
inline bool match_before_tail(std::span<const int> values, std::span<const int> head, int tail_value,
                              int tail_letter, std::size_t from, std::size_t* chosen, std::size_t depth)
{
    if (depth == head.size()) return true;
    for (std::size_t idx = from; idx + (head.size() - depth) <= values.size(); ++idx) {
        int v = values[idx];
        if ((v < tail_value) != (head[depth] < tail_letter)) continue;
        bool consistent = true;
        for (std::size_t j = 0; j < depth && consistent; ++j)
            consistent = (values[chosen[j]] < v) == (head[j] < head[depth]);
        if (!consistent) continue;
        chosen[depth] = idx;
        if (match_before_tail(values, head, tail_value, tail_letter, idx + 1, chosen, depth + 1)) return true;
    }
    return false;
}

/// True iff `values` has an occurrence of `pat` whose last element is the last entry of `values`.
inline bool occurs_ending_at_last(std::span<const int> values, std::span<const int> pat)
{
    if (pat.empty() || values.size() < pat.size()) return false;
    std::vector<std::size_t> chosen(pat.size());
    return match_before_tail(values.first(values.size() - 1), pat.first(pat.size() - 1), values.back(), pat.back(),
                             0, chosen.data(), 0);
}

} // namespace detail

/// Lexicographically least occurrence of `pat` in `p` as 1-based positions, if any.
inline std::optional<std::vector<int>> find_pattern(const Permutation& p, const Permutation& pat)
{
    if (pat.empty()) throw InvalidInput("pattern must be non-empty");
    std::vector<std::size_t> chosen;
    chosen.reserve(pat.entries().size());
    if (!detail::match_from(p.entries(), pat.entries(), 0, p.entries().size(), chosen)) return std::nullopt;
    std::vector<int> positions;
    for (std::size_t idx : chosen) positions.push_back(static_cast<int>(idx) + 1);
    return positions;
}

inline bool contains_pattern(const Permutation& p, const Permutation& pat)
{
    return find_pattern(p, pat).has_value();
}

/// A set of classical patterns, each a non-empty standard permutation.
class PatternSet {
public:
    PatternSet() = default;

    explicit PatternSet(std::vector<Permutation> patterns) : patterns_(std::move(patterns))
    {
        for (const auto& pat : patterns_)
            if (pat.empty()) throw InvalidInput("patterns must be non-empty");
        std::sort(patterns_.begin(), patterns_.end());
        patterns_.erase(std::unique(patterns_.begin(), patterns_.end()), patterns_.end());
    }

    PatternSet(std::initializer_list<Permutation> patterns) : PatternSet(std::vector<Permutation>(patterns)) {}

    const std::vector<Permutation>& patterns() const { return patterns_; }
    bool empty() const { return patterns_.empty(); }

private:
    std::vector<Permutation> patterns_;
};

inline bool avoids(const Permutation& p, const PatternSet& pats)
{
    return std::none_of(pats.patterns().begin(), pats.patterns().end(),
                        [&](const Permutation& pat) { return contains_pattern(p, pat); });
}

// ---------------------------------------------------------------------------
// Components

/// Maximal split into blocks whose prefixes are closed under {1..j}; each block standardized.
inline std::vector<Permutation> components(const Permutation& p)
{
    std::vector<Permutation> blocks;
    int running_max = 0;
    int block_start = 0;
    auto e = p.entries();
    for (int j = 0; j < p.size(); ++j) {
        running_max = std::max(running_max, e[j]);
        if (running_max == j + 1) {
            std::vector<int> block;
            for (int i = block_start; i <= j; ++i) block.push_back(e[i] - block_start);
            blocks.push_back(Permutation::from_trusted(std::move(block)));
            block_start = j + 1;
        }
    }
    return blocks;
}

/// Exactly one component. The empty permutation is not indecomposable.
inline bool is_indecomposable(const Permutation& p)
{
    if (p.empty()) return false;
    int running_max = 0;
    auto e = p.entries();
    for (int j = 0; j + 1 < p.size(); ++j) {
        running_max = std::max(running_max, e[j]);
        if (running_max == j + 1) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Deletion and insertion

/// p\{y}: erase y, then decrement every entry greater than y.
inline Permutation delete_entry(const Permutation& p, int y)
{
    if (y < 1 || y > p.size()) throw InvalidInput("delete_entry: value out of range: " + std::to_string(y));
    std::vector<int> out;
    out.reserve(p.size() - 1);
    for (int v : p)
        if (v != y) out.push_back(v > y ? v - 1 : v);
    return Permutation::from_trusted(std::move(out));
}

/// p (+)_i y: increment every entry >= y, then place y at position i.
inline Permutation insert_entry(const Permutation& p, int i, int y)
{
    int n = p.size();
    if (y < 1 || y > n + 1) throw InvalidInput("insert_entry: value out of range: " + std::to_string(y));
    if (i < 1 || i > n + 1) throw InvalidInput("insert_entry: position out of range: " + std::to_string(i));
    std::vector<int> out;
    out.reserve(n + 1);
    for (int pos = 1; pos <= n; ++pos) {
        if (pos == i) out.push_back(y);
        int v = p.entries()[pos - 1];
        out.push_back(v >= y ? v + 1 : v);
    }
    if (i == n + 1) out.push_back(y);
    return Permutation::from_trusted(std::move(out));
}

/// Entries strictly greater than every entry to their left, in positional (hence increasing) order.
inline std::vector<int> left_to_right_maxima(const Permutation& p)
{
    std::vector<int> maxima;
    int running_max = 0;
    for (int v : p) {
        if (v > running_max) {
            maxima.push_back(v);
            running_max = v;
        }
    }
    return maxima;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace detail {

struct AvoiderSearch {
    int n;
    const PatternSet& pats;
    bool indecomposable_only;

    // Prefix extension in increasing value order gives lexicographic emission.
    template <typename Visit>
    void extend(std::vector<int>& prefix, std::vector<char>& used, Visit& visit) const
    {
        if (static_cast<int>(prefix.size()) == n) {
            Permutation p = Permutation::from_trusted(prefix);
            if (!indecomposable_only || is_indecomposable(p)) visit(p);
            return;
        }
        for (int v = 1; v <= n; ++v) {
            if (used[v]) continue;
            prefix.push_back(v);
            // Indecomposability prunes too: a proper prefix equal to {1..j} is final.
            bool ok = true;
            if (indecomposable_only && static_cast<int>(prefix.size()) < n) {
                int mx = *std::max_element(prefix.begin(), prefix.end());
                ok = mx != static_cast<int>(prefix.size());
            }
            for (const auto& pat : pats.patterns()) {
                if (!ok) break;
                ok = !occurs_ending_at_last(prefix, pat.entries());
            }
            if (ok) {
                used[v] = 1;
                extend(prefix, used, visit);
                used[v] = 0;
            }
            prefix.pop_back();
        }
    }

    template <typename Visit>
    void run_from_first(int first, Visit& visit) const
    {
        std::vector<int> prefix{first};
        std::vector<char> used(n + 1, 0);
        used[first] = 1;
        if (indecomposable_only && n > 1 && first == 1) return;
        for (const auto& pat : pats.patterns())
            if (occurs_ending_at_last(prefix, pat.entries())) return;
        extend(prefix, used, visit);
    }
};

// Runs `job(first)` for first = 1..n on up to `threads` workers.
inline void for_each_first_entry(int n, unsigned threads, const std::function<void(int)>& job)
{
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (threads == 1) {
        for (int first = 1; first <= n; ++first) job(first);
        return;
    }
    std::atomic<int> next{1};
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&] {
            for (int first = next++; first <= n; first = next++) job(first);
        });
    }
    for (auto& w : workers) w.join();
}

} // namespace detail

/// Visits every length-n permutation avoiding `pats` (optionally only the
/// indecomposable ones) in lexicographic order. Single-threaded.
template <typename Visit>
void for_each_avoider(int n, const PatternSet& pats, bool indecomposable_only, Visit&& visit)
{
    if (n < 0) throw InvalidInput("length must be non-negative");
    if (n == 0) {
        if (!indecomposable_only) visit(Permutation{});
        return;
    }
    detail::AvoiderSearch search{n, pats, indecomposable_only};
    for (int first = 1; first <= n; ++first) search.run_from_first(first, visit);
}

/// All avoiders in lexicographic order; partitioned by first entry across workers.
inline std::vector<Permutation> enumerate_avoiders(int n, const PatternSet& pats, bool indecomposable_only,
                                                   unsigned threads = 1)
{
    if (n < 0) throw InvalidInput("length must be non-negative");
    if (n == 0) return indecomposable_only ? std::vector<Permutation>{} : std::vector<Permutation>{Permutation{}};
    std::vector<std::vector<Permutation>> by_first(n + 1);
    detail::AvoiderSearch search{n, pats, indecomposable_only};
    detail::for_each_first_entry(n, threads, [&](int first) {
        auto collect = [&](const Permutation& p) { by_first[first].push_back(p); };
        search.run_from_first(first, collect);
    });
    std::vector<Permutation> all;
    for (auto& chunk : by_first) all.insert(all.end(), std::make_move_iterator(chunk.begin()), std::make_move_iterator(chunk.end()));
    return all;
}

inline std::uint64_t count_avoiders(int n, const PatternSet& pats, bool indecomposable_only, unsigned threads = 1)
{
    if (n < 0) throw InvalidInput("length must be non-negative");
    if (n == 0) return indecomposable_only ? 0 : 1;
    std::vector<std::uint64_t> by_first(n + 1, 0);
    detail::AvoiderSearch search{n, pats, indecomposable_only};
    detail::for_each_first_entry(n, threads, [&](int first) {
        std::uint64_t count = 0;
        auto tally = [&](const Permutation&) { ++count; };
        search.run_from_first(first, tally);
        by_first[first] = count;
    });
    std::uint64_t total = 0;
    for (auto c : by_first) total += c;
    return total;
}

/// The two classes this library is built around.
inline const PatternSet& avoider_patterns()
{
    static const PatternSet pats{Permutation{4, 3, 2, 1}, Permutation{3, 2, 4, 1}};
    return pats;
}

inline const PatternSet& pattern_321()
{
    static const PatternSet pats{Permutation{3, 2, 1}};
    return pats;
}

} // namespace avoider_lab
