#pragma once

// Nonnegative lattice paths over U=(1,1), D=(1,-1), ballot numbers, and the
// peak-deletion bijection between nonnegative paths with n downsteps and n+m
// upsteps and bounded-growth height sequences.

#include <string>
#include <string_view>
#include <vector>

#include "bigint.hpp"
#include "errors.hpp"

namespace avoider_lab {

enum class Step : char { Up = 'U', Down = 'D' };

class LatticePath {
public:
    LatticePath() = default;
    explicit LatticePath(std::vector<Step> steps) : steps_(std::move(steps)) {}

    /// String over 'U' and 'D', no whitespace.
    static LatticePath parse(std::string_view text)
    {
        std::vector<Step> steps;
        steps.reserve(text.size());
        for (char ch : text) {
            if (ch == 'U') steps.push_back(Step::Up);
            else if (ch == 'D') steps.push_back(Step::Down);
            else throw InvalidInput("bad path character '" + std::string(1, ch) + "' in \"" + std::string(text) + "\"");
        }
        return LatticePath(std::move(steps));
    }

    const std::vector<Step>& steps() const { return steps_; }
    int size() const { return static_cast<int>(steps_.size()); }

    int up_count() const
    {
        int ups = 0;
        for (Step s : steps_) ups += s == Step::Up;
        return ups;
    }
    int down_count() const { return size() - up_count(); }

    std::string str() const
    {
        std::string out;
        for (Step s : steps_) out += static_cast<char>(s);
        return out;
    }

    bool operator==(const LatticePath&) const = default;

private:
    std::vector<Step> steps_;
};

/// Element of C_{k,r}: 1 <= a_1 <= r+1 and 1 <= a_i <= a_{i-1}+1.
class HeightSequence {
public:
    HeightSequence() = default;

    HeightSequence(std::vector<int> heights, int bound) : heights_(std::move(heights)), bound_(bound)
    {
        if (bound_ < -1) throw InvalidInput("height bound must be >= -1");
        int ceiling = bound_ + 1;
        for (std::size_t i = 0; i < heights_.size(); ++i) {
            int h = heights_[i];
            if (h < 1 || h > ceiling)
                throw InvalidInput("height " + std::to_string(h) + " at index " + std::to_string(i + 1) +
                                   " violates the growth bound " + std::to_string(ceiling));
            ceiling = h + 1;
        }
    }

    const std::vector<int>& heights() const { return heights_; }
    int length() const { return static_cast<int>(heights_.size()); }
    /// The r of C_{k,r}.
    int bound() const { return bound_; }

    bool operator==(const HeightSequence&) const = default;

private:
    std::vector<int> heights_;
    int bound_ = 0;
};

inline std::string to_string(const HeightSequence& seq)
{
    std::string out;
    for (std::size_t i = 0; i < seq.heights().size(); ++i) {
        if (i) out += ',';
        out += std::to_string(seq.heights()[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Ballot numbers

inline BigInt binomial(int n, int k)
{
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt result = 1;
    for (int i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

/// Number of nonnegative paths with n downsteps and n+m upsteps:
/// (m+1)/(2n+m+1) * binom(2n+m+1, n), with ballot(n,-1) = [n == 0].
inline BigInt ballot(int n, int m)
{
    if (n < 0 || m < -1) throw InvalidInput("ballot: need n >= 0 and m >= -1");
    if (m == -1) return n == 0 ? 1 : 0;
    int total = 2 * n + m + 1;
    BigInt numerator = binomial(total, n) * (m + 1);
    BigInt quotient = numerator / total;
    detail::ensure(quotient * total == numerator, "ballot: inexact division");
    return quotient;
}

inline BigInt catalan(int n) { return ballot(n, 0); }

// ---------------------------------------------------------------------------
// Path classification and the peak-deletion bijection

struct PathClass {
    bool nonnegative = false;
    bool dyck = false;
    /// Returns to ground level; zero unless the path is Dyck.
    int component_count = 0;

    bool operator==(const PathClass&) const = default;
};

inline PathClass classify_path(const LatticePath& path)
{
    PathClass cls;
    int height = 0;
    int returns = 0;
    bool nonnegative = true;
    for (Step s : path.steps()) {
        height += s == Step::Up ? 1 : -1;
        if (height < 0) nonnegative = false;
        if (height == 0) ++returns;
    }
    cls.nonnegative = nonnegative;
    cls.dyck = nonnegative && height == 0;
    cls.component_count = cls.dyck ? returns : 0;
    return cls;
}

/// Deletes the first peak repeatedly, prepending each apex height.
inline HeightSequence path_to_heights(const LatticePath& path)
{
    if (!classify_path(path).nonnegative)
        throw InvalidInput("path dips below ground level: " + path.str());
    std::vector<Step> steps = path.steps();
    std::vector<int> recorded;
    while (true) {
        int height = 0;
        std::size_t peak = steps.size();
        for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
            if (steps[i] == Step::Up) {
                ++height;
                if (steps[i + 1] == Step::Down) {
                    peak = i;
                    break;
                }
            } else {
                --height;
            }
        }
        if (peak == steps.size()) break;
        recorded.push_back(height);
        steps.erase(steps.begin() + static_cast<std::ptrdiff_t>(peak), steps.begin() + static_cast<std::ptrdiff_t>(peak) + 2);
    }
    std::vector<int> heights(recorded.rbegin(), recorded.rend());
    return HeightSequence(std::move(heights), path.up_count() - path.down_count());
}

/// Inverse of path_to_heights: start from m upsteps and insert a peak with
/// apex a_i into the initial ascent, for i = 1..k.
inline LatticePath heights_to_path(const HeightSequence& seq, int m)
{
    if (m < 0) throw InvalidInput("heights_to_path: need m >= 0");
    HeightSequence checked(seq.heights(), m);
    std::vector<Step> steps(static_cast<std::size_t>(m), Step::Up);
    for (int apex : checked.heights()) {
        auto at = steps.begin() + (apex - 1);
        steps.insert(at, {Step::Up, Step::Down});
    }
    return LatticePath(std::move(steps));
}

/// Visits C_{k,r} in lexicographic order.
template <typename Visit>
void for_each_height_sequence(int k, int r, Visit&& visit)
{
    if (k < 0 || r < -1) throw InvalidInput("height sequences: need k >= 0 and r >= -1");
    if (k == 0) {
        visit(HeightSequence({}, r));
        return;
    }
    std::vector<int> current;
    current.reserve(k);
    auto extend = [&](auto& self, int ceiling) -> void {
        if (static_cast<int>(current.size()) == k) {
            visit(HeightSequence(current, r));
            return;
        }
        for (int h = 1; h <= ceiling; ++h) {
            current.push_back(h);
            self(self, h + 1);
            current.pop_back();
        }
    };
    extend(extend, r + 1);
}

inline std::vector<HeightSequence> enumerate_height_sequences(int k, int r)
{
    std::vector<HeightSequence> all;
    for_each_height_sequence(k, r, [&](const HeightSequence& s) { all.push_back(s); });
    return all;
}

} // namespace avoider_lab
