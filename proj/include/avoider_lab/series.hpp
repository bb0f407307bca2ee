#pragma once

// Truncated formal power series with exact integer coefficients, and the
// generating functions built from them:
//   C(x)  Catalan numbers, from C = 1 + x C^2
//   G(x)  x C(x C(x)), indecomposable {4321, 3241}-avoiders
//   F(x)  1 / (1 - G(x)), all {4321, 3241}-avoiders

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "errors.hpp"
#include "paths.hpp"

namespace avoider_lab {

/// Coefficients c_0..c_N; N is the truncation order. Binary operations
/// truncate to the smaller order of their operands.
class IntSeries {
public:
    IntSeries() : coeffs_(1) {}

    explicit IntSeries(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs))
    {
        if (coeffs_.empty()) throw InvalidInput("a series needs at least a constant term");
    }

    static IntSeries zero(int order) { return IntSeries(std::vector<BigInt>(checked_size(order))); }

    static IntSeries constant(BigInt value, int order)
    {
        IntSeries s = zero(order);
        s.coeffs_[0] = std::move(value);
        return s;
    }

    /// The series x, truncated at `order` (>= 1).
    static IntSeries x(int order)
    {
        IntSeries s = zero(order);
        if (order >= 1) s.coeffs_[1] = 1;
        return s;
    }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }

    const BigInt& operator[](int i) const
    {
        if (i < 0 || i > order())
            throw InvalidInput("coefficient " + std::to_string(i) + " beyond truncation order " + std::to_string(order()));
        return coeffs_[i];
    }

    const std::vector<BigInt>& coefficients() const { return coeffs_; }

    IntSeries truncated(int new_order) const
    {
        if (new_order > order()) throw InvalidInput("cannot extend a truncated series");
        return IntSeries(std::vector<BigInt>(coeffs_.begin(), coeffs_.begin() + new_order + 1));
    }

    /// x * this; known to one order higher.
    IntSeries shifted() const
    {
        std::vector<BigInt> out(coeffs_.size() + 1);
        std::copy(coeffs_.begin(), coeffs_.end(), out.begin() + 1);
        return IntSeries(std::move(out));
    }

    friend IntSeries operator+(const IntSeries& f, const IntSeries& g)
    {
        int n = std::min(f.order(), g.order());
        IntSeries out = zero(n);
        for (int i = 0; i <= n; ++i) out.coeffs_[i] = f.coeffs_[i] + g.coeffs_[i];
        return out;
    }

    friend IntSeries operator-(const IntSeries& f, const IntSeries& g)
    {
        int n = std::min(f.order(), g.order());
        IntSeries out = zero(n);
        for (int i = 0; i <= n; ++i) out.coeffs_[i] = f.coeffs_[i] - g.coeffs_[i];
        return out;
    }

    friend IntSeries operator*(const IntSeries& f, const IntSeries& g)
    {
        int n = std::min(f.order(), g.order());
        IntSeries out = zero(n);
        for (int i = 0; i <= n; ++i) {
            if (f.coeffs_[i].is_zero()) continue;
            for (int j = 0; i + j <= n; ++j) out.coeffs_[i + j] += f.coeffs_[i] * g.coeffs_[j];
        }
        return out;
    }

    bool operator==(const IntSeries&) const = default;

private:
    static std::size_t checked_size(int order)
    {
        if (order < 0) throw InvalidInput("truncation order must be non-negative");
        return static_cast<std::size_t>(order) + 1;
    }

    std::vector<BigInt> coeffs_;
};

/// f(g(x)), Horner style. g must have zero constant term.
inline IntSeries series_compose(const IntSeries& f, const IntSeries& g)
{
    if (!g[0].is_zero()) throw InvalidInput("series_compose: inner series has a nonzero constant term");
    int n = std::min(f.order(), g.order());
    IntSeries inner = g.truncated(n);
    IntSeries result = IntSeries::constant(f[n], n);
    for (int i = n - 1; i >= 0; --i) result = result * inner + IntSeries::constant(f[i], n);
    return result;
}

/// 1/f for constant term +-1.
inline IntSeries series_reciprocal(const IntSeries& f)
{
    const BigInt& f0 = f[0];
    if (f0 != 1 && f0 != -1) throw InvalidInput("series_reciprocal: constant term must be 1 or -1");
    int n = f.order();
    std::vector<BigInt> g(static_cast<std::size_t>(n) + 1);
    g[0] = f0;  // 1/f0 == f0 for f0 in {1, -1}
    for (int k = 1; k <= n; ++k) {
        BigInt acc = 0;
        for (int j = 1; j <= k; ++j) acc += f[j] * g[k - j];
        g[k] = -acc * f0;
    }
    return IntSeries(std::move(g));
}

/// C_0..C_N via C_{n+1} = sum_i C_i C_{n-i}.
inline IntSeries catalan_series(int order)
{
    if (order < 0) throw InvalidInput("truncation order must be non-negative");
    std::vector<BigInt> c(static_cast<std::size_t>(order) + 1);
    c[0] = 1;
    for (int n = 0; n + 1 <= order; ++n) {
        BigInt acc = 0;
        for (int i = 0; i <= n; ++i) acc += c[i] * c[n - i];
        c[n + 1] = acc;
    }
    return IntSeries(std::move(c));
}

/// x C(x C(x)).
inline IntSeries g_series(int order)
{
    IntSeries c = catalan_series(order);
    IntSeries x_c = c.shifted().truncated(order);
    return series_compose(c, x_c).shifted().truncated(order);
}

/// 1 / (1 - x C(x C(x))).
inline IntSeries f_series(int order)
{
    return series_reciprocal(IntSeries::constant(1, order) - g_series(order));
}

/// u_n = sum_{k=0}^{n-2} C_{n-1-k} * ballot(k, n-2-k), with u_0 = 0 and u_1 = 1.
inline BigInt u_by_formula(int n)
{
    if (n < 0) throw InvalidInput("u_by_formula: n must be non-negative");
    if (n == 0) return 0;
    if (n == 1) return 1;
    BigInt total = 0;
    for (int k = 0; k <= n - 2; ++k) total += catalan(n - 1 - k) * ballot(k, n - 2 - k);
    return total;
}

// ---------------------------------------------------------------------------
// Sequence transforms

/// A(x C(x)) for the generating function A of `seq`.
inline std::vector<BigInt> catalan_transform(std::span<const BigInt> seq)
{
    if (seq.empty()) return {};
    int order = static_cast<int>(seq.size()) - 1;
    IntSeries a(std::vector<BigInt>(seq.begin(), seq.end()));
    IntSeries x_c = catalan_series(order).shifted().truncated(order);
    return series_compose(a, x_c).coefficients();
}

/// 1 / (1 - A(x)); `seq` must start with 0.
inline std::vector<BigInt> invert_transform(std::span<const BigInt> seq)
{
    if (seq.empty()) return {};
    if (!seq[0].is_zero()) throw InvalidInput("invert_transform: sequence must have a zero constant term");
    int order = static_cast<int>(seq.size()) - 1;
    IntSeries a(std::vector<BigInt>(seq.begin(), seq.end()));
    return series_reciprocal(IntSeries::constant(1, order) - a).coefficients();
}

enum class Transform { invert, catalan };

inline std::vector<BigInt> transform(std::span<const BigInt> seq, Transform which)
{
    return which == Transform::invert ? invert_transform(seq) : catalan_transform(seq);
}

// ---------------------------------------------------------------------------
// Emission

/// OEIS b-file lines "n a(n)", first index `offset`.
inline std::string to_bfile(std::span<const BigInt> values, int offset = 0)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i)
        out += std::to_string(offset + static_cast<int>(i)) + " " + values[i].str() + "\n";
    return out;
}

/// JSON array of exact integers, e.g. "[1,1,2,6]". Values are written as
/// JSON numbers of any magnitude.
inline std::string to_json_array(std::span<const BigInt> values)
{
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + values[i].str();
    return out + "]";
}

inline std::string to_csv_line(std::span<const BigInt> values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + values[i].str();
    return out;
}

} // namespace avoider_lab
