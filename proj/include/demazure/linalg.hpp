#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "demazure/errors.hpp"
#include "demazure/rational.hpp"

namespace demazure::linalg {

using IntVec = std::vector<int64_t>;
using IntMat = std::vector<IntVec>; // row major
using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

inline IntMat identity(int n)
{
    IntMat m(n, IntVec(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IntMat mat_mul(const IntMat& a, const IntMat& b)
{
    size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    IntMat c(n, IntVec(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

inline IntVec mat_vec(const IntMat& a, const IntVec& v)
{
    IntVec r(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
    return r;
}

inline IntVec vec_mat(const IntVec& v, const IntMat& a)
{
    size_t m = a.empty() ? 0 : a[0].size();
    IntVec r(m, 0);
    for (size_t j = 0; j < m; ++j)
        for (size_t i = 0; i < a.size(); ++i) r[j] += v[i] * a[i][j];
    return r;
}

inline IntVec column(const IntMat& a, int j)
{
    IntVec c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i][j];
    return c;
}

inline int64_t vec_gcd(const IntVec& v)
{
    int64_t g = 0;
    for (int64_t x : v) g = std::gcd(g, std::abs(x));
    return g;
}

inline bool is_zero_vec(const IntVec& v)
{
    for (int64_t x : v)
        if (x != 0) return false;
    return true;
}

// Exact determinant via rational Gaussian elimination.
inline Rational rat_det(RatMat a)
{
    size_t n = a.size();
    Rational det = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return Rational(0);
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        Rational inv = Rational(1) / a[col][col];
        for (size_t r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) continue;
            Rational f = a[r][col] * inv;
            for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return det;
}

inline Rational int_det(const IntMat& a)
{
    RatMat m(a.size());
    for (size_t i = 0; i < a.size(); ++i) m[i].assign(a[i].begin(), a[i].end());
    return rat_det(m);
}

inline std::optional<RatMat> rat_inverse(RatMat a)
{
    size_t n = a.size();
    RatMat inv(n, RatVec(n, 0));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rational f = Rational(1) / a[col][col];
        for (size_t c = 0; c < n; ++c) {
            a[col][c] *= f;
            inv[col][c] *= f;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rational g = a[r][col];
            for (size_t c = 0; c < n; ++c) {
                a[r][c] -= g * a[col][c];
                inv[r][c] -= g * inv[col][c];
            }
        }
    }
    return inv;
}

inline bool rat_is_integer(const Rational& r) { return denominator(r) == 1; }

inline std::optional<IntMat> rat_to_int(const RatMat& a)
{
    IntMat m(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        m[i].resize(a[i].size());
        for (size_t j = 0; j < a[i].size(); ++j) {
            if (!rat_is_integer(a[i][j])) return std::nullopt;
            m[i][j] = static_cast<int64_t>(numerator(a[i][j]));
        }
    }
    return m;
}

inline RatMat int_to_rat(const IntMat& a)
{
    RatMat m(a.size());
    for (size_t i = 0; i < a.size(); ++i) m[i].assign(a[i].begin(), a[i].end());
    return m;
}

// Inverse of a unimodular integer matrix.
inline IntMat int_inverse(const IntMat& a)
{
    auto inv = rat_inverse(int_to_rat(a));
    if (!inv) throw Error("matrix not invertible");
    auto ii = rat_to_int(*inv);
    if (!ii) throw Error("matrix inverse not integral");
    return *ii;
}

// Extends a primitive integer vector v to a basis of Z^n: returns (T, U) with
// U*v = e1, T = U^-1, so the first column of T is v and det(T) = +-1.
inline std::pair<IntMat, IntMat> unimodular_extend(const IntVec& v)
{
    int n = static_cast<int>(v.size());
    if (vec_gcd(v) != 1) throw NotPrimitive("vector is not primitive");
    IntVec w = v;
    IntMat u = identity(n); // accumulates row ops:   u * v  ->  e1
    IntMat t = identity(n); // accumulates inverses:  t = u^-1
    for (int i = 1; i < n; ++i) {
        if (w[i] == 0) continue;
        // Bezout on (w[0], w[i]); the 2x2 block has determinant 1.
        int64_t a = w[0], b = w[i];
        int64_t old_r = a, r = b, old_s = 1, s = 0, old_q = 0, q = 1;
        while (r != 0) {
            int64_t quot = old_r / r;
            std::swap(old_r -= quot * r, r);
            std::swap(old_s -= quot * s, s);
            std::swap(old_q -= quot * q, q);
        }
        int64_t g = old_r, p = old_s, qq = old_q; // p*a + qq*b = g
        if (g < 0) {
            g = -g;
            p = -p;
            qq = -qq;
        }
        int64_t ad = a / g, bd = b / g;
        // rows of u:   u0' = p u0 + qq ui ;  ui' = -bd u0 + ad ui
        // cols of t:   t0' = ad t0 + bd ti ;  ti' = -qq t0 + p ti
        for (int c = 0; c < n; ++c) {
            int64_t u0 = u[0][c], ui = u[i][c];
            u[0][c] = p * u0 + qq * ui;
            u[i][c] = -bd * u0 + ad * ui;
        }
        for (int r2 = 0; r2 < n; ++r2) {
            int64_t t0 = t[r2][0], ti = t[r2][i];
            t[r2][0] = ad * t0 + bd * ti;
            t[r2][i] = -qq * t0 + p * ti;
        }
        w[0] = g;
        w[i] = 0;
    }
    if (w[0] == -1) {
        for (int c = 0; c < n; ++c) u[0][c] = -u[0][c];
        for (int r2 = 0; r2 < n; ++r2) t[r2][0] = -t[r2][0];
        w[0] = 1;
    }
    return {t, u};
}

// Smith normal form invariant factors d1 | d2 | ... of an integer matrix.
inline std::vector<int64_t> smith_invariants(IntMat a)
{
    size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::vector<int64_t> inv;
    size_t s = 0;
    while (s < rows && s < cols) {
        // find a nonzero pivot in the lower-right block
        size_t pi = s, pj = s;
        bool found = false;
        int64_t best = 0;
        for (size_t i = s; i < rows; ++i)
            for (size_t j = s; j < cols; ++j)
                if (a[i][j] != 0 && (!found || std::abs(a[i][j]) < best)) {
                    best = std::abs(a[i][j]);
                    pi = i;
                    pj = j;
                    found = true;
                }
        if (!found) break;
        std::swap(a[pi], a[s]);
        for (size_t i = 0; i < rows; ++i) std::swap(a[i][pj], a[i][s]);
        bool again = true;
        while (again) {
            again = false;
            for (size_t i = s + 1; i < rows; ++i)
                while (a[i][s] != 0) {
                    int64_t q = a[i][s] / a[s][s];
                    for (size_t j = s; j < cols; ++j) a[i][j] -= q * a[s][j];
                    if (a[i][s] != 0) {
                        std::swap(a[i], a[s]);
                        again = true;
                    }
                }
            for (size_t j = s + 1; j < cols; ++j)
                while (a[s][j] != 0) {
                    int64_t q = a[s][j] / a[s][s];
                    for (size_t i = s; i < rows; ++i) a[i][j] -= q * a[i][s];
                    if (a[s][j] != 0) {
                        for (size_t i = 0; i < rows; ++i) std::swap(a[i][j], a[i][s]);
                        again = true;
                    }
                }
        }
        ++s;
    }
    // make divisibility chain and positive entries
    std::vector<int64_t> d;
    for (size_t i = 0; i < s; ++i) d.push_back(std::abs(a[i][i]));
    for (size_t i = 0; i + 1 < d.size(); ++i)
        for (size_t j = i + 1; j < d.size(); ++j)
            if (d[j] % d[i] != 0) {
                int64_t g = std::gcd(d[i], d[j]);
                int64_t l = d[i] / g * d[j];
                d[i] = g;
                d[j] = l;
            }
    std::sort(d.begin(), d.end());
    return d;
}

// Primitive positive generator of the 1-dimensional right kernel of a.
inline std::optional<IntVec> kernel_vector(const IntMat& a)
{
    size_t n = a.empty() ? 0 : a[0].size();
    RatMat m = int_to_rat(a);
    // reduce to row echelon
    size_t rank = 0;
    std::vector<size_t> pivot_col;
    for (size_t col = 0; col < n && rank < m.size(); ++col) {
        size_t piv = rank;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[rank]);
        Rational f = Rational(1) / m[rank][col];
        for (size_t c = 0; c < n; ++c) m[rank][c] *= f;
        for (size_t r = 0; r < m.size(); ++r) {
            if (r == rank || m[r][col] == 0) continue;
            Rational g = m[r][col];
            for (size_t c = 0; c < n; ++c) m[r][c] -= g * m[rank][c];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    if (rank + 1 != n) return std::nullopt; // kernel not 1-dimensional
    // the free column
    std::vector<bool> is_pivot(n, false);
    for (size_t c : pivot_col) is_pivot[c] = true;
    size_t free_col = 0;
    while (free_col < n && is_pivot[free_col]) ++free_col;
    RatVec x(n, 0);
    x[free_col] = 1;
    for (size_t r = 0; r < rank; ++r) x[pivot_col[r]] = -m[r][free_col];
    // scale to a primitive integer vector
    Integer lcm = 1;
    for (const auto& c : x) lcm = boost::multiprecision::lcm(lcm, denominator(c));
    IntVec v(n);
    Integer g = 0;
    for (size_t i = 0; i < n; ++i) {
        Integer z = numerator(x[i]) * (lcm / denominator(x[i]));
        v[i] = static_cast<int64_t>(z);
        g = boost::multiprecision::gcd(g, abs(z));
    }
    if (g > 1)
        for (auto& z : v) z /= static_cast<int64_t>(g);
    bool has_neg = false, has_pos = false;
    for (int64_t z : v) {
        if (z < 0) has_neg = true;
        if (z > 0) has_pos = true;
    }
    if (has_neg && !has_pos)
        for (auto& z : v) z = -z;
    return v;
}

} // namespace demazure::linalg
