#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "demazure/errors.hpp"
#include "demazure/gcm.hpp"
#include "demazure/linalg.hpp"

namespace demazure {

struct FdlReport {
    std::vector<bool> fdl1; // per simple root: coordinates form a unimodular vector
    std::vector<bool> fdl2; // per simple coroot: pairing row is integral
    bool pass() const
    {
        for (bool b : fdl1)
            if (!b) return false;
        for (bool b : fdl2)
            if (!b) return false;
        return true;
    }
};

// A formal Demazure lattice candidate: free Z-module of rank n with embedded
// simple roots (columns of S) and integral coroot functionals (rows of C),
// consistent with the Cartan matrix: C * S = A.
class Lattice {
public:
    Lattice(Gcm gcm, linalg::IntMat simple_roots, linalg::IntMat coroots,
            std::optional<linalg::RatMat> basis_in_root_coords = std::nullopt)
        : gcm_(std::move(gcm)),
          s_(std::move(simple_roots)),
          c_(std::move(coroots)),
          basis_in_root_coords_(std::move(basis_in_root_coords))
    {
        int l = gcm_.rank();
        n_ = static_cast<int>(s_.size());
        if (n_ == 0 || static_cast<int>(s_[0].size()) != l)
            throw DimensionMismatch("simple-root matrix must be n x l");
        if (static_cast<int>(c_.size()) != l || static_cast<int>(c_[0].size()) != n_)
            throw DimensionMismatch("coroot matrix must be l x n");
        linalg::IntMat prod = linalg::mat_mul(c_, s_);
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j)
                if (prod[i][j] != gcm_.entry(i, j))
                    throw DimensionMismatch("pairing <alpha_j, alpha_i^vee> != a_ij");
        // simple roots must be Z-linearly (hence Q-linearly) independent
        linalg::RatMat sq(n_, linalg::RatVec(l));
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < l; ++j) sq[i][j] = s_[i][j];
        if (rank_of(sq) != l) throw DimensionMismatch("simple roots are not independent");
    }

    // The trivial formal Demazure lattice.
    static Lattice root_lattice(const Gcm& g)
    {
        int l = g.rank();
        return Lattice(g, linalg::identity(l), g.matrix(),
                       linalg::int_to_rat(linalg::identity(l)));
    }

    // Square case: column j of B holds the coordinates of the j-th basis
    // vector of Lambda in the root basis.  Then S = B^-1 and C = A * B.
    static Lattice from_B(const Gcm& g, const linalg::RatMat& b)
    {
        int l = g.rank();
        if (static_cast<int>(b.size()) != l || static_cast<int>(b[0].size()) != l)
            throw DimensionMismatch("B must be l x l");
        auto binv = linalg::rat_inverse(b);
        if (!binv) throw NotIntegralInverse("B is singular");
        auto s = linalg::rat_to_int(*binv);
        if (!s) throw NotIntegralInverse("B^-1 is not integral (alpha_i not in Lambda)");
        linalg::RatMat c_rat(l, linalg::RatVec(l, Rational(0)));
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j)
                for (int k = 0; k < l; ++k) c_rat[i][j] += Rational(g.entry(i, k)) * b[k][j];
        auto c = linalg::rat_to_int(c_rat);
        if (!c)
            throw PairingNotIntegral("pairing <Lambda, alpha_i^vee> is not integral");
        return Lattice(g, *s, *c, b);
    }

    const Gcm& gcm() const { return gcm_; }
    int rank() const { return n_; }

    // alpha_j in Lambda coordinates
    linalg::IntVec simple_root(int j) const { return linalg::column(s_, j); }
    // the functional <., alpha_i^vee> on Lambda coordinates
    linalg::IntVec coroot_row(int i) const { return c_[i]; }
    const linalg::IntMat& simple_roots() const { return s_; }
    const linalg::IntMat& coroots() const { return c_; }
    const std::optional<linalg::RatMat>& basis_in_root_coords() const
    {
        return basis_in_root_coords_;
    }

    int64_t pairing(const linalg::IntVec& lambda, int i) const
    {
        int64_t r = 0;
        for (int j = 0; j < n_; ++j) r += c_[i][j] * lambda[j];
        return r;
    }

    // s_i acting on Lambda coordinates: v - <v, alpha_i^vee> alpha_i.
    linalg::IntVec reflect_simple(int i, const linalg::IntVec& v) const
    {
        int64_t p = pairing(v, i);
        linalg::IntVec r = v;
        for (int j = 0; j < n_; ++j) r[j] -= p * s_[j][i];
        return r;
    }

    // matrix of s_i on Lambda: I - S_col_i * C_row_i
    linalg::IntMat reflection_matrix(int i) const
    {
        linalg::IntMat m = linalg::identity(n_);
        for (int r = 0; r < n_; ++r)
            for (int c = 0; c < n_; ++c) m[r][c] -= s_[r][i] * c_[i][c];
        return m;
    }

    // FDL1 via the unimodular-vector criterion, FDL2 by integrality of C
    // (integral by construction; re-checked along with consistency).
    FdlReport check_fdl() const
    {
        FdlReport rep;
        for (int j = 0; j < gcm_.rank(); ++j)
            rep.fdl1.push_back(linalg::vec_gcd(simple_root(j)) == 1);
        linalg::IntMat prod = linalg::mat_mul(c_, s_);
        for (int i = 0; i < gcm_.rank(); ++i) {
            bool ok = true;
            for (int j = 0; j < gcm_.rank(); ++j)
                if (prod[i][j] != gcm_.entry(i, j)) ok = false;
            rep.fdl2.push_back(ok);
        }
        return rep;
    }

    // Invariant factors of Lambda / Lambda_r in the square case (the SNF
    // diagonal of S); includes trivial factors.
    std::vector<int64_t> root_quotient_invariants() const
    {
        return linalg::smith_invariants(s_);
    }

private:
    static int rank_of(linalg::RatMat m)
    {
        size_t rows = m.size(), cols = rows ? m[0].size() : 0;
        size_t rank = 0;
        for (size_t col = 0; col < cols && rank < rows; ++col) {
            size_t piv = rank;
            while (piv < rows && m[piv][col] == 0) ++piv;
            if (piv == rows) continue;
            std::swap(m[piv], m[rank]);
            for (size_t r = rank + 1; r < rows; ++r) {
                if (m[r][col] == 0) continue;
                Rational f = m[r][col] / m[rank][col];
                for (size_t c = col; c < cols; ++c) m[r][c] -= f * m[rank][c];
            }
            ++rank;
        }
        return static_cast<int>(rank);
    }

    Gcm gcm_;
    int n_;
    linalg::IntMat s_; // n x l
    linalg::IntMat c_; // l x n
    std::optional<linalg::RatMat> basis_in_root_coords_;
};

struct LatticeCompareResult {
    bool a_in_b = false;
    bool b_in_a = false;
    std::vector<int64_t> quotient_a; // invariants of Lambda_a / Lambda_r
    std::vector<int64_t> quotient_b;
};

// Both lattices must be presented over the same root basis.
inline LatticeCompareResult lattice_compare(const Lattice& a, const Lattice& b)
{
    const auto& ba = a.basis_in_root_coords();
    const auto& bb = b.basis_in_root_coords();
    if (!ba || !bb || ba->size() != bb->size())
        throw DimensionMismatch("lattices are not over a common root basis");
    LatticeCompareResult res;
    auto contains = [](const linalg::RatMat& big, const linalg::RatMat& small) {
        auto inv = linalg::rat_inverse(big);
        if (!inv) throw DimensionMismatch("lattice basis is singular");
        size_t n = big.size();
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                Rational x = 0;
                for (size_t k = 0; k < n; ++k) x += (*inv)[i][k] * small[k][j];
                if (!linalg::rat_is_integer(x)) return false;
            }
        return true;
    };
    res.a_in_b = contains(*bb, *ba);
    res.b_in_a = contains(*ba, *bb);
    res.quotient_a = a.root_quotient_invariants();
    res.quotient_b = b.root_quotient_invariants();
    return res;
}

// The paper's lattice family for the rank-2 affine matrix: Lambda_n generated
// by alpha_0 and (1/4n + 1/2) alpha_0 + (1/4n) alpha_1.
inline Lattice lambda_n_lattice(const Gcm& a1aff, int64_t n)
{
    if (n == 0) throw DimensionMismatch("n must be nonzero");
    linalg::RatMat b(2, linalg::RatVec(2));
    Rational quarter_n = Rational(1) / Rational(4 * n);
    b[0][0] = 1;
    b[0][1] = quarter_n + Rational(1, 2);
    b[1][0] = 0;
    b[1][1] = quarter_n;
    return Lattice::from_B(a1aff, b);
}

} // namespace demazure
