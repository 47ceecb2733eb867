#pragma once

#include <limits>
#include <string>
#include <vector>

#include "demazure/errors.hpp"
#include "demazure/linalg.hpp"

namespace demazure {

// Order of s_i s_j is infinite when a_ij * a_ji >= 4.
inline constexpr int coxeter_infinity = std::numeric_limits<int>::max();

enum class CartanKind { Fin, Aff, Ind };

inline const char* cartan_kind_name(CartanKind k)
{
    switch (k) {
    case CartanKind::Fin: return "Fin";
    case CartanKind::Aff: return "Aff";
    case CartanKind::Ind: return "Ind";
    }
    return "?";
}

struct CartanType {
    CartanKind kind;
    // affine only: the numerical labels a_i, i.e. the null root in the root basis
    std::vector<int64_t> labels;
};

// Generalized Cartan matrix with the pairing convention
// a[i][j] = <alpha_j, alpha_i^vee> = alpha_j(alpha_i^vee).
class Gcm {
public:
    explicit Gcm(linalg::IntMat a) : a_(std::move(a))
    {
        rank_ = static_cast<int>(a_.size());
        if (rank_ == 0) throw InvalidGcm("empty matrix");
        for (const auto& row : a_)
            if (static_cast<int>(row.size()) != rank_) throw InvalidGcm("matrix not square");
        for (int i = 0; i < rank_; ++i) {
            if (a_[i][i] != 2) throw InvalidGcm("diagonal entry is not 2");
            for (int j = 0; j < rank_; ++j) {
                if (i == j) continue;
                if (a_[i][j] > 0) throw InvalidGcm("positive off-diagonal entry");
                if ((a_[i][j] == 0) != (a_[j][i] == 0))
                    throw InvalidGcm("zero pattern is not symmetric");
            }
        }
    }

    int rank() const { return rank_; }
    int64_t entry(int i, int j) const { return a_[i][j]; }
    const linalg::IntMat& matrix() const { return a_; }

    // <alpha_q, alpha_p^vee>
    int64_t pairing(int q, int p) const { return a_[p][q]; }

    bool is_indecomposable() const
    {
        std::vector<bool> seen(rank_, false);
        std::vector<int> stack{0};
        seen[0] = true;
        int count = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w = 0; w < rank_; ++w)
                if (!seen[w] && a_[v][w] != 0) {
                    seen[w] = true;
                    ++count;
                    stack.push_back(w);
                }
        }
        return count == rank_;
    }

    std::vector<std::vector<int>> components() const
    {
        std::vector<int> comp(rank_, -1);
        int ncomp = 0;
        for (int s = 0; s < rank_; ++s) {
            if (comp[s] >= 0) continue;
            std::vector<int> stack{s};
            comp[s] = ncomp;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int w = 0; w < rank_; ++w)
                    if (comp[w] < 0 && a_[v][w] != 0) {
                        comp[w] = ncomp;
                        stack.push_back(w);
                    }
            }
            ++ncomp;
        }
        std::vector<std::vector<int>> out(ncomp);
        for (int i = 0; i < rank_; ++i) out[comp[i]].push_back(i);
        return out;
    }

    Gcm submatrix(const std::vector<int>& idx) const
    {
        linalg::IntMat m(idx.size(), linalg::IntVec(idx.size()));
        for (size_t i = 0; i < idx.size(); ++i)
            for (size_t j = 0; j < idx.size(); ++j) m[i][j] = a_[idx[i]][idx[j]];
        return Gcm(std::move(m));
    }

    // Vinberg trichotomy through the principal-minor criterion:
    // Fin iff all principal minors are positive; Aff iff det = 0 and all
    // proper principal minors are positive; Ind otherwise.
    CartanType classify() const
    {
        if (!is_indecomposable())
            throw Decomposable("matrix is decomposable; classify blocks separately");
        bool proper_positive = true;
        for (uint32_t mask = 1; mask < (1u << rank_); ++mask) {
            if (mask == (1u << rank_) - 1) continue;
            std::vector<int> idx;
            for (int i = 0; i < rank_; ++i)
                if (mask & (1u << i)) idx.push_back(i);
            linalg::RatMat sub(idx.size(), linalg::RatVec(idx.size()));
            for (size_t i = 0; i < idx.size(); ++i)
                for (size_t j = 0; j < idx.size(); ++j) sub[i][j] = a_[idx[i]][idx[j]];
            if (linalg::rat_det(sub) <= 0) {
                proper_positive = false;
                break;
            }
        }
        Rational det = linalg::int_det(a_);
        if (proper_positive && det > 0) return CartanType{CartanKind::Fin, {}};
        if (proper_positive && det == 0) return CartanType{CartanKind::Aff, affine_labels()};
        return CartanType{CartanKind::Ind, {}};
    }

    // The order m_ij of s_i s_j keyed on a_ij * a_ji.
    int coxeter_order(int i, int j) const
    {
        if (i == j) throw Error("coxeter_order requires i != j");
        int64_t p = a_[i][j] * a_[j][i];
        switch (p) {
        case 0: return 2;
        case 1: return 3;
        case 2: return 4;
        case 3: return 6;
        default: return coxeter_infinity;
        }
    }

    // Labels a_i of the null root delta = sum a_i alpha_i; the primitive
    // positive right kernel vector of the matrix.
    std::vector<int64_t> affine_labels() const
    {
        auto v = linalg::kernel_vector(a_);
        if (!v) throw NotAffine("matrix has no one-dimensional kernel");
        for (int64_t x : *v)
            if (x <= 0) throw NotAffine("kernel vector is not positive");
        return *v;
    }

    std::vector<int64_t> null_root() const
    {
        CartanType t = classify();
        if (t.kind != CartanKind::Aff) throw NotAffine("null root requires affine type");
        return t.labels;
    }

private:
    int rank_;
    linalg::IntMat a_;
};

} // namespace demazure
