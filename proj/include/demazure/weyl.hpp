#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "demazure/errors.hpp"
#include "demazure/lattice.hpp"

namespace demazure {

// Element of the Weyl group, identified by its faithful integer-matrix action
// on Lambda.  The stored word is the lexicographically least reduced word.
class WeylElement {
public:
    static WeylElement identity(std::shared_ptr<const Lattice> lat)
    {
        WeylElement w(std::move(lat));
        int n = w.lat_->rank(), l = w.lat_->gcm().rank();
        w.m_ = linalg::identity(n);
        w.minv_ = linalg::identity(n);
        w.r_ = linalg::identity(l);
        w.rinv_ = linalg::identity(l);
        return w;
    }

    static WeylElement generator(std::shared_ptr<const Lattice> lat, int i)
    {
        WeylElement w(std::move(lat));
        if (i < 0 || i >= w.lat_->gcm().rank()) throw Error("generator index out of range");
        w.m_ = w.lat_->reflection_matrix(i);
        w.minv_ = w.m_;
        w.r_ = root_reflection(w.lat_->gcm(), i);
        w.rinv_ = w.r_;
        w.word_ = {i};
        return w;
    }

    static WeylElement from_word(std::shared_ptr<const Lattice> lat,
                                 const std::vector<int>& word)
    {
        WeylElement w = identity(std::move(lat));
        for (int i : word) w = w * generator(w.lat_, i);
        return w;
    }

    const std::shared_ptr<const Lattice>& lattice() const { return lat_; }
    const std::vector<int>& word() const { return word_; }
    int length() const { return static_cast<int>(word_.size()); }
    bool is_identity() const { return word_.empty(); }
    const linalg::IntMat& matrix() const { return m_; }
    const linalg::IntMat& matrix_inverse() const { return minv_; }
    const linalg::IntMat& root_matrix() const { return r_; }

    WeylElement operator*(const WeylElement& o) const
    {
        WeylElement w(lat_);
        w.m_ = linalg::mat_mul(m_, o.m_);
        w.minv_ = linalg::mat_mul(o.minv_, minv_);
        w.r_ = linalg::mat_mul(r_, o.r_);
        w.rinv_ = linalg::mat_mul(o.rinv_, rinv_);
        w.canonicalize();
        return w;
    }

    WeylElement inverse() const
    {
        WeylElement w(lat_);
        w.m_ = minv_;
        w.minv_ = m_;
        w.r_ = rinv_;
        w.rinv_ = r_;
        w.canonicalize();
        return w;
    }

    linalg::IntVec apply(const linalg::IntVec& lambda) const
    {
        return linalg::mat_vec(m_, lambda);
    }
    linalg::IntVec apply_inverse(const linalg::IntVec& lambda) const
    {
        return linalg::mat_vec(minv_, lambda);
    }
    // coroot functionals transform contragrediently: <v, w(c)> = <w^-1(v), c>
    linalg::IntVec apply_coroot(const linalg::IntVec& row) const
    {
        return linalg::vec_mat(row, minv_);
    }

    bool operator==(const WeylElement& o) const { return m_ == o.m_; }
    bool operator!=(const WeylElement& o) const { return !(*this == o); }
    bool matrix_less(const WeylElement& o) const { return m_ < o.m_; }

    std::string word_str() const
    {
        if (word_.empty()) return "e";
        std::string s;
        for (size_t k = 0; k < word_.size(); ++k) {
            if (k) s += '.';
            s += "s" + std::to_string(word_[k]);
        }
        return s;
    }

private:
    explicit WeylElement(std::shared_ptr<const Lattice> lat) : lat_(std::move(lat)) {}

    static linalg::IntMat root_reflection(const Gcm& g, int i)
    {
        int l = g.rank();
        linalg::IntMat m = linalg::identity(l);
        // s_i(alpha_q) = alpha_q - a_iq alpha_i
        for (int q = 0; q < l; ++q) m[i][q] -= g.entry(i, q);
        return m;
    }

    // Greedy left-descent peeling yields the lexicographically least reduced
    // word: the smallest i with w^-1(alpha_i) negative starts such a word.
    void canonicalize()
    {
        word_.clear();
        int l = lat_->gcm().rank();
        linalg::IntMat r = r_, rinv = rinv_;
        auto is_id = [l](const linalg::IntMat& m) { return m == linalg::identity(l); };
        while (!is_id(r)) {
            int descent = -1;
            for (int i = 0; i < l && descent < 0; ++i) {
                // w^-1(alpha_i) in root coordinates is column i of rinv
                bool nonpos = true, nonzero = false;
                for (int k = 0; k < l; ++k) {
                    if (rinv[k][i] > 0) nonpos = false;
                    if (rinv[k][i] != 0) nonzero = true;
                }
                if (nonpos && nonzero) descent = i;
            }
            if (descent < 0) throw Error("no descent found; matrix is not a Weyl element");
            word_.push_back(descent);
            linalg::IntMat refl = root_reflection(lat_->gcm(), descent);
            r = linalg::mat_mul(refl, r);          // s_i * w
            rinv = linalg::mat_mul(rinv, refl);    // w^-1 * s_i
        }
    }

    std::shared_ptr<const Lattice> lat_;
    linalg::IntMat m_, minv_; // action on Lambda and its inverse
    linalg::IntMat r_, rinv_; // action on the root lattice and its inverse
    std::vector<int> word_;
};

struct WeylMatrixLess {
    bool operator()(const WeylElement& a, const WeylElement& b) const
    {
        return a.matrix_less(b);
    }
};

// Reduces an arbitrary word; two elements are equal iff their matrices agree.
inline WeylElement weyl_reduce(std::shared_ptr<const Lattice> lat, const std::vector<int>& word)
{
    return WeylElement::from_word(std::move(lat), word);
}

// A real root together with its coroot functional and a witness w(alpha_i).
struct RealRoot {
    linalg::IntVec vec;    // Lambda coordinates
    linalg::IntVec coroot; // functional row on the Lambda basis
    std::vector<int> witness_word;
    int witness_i = -1;
};

// Closed orbit of the simple roots under words of length <= max_len,
// deduplicated by root vector.  Same vector with a different coroot would
// contradict well-definedness of alpha^vee and raises an error.
inline std::vector<RealRoot> real_roots_up_to(const std::shared_ptr<const Lattice>& lat,
                                              int max_len)
{
    int l = lat->gcm().rank();
    std::map<linalg::IntVec, RealRoot> seen;
    std::vector<RealRoot> frontier;
    for (int i = 0; i < l; ++i) {
        RealRoot r{lat->simple_root(i), lat->coroot_row(i), {}, i};
        seen.emplace(r.vec, r);
        frontier.push_back(std::move(r));
    }
    for (int depth = 1; depth <= max_len; ++depth) {
        std::vector<RealRoot> next;
        for (const RealRoot& r : frontier) {
            for (int j = 0; j < l; ++j) {
                RealRoot img;
                img.vec = lat->reflect_simple(j, r.vec);
                // s_j on a coroot functional: row -> row * M_j (M_j is an involution)
                img.coroot = linalg::vec_mat(r.coroot, lat->reflection_matrix(j));
                img.witness_word = {j};
                img.witness_word.insert(img.witness_word.end(), r.witness_word.begin(),
                                        r.witness_word.end());
                img.witness_i = r.witness_i;
                auto it = seen.find(img.vec);
                if (it != seen.end()) {
                    if (it->second.coroot != img.coroot)
                        throw Error("coroot of a real root is not well-defined");
                    continue;
                }
                seen.emplace(img.vec, img);
                next.push_back(std::move(img));
            }
        }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    std::vector<RealRoot> out;
    out.reserve(seen.size());
    for (auto& [v, r] : seen) out.push_back(std::move(r));
    return out;
}

// Reflection s_alpha as a matrix on Lambda: v - <v, alpha^vee> alpha.
inline linalg::IntMat reflection_matrix(const Lattice& lat, const RealRoot& alpha)
{
    int n = lat.rank();
    linalg::IntMat m = linalg::identity(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m[r][c] -= alpha.vec[r] * alpha.coroot[c];
    return m;
}

// s_alpha = w s_i w^-1 from the stored witness.
inline WeylElement reflection_element(const std::shared_ptr<const Lattice>& lat,
                                      const RealRoot& alpha)
{
    std::vector<int> word = alpha.witness_word;
    word.push_back(alpha.witness_i);
    word.insert(word.end(), alpha.witness_word.rbegin(), alpha.witness_word.rend());
    return WeylElement::from_word(lat, word);
}

} // namespace demazure
