#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "demazure/qfraction.hpp"

namespace demazure {

// Element of the twisted formal group algebra Q_W^F: a finite sum of
// delta_w * psi with psi in Q^F, multiplied by
//   (delta_w' psi') (delta_w psi) = delta_{w'w} w^-1(psi') psi.
class TwistedElement {
public:
    using TermMap = std::map<WeylElement, QFraction, WeylMatrixLess>;

    explicit TwistedElement(std::shared_ptr<const FGAContext> ctx) : ctx_(std::move(ctx)) {}

    static TwistedElement zero(std::shared_ptr<const FGAContext> ctx)
    {
        return TwistedElement(std::move(ctx));
    }
    static TwistedElement unit(std::shared_ptr<const FGAContext> ctx)
    {
        TwistedElement e(ctx);
        e.add_term(WeylElement::identity(ctx->lattice()), QFraction::scalar(ctx, Scalar(1)));
        return e;
    }
    static TwistedElement delta(const WeylElement& w, const QFraction& coeff)
    {
        TwistedElement e(coeff.ctx());
        e.add_term(w, coeff);
        return e;
    }
    // An element of Q^F viewed inside Q_W^F.
    static TwistedElement from_fraction(const QFraction& q)
    {
        return delta(WeylElement::identity(q.ctx()->lattice()), q);
    }
    static TwistedElement from_series(std::shared_ptr<const FGAContext> ctx, PowerSeries f)
    {
        QFraction q(ctx, std::move(f));
        return from_fraction(q);
    }

    const std::shared_ptr<const FGAContext>& ctx() const { return ctx_; }
    const TermMap& terms() const { return terms_; }

    // Support with stored-zero coefficients skipped.
    std::vector<WeylElement> support() const
    {
        std::vector<WeylElement> out;
        for (const auto& [w, q] : terms_)
            if (!q.stored_zero()) out.push_back(w);
        return out;
    }

    QFraction coefficient(const WeylElement& w) const
    {
        auto it = terms_.find(w);
        return it == terms_.end() ? QFraction::scalar(ctx_, Scalar()) : it->second;
    }

    void add_term(const WeylElement& w, const QFraction& q)
    {
        auto it = terms_.find(w);
        if (it == terms_.end())
            terms_.emplace(w, q);
        else
            it->second = it->second + q;
    }

    friend TwistedElement operator+(const TwistedElement& a, const TwistedElement& b)
    {
        a.require_ctx(b);
        TwistedElement r = a;
        for (const auto& [w, q] : b.terms_) r.add_term(w, q);
        return r;
    }
    TwistedElement operator-() const
    {
        TwistedElement r(ctx_);
        for (const auto& [w, q] : terms_) r.terms_.emplace(w, -q);
        return r;
    }
    friend TwistedElement operator-(const TwistedElement& a, const TwistedElement& b)
    {
        return a + (-b);
    }

    friend TwistedElement operator*(const TwistedElement& a, const TwistedElement& b)
    {
        a.require_ctx(b);
        TwistedElement r(a.ctx_);
        for (const auto& [wb, qb] : b.terms_) {
            if (qb.stored_zero() && qb.certified_order() >= a.ctx_->order()) continue;
            WeylElement wbinv = wb.inverse();
            for (const auto& [wa, qa] : a.terms_)
                r.add_term(wa * wb, qa.apply_weyl(wbinv) * qb);
        }
        return r;
    }

    // psi * this  (left module action of Q^F)
    TwistedElement left_mul(const QFraction& psi) const
    {
        TwistedElement r(ctx_);
        for (const auto& [w, q] : terms_) r.terms_.emplace(w, psi.apply_weyl(w.inverse()) * q);
        return r;
    }
    // this * psi  (plain right coefficients)
    TwistedElement right_mul(const QFraction& psi) const
    {
        TwistedElement r(ctx_);
        for (const auto& [w, q] : terms_) r.terms_.emplace(w, q * psi);
        return r;
    }
    TwistedElement scaled(const Scalar& c) const
    {
        TwistedElement r(ctx_);
        for (const auto& [w, q] : terms_) r.terms_.emplace(w, q.scaled(c));
        return r;
    }

    // Reduces every coefficient that is not stored-zero.  Stored-zero
    // coefficients keep their denominators so their certified order is not
    // misrepresented.
    TwistedElement reduced_terms() const
    {
        TwistedElement r(ctx_);
        for (const auto& [w, q] : terms_)
            r.terms_.emplace(w, q.stored_zero() ? q : q.reduced());
        return r;
    }

    ZeroCertificate zero_certificate() const
    {
        ZeroCertificate cert{true, ctx_->order()};
        for (const auto& [w, q] : terms_) {
            ZeroCertificate zc = q.zero_certificate();
            cert.holds = cert.holds && zc.holds;
            cert.order = std::min(cert.order, zc.order);
        }
        return cert;
    }

    static ZeroCertificate eq(const TwistedElement& a, const TwistedElement& b)
    {
        return (a - b).zero_certificate();
    }

    std::string str() const
    {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [w, q] : terms_) {
            if (!s.empty()) s += "  +  ";
            s += "d[" + w.word_str() + "] * (" + q.str() + ")";
        }
        return s;
    }

private:
    void require_ctx(const TwistedElement& o) const
    {
        if (ctx_ != o.ctx_) throw ShapeMismatch("twisted elements from different contexts");
    }

    std::shared_ptr<const FGAContext> ctx_;
    TermMap terms_;
};

// X_alpha = (1/x_alpha)(1 - delta_{s_alpha}) = delta_e / x_alpha - delta_{s_alpha} / x_{-alpha}
inline TwistedElement demazure_element(const std::shared_ptr<const FGAContext>& ctx,
                                       const linalg::IntVec& alpha_vec,
                                       const WeylElement& s_alpha)
{
    linalg::IntVec neg(alpha_vec.size());
    for (size_t i = 0; i < alpha_vec.size(); ++i) neg[i] = -alpha_vec[i];
    TwistedElement x(ctx);
    x.add_term(WeylElement::identity(ctx->lattice()), QFraction::one_over_x(ctx, alpha_vec));
    x.add_term(s_alpha, -QFraction::one_over_x(ctx, neg));
    return x;
}

inline TwistedElement x_generator(const std::shared_ptr<const FGAContext>& ctx, int i)
{
    return demazure_element(ctx, ctx->lattice()->simple_root(i),
                            WeylElement::generator(ctx->lattice(), i));
}

inline TwistedElement x_real_root(const std::shared_ptr<const FGAContext>& ctx,
                                  const RealRoot& alpha)
{
    return demazure_element(ctx, alpha.vec, reflection_element(ctx->lattice(), alpha));
}

// Product X_{i_1} X_{i_2} ... over a word in generator indices.  Folded from
// the right so the twist in the multiplication rule only ever hits the pure
// generator fractions, never the accumulated numerators.
inline TwistedElement x_word(const std::shared_ptr<const FGAContext>& ctx,
                             const std::vector<int>& word)
{
    TwistedElement acc = TwistedElement::unit(ctx);
    for (auto it = word.rbegin(); it != word.rend(); ++it)
        acc = (x_generator(ctx, *it) * acc).reduced_terms();
    return acc;
}

// Expansion over the left Q^F-basis {X_w}: solves the triangular system by
// decreasing length, indexing X_w by the canonical reduced word of w.
using XBasisExpansion = std::map<WeylElement, QFraction, WeylMatrixLess>;
using XWordCache = std::map<WeylElement, TwistedElement, WeylMatrixLess>;

inline XBasisExpansion to_x_basis(const TwistedElement& e, XWordCache* shared_cache = nullptr)
{
    const auto& ctx = e.ctx();
    XBasisExpansion result;
    TwistedElement rem = e;
    XWordCache local_cache;
    XWordCache& xw_cache = shared_cache ? *shared_cache : local_cache;
    size_t guard = 0, guard_limit = 64 * (e.terms().size() + 2) * (e.terms().size() + 2);
    while (true) {
        if (++guard > guard_limit) throw SingularSolve("x-basis solve did not terminate");
        const WeylElement* top = nullptr;
        const QFraction* top_coeff = nullptr;
        for (const auto& [w, q] : rem.terms()) {
            if (q.stored_zero()) continue;
            if (!top || w.length() > top->length()) {
                top = &w;
                top_coeff = &q;
            }
        }
        if (!top) break;
        WeylElement w = *top;
        QFraction r_w = *top_coeff;
        auto it = xw_cache.find(w);
        if (it == xw_cache.end())
            it = xw_cache.emplace(w, x_word(ctx, w.word())).first;
        const TwistedElement& xw = it->second;
        QFraction c_w = xw.coefficient(w);
        QFraction psi(ctx, ctx->zero());
        try {
            psi = (r_w * c_w.invert()).apply_weyl(w).reduced();
        } catch (const NotAUnit&) {
            throw SingularSolve("leading coefficient of X_w is not invertible");
        }
        rem = rem - xw.left_mul(psi);
        if (!rem.coefficient(w).stored_zero())
            throw SingularSolve("x-basis elimination failed to clear the top term");
        auto [rit, inserted] = result.emplace(w, psi);
        if (!inserted) rit->second = rit->second + psi;
    }
    return result;
}

} // namespace demazure
