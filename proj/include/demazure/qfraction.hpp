#pragma once

#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "demazure/fga.hpp"

namespace demazure {

struct ZeroCertificate {
    bool holds = false;
    int order = -1; // Laurent order to which vanishing is certified
};

// Element of the localization Q^F presented as num / prod x_gamma over the
// denominator multiset.  Denominators are never cancelled implicitly; the
// certified Laurent order accounts for their valuations.
class QFraction {
public:
    using Den = std::multiset<linalg::IntVec>;

    QFraction(std::shared_ptr<const FGAContext> ctx, PowerSeries num, Den den = {})
        : ctx_(std::move(ctx)), num_(std::move(num)), den_(std::move(den))
    {
        for (const auto& g : den_)
            if (linalg::is_zero_vec(g)) throw NotRegular("zero vector in denominator");
    }

    static QFraction scalar(std::shared_ptr<const FGAContext> ctx, const Scalar& c)
    {
        PowerSeries n = ctx->constant(c);
        return QFraction(std::move(ctx), std::move(n));
    }
    static QFraction one_over_x(std::shared_ptr<const FGAContext> ctx, const linalg::IntVec& g)
    {
        PowerSeries n = ctx->one();
        return QFraction(std::move(ctx), std::move(n), Den{g});
    }

    const std::shared_ptr<const FGAContext>& ctx() const { return ctx_; }
    const PowerSeries& num() const { return num_; }
    const Den& den() const { return den_; }

    // Laurent order to which the value of this fraction is certified.
    int certified_order() const { return num_.reliable() - static_cast<int>(den_.size()); }

    ZeroCertificate zero_certificate() const
    {
        return ZeroCertificate{num_.is_zero() && certified_order() >= 0, certified_order()};
    }
    bool stored_zero() const { return num_.is_zero(); }

    QFraction operator-() const { return QFraction(ctx_, -num_, den_); }

    friend QFraction operator+(const QFraction& a, const QFraction& b)
    {
        a.require_ctx(b);
        Den common = union_max(a.den_, b.den_);
        auto scale_up = [&common](const QFraction& q) {
            Den extra = diff(common, q.den_);
            if (extra.empty()) return q.num_;
            return q.num_ * q.ctx_->x_product(extra);
        };
        PowerSeries na = scale_up(a);
        PowerSeries nb = scale_up(b);
        return QFraction(a.ctx_, na + nb, std::move(common));
    }
    friend QFraction operator-(const QFraction& a, const QFraction& b) { return a + (-b); }

    friend QFraction operator*(const QFraction& a, const QFraction& b)
    {
        a.require_ctx(b);
        Den den = a.den_;
        den.insert(b.den_.begin(), b.den_.end());
        return QFraction(a.ctx_, a.num_ * b.num_, std::move(den));
    }

    QFraction scaled(const Scalar& c) const { return QFraction(ctx_, num_.scaled(c), den_); }
    QFraction times_series(const PowerSeries& f) const
    {
        return QFraction(ctx_, num_ * f, den_);
    }

    QFraction apply_weyl(const WeylElement& w) const
    {
        if (w.is_identity()) return *this;
        Den den;
        for (const auto& g : den_) den.insert(w.apply(g));
        return QFraction(ctx_, ctx_->weyl_act(w, num_), std::move(den));
    }

    // Multiplicative inverse; requires the numerator to be a unit series.
    QFraction invert() const
    {
        PowerSeries num = ctx_->x_product(den_) * num_.invert_unit();
        return QFraction(ctx_, std::move(num), Den{});
    }

    // Cancels denominator entries that divide the numerator exactly through
    // its full reliable order.  A stored-zero numerator collapses to the zero
    // fraction at its certified Laurent order.
    QFraction reduced() const
    {
        if (num_.is_zero()) {
            PowerSeries z = ctx_->zero().with_reliable(certified_order());
            return QFraction(ctx_, std::move(z), Den{});
        }
        QFraction r = *this;
        for (auto it = r.den_.begin(); it != r.den_.end();) {
            int k = static_cast<int>(r.den_.count(*it));
            auto [q, divided] = ctx_->divide_many(r.num_, *it, k);
            auto next = r.den_.upper_bound(*it);
            if (divided > 0) {
                r.num_ = std::move(q);
                auto del = it;
                for (int c = 0; c < divided; ++c) del = r.den_.erase(del);
            }
            it = next;
        }
        return r;
    }

    // The fraction as an honest series, when the denominator cancels.
    std::optional<PowerSeries> as_series() const
    {
        QFraction r = reduced();
        if (!r.den_.empty()) return std::nullopt;
        return r.num_;
    }

    // Detects a constant value without dividing: hypothesize c from the
    // lowest monomial of the denominator product and verify num = c * x(den).
    std::optional<Scalar> as_constant() const
    {
        if (num_.is_zero()) return certified_order() >= 0 ? std::optional<Scalar>(Scalar())
                                                          : std::nullopt;
        if (den_.empty()) {
            if (num_.reliable() < 0) return std::nullopt;
            Scalar c = num_.constant_term();
            PowerSeries rest = num_ - ctx_->constant(c).with_reliable(num_.reliable());
            if (rest.is_zero()) return c;
            return std::nullopt;
        }
        PowerSeries xd = ctx_->x_product(den_);
        if (xd.is_zero() || certified_order() < 0) return std::nullopt;
        const auto& [m0, c0] = *xd.terms().begin();
        if (!c0.is_unit()) return std::nullopt;
        Scalar cand = num_.coefficient(m0) * c0.inverse();
        PowerSeries delta = num_ - xd.scaled(cand).with_reliable(num_.reliable());
        if (delta.is_zero()) return cand;
        return std::nullopt;
    }

    // Certified-order equality via the common denominator.
    static ZeroCertificate eq(const QFraction& a, const QFraction& b)
    {
        return (a - b).zero_certificate();
    }

    std::string str() const
    {
        std::ostringstream os;
        os << num_.str();
        for (const auto& g : den_) {
            os << " / x[";
            for (size_t i = 0; i < g.size(); ++i) {
                if (i) os << ',';
                os << g[i];
            }
            os << ']';
        }
        return os.str();
    }

private:
    void require_ctx(const QFraction& o) const
    {
        if (ctx_ != o.ctx_) throw ShapeMismatch("fractions from different contexts");
    }

    static Den union_max(const Den& a, const Den& b)
    {
        Den out = a;
        for (auto it = b.begin(); it != b.end();) {
            auto next = b.upper_bound(*it);
            size_t nb = static_cast<size_t>(std::distance(it, next));
            size_t na = out.count(*it);
            for (size_t k = na; k < nb; ++k) out.insert(*it);
            it = next;
        }
        return out;
    }

    // multiset difference big - small (small is contained in big)
    static Den diff(const Den& big, const Den& small)
    {
        Den out = big;
        for (const auto& g : small) {
            auto it = out.find(g);
            if (it == out.end()) throw Error("internal: bad multiset difference");
            out.erase(it);
        }
        return out;
    }

    std::shared_ptr<const FGAContext> ctx_;
    PowerSeries num_;
    Den den_;
};

} // namespace demazure
