#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <vector>

#include "demazure/errors.hpp"
#include "demazure/scalar.hpp"

namespace demazure {

// Monomial exponent vector with cached total degree; ordered graded-lex so
// series terms iterate by increasing degree.  Exponents live inline, capped
// at kMaxVars variables.
class Mono {
public:
    static constexpr int kMaxVars = 6;

    explicit Mono(const std::vector<int32_t>& e)
    {
        if (e.size() > kMaxVars) throw ShapeMismatch("too many series variables");
        nvars_ = static_cast<int8_t>(e.size());
        deg_ = 0;
        for (size_t i = 0; i < e.size(); ++i) {
            e_[i] = static_cast<int16_t>(e[i]);
            deg_ += e_[i];
        }
    }
    static Mono zero(int nvars)
    {
        Mono m;
        m.nvars_ = static_cast<int8_t>(nvars);
        return m;
    }
    static Mono unit(int nvars, int idx)
    {
        Mono m = zero(nvars);
        m.e_[idx] = 1;
        m.deg_ = 1;
        return m;
    }

    int32_t degree() const { return deg_; }
    int nvars() const { return nvars_; }
    int32_t exp(int i) const { return e_[i]; }
    std::vector<int32_t> exps() const { return std::vector<int32_t>(e_.begin(), e_.begin() + nvars_); }

    Mono operator+(const Mono& o) const
    {
        Mono m = *this;
        for (int i = 0; i < nvars_; ++i) m.e_[i] += o.e_[i];
        m.deg_ += o.deg_;
        return m;
    }
    Mono shifted(int idx, int16_t delta) const
    {
        Mono m = *this;
        m.e_[idx] += delta;
        m.deg_ += delta;
        return m;
    }

    friend bool operator==(const Mono& a, const Mono& b)
    {
        return a.deg_ == b.deg_ && a.e_ == b.e_;
    }
    friend bool operator<(const Mono& a, const Mono& b)
    {
        if (a.deg_ != b.deg_) return a.deg_ < b.deg_;
        return a.e_ < b.e_;
    }

private:
    Mono() : e_{}, nvars_(0), deg_(0) {}

    std::array<int16_t, kMaxVars> e_{};
    int8_t nvars_;
    int16_t deg_;
};

// Truncated multivariate power series over Scalar.  Stored coefficients are
// exactly the certified ones: every term has total degree <= reliable() and
// reliable() <= order().  A reliable order of -1 means "no information".
class PowerSeries {
public:
    using TermMap = std::map<Mono, Scalar>;

    PowerSeries(int nvars, int order, int reliable)
        : nvars_(nvars), order_(order), reliable_(std::min(reliable, order))
    {
        if (nvars < 0 || order < 0 || reliable_ < -1)
            throw ShapeMismatch("bad power series shape");
    }

    static PowerSeries zero(int nvars, int order) { return PowerSeries(nvars, order, order); }
    static PowerSeries constant(int nvars, int order, const Scalar& c)
    {
        PowerSeries f = zero(nvars, order);
        f.add_term(Mono::zero(nvars), c);
        return f;
    }
    static PowerSeries variable(int nvars, int order, int idx)
    {
        PowerSeries f = zero(nvars, order);
        f.add_term(Mono::unit(nvars, idx), Scalar(1));
        return f;
    }

    int nvars() const { return nvars_; }
    int order() const { return order_; }
    int reliable() const { return reliable_; }
    const TermMap& terms() const { return terms_; }

    Scalar coefficient(const Mono& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? Scalar() : it->second;
    }
    Scalar coefficient(const std::vector<int32_t>& e) const { return coefficient(Mono(e)); }
    Scalar constant_term() const { return coefficient(Mono::zero(nvars_)); }

    bool is_zero() const { return terms_.empty(); }
    bool is_zero_to(int deg) const
    {
        for (const auto& [m, c] : terms_)
            if (m.degree() <= deg) return false;
        return true;
    }

    // Smallest total degree that can carry a nonzero coefficient, given what
    // is certified; reliable_+1 when all certified coefficients vanish.
    int valuation_lb() const
    {
        if (terms_.empty()) return reliable_ + 1;
        return std::min<int>(terms_.begin()->first.degree(), reliable_ + 1);
    }

    PowerSeries with_reliable(int r) const
    {
        PowerSeries f(nvars_, order_, std::min(r, reliable_));
        for (const auto& [m, c] : terms_)
            if (m.degree() <= f.reliable_) f.terms_.emplace(m, c);
        return f;
    }

    // Re-truncate to a possibly different order (no new information appears).
    PowerSeries with_order(int order) const
    {
        PowerSeries f(nvars_, order, std::min(reliable_, order));
        for (const auto& [m, c] : terms_)
            if (m.degree() <= f.reliable_) f.terms_.emplace(m, c);
        return f;
    }

    bool same_shape(const PowerSeries& o) const
    {
        return nvars_ == o.nvars_ && order_ == o.order_;
    }

    PowerSeries& operator+=(const PowerSeries& o)
    {
        require_shape(o);
        reliable_ = std::min(reliable_, o.reliable_);
        prune();
        for (const auto& [m, c] : o.terms_)
            if (m.degree() <= reliable_) add_term(m, c);
        return *this;
    }
    PowerSeries& operator-=(const PowerSeries& o)
    {
        require_shape(o);
        reliable_ = std::min(reliable_, o.reliable_);
        prune();
        for (const auto& [m, c] : o.terms_)
            if (m.degree() <= reliable_) add_term(m, -c);
        return *this;
    }
    friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
    friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
    PowerSeries operator-() const
    {
        PowerSeries f(*this);
        for (auto& [m, c] : f.terms_) c = -c;
        return f;
    }

    PowerSeries scaled(const Scalar& s) const
    {
        PowerSeries f(nvars_, order_, reliable_);
        if (s.is_zero()) return f;
        for (const auto& [m, c] : terms_) f.add_term(m, c * s);
        return f;
    }

    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b)
    {
        a.require_shape(b);
        int rel = std::min({a.reliable_ + b.valuation_lb(), b.reliable_ + a.valuation_lb(),
                            a.order_});
        PowerSeries f(a.nvars_, a.order_, rel);
        if (a.terms_.empty() || b.terms_.empty()) return f;
        std::vector<std::pair<Mono, Scalar>> scratch;
        scratch.reserve(a.terms_.size() * 4);
        for (const auto& [ma, ca] : a.terms_) {
            if (ma.degree() > rel) break;
            for (const auto& [mb, cb] : b.terms_) {
                if (ma.degree() + mb.degree() > rel) break;
                scratch.emplace_back(ma + mb, ca * cb);
            }
        }
        std::sort(scratch.begin(), scratch.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        for (auto& [m, c] : scratch) {
            if (c.is_zero()) continue;
            if (!f.terms_.empty() && f.terms_.rbegin()->first == m)
                f.terms_.rbegin()->second += c;
            else
                f.terms_.emplace_hint(f.terms_.end(), m, std::move(c));
        }
        for (auto it = f.terms_.begin(); it != f.terms_.end();)
            it = it->second.is_zero() ? f.terms_.erase(it) : std::next(it);
        return f;
    }
    PowerSeries& operator*=(const PowerSeries& o) { return *this = *this * o; }

    // Composite f(images...) where every image must have zero constant term.
    // Images may live in a different variable set; they must share a common
    // shape among themselves.
    PowerSeries substitute(const std::vector<PowerSeries>& images) const
    {
        if (static_cast<int>(images.size()) != nvars_)
            throw ShapeMismatch("substitute: image count != nvars");
        int rel = reliable_;
        if (nvars_ == 0) {
            // constants only
            PowerSeries f(0, order_, rel);
            f.terms_ = terms_;
            return f;
        }
        for (int i = 0; i < nvars_; ++i) {
            if (!images[i].same_shape(images[0]))
                throw ShapeMismatch("substitute: images of mixed shape");
            if (!images[i].constant_term().is_zero())
                throw NonNilpotentImage("substitute: image has nonzero constant term");
        }
        // Only images of variables that actually occur affect reliability.
        for (const auto& [m, c] : terms_)
            for (int i = 0; i < nvars_; ++i)
                if (m.exp(i) > 0) rel = std::min(rel, images[i].reliable());
        PowerSeries acc = PowerSeries::zero(images[0].nvars(), images[0].order());
        acc.reliable_ = rel;
        // power cache per variable
        std::vector<std::vector<PowerSeries>> pow(nvars_);
        auto power = [&](int i, int32_t k) -> const PowerSeries& {
            auto& cache = pow[i];
            if (cache.empty())
                cache.push_back(PowerSeries::constant(images[0].nvars(), images[0].order(), Scalar(1)));
            while (static_cast<int32_t>(cache.size()) <= k)
                cache.push_back(cache.back() * images[i]);
            return cache[k];
        };
        for (const auto& [m, c] : terms_) {
            // a degree-d term contributes only at degree >= d
            if (m.degree() > acc.reliable_) continue;
            PowerSeries prod = PowerSeries::constant(images[0].nvars(), images[0].order(), c);
            for (int i = 0; i < nvars_; ++i)
                if (m.exp(i) > 0) prod *= power(i, m.exp(i));
            for (const auto& [pm, pc] : prod.terms_)
                if (pm.degree() <= acc.reliable_) acc.add_term(pm, pc);
        }
        return acc;
    }

    // Multiplicative inverse of a series whose constant term is a unit Scalar.
    PowerSeries invert_unit() const
    {
        Scalar c0 = constant_term();
        if (!c0.is_unit()) throw NotAUnit("series constant term is not a unit");
        Scalar c0inv = c0.inverse();
        // f = c0 (1 - h),  f^-1 = c0^-1 sum h^k
        PowerSeries h = PowerSeries::constant(nvars_, order_, Scalar(1)) - scaled(c0inv);
        PowerSeries acc = PowerSeries::constant(nvars_, order_, Scalar(1));
        PowerSeries hk = h;
        int val = std::max(1, h.valuation_lb());
        for (int k = val; k <= reliable_; k += val) {
            acc += hk;
            hk *= h;
        }
        return acc.scaled(c0inv).with_reliable(reliable_);
    }

    // Exact division by the idx-th variable.  Fails if any certified term
    // lacks that variable.
    PowerSeries divide_by_variable(int idx) const
    {
        PowerSeries q(nvars_, order_, reliable_ - 1);
        for (const auto& [m, c] : terms_) {
            if (m.exp(idx) == 0) {
                if (m.degree() <= reliable_)
                    throw NotDivisible("series not divisible by variable");
                continue;
            }
            Mono md = m.shifted(idx, -1);
            if (md.degree() <= q.reliable_) q.terms_.emplace(md, c);
        }
        return q;
    }

    bool operator==(const PowerSeries& o) const
    {
        return nvars_ == o.nvars_ && order_ == o.order_ && reliable_ == o.reliable_ &&
               terms_ == o.terms_;
    }

    // Termwise equality on all certified degrees of both operands; returns
    // the order to which equality was established, or -1 on mismatch.
    static int equal_to_reliable(const PowerSeries& a, const PowerSeries& b)
    {
        int r = std::min(a.reliable_, b.reliable_);
        PowerSeries d = a.with_reliable(r) - b.with_reliable(r);
        return d.is_zero() ? r : -1;
    }

    void add_term(const Mono& m, const Scalar& c)
    {
        if (c.is_zero() || m.degree() > reliable_) return;
        if (m.nvars() != nvars_) throw ShapeMismatch("monomial/series nvars mismatch");
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    std::string str(const std::string& var_prefix = "x") const
    {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << '(' << c.str() << ')';
            for (int i = 0; i < nvars_; ++i) {
                if (m.exp(i) == 0) continue;
                os << '*' << var_prefix << (i + 1);
                if (m.exp(i) != 1) os << '^' << m.exp(i);
            }
        }
        return os.str();
    }

private:
    void require_shape(const PowerSeries& o) const
    {
        if (!same_shape(o)) throw ShapeMismatch("power series shape mismatch");
    }
    void prune()
    {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = (it->first.degree() > reliable_) ? terms_.erase(it) : std::next(it);
    }

    int nvars_;
    int order_;
    int reliable_;
    TermMap terms_;
};

} // namespace demazure
