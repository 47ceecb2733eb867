#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <vector>

#include "demazure/errors.hpp"
#include "demazure/fgl.hpp"
#include "demazure/weyl.hpp"

namespace demazure {

// Working context for the formal group algebra R[[Lambda]]_F realized as
// truncated series in n = rank(Lambda) variables: variable k is x_{e_k} for
// the chosen basis of Lambda.  Elements are PowerSeries produced against one
// context; the context is immutable apart from an internal memo table.
class FGAContext : public std::enable_shared_from_this<FGAContext> {
public:
    static std::shared_ptr<const FGAContext> create(FormalGroupLaw fgl,
                                                    std::shared_ptr<const Lattice> lat)
    {
        if (!lat) throw Error("null lattice");
        return std::shared_ptr<const FGAContext>(new FGAContext(std::move(fgl), std::move(lat)));
    }

    const FormalGroupLaw& fgl() const { return fgl_; }
    const std::shared_ptr<const Lattice>& lattice() const { return lat_; }
    int nvars() const { return lat_->rank(); }
    int order() const { return fgl_.order(); }

    PowerSeries zero() const { return PowerSeries::zero(nvars(), order()); }
    PowerSeries one() const { return PowerSeries::constant(nvars(), order(), Scalar(1)); }
    PowerSeries constant(const Scalar& c) const
    {
        return PowerSeries::constant(nvars(), order(), c);
    }
    PowerSeries variable(int i) const { return PowerSeries::variable(nvars(), order(), i); }

    // x_lambda built by folding the basis contributions with the formal sum.
    const PowerSeries& x_of(const linalg::IntVec& lambda) const
    {
        if (static_cast<int>(lambda.size()) != nvars())
            throw ShapeMismatch("lattice vector has wrong rank");
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = xcache_.find(lambda);
        if (it != xcache_.end()) return it->second;
        PowerSeries x = x_of_vector(fgl_, nvars(), order(), lambda);
        return xcache_.emplace(lambda, std::move(x)).first->second;
    }

    PowerSeries x_simple(int i) const { return x_of(lat_->simple_root(i)); }

    // Product of x_gamma over a denominator multiset; memoized, since the
    // same denominators recur across coefficients.
    const PowerSeries& x_product(const std::multiset<linalg::IntVec>& den) const
    {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = prodcache_.find(den);
            if (it != prodcache_.end()) return it->second;
        }
        PowerSeries p = one();
        for (const auto& g : den) p *= x_of(g);
        std::lock_guard<std::mutex> lock(mutex_);
        return prodcache_.emplace(den, std::move(p)).first->second;
    }

    // The W-action: an algebra automorphism determined by x_{e_i} -> x_{w(e_i)}.
    PowerSeries weyl_act(const linalg::IntMat& w, const PowerSeries& f) const
    {
        if (w == linalg::identity(nvars())) return f;
        std::vector<PowerSeries> images;
        images.reserve(nvars());
        for (int i = 0; i < nvars(); ++i) images.push_back(x_of(linalg::column(w, i)));
        return f.substitute(images);
    }
    PowerSeries weyl_act(const WeylElement& w, const PowerSeries& f) const
    {
        return weyl_act(w.matrix(), f);
    }

    // Exact division by x_lambda.  lambda may be a multiple of a primitive
    // vector; the quotient loses one reliable order.  Divisibility failures
    // at certified degrees raise NotDivisible.
    PowerSeries divide_by_x(const PowerSeries& f, const linalg::IntVec& lambda) const
    {
        auto [q, k] = divide_many(f, lambda, 1);
        if (k != 1) throw NotDivisible("series not divisible by x_lambda");
        return q;
    }

    // Divides by x_lambda as often as possible, up to max_k times, sharing
    // one basis rewrite across all attempts.  Returns the quotient and the
    // number of successful divisions.
    std::pair<PowerSeries, int> divide_many(const PowerSeries& f, const linalg::IntVec& lambda,
                                            int max_k) const
    {
        if (linalg::is_zero_vec(lambda)) throw NotDivisible("division by x_0 = 0");
        if (max_k <= 0) return {f, 0};
        if (!valuation_form_divisible(f, lambda)) return {f, 0};
        int64_t g = linalg::vec_gcd(lambda);
        linalg::IntVec prim = lambda;
        for (auto& c : prim) c /= g;
        // fast path: lambda = m * e_i
        int only = -1;
        bool is_unit_vec = true;
        for (int i = 0; i < nvars(); ++i) {
            if (prim[i] == 0) continue;
            if (only >= 0 || std::abs(prim[i]) != 1) is_unit_vec = false;
            if (only < 0) only = i;
        }
        if (is_unit_vec && only >= 0) {
            PowerSeries cur = f;
            int count = 0;
            while (count < max_k) {
                try {
                    cur = divide_aligned(cur, only, lambda[only]);
                } catch (const NotDivisible&) {
                    break;
                }
                ++count;
            }
            return {cur, count};
        }
        // general: rewrite into a basis whose first vector is prim
        auto [t, u] = linalg::unimodular_extend(prim);
        PowerSeries cur = rewrite(f, u); // coordinates w.r.t. columns of t
        int count = 0;
        while (count < max_k) {
            try {
                cur = divide_aligned(cur, 0, g);
            } catch (const NotDivisible&) {
                break;
            }
            ++count;
        }
        if (count == 0) return {f, 0};
        return {rewrite(cur, t), count};
    }

    // Spec-facing variant restricted to primitive vectors.
    PowerSeries divide_by_x_primitive(const PowerSeries& f, const linalg::IntVec& lambda) const
    {
        if (linalg::vec_gcd(lambda) != 1) throw NotPrimitive("vector is not primitive");
        return divide_by_x(f, lambda);
    }

    // Demazure operator (f - s_alpha f) / x_alpha; defined for real roots.
    PowerSeries demazure(const RealRoot& alpha, const PowerSeries& f) const
    {
        PowerSeries diff = f - weyl_act(reflection_matrix(*lat_, alpha), f);
        return divide_by_x(diff, alpha.vec);
    }
    PowerSeries demazure_simple(int i, const PowerSeries& f) const
    {
        RealRoot r{lat_->simple_root(i), lat_->coroot_row(i), {}, i};
        return demazure(r, f);
    }

    // kappa_alpha = g^F(x_alpha, x_{-alpha})
    PowerSeries kappa_alpha(const linalg::IntVec& alpha) const
    {
        linalg::IntVec neg = alpha;
        for (auto& c : neg) c = -c;
        return fgl_.g_series().with_order(order()).substitute({x_of(alpha), x_of(neg)});
    }
    PowerSeries kappa_alpha_simple(int i) const { return kappa_alpha(lat_->simple_root(i)); }

    // kappa_{lambda,mu} evaluated as an honest series: the fraction numerator
    // over x_{lambda+mu} x_lambda x_mu x_{-lambda} is divided out factor by
    // factor.  Divisibility is verified at runtime, not assumed.
    PowerSeries kappa_pair(const linalg::IntVec& lambda, const linalg::IntVec& mu) const
    {
        linalg::IntVec sum(lambda.size());
        linalg::IntVec neg(lambda.size());
        for (size_t k = 0; k < lambda.size(); ++k) {
            sum[k] = lambda[k] + mu[k];
            neg[k] = -lambda[k];
        }
        if (linalg::is_zero_vec(lambda) || linalg::is_zero_vec(mu) || linalg::is_zero_vec(sum))
            throw NotRegular("kappa_{lambda,mu} needs lambda, mu, lambda+mu nonzero");
        const PowerSeries& xl = x_of(lambda);
        const PowerSeries& xm = x_of(mu);
        const PowerSeries& xn = x_of(neg);
        const PowerSeries& xs = x_of(sum);
        PowerSeries num = xl * (xn - xm) - xs * xn;
        try {
            PowerSeries q = divide_by_x(num, sum);
            q = divide_by_x(q, lambda);
            q = divide_by_x(q, mu);
            q = divide_by_x(q, neg);
            return q;
        } catch (const NotDivisible&) {
            throw NotRegular("kappa_{lambda,mu} is not regular for these vectors");
        }
    }

private:
    FGAContext(FormalGroupLaw fgl, std::shared_ptr<const Lattice> lat)
        : fgl_(std::move(fgl)), lat_(std::move(lat))
    {
    }

    // x_lambda for a plain integer vector, independent of any lattice data.
    static PowerSeries x_of_vector(const FormalGroupLaw& fgl, int nvars, int order,
                                   const linalg::IntVec& v)
    {
        PowerSeries acc = PowerSeries::zero(nvars, order);
        bool have = false;
        for (int i = 0; i < nvars; ++i) {
            if (v[i] == 0) continue;
            PowerSeries part = fgl.multiple(PowerSeries::variable(nvars, order, i), v[i]);
            acc = have ? fgl.sum(acc, part) : part;
            have = true;
        }
        return acc;
    }

    // Rewrites f through the basis change with integer matrix m: variable i
    // is replaced by x of the vector (column i of m) in the target variables.
    PowerSeries rewrite(const PowerSeries& f, const linalg::IntMat& m) const
    {
        std::vector<PowerSeries> images;
        images.reserve(nvars());
        for (int i = 0; i < nvars(); ++i) images.push_back(x_of(linalg::column(m, i)));
        return f.substitute(images);
    }

    // Divides by x_{m e_i} = [m] x_i = (m x_i + ...) = x_i * unit, m != 0.
    PowerSeries divide_aligned(const PowerSeries& f, int var, int64_t m) const
    {
        PowerSeries adjusted = f;
        if (m != 1) {
            linalg::IntVec v(nvars(), 0);
            v[var] = m;
            PowerSeries unit = unit_cofactor(v, var);
            adjusted = f * unit;
        }
        return adjusted.divide_by_variable(var);
    }

    // Quick necessary test: the lowest homogeneous part of f must be
    // divisible by the linear form of x_lambda, checked by substituting a
    // parametrization of the hyperplane sum lambda_k X_k = 0.
    bool valuation_form_divisible(const PowerSeries& f, const linalg::IntVec& lambda) const
    {
        if (f.is_zero()) return true;
        int val = f.terms().begin()->first.degree();
        if (val == 0) return false;
        int pivot = -1;
        for (int k = 0; k < nvars(); ++k)
            if (lambda[k] != 0) {
                pivot = k;
                break;
            }
        if (pivot < 0) return false;
        PowerSeries image = PowerSeries::zero(nvars(), val);
        Rational inv_p = Rational(-1) / Rational(lambda[pivot]);
        for (int k = 0; k < nvars(); ++k) {
            if (k == pivot || lambda[k] == 0) continue;
            image.add_term(Mono::unit(nvars(), k), Scalar(Rational(lambda[k]) * inv_p));
        }
        std::vector<PowerSeries> images;
        for (int k = 0; k < nvars(); ++k)
            images.push_back(k == pivot ? image : PowerSeries::variable(nvars(), val, k));
        PowerSeries form(nvars(), val, val);
        for (const auto& [m, c] : f.terms()) {
            if (m.degree() > val) break;
            form.add_term(m, c);
        }
        return form.substitute(images).is_zero();
    }

    // Cached inverse of [m] x_var / x_var.
    const PowerSeries& unit_cofactor(const linalg::IntVec& v, int var) const
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = unit_cache_.find(v);
        if (it != unit_cache_.end()) return it->second;
        PowerSeries mult = x_of_vector(fgl_, nvars(), order(), v);
        PowerSeries unit = mult.divide_by_variable(var).invert_unit();
        return unit_cache_.emplace(v, std::move(unit)).first->second;
    }

    FormalGroupLaw fgl_;
    std::shared_ptr<const Lattice> lat_;
    mutable std::mutex mutex_;
    mutable std::map<linalg::IntVec, PowerSeries> xcache_;
    mutable std::map<linalg::IntVec, PowerSeries> unit_cache_;
    mutable std::map<std::multiset<linalg::IntVec>, PowerSeries> prodcache_;
};

inline std::shared_ptr<const FGAContext> make_fga_context(FglTag tag, int order,
                                                          std::shared_ptr<const Lattice> lat,
                                                          const Scalar& mu1 = Scalar::mu1(),
                                                          const Scalar& mu2 = Scalar::mu2())
{
    return FGAContext::create(FormalGroupLaw::make(tag, order, mu1, mu2), std::move(lat));
}

} // namespace demazure
