#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "demazure/errors.hpp"
#include "demazure/power_series.hpp"

namespace demazure {

enum class FglTag { additive, multiplicative, hyperbolic, custom };

inline const char* fgl_tag_name(FglTag t)
{
    switch (t) {
    case FglTag::additive: return "additive";
    case FglTag::multiplicative: return "multiplicative";
    case FglTag::hyperbolic: return "hyperbolic";
    case FglTag::custom: return "custom";
    }
    return "?";
}

struct FglAxiomReport {
    bool unit = false;
    bool commutative = false;
    bool associative = false;
    int order = 0;
    bool pass() const { return unit && commutative && associative; }
};

// A one-dimensional commutative formal group law truncated at a fixed order,
// together with its formal inverse G (F(u, G(u)) = 0) and the series g with
// F(u,v) = u + v - uv g(u,v).
class FormalGroupLaw {
public:
    static FormalGroupLaw additive(int order)
    {
        PowerSeries f = PowerSeries::variable(2, order, 0) + PowerSeries::variable(2, order, 1);
        return FormalGroupLaw(FglTag::additive, std::move(f), Scalar(), Scalar());
    }

    static FormalGroupLaw multiplicative(int order, const Scalar& mu1 = Scalar::mu1())
    {
        PowerSeries u = PowerSeries::variable(2, order, 0);
        PowerSeries v = PowerSeries::variable(2, order, 1);
        PowerSeries f = u + v - (u * v).scaled(mu1);
        return FormalGroupLaw(FglTag::multiplicative, std::move(f), mu1, Scalar());
    }

    // (u + v - mu1 uv) * sum_i (-mu2 uv)^i
    static FormalGroupLaw hyperbolic(int order, const Scalar& mu1 = Scalar::mu1(),
                                     const Scalar& mu2 = Scalar::mu2())
    {
        PowerSeries u = PowerSeries::variable(2, order, 0);
        PowerSeries v = PowerSeries::variable(2, order, 1);
        PowerSeries uv = u * v;
        PowerSeries numerator = u + v - uv.scaled(mu1);
        PowerSeries geom = PowerSeries::zero(2, order);
        PowerSeries pow = PowerSeries::constant(2, order, Scalar(1));
        for (int k = 0; 2 * k <= order; ++k) {
            geom += pow;
            pow *= uv.scaled(-mu2);
        }
        return FormalGroupLaw(FglTag::hyperbolic, numerator * geom, mu1, mu2);
    }

    // Axioms are verified; violations are rejected.
    static FormalGroupLaw custom(PowerSeries f)
    {
        FglAxiomReport rep = check_axioms_of(f);
        if (!rep.pass())
            throw AxiomViolation(std::string("formal group law axiom failed: ") +
                                 (!rep.unit ? "unit" : !rep.commutative ? "commutativity"
                                                                        : "associativity"));
        return FormalGroupLaw(FglTag::custom, std::move(f), Scalar(), Scalar());
    }

    static FormalGroupLaw make(FglTag tag, int order, const Scalar& mu1 = Scalar::mu1(),
                               const Scalar& mu2 = Scalar::mu2())
    {
        switch (tag) {
        case FglTag::additive: return additive(order);
        case FglTag::multiplicative: return multiplicative(order, mu1);
        case FglTag::hyperbolic: return hyperbolic(order, mu1, mu2);
        case FglTag::custom: throw Error("custom laws are built from an explicit series");
        }
        throw Error("unknown formal group law tag");
    }

    FglTag tag() const { return tag_; }
    int order() const { return series_.order(); }
    const PowerSeries& series() const { return series_; }
    const PowerSeries& inverse_series() const { return inverse_; }
    const PowerSeries& g_series() const { return g_; }
    const Scalar& mu1() const { return mu1_; }
    const Scalar& mu2() const { return mu2_; }

    FglAxiomReport check_axioms() const { return check_axioms_of(series_); }

    static FglAxiomReport check_axioms_of(const PowerSeries& f)
    {
        FglAxiomReport rep;
        int n = f.order();
        rep.order = n;
        // F(u, 0) = u
        PowerSeries u1 = PowerSeries::variable(1, n, 0);
        PowerSeries z1 = PowerSeries::zero(1, n);
        rep.unit = f.substitute({u1, z1}) == u1;
        // F(u, v) = F(v, u)
        PowerSeries u = PowerSeries::variable(2, n, 0);
        PowerSeries v = PowerSeries::variable(2, n, 1);
        rep.commutative = f.substitute({v, u}) == f;
        // F(F(u,v), w) = F(u, F(v,w)) in three variables
        PowerSeries u3 = PowerSeries::variable(3, n, 0);
        PowerSeries v3 = PowerSeries::variable(3, n, 1);
        PowerSeries w3 = PowerSeries::variable(3, n, 2);
        PowerSeries f_uv = f.substitute({u3, v3});
        PowerSeries f_vw = f.substitute({v3, w3});
        PowerSeries lhs = f.substitute({f_uv, w3});
        PowerSeries rhs = f.substitute({u3, f_vw});
        rep.associative = PowerSeries::equal_to_reliable(lhs, rhs) >= n;
        return rep;
    }

    // F(a, b) for series over any variable set.
    PowerSeries sum(const PowerSeries& a, const PowerSeries& b) const
    {
        return series_.with_order(a.order()).substitute({a, b});
    }

    // G(a), the formal negative.
    PowerSeries neg(const PowerSeries& a) const
    {
        return inverse_.with_order(a.order()).substitute({a});
    }

    // [m] a by binary folding of the formal sum.
    PowerSeries multiple(const PowerSeries& a, int64_t m) const
    {
        if (m < 0) return neg(multiple(a, -m));
        PowerSeries acc = PowerSeries::zero(a.nvars(), a.order());
        if (m == 0) return acc;
        PowerSeries base = a;
        bool have_acc = false;
        while (true) {
            if (m & 1) {
                acc = have_acc ? sum(acc, base) : base;
                have_acc = true;
            }
            m >>= 1;
            if (m == 0) break;
            base = sum(base, base);
        }
        return acc;
    }

private:
    FormalGroupLaw(FglTag tag, PowerSeries f, Scalar mu1, Scalar mu2)
        : tag_(tag),
          series_(std::move(f)),
          mu1_(std::move(mu1)),
          mu2_(std::move(mu2)),
          inverse_(compute_inverse(series_)),
          g_(compute_g(series_))
    {
    }

    // Fixed-point iteration on G = -u - P(u, G) where P = F - u - v has
    // valuation >= 2; each pass fixes one more degree.
    static PowerSeries compute_inverse(const PowerSeries& f)
    {
        int n = f.order();
        PowerSeries u = PowerSeries::variable(1, n, 0);
        PowerSeries p = f - PowerSeries::variable(2, n, 0) - PowerSeries::variable(2, n, 1);
        PowerSeries g = -u;
        for (int k = 0; k < n; ++k) g = -u - p.substitute({u, g});
        return g;
    }

    static PowerSeries compute_g(const PowerSeries& f)
    {
        PowerSeries num =
            PowerSeries::variable(2, f.order(), 0) + PowerSeries::variable(2, f.order(), 1) - f;
        return num.divide_by_variable(0).divide_by_variable(1);
    }

    FglTag tag_;
    PowerSeries series_;
    Scalar mu1_, mu2_;
    PowerSeries inverse_;
    PowerSeries g_;
};

} // namespace demazure
