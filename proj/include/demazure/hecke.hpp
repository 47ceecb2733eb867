#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "demazure/relations.hpp"
#include "demazure/twisted.hpp"

namespace demazure {

// Iwahori-Hecke algebra element in the standard basis T_w with coefficients
// in the scalar ring; Lusztig's convention (T_i + t)(T_i - t^-1) = 0.
class HeckeElement {
public:
    using TermMap = std::map<WeylElement, Scalar, WeylMatrixLess>;

    explicit HeckeElement(std::shared_ptr<const Lattice> lat) : lat_(std::move(lat)) {}

    static HeckeElement zero(std::shared_ptr<const Lattice> lat)
    {
        return HeckeElement(std::move(lat));
    }
    static HeckeElement unit(std::shared_ptr<const Lattice> lat)
    {
        HeckeElement h(lat);
        h.add_term(WeylElement::identity(lat), Scalar(1));
        return h;
    }
    static HeckeElement generator(std::shared_ptr<const Lattice> lat, int i)
    {
        HeckeElement h(lat);
        h.add_term(WeylElement::generator(lat, i), Scalar(1));
        return h;
    }
    static HeckeElement basis(std::shared_ptr<const Lattice> lat, const WeylElement& w,
                              const Scalar& c = Scalar(1))
    {
        HeckeElement h(lat);
        h.add_term(w, c);
        return h;
    }

    const std::shared_ptr<const Lattice>& lattice() const { return lat_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Scalar coefficient(const WeylElement& w) const
    {
        auto it = terms_.find(w);
        return it == terms_.end() ? Scalar() : it->second;
    }

    void add_term(const WeylElement& w, const Scalar& c)
    {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend HeckeElement operator+(const HeckeElement& a, const HeckeElement& b)
    {
        a.require_lat(b);
        HeckeElement r = a;
        for (const auto& [w, c] : b.terms_) r.add_term(w, c);
        return r;
    }
    HeckeElement operator-() const
    {
        HeckeElement r(lat_);
        for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
        return r;
    }
    friend HeckeElement operator-(const HeckeElement& a, const HeckeElement& b)
    {
        return a + (-b);
    }
    HeckeElement scaled(const Scalar& c) const
    {
        HeckeElement r(lat_);
        if (c.is_zero()) return r;
        for (const auto& [w, k] : terms_) r.terms_.emplace(w, k * c);
        return r;
    }

    // T_i * this by the length rule: T_i T_w = T_{s_i w} when the length goes
    // up, and T_{s_i w} + (t^-1 - t) T_w otherwise.
    HeckeElement left_mul_generator(int i) const
    {
        HeckeElement r(lat_);
        WeylElement si = WeylElement::generator(lat_, i);
        Scalar tdiff = Scalar::t(-1) - Scalar::t();
        for (const auto& [w, c] : terms_) {
            WeylElement siw = si * w;
            r.add_term(siw, c);
            if (siw.length() < w.length()) r.add_term(w, tdiff * c);
        }
        return r;
    }

    friend HeckeElement operator*(const HeckeElement& a, const HeckeElement& b)
    {
        a.require_lat(b);
        HeckeElement r(a.lat_);
        for (const auto& [w, c] : a.terms_) {
            HeckeElement part = b;
            const std::vector<int>& word = w.word();
            for (auto it = word.rbegin(); it != word.rend(); ++it)
                part = part.left_mul_generator(*it);
            for (const auto& [v, k] : part.terms_) r.add_term(v, c * k);
        }
        return r;
    }

    bool operator==(const HeckeElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const HeckeElement& o) const { return !(*this == o); }

    HeckeElement specialized(const std::map<Param, Scalar>& bindings) const
    {
        HeckeElement r(lat_);
        for (const auto& [w, c] : terms_) r.add_term(w, c.specialize(bindings));
        return r;
    }

    std::string str() const
    {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [w, c] : terms_) {
            if (!s.empty()) s += "  +  ";
            s += "(" + c.str() + ")*T[" + w.word_str() + "]";
        }
        return s;
    }

private:
    void require_lat(const HeckeElement& o) const
    {
        if (lat_ != o.lat_) throw ShapeMismatch("Hecke elements over different systems");
    }

    std::shared_ptr<const Lattice> lat_;
    TermMap terms_;
};

// Scalar combination of words in the abstract generators X_i (the free
// algebra of the Demazure presentation).
class DemazureExpression {
public:
    using Term = std::pair<Scalar, std::vector<int>>;

    DemazureExpression() = default;
    static DemazureExpression word(std::vector<int> letters, const Scalar& c = Scalar(1))
    {
        DemazureExpression e;
        e.terms_.emplace_back(c, std::move(letters));
        return e;
    }
    const std::vector<Term>& terms() const { return terms_; }

    friend DemazureExpression operator+(DemazureExpression a, const DemazureExpression& b)
    {
        a.terms_.insert(a.terms_.end(), b.terms_.begin(), b.terms_.end());
        return a;
    }
    friend DemazureExpression operator-(DemazureExpression a, const DemazureExpression& b)
    {
        for (const auto& [c, w] : b.terms_) a.terms_.emplace_back(-c, w);
        return a;
    }
    DemazureExpression scaled(const Scalar& c) const
    {
        DemazureExpression e;
        for (const auto& [k, w] : terms_) e.terms_.emplace_back(k * c, w);
        return e;
    }

private:
    std::vector<Term> terms_;
};

// Parameter bindings of the main theorem and its affine corollary.
inline std::map<Param, Scalar> theorem_bindings()
{
    return {{Param::mu1, Scalar::u() * (Scalar::t() + Scalar::t(-1))},
            {Param::mu2, -Scalar::u(2)}};
}
inline std::map<Param, Scalar> corollary_bindings()
{
    return {{Param::mu1, Scalar::t() + Scalar::t(-1)},
            {Param::mu2, Scalar(-1)},
            {Param::u, Scalar(1)}};
}

// psi: X_i -> u (T_i + t), with coefficients pushed through the theorem's
// parameter specialization.
inline HeckeElement psi_map(const DemazureExpression& e,
                            const std::shared_ptr<const Lattice>& lat,
                            const Scalar& u_value = Scalar::u(),
                            const std::map<Param, Scalar>& bindings = theorem_bindings())
{
    HeckeElement out = HeckeElement::zero(lat);
    for (const auto& [c, word] : e.terms()) {
        HeckeElement acc = HeckeElement::unit(lat);
        for (auto it = word.rbegin(); it != word.rend(); ++it) {
            HeckeElement gen =
                (HeckeElement::generator(lat, *it) + HeckeElement::unit(lat).scaled(Scalar::t()))
                    .scaled(u_value);
            acc = gen * acc;
        }
        out = out + acc.scaled(c.specialize(bindings));
    }
    return out;
}

// phi: T_i -> u^-1 X_i - t, extended over one fixed reduced word per T_w.
inline TwistedElement phi_generator(const std::shared_ptr<const FGAContext>& ctx, int i,
                                    const Scalar& u_value = Scalar::u())
{
    TwistedElement x = x_generator(ctx, i).scaled(u_value.inverse());
    return x - TwistedElement::unit(ctx).scaled(Scalar::t());
}

inline TwistedElement phi_word(const std::shared_ptr<const FGAContext>& ctx,
                               const std::vector<int>& word,
                               const Scalar& u_value = Scalar::u())
{
    TwistedElement acc = TwistedElement::unit(ctx);
    for (auto it = word.rbegin(); it != word.rend(); ++it)
        acc = (phi_generator(ctx, *it, u_value) * acc).reduced_terms();
    return acc;
}

inline TwistedElement phi_map(const HeckeElement& h, const std::shared_ptr<const FGAContext>& ctx,
                              const Scalar& u_value = Scalar::u())
{
    TwistedElement out = TwistedElement::zero(ctx);
    for (const auto& [w, c] : h.terms())
        out = out + phi_word(ctx, w.word(), u_value).scaled(c);
    return out;
}

// The defining relations of the Demazure presentation as abstract
// expressions: the quadratic relation and the braid relations with their
// hyperbolic correction terms.
inline std::vector<DemazureExpression> demazure_relations(const Gcm& g)
{
    std::vector<DemazureExpression> rels;
    Scalar mu1 = Scalar::mu1(), mu2 = Scalar::mu2();
    for (int i = 0; i < g.rank(); ++i)
        rels.push_back(DemazureExpression::word({i, i}) - DemazureExpression::word({i}, mu1));
    for (int i = 0; i < g.rank(); ++i)
        for (int j = i + 1; j < g.rank(); ++j) {
            int m = g.coxeter_order(i, j);
            if (m == coxeter_infinity) continue;
            switch (m) {
            case 2:
                rels.push_back(DemazureExpression::word({i, j}) -
                               DemazureExpression::word({j, i}));
                break;
            case 3:
                rels.push_back(DemazureExpression::word({j, i, j}) -
                               DemazureExpression::word({i, j, i}) -
                               (DemazureExpression::word({i}) - DemazureExpression::word({j}))
                                   .scaled(mu2));
                break;
            case 4:
                rels.push_back(
                    DemazureExpression::word({j, i, j, i}) -
                    DemazureExpression::word({i, j, i, j}) -
                    (DemazureExpression::word({i, j}) - DemazureExpression::word({j, i}))
                        .scaled(Scalar(2) * mu2));
                break;
            case 6:
                rels.push_back(
                    DemazureExpression::word({j, i, j, i, j, i}) -
                    DemazureExpression::word({i, j, i, j, i, j}) -
                    (DemazureExpression::word({i, j, i, j}) -
                     DemazureExpression::word({j, i, j, i}))
                        .scaled(Scalar(4) * mu2) -
                    (DemazureExpression::word({i, j}) - DemazureExpression::word({j, i}))
                        .scaled(Scalar(3) * mu2 * mu2));
                break;
            default: break;
            }
        }
    return rels;
}

struct HeckeCheckReport {
    std::string check;
    bool holds = false;
    int max_word_length = 0;
    int certified_order = -1;
    std::string note;
};

// psi annihilates every defining relation; a pure Hecke-side computation.
inline HeckeCheckReport verify_psi_relations(const std::shared_ptr<const Lattice>& lat)
{
    HeckeCheckReport rep;
    rep.check = "psi-kills-relations";
    rep.holds = true;
    rep.certified_order = 0;
    for (const auto& rel : demazure_relations(lat->gcm())) {
        HeckeElement img = psi_map(rel, lat);
        rep.holds = rep.holds && img.is_zero();
        rep.max_word_length = std::max<int>(rep.max_word_length, 0);
    }
    rep.note = "relations mapped through X_i -> u(T_i + t)";
    return rep;
}

// All Weyl elements of length <= max_len, by breadth-first closure.
inline std::vector<WeylElement> weyl_ball(const std::shared_ptr<const Lattice>& lat, int max_len)
{
    std::vector<WeylElement> out{WeylElement::identity(lat)};
    std::map<linalg::IntMat, bool> seen{{out[0].matrix(), true}};
    size_t begin = 0;
    for (int len = 1; len <= max_len; ++len) {
        size_t end = out.size();
        for (size_t k = begin; k < end; ++k)
            for (int i = 0; i < lat->gcm().rank(); ++i) {
                WeylElement v = out[k] * WeylElement::generator(lat, i);
                if (v.length() != len) continue;
                if (seen.emplace(v.matrix(), true).second) out.push_back(v);
            }
        begin = end;
    }
    return out;
}

// Round-trip checks of the Hecke isomorphism on all words of length <= L:
//   psi(phi(T_w)) = T_w   (phi through Q_W^F, psi through the X-basis)
//   phi(psi(X_w)) = X_w   (psi through Hecke arithmetic, phi back)
inline HeckeCheckReport verify_iso(const VerificationInput& in, int max_len)
{
    HeckeCheckReport rep;
    rep.check = "hecke-iso";
    rep.holds = true;
    rep.max_word_length = max_len;
    std::map<Param, Scalar> bind = theorem_bindings();
    Scalar mu1 = Scalar::mu1().specialize(bind), mu2 = Scalar::mu2().specialize(bind);
    auto ctx = make_fga_context(in.tag, in.order + max_len + 2, in.lattice, mu1, mu2);
    rep.certified_order = ctx->order();
    auto lat = in.lattice;
    XWordCache xcache, phicache;
    auto phi_of = [&](const WeylElement& w) -> const TwistedElement& {
        auto it = phicache.find(w);
        if (it == phicache.end())
            it = phicache.emplace(w, phi_word(ctx, w.word())).first;
        return it->second;
    };
    auto x_of_word = [&](const WeylElement& w) -> const TwistedElement& {
        auto it = xcache.find(w);
        if (it == xcache.end()) it = xcache.emplace(w, x_word(ctx, w.word())).first;
        return it->second;
    };
    for (const WeylElement& w : weyl_ball(lat, max_len)) {
        // T-side round trip
        XBasisExpansion exp = to_x_basis(phi_of(w), &xcache);
        HeckeElement back = HeckeElement::zero(lat);
        for (const auto& [v, q] : exp) {
            if (q.stored_zero()) {
                rep.certified_order = std::min(rep.certified_order, q.certified_order());
                continue;
            }
            auto c = q.as_constant();
            if (!c) {
                rep.holds = false;
                rep.note += "non-constant X-basis coefficient at " + v.word_str() + "; ";
                continue;
            }
            rep.certified_order = std::min(rep.certified_order, q.certified_order());
            back = back + psi_map(DemazureExpression::word(v.word(), *c), lat);
        }
        if (back != HeckeElement::basis(lat, w)) {
            rep.holds = false;
            rep.note += "psi(phi(T_w)) != T_w at " + w.word_str() + "; ";
        }
        // X-side round trip
        HeckeElement psi_xw = psi_map(DemazureExpression::word(w.word()), lat);
        TwistedElement round = TwistedElement::zero(ctx);
        for (const auto& [v, c] : psi_xw.terms()) round = round + phi_of(v).scaled(c);
        ZeroCertificate cert = TwistedElement::eq(round, x_of_word(w));
        rep.holds = rep.holds && cert.holds;
        rep.certified_order = std::min(rep.certified_order, cert.order);
    }
    return rep;
}

// The affine corollary identity gamma T_i - T_i s_i(gamma) =
// (1 - t x_{alpha_i}) Delta_i(gamma) inside Q_W^F with u = 1 and T_i = X_i - t.
inline HeckeCheckReport affine_relation_check(const VerificationInput& in, int i,
                                              int max_degree = 3)
{
    std::map<Param, Scalar> bind = corollary_bindings();
    Scalar mu1 = Scalar::mu1().specialize(bind), mu2 = Scalar::mu2().specialize(bind);
    auto ctx = make_fga_context(in.tag, in.order, in.lattice, mu1, mu2);
    HeckeCheckReport rep;
    rep.check = "affine-hecke";
    rep.holds = true;
    rep.certified_order = ctx->order();
    TwistedElement ti =
        x_generator(ctx, i) - TwistedElement::unit(ctx).scaled(Scalar::t());
    int n = ctx->nvars();
    PowerSeries one_minus_tx =
        ctx->one() - ctx->x_simple(i).scaled(Scalar::t());
    linalg::IntMat refl = ctx->lattice()->reflection_matrix(i);
    std::vector<int32_t> exps(n, 0);
    std::function<void(int, int)> walk = [&](int pos, int remaining) {
        if (pos == n) {
            Mono m(exps);
            PowerSeries gamma = ctx->zero();
            gamma.add_term(m, Scalar(1));
            TwistedElement lhs =
                TwistedElement::from_series(ctx, gamma) * ti -
                ti * TwistedElement::from_series(ctx, ctx->weyl_act(refl, gamma));
            PowerSeries rhs_series = m.degree() == 0
                                         ? ctx->zero()
                                         : one_minus_tx * ctx->demazure_simple(i, gamma);
            TwistedElement rhs = TwistedElement::from_series(ctx, rhs_series);
            ZeroCertificate cert = TwistedElement::eq(lhs, rhs);
            rep.holds = rep.holds && cert.holds;
            rep.certified_order = std::min(rep.certified_order, cert.order);
            return;
        }
        for (int d = 0; d <= remaining; ++d) {
            exps[pos] = d;
            walk(pos + 1, remaining - d);
        }
        exps[pos] = 0;
    };
    walk(0, max_degree);
    rep.max_word_length = max_degree;
    rep.note = "gamma over all monomials of degree <= " + std::to_string(max_degree);
    return rep;
}

} // namespace demazure
