#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "demazure/twisted.hpp"

namespace demazure {

// Inputs shared by the verification drivers.  Verifications construct their
// own contexts, raising the series order enough that denominator valuations
// leave a usable certified margin.
struct VerificationInput {
    std::shared_ptr<const Lattice> lattice;
    FglTag tag = FglTag::hyperbolic;
    Scalar mu1 = Scalar::mu1();
    Scalar mu2 = Scalar::mu2();
    int order = 8;

    std::shared_ptr<const FGAContext> context(int series_order) const
    {
        return make_fga_context(tag, series_order, lattice, mu1, mu2);
    }
};

struct RelationReport {
    std::string relation;
    int i = -1;
    int j = -1;
    bool holds = false;
    int certified_order = -1;
    int residual_terms = 0;
    bool eta_regular = true; // every x-basis coefficient reduced denominator-free
    std::map<std::string, std::string> eta;
    std::string note;
};

// kappa_{lambda,mu} as a fraction over x_{lambda+mu} x_lambda x_mu x_{-lambda};
// no division, hence no reliability loss.
inline QFraction kappa_pair_fraction(const std::shared_ptr<const FGAContext>& ctx,
                                     const linalg::IntVec& lambda, const linalg::IntVec& mu)
{
    linalg::IntVec sum(lambda.size()), neg(lambda.size());
    for (size_t k = 0; k < lambda.size(); ++k) {
        sum[k] = lambda[k] + mu[k];
        neg[k] = -lambda[k];
    }
    if (linalg::is_zero_vec(lambda) || linalg::is_zero_vec(mu) || linalg::is_zero_vec(sum))
        throw NotRegular("kappa_{lambda,mu} needs lambda, mu, lambda+mu nonzero");
    const PowerSeries& xl = ctx->x_of(lambda);
    const PowerSeries& xm = ctx->x_of(mu);
    const PowerSeries& xn = ctx->x_of(neg);
    const PowerSeries& xs = ctx->x_of(sum);
    PowerSeries num = xl * (xn - xm) - xs * xn;
    return QFraction(ctx, std::move(num),
                     QFraction::Den{sum, lambda, mu, neg});
}

// Demazure operator on Q^F: (q - s_alpha q) / x_alpha by denominator append.
inline QFraction demazure_fraction(const std::shared_ptr<const FGAContext>& ctx,
                                   const WeylElement& s_alpha, const linalg::IntVec& alpha,
                                   const QFraction& q)
{
    return (q - q.apply_weyl(s_alpha)) * QFraction::one_over_x(ctx, alpha);
}

namespace detail {

inline linalg::IntVec root_combo(const Lattice& lat, int i, int j, int64_t a, int64_t b)
{
    linalg::IntVec vi = lat.simple_root(i), vj = lat.simple_root(j);
    linalg::IntVec out(vi.size());
    for (size_t k = 0; k < out.size(); ++k) out[k] = a * vi[k] + b * vj[k];
    return out;
}

// How much the series order is raised above the user's order for each braid
// case; covers the union of path denominators so certified orders stay >= the
// spec thresholds at the default order.
inline int braid_order_bump(int m)
{
    switch (m) {
    case 2: return 2;
    case 3: return 4;
    case 4: return 4;
    case 6: return 8;
    default: return 2;
    }
}

// The paper's nine-term correction for m = 6.  `transposed` selects the ji
// variant.  The fourth denominator of the ij variant is read as x_{-i-3j}.
inline QFraction xi_fraction(const std::shared_ptr<const FGAContext>& ctx, int i, int j,
                             bool transposed)
{
    const Lattice& lat = *ctx->lattice();
    auto v = [&](int64_t a, int64_t b) { return root_combo(lat, i, j, a, b); };
    struct Term {
        int sign;
        std::array<std::pair<int64_t, int64_t>, 4> dens;
    };
    std::vector<Term> terms;
    if (!transposed) {
        terms = {
            {+1, {{{1, 0}, {1, 1}, {1, 2}, {2, 3}}}},
            {+1, {{{1, 0}, {0, 1}, {1, 2}, {-2, -3}}}},
            {+1, {{{1, 0}, {0, 1}, {2, 3}, {-1, -1}}}},
            {-1, {{{1, 0}, {1, 1}, {1, 2}, {-1, -3}}}},
            {-1, {{{1, 0}, {1, 1}, {1, 3}, {0, -1}}}},
            {+1, {{{1, 1}, {1, 3}, {0, -1}, {-2, -3}}}},
            {+1, {{{1, 3}, {2, 3}, {0, -1}, {-1, -2}}}},
            {+1, {{{1, 1}, {1, 2}, {-1, -3}, {-2, -3}}}},
            {-1, {{{1, 0}, {0, 1}, {1, 2}, {1, 3}}}},
        };
    } else {
        terms = {
            {+1, {{{1, 0}, {0, 1}, {2, 3}, {-1, -2}}}},
            {+1, {{{1, 0}, {0, 1}, {1, 2}, {-1, -3}}}},
            {+1, {{{0, 1}, {1, 2}, {1, 3}, {2, 3}}}},
            {-1, {{{1, 0}, {0, 1}, {1, 1}, {2, 3}}}},
            {+1, {{{1, 1}, {1, 2}, {-1, 0}, {-2, -3}}}},
            {+1, {{{1, 3}, {2, 3}, {-1, -1}, {-1, -2}}}},
            {+1, {{{1, 1}, {1, 3}, {-1, 0}, {-1, -2}}}},
            {-1, {{{0, 1}, {1, 3}, {2, 3}, {-1, -1}}}},
            {-1, {{{0, 1}, {1, 1}, {1, 3}, {-1, 0}}}},
        };
    }
    QFraction acc = QFraction::scalar(ctx, Scalar());
    for (const Term& t : terms) {
        QFraction::Den den;
        for (auto [a, b] : t.dens) den.insert(v(a, b));
        QFraction f(ctx, ctx->constant(Scalar(t.sign)), std::move(den));
        acc = acc + f;
    }
    return acc;
}

inline void extract_eta(RelationReport& rep, const TwistedElement& diff, int m)
{
    XBasisExpansion exp = to_x_basis(diff);
    for (const auto& [w, q] : exp) {
        if (q.stored_zero()) continue;
        QFraction red = q.reduced();
        if (!red.den().empty()) rep.eta_regular = false;
        if (w.length() < 1 || w.length() > m - 2) {
            rep.eta_regular = false;
            rep.note += "x-basis support outside [1, m-2]; ";
        }
        auto c = red.as_constant();
        rep.eta[w.word_str()] = c ? c->str() : red.str();
    }
}

} // namespace detail

// X_i^2 = kappa_i X_i
inline RelationReport verify_quadratic(const VerificationInput& in, int i)
{
    auto ctx = in.context(in.order);
    RelationReport rep;
    rep.relation = "quadratic";
    rep.i = i;
    TwistedElement xi = x_generator(ctx, i);
    PowerSeries kappa = ctx->kappa_alpha_simple(i);
    TwistedElement residual = xi * xi - TwistedElement::from_series(ctx, kappa) * xi;
    ZeroCertificate cert = residual.zero_certificate();
    rep.holds = cert.holds;
    rep.certified_order = cert.order;
    rep.residual_terms = static_cast<int>(residual.support().size());
    return rep;
}

// gamma X_alpha = X_alpha s_alpha(gamma) + Delta_alpha(gamma) for all
// monomials gamma of total degree <= max_degree.
inline RelationReport verify_commutation(const VerificationInput& in, int i, int max_degree = 3)
{
    auto ctx = in.context(in.order);
    RelationReport rep;
    rep.relation = "commutation";
    rep.i = i;
    rep.holds = true;
    rep.certified_order = ctx->order();
    TwistedElement xi = x_generator(ctx, i);
    linalg::IntMat refl = ctx->lattice()->reflection_matrix(i);
    int n = ctx->nvars();
    std::vector<int32_t> exps(n, 0);
    // enumerate exponent vectors of total degree 1..max_degree
    std::function<void(int, int)> walk = [&](int pos, int remaining) {
        if (pos == n) {
            Mono m(exps);
            if (m.degree() == 0) return;
            PowerSeries gamma = ctx->zero();
            gamma.add_term(m, Scalar(1));
            TwistedElement lhs = TwistedElement::from_series(ctx, gamma) * xi;
            TwistedElement rhs =
                xi * TwistedElement::from_series(ctx, ctx->weyl_act(refl, gamma)) +
                TwistedElement::from_series(ctx, ctx->demazure_simple(i, gamma));
            ZeroCertificate cert = TwistedElement::eq(lhs, rhs);
            rep.holds = rep.holds && cert.holds;
            rep.certified_order = std::min(rep.certified_order, cert.order);
            ++rep.residual_terms;
            return;
        }
        for (int d = 0; d <= remaining; ++d) {
            exps[pos] = d;
            walk(pos + 1, remaining - d);
        }
        exps[pos] = 0;
    };
    walk(0, max_degree);
    rep.note = "checked all monomials of degree <= " + std::to_string(max_degree);
    return rep;
}

// The braid relation for the pair (i, j), dispatched on m_ij.  For m = 4 and
// m = 6 the roles are oriented so that <alpha_I, alpha_J^vee> is -2 resp. -3,
// which makes every denominator in the correction terms a real root.
inline RelationReport verify_braid(const VerificationInput& in, int i, int j)
{
    const Gcm& g = in.lattice->gcm();
    int m = g.coxeter_order(i, j);
    if (m == coxeter_infinity)
        throw UnsupportedOrder("m_ij is infinite: no braid relation to verify");
    RelationReport rep;
    rep.relation = "braid-m" + std::to_string(m);
    rep.i = i;
    rep.j = j;

    int big = 0, small = 0;
    if (m == 4) { big = -2; small = -1; }
    if (m == 6) { big = -3; small = -1; }
    int bi = i, bj = j;
    if (m == 4 || m == 6) {
        // need alpha_I(alpha_J^vee) = big, i.e. entry(J, I) = big
        if (g.entry(j, i) == big && g.entry(i, j) == small) {
            bi = i;
            bj = j;
        } else if (g.entry(i, j) == big && g.entry(j, i) == small) {
            bi = j;
            bj = i;
            rep.note += "roles swapped to match the correction-term root pattern; ";
        } else {
            throw UnsupportedOrder("pairing values do not match any braid case");
        }
    }

    auto ctx = in.context(in.order + detail::braid_order_bump(m));
    const Lattice& lat = *ctx->lattice();
    auto vec = [&](int64_t a, int64_t b) { return detail::root_combo(lat, bi, bj, a, b); };
    auto word_x = [&](std::initializer_list<int> letters) {
        return x_word(ctx, std::vector<int>(letters));
    };
    WeylElement si = WeylElement::generator(ctx->lattice(), bi);
    WeylElement sj = WeylElement::generator(ctx->lattice(), bj);
    linalg::IntVec alpha_i = lat.simple_root(bi), alpha_j = lat.simple_root(bj);

    TwistedElement residual = TwistedElement::zero(ctx);
    if (m == 2) {
        residual = word_x({bi, bj}) - word_x({bj, bi});
    } else if (m == 3) {
        TwistedElement lhs = word_x({bj, bi, bj}) - word_x({bi, bj, bi});
        QFraction k_ij = kappa_pair_fraction(ctx, vec(1, 0), vec(0, 1));
        QFraction k_ji = kappa_pair_fraction(ctx, vec(0, 1), vec(1, 0));
        TwistedElement rhs = word_x({bi}).right_mul(k_ij) - word_x({bj}).right_mul(k_ji);
        residual = lhs - rhs;
        detail::extract_eta(rep, lhs, m);
    } else if (m == 4) {
        TwistedElement lhs = word_x({bj, bi, bj, bi}) - word_x({bi, bj, bi, bj});
        QFraction a = (kappa_pair_fraction(ctx, vec(1, 2), vec(0, -1)) +
                       kappa_pair_fraction(ctx, vec(0, 1), vec(1, 0)))
                          .reduced();
        QFraction b = (kappa_pair_fraction(ctx, vec(1, 1), vec(0, 1)) +
                       kappa_pair_fraction(ctx, vec(1, 0), vec(0, 1)))
                          .reduced();
        TwistedElement rhs =
            word_x({bi, bj}).right_mul(a) - word_x({bj, bi}).right_mul(b) +
            word_x({bj}).right_mul(demazure_fraction(ctx, si, alpha_i, b).reduced()) -
            word_x({bi}).right_mul(demazure_fraction(ctx, sj, alpha_j, a).reduced());
        residual = lhs - rhs;
        detail::extract_eta(rep, lhs, m);
    } else if (m == 6) {
        TwistedElement lhs =
            word_x({bj, bi, bj, bi, bj, bi}) - word_x({bi, bj, bi, bj, bi, bj});
        QFraction a = (kappa_pair_fraction(ctx, vec(0, 1), vec(1, 0)) +
                       kappa_pair_fraction(ctx, vec(2, 3), vec(-1, -2)) +
                       kappa_pair_fraction(ctx, vec(-1, -3), vec(1, 2)) +
                       kappa_pair_fraction(ctx, vec(1, 2), vec(0, -1)))
                          .reduced();
        QFraction b = (kappa_pair_fraction(ctx, vec(1, 0), vec(0, 1)) +
                       kappa_pair_fraction(ctx, vec(-2, -3), vec(1, 2)) +
                       kappa_pair_fraction(ctx, vec(-1, -2), vec(1, 3)) +
                       kappa_pair_fraction(ctx, vec(1, 1), vec(0, 1)))
                          .reduced();
        QFraction xi_ij = detail::xi_fraction(ctx, bi, bj, false).reduced();
        QFraction xi_ji = detail::xi_fraction(ctx, bi, bj, true).reduced();
        TwistedElement rhs =
            word_x({bi, bj, bi, bj}).right_mul(a) - word_x({bj, bi, bj, bi}).right_mul(b) +
            word_x({bj, bi, bj}).right_mul(demazure_fraction(ctx, si, alpha_i, b).reduced()) -
            word_x({bi, bj, bi}).right_mul(demazure_fraction(ctx, sj, alpha_j, a).reduced()) +
            word_x({bi, bj}).right_mul(xi_ij) - word_x({bj, bi}).right_mul(xi_ji) +
            word_x({bj}).right_mul(demazure_fraction(ctx, si, alpha_i, xi_ji).reduced()) -
            word_x({bi}).right_mul(demazure_fraction(ctx, sj, alpha_j, xi_ij).reduced());
        residual = lhs - rhs;
        detail::extract_eta(rep, lhs, m);
    }
    ZeroCertificate cert = residual.zero_certificate();
    rep.holds = cert.holds;
    rep.certified_order = cert.order;
    rep.residual_terms = static_cast<int>(residual.support().size());
    return rep;
}

// The two explicit m = 6 correction coefficients, compared against a target
// scalar (3 mu2^2 for the hyperbolic law).
struct XiReport {
    bool holds = false;
    int certified_order = -1;
    std::string xi_ij, xi_ji;
};

inline XiReport verify_xi(const VerificationInput& in, int i, int j, const Scalar& expected)
{
    const Gcm& g = in.lattice->gcm();
    if (g.coxeter_order(i, j) != 6) throw UnsupportedOrder("xi is defined for m = 6");
    int bi = i, bj = j;
    if (!(g.entry(j, i) == -3 && g.entry(i, j) == -1)) std::swap(bi, bj);
    auto ctx = in.context(in.order + detail::braid_order_bump(6));
    QFraction xi_ij = detail::xi_fraction(ctx, bi, bj, false);
    QFraction xi_ji = detail::xi_fraction(ctx, bi, bj, true);
    QFraction target = QFraction::scalar(ctx, expected);
    ZeroCertificate e1 = QFraction::eq(xi_ij, target);
    ZeroCertificate e2 = QFraction::eq(xi_ji, target);
    XiReport rep;
    rep.holds = e1.holds && e2.holds;
    rep.certified_order = std::min(e1.order, e2.order);
    auto c1 = xi_ij.as_constant(), c2 = xi_ji.as_constant();
    rep.xi_ij = c1 ? c1->str() : xi_ij.str();
    rep.xi_ji = c2 ? c2->str() : xi_ji.str();
    return rep;
}

// For m = infinity there is no relation; instead the X-words over distinct
// Weyl elements must stay independent, witnessed by the triangular solve
// returning the unit coefficient exactly at the indexing element.
struct IndependenceReport {
    bool holds = false;
    int certified_order = -1;
    int words_checked = 0;
};

inline IndependenceReport verify_independence(const VerificationInput& in, int max_len)
{
    auto ctx = in.context(in.order + max_len);
    IndependenceReport rep;
    rep.holds = true;
    rep.certified_order = ctx->order();
    int l = ctx->lattice()->gcm().rank();
    std::vector<std::vector<int>> words{{}};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<std::vector<int>> next;
        for (const auto& w : words) {
            if (static_cast<int>(w.size()) != len - 1) continue;
            for (int s = 0; s < l; ++s) {
                if (!w.empty() && w.back() == s) continue;
                auto v = w;
                v.push_back(s);
                next.push_back(v);
            }
        }
        words.insert(words.end(), next.begin(), next.end());
    }
    for (const auto& word : words) {
        WeylElement w = weyl_reduce(ctx->lattice(), word);
        if (w.length() != static_cast<int>(word.size())) continue; // not reduced
        TwistedElement xw = x_word(ctx, word);
        XBasisExpansion exp = to_x_basis(xw);
        QFraction unit = QFraction::scalar(ctx, Scalar(1));
        for (const auto& [v, q] : exp) {
            ZeroCertificate cert =
                (v == w) ? QFraction::eq(q, unit) : q.zero_certificate();
            rep.holds = rep.holds && cert.holds;
            rep.certified_order = std::min(rep.certified_order, cert.order);
        }
        auto it = exp.find(w);
        if (it == exp.end()) rep.holds = false;
        ++rep.words_checked;
    }
    return rep;
}

} // namespace demazure
