#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "demazure/hecke.hpp"

using namespace demazure;
using linalg::IntVec;

namespace {

std::shared_ptr<const Lattice> root_lat(const Gcm& g)
{
    return std::make_shared<Lattice>(Lattice::root_lattice(g));
}

const Gcm kA2({{2, -1}, {-1, 2}});
const Gcm kB2({{2, -1}, {-2, 2}});
const Gcm kG2({{2, -1}, {-3, 2}});
const Gcm kA1Aff({{2, -2}, {-2, 2}});

} // namespace

TEST_CASE("quadratic relation in the T basis")
{
    auto lat = root_lat(kA1Aff);
    HeckeElement t0 = HeckeElement::generator(lat, 0);
    HeckeElement one = HeckeElement::unit(lat);
    // T_i T_i = 1 + (t^-1 - t) T_i
    HeckeElement sq = t0 * t0;
    HeckeElement want = one + t0.scaled(Scalar::t(-1) - Scalar::t());
    CHECK(sq == want);
    // (T_i + t)(T_i - t^-1) = 0
    HeckeElement lhs = (t0 + one.scaled(Scalar::t())) * (t0 - one.scaled(Scalar::t(-1)));
    CHECK(lhs.is_zero());
}

TEST_CASE("products along increasing lengths stay monomial")
{
    auto lat = root_lat(kA1Aff);
    HeckeElement t0 = HeckeElement::generator(lat, 0);
    HeckeElement t1 = HeckeElement::generator(lat, 1);
    HeckeElement prod = t0 * t1 * t0;
    WeylElement w = weyl_reduce(lat, {0, 1, 0});
    CHECK(prod == HeckeElement::basis(lat, w));

    // no spurious collapse up to length 6 (m = infinity: no relations)
    for (const WeylElement& v : weyl_ball(lat, 6)) {
        HeckeElement h = HeckeElement::unit(lat);
        for (auto it = v.word().rbegin(); it != v.word().rend(); ++it)
            h = h.left_mul_generator(*it);
        CHECK(h == HeckeElement::basis(lat, v));
    }
}

TEST_CASE("hecke multiplication is associative and unital")
{
    auto lat = root_lat(kB2);
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> gen(0, 1), cf(-3, 3);
    auto random_h = [&] {
        HeckeElement h = HeckeElement::zero(lat);
        for (int k = 0; k < 3; ++k) {
            WeylElement w = weyl_reduce(lat, {gen(rng), gen(rng), gen(rng)});
            h.add_term(w, Scalar(cf(rng)) + Scalar::t(cf(rng) >= 0 ? 1 : -1));
        }
        return h;
    };
    HeckeElement one = HeckeElement::unit(lat);
    for (int trial = 0; trial < 8; ++trial) {
        HeckeElement a = random_h(), b = random_h(), c = random_h();
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * one == a);
        CHECK(one * a == a);
    }
}

TEST_CASE("braid relations in the Hecke algebra")
{
    // T_i T_j T_i ... = T_j T_i T_j ... with m factors
    for (const Gcm* g : {&kA2, &kB2, &kG2}) {
        auto lat = root_lat(*g);
        int m = g->coxeter_order(0, 1);
        std::vector<int> wij, wji;
        for (int k = 0; k < m; ++k) {
            wij.push_back(k % 2 == 0 ? 0 : 1);
            wji.push_back(k % 2 == 0 ? 1 : 0);
        }
        auto prod = [&](const std::vector<int>& word) {
            HeckeElement h = HeckeElement::unit(lat);
            for (auto it = word.rbegin(); it != word.rend(); ++it)
                h = h.left_mul_generator(*it);
            return h;
        };
        CHECK(prod(wij) == prod(wji));
    }
}

TEST_CASE("psi maps the generators and kills the quadratic relation")
{
    auto lat = root_lat(kA2);
    // psi(X_i) = u T_i + u t
    HeckeElement img = psi_map(DemazureExpression::word({0}), lat);
    HeckeElement want = HeckeElement::generator(lat, 0).scaled(Scalar::u()) +
                        HeckeElement::unit(lat).scaled(Scalar::u() * Scalar::t());
    CHECK(img == want);
    // psi(X_i^2 - mu1 X_i) = 0 under the theorem bindings
    DemazureExpression rel =
        DemazureExpression::word({0, 0}) - DemazureExpression::word({0}, Scalar::mu1());
    CHECK(psi_map(rel, lat).is_zero());
    // m=3 braid image vanishes
    DemazureExpression m3 =
        DemazureExpression::word({1, 0, 1}) - DemazureExpression::word({0, 1, 0}) -
        (DemazureExpression::word({0}) - DemazureExpression::word({1})).scaled(Scalar::mu2());
    CHECK(psi_map(m3, lat).is_zero());
}

TEST_CASE("psi kills every defining relation for each finite m")
{
    for (const Gcm* g : {&kA2, &kB2, &kG2, &kA1Aff}) {
        auto lat = root_lat(*g);
        HeckeCheckReport rep = verify_psi_relations(lat);
        CHECK(rep.holds);
    }
}

TEST_CASE("phi sends T_i to u^-1 X_i - t and kills the Hecke relations")
{
    auto lat = root_lat(kA2);
    std::map<Param, Scalar> bind = theorem_bindings();
    auto ctx = make_fga_context(FglTag::hyperbolic, 10, lat,
                                Scalar::mu1().specialize(bind), Scalar::mu2().specialize(bind));
    TwistedElement ti = phi_generator(ctx, 0);
    TwistedElement want = x_generator(ctx, 0).scaled(Scalar::u(-1)) -
                          TwistedElement::unit(ctx).scaled(Scalar::t());
    CHECK(TwistedElement::eq(ti, want).holds);

    // (phi(T_i) + t)(phi(T_i) - t^-1) = 0 in Q_W^F
    TwistedElement unit = TwistedElement::unit(ctx);
    TwistedElement lhs = (ti + unit.scaled(Scalar::t())) * (ti - unit.scaled(Scalar::t(-1)));
    ZeroCertificate cert = lhs.zero_certificate();
    CHECK(cert.holds);
    CHECK(cert.order >= 4);

    // phi(T_{iji} - T_{jij}) = 0 for m = 3
    TwistedElement diff = phi_word(ctx, {0, 1, 0}) - phi_word(ctx, {1, 0, 1});
    ZeroCertificate c2 = diff.zero_certificate();
    CHECK(c2.holds);
    CHECK(c2.order >= 2);
}

TEST_CASE("phi is independent of the chosen reduced word")
{
    for (const Gcm* g : {&kA2, &kB2}) {
        auto lat = root_lat(*g);
        std::map<Param, Scalar> bind = theorem_bindings();
        auto ctx = make_fga_context(FglTag::hyperbolic, 10, lat,
                                    Scalar::mu1().specialize(bind),
                                    Scalar::mu2().specialize(bind));
        int m = g->coxeter_order(0, 1);
        std::vector<int> wij, wji;
        for (int k = 0; k < m; ++k) {
            wij.push_back(k % 2 == 0 ? 0 : 1);
            wji.push_back(k % 2 == 0 ? 1 : 0);
        }
        ZeroCertificate cert =
            TwistedElement::eq(phi_word(ctx, wij), phi_word(ctx, wji));
        CHECK(cert.holds);
        CHECK(cert.order >= 0);
    }
}

TEST_CASE("iso round trips on the m = 3 system at short lengths")
{
    VerificationInput in{root_lat(kA2), FglTag::hyperbolic, Scalar::mu1(), Scalar::mu2(), 6};
    HeckeCheckReport rep = verify_iso(in, 2);
    INFO(rep.note);
    CHECK(rep.holds);
    CHECK(rep.certified_order >= 0);
}

TEST_CASE("affine corollary identity for degree <= 3 monomials")
{
    VerificationInput in{root_lat(kA2), FglTag::hyperbolic, Scalar::mu1(), Scalar::mu2(), 8};
    for (int i : {0, 1}) {
        HeckeCheckReport rep = affine_relation_check(in, i, 3);
        INFO(rep.note);
        CHECK(rep.holds);
        CHECK(rep.certified_order >= in.order - 4);
    }
}
