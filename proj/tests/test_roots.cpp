#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>

#include "demazure/gcm.hpp"
#include "demazure/lattice.hpp"
#include "demazure/weyl.hpp"

using namespace demazure;
using linalg::IntMat;
using linalg::IntVec;
using linalg::RatMat;

namespace {

Gcm a2() { return Gcm({{2, -1}, {-1, 2}}); }
Gcm a1aff() { return Gcm({{2, -2}, {-2, 2}}); }
Gcm b2() { return Gcm({{2, -1}, {-2, 2}}); } // alpha_0(alpha_1^vee) = -2
Gcm g2rank2() { return Gcm({{2, -1}, {-3, 2}}); }
Gcm hyperbolic24() { return Gcm({{2, -4}, {-4, 2}}); }
Gcm g2aff() { return Gcm({{2, -1, 0}, {-1, 2, -1}, {0, -3, 2}}); }

std::shared_ptr<const Lattice> root_lat(const Gcm& g)
{
    return std::make_shared<Lattice>(Lattice::root_lattice(g));
}

} // namespace

TEST_CASE("gcm validation")
{
    CHECK_THROWS_AS(Gcm({{1, 0}, {0, 2}}), InvalidGcm);
    CHECK_THROWS_AS(Gcm({{2, 1}, {1, 2}}), InvalidGcm);
    CHECK_THROWS_AS(Gcm({{2, -1}, {0, 2}}), InvalidGcm);
    CHECK_NOTHROW(a1aff());
}

TEST_CASE("vinberg classification by principal minors")
{
    CHECK(a2().classify().kind == CartanKind::Fin);
    CHECK(a1aff().classify().kind == CartanKind::Aff);
    CHECK(hyperbolic24().classify().kind == CartanKind::Ind);
    CHECK(g2rank2().classify().kind == CartanKind::Fin);
    CHECK(g2aff().classify().kind == CartanKind::Aff);
    Gcm decomposable({{2, 0}, {0, 2}});
    CHECK_THROWS_AS(decomposable.classify(), Decomposable);
    CHECK(decomposable.components().size() == 2);
}

TEST_CASE("coxeter order table")
{
    CHECK(Gcm({{2, 0}, {0, 2}}).coxeter_order(0, 1) == 2);
    CHECK(a2().coxeter_order(0, 1) == 3);
    CHECK(b2().coxeter_order(0, 1) == 4);
    CHECK(g2rank2().coxeter_order(0, 1) == 6);
    CHECK(a1aff().coxeter_order(0, 1) == coxeter_infinity);
    CHECK(hyperbolic24().coxeter_order(0, 1) == coxeter_infinity);
}

TEST_CASE("null root and affine labels")
{
    // primitive kernel vector of [[2,-2],[-2,2]]
    CHECK(a1aff().null_root() == IntVec{1, 1});
    // delta = alpha_0 + 2 alpha_1 + 3 alpha_2
    CHECK(g2aff().null_root() == IntVec{1, 2, 3});
    CHECK_THROWS_AS(a2().null_root(), NotAffine);
}

TEST_CASE("root lattice is a formal Demazure lattice")
{
    Lattice lat = Lattice::root_lattice(a1aff());
    CHECK(lat.check_fdl().pass());
}

TEST_CASE("lambda_n lattices")
{
    // B_1 = (1/4)[[4,3],[0,1]]
    Lattice l1 = lambda_n_lattice(a1aff(), 1);
    CHECK(l1.check_fdl().pass());
    auto b = *l1.basis_in_root_coords();
    CHECK(b[0][1] == Rational(3, 4));
    CHECK(b[1][1] == Rational(1, 4));

    for (int64_t n : {-3, -1, 2, 3, 5})
        CHECK(lambda_n_lattice(a1aff(), n).check_fdl().pass());
}

TEST_CASE("from_B rejects bad input and accepts the identity")
{
    Lattice lr = Lattice::from_B(a2(), linalg::int_to_rat(linalg::identity(2)));
    CHECK(lr.simple_roots() == linalg::identity(2));
    CHECK(lr.coroots() == a2().matrix());

    // B^-1 not integral: alpha_i not contained in the lattice
    RatMat shrunk{{Rational(2), Rational(0)}, {Rational(0), Rational(1)}};
    CHECK_THROWS_AS(Lattice::from_B(a1aff(), shrunk), NotIntegralInverse);

    // pairing not integral
    RatMat third{{Rational(1), Rational(0)}, {Rational(0), Rational(1, 3)}};
    CHECK_THROWS_AS(Lattice::from_B(a1aff(), third), PairingNotIntegral);
}

TEST_CASE("half-sum lattice over the affine rank-2 matrix passes")
{
    // B = [[1,1/2],[0,1/2]]: the paper's congruence conditions hold
    // (B' = 2B, det' = 2, a'-c' = 2 and d'-b' = 0 both in (det'/2) Z)
    RatMat b{{Rational(1), Rational(1, 2)}, {Rational(0), Rational(1, 2)}};
    Lattice lat = Lattice::from_B(a1aff(), b);
    CHECK(lat.check_fdl().pass());
    // same B over the indefinite example (iv)
    Lattice ind = Lattice::from_B(hyperbolic24(), b);
    CHECK(ind.check_fdl().pass());
}

TEST_CASE("restricted weight lattice counterexample fails FDL1 on alpha_1")
{
    // Lambda = Z d* + Z (alpha_1/2) + Z delta over the affine rank-2 matrix;
    // alpha_0 = (0,-2,1), alpha_1 = (0,2,0) in that basis.
    IntMat s{{0, 0}, {-2, 2}, {1, 0}};
    IntMat c{{1, -1, 0}, {0, 1, 0}};
    Lattice lat(a1aff(), s, c);
    FdlReport rep = lat.check_fdl();
    CHECK(rep.fdl1[0]);
    CHECK_FALSE(rep.fdl1[1]);
    CHECK_FALSE(rep.pass());
    CHECK(rep.fdl2[0]);
    CHECK(rep.fdl2[1]);
}

TEST_CASE("delta/m lattices of the affine examples pass FDL")
{
    // A_1^(1) with d*: basis (d*, delta/5, alpha_1)
    {
        IntMat s{{0, 0}, {5, 0}, {-1, 1}};
        IntMat c{{1, 0, -2}, {0, 0, 2}};
        Lattice lat(a1aff(), s, c);
        CHECK(lat.check_fdl().pass());
    }
    // G_2^(1): basis (delta/m, alpha_1, alpha_2) for m = 7
    {
        IntMat s{{7, 0, 0}, {-2, 1, 0}, {-3, 0, 1}};
        IntMat c{{0, -1, 0}, {0, 2, -1}, {0, -3, 2}};
        Lattice lat(g2aff(), s, c);
        CHECK(lat.check_fdl().pass());
    }
}

TEST_CASE("lattice containment: Lambda_m in Lambda_n iff n/m is odd")
{
    Gcm g = a1aff();
    std::map<int64_t, Lattice> lam;
    for (int64_t n = -12; n <= 12; ++n)
        if (n != 0) lam.emplace(n, lambda_n_lattice(g, n));
    // paper chain Lambda_1 < Lambda_3 < Lambda_9
    CHECK(lattice_compare(lam.at(1), lam.at(3)).a_in_b);
    CHECK(lattice_compare(lam.at(3), lam.at(9)).a_in_b);
    CHECK_FALSE(lattice_compare(lam.at(3), lam.at(1)).a_in_b);
    CHECK_FALSE(lattice_compare(lam.at(1), lam.at(2)).a_in_b);
    for (const auto& [m, lm] : lam)
        for (const auto& [n, ln] : lam) {
            bool odd_ratio = (n % m == 0) && ((n / m) % 2 != 0);
            CHECK(lattice_compare(lm, ln).a_in_b == odd_ratio);
        }
}

TEST_CASE("quotients by the root lattice via Smith normal form")
{
    Gcm g = a1aff();
    // Lambda_2 / Lambda_r is cyclic of order 8
    Lattice l2 = lambda_n_lattice(g, 2);
    auto inv = l2.root_quotient_invariants();
    CHECK(inv == std::vector<int64_t>{1, 8});
    for (int64_t n = 1; n <= 6; ++n) {
        auto d = lambda_n_lattice(g, n).root_quotient_invariants();
        int64_t prod = 1;
        for (int64_t x : d) prod *= x;
        CHECK(prod == 4 * n);
    }
}

TEST_CASE("weyl elements: involution and braid")
{
    auto lat = root_lat(a2());
    WeylElement e = WeylElement::identity(lat);
    WeylElement s0 = WeylElement::generator(lat, 0);
    WeylElement s1 = WeylElement::generator(lat, 1);
    CHECK(s0 * s0 == e);
    CHECK((s0 * s0).length() == 0);
    // m=3 braid: s0 s1 s0 = s1 s0 s1, both of length 3
    WeylElement a = s0 * s1 * s0;
    WeylElement b = s1 * s0 * s1;
    CHECK(a == b);
    CHECK(a.length() == 3);
    CHECK(a.word() == std::vector<int>{0, 1, 0});
    CHECK(weyl_reduce(lat, {0, 1, 1, 0, 0, 1, 0}) == a);
}

TEST_CASE("affine rank-2 lengths match brute-force enumeration")
{
    auto lat = root_lat(a1aff());
    // oracle: BFS over all words with matrix dedup records true lengths
    std::map<IntMat, int> lengths;
    std::vector<WeylElement> frontier{WeylElement::identity(lat)};
    lengths[frontier[0].matrix()] = 0;
    for (int len = 1; len <= 12; ++len) {
        std::vector<WeylElement> next;
        for (const auto& w : frontier)
            for (int i = 0; i < 2; ++i) {
                WeylElement v = w * WeylElement::generator(lat, i);
                if (lengths.emplace(v.matrix(), len).second) next.push_back(v);
            }
        frontier = std::move(next);
    }
    for (int k = 1; k <= 6; ++k) {
        std::vector<int> word;
        for (int j = 0; j < k; ++j) {
            word.push_back(0);
            word.push_back(1);
        }
        WeylElement w = weyl_reduce(lat, word);
        CHECK(w.length() == 2 * k);
        CHECK(lengths.at(w.matrix()) == 2 * k);
    }
    // no power of s0 s1 up to exponent 12 is the identity
    WeylElement prod = WeylElement::identity(lat);
    WeylElement s01 = weyl_reduce(lat, {0, 1});
    for (int k = 1; k <= 12; ++k) {
        prod = prod * s01;
        CHECK_FALSE(prod == WeylElement::identity(lat));
    }
}

TEST_CASE("coxeter relations (s_i s_j)^m = e for finite m")
{
    for (const Gcm& g : {a2(), b2(), g2rank2()}) {
        auto lat = root_lat(g);
        int m = g.coxeter_order(0, 1);
        WeylElement s01 = weyl_reduce(lat, {0, 1});
        WeylElement prod = WeylElement::identity(lat);
        for (int k = 0; k < m; ++k) prod = prod * s01;
        CHECK(prod == WeylElement::identity(lat));
    }
}

TEST_CASE("real root enumeration")
{
    // depth 0: just the simple roots
    auto lat_a2 = root_lat(a2());
    CHECK(real_roots_up_to(lat_a2, 0).size() == 2);
    // A2 at depth 3: the six roots +-alpha_i, +-alpha_j, +-(alpha_i+alpha_j)
    auto roots = real_roots_up_to(lat_a2, 3);
    CHECK(roots.size() == 6);
    std::map<IntVec, int> byvec;
    for (auto& r : roots) byvec[r.vec] += 1;
    CHECK(byvec.count(IntVec{1, 1}) == 1);
    CHECK(byvec.count(IntVec{-1, -1}) == 1);

    // m=6 system contains the 2i+3j pattern root
    auto lat_g2 = root_lat(g2rank2());
    bool found = false;
    for (auto& r : real_roots_up_to(lat_g2, 6))
        if (r.vec == IntVec{2, 3}) found = true;
    CHECK(found);
}

TEST_CASE("real root invariants")
{
    for (const Gcm& g : {a2(), b2(), g2rank2(), a1aff()}) {
        auto lat = root_lat(g);
        auto roots = real_roots_up_to(lat, 4);
        for (const auto& r : roots) {
            // primitive vectors of Lambda
            CHECK(linalg::vec_gcd(r.vec) == 1);
            // <alpha, alpha^vee> = 2
            int64_t p = 0;
            for (size_t k = 0; k < r.vec.size(); ++k) p += r.coroot[k] * r.vec[k];
            CHECK(p == 2);
            // s_alpha is an involution
            auto m = reflection_matrix(*lat, r);
            CHECK(linalg::mat_mul(m, m) == linalg::identity(lat->rank()));
            // witness reproduces the vector
            WeylElement w = WeylElement::from_word(lat, r.witness_word);
            CHECK(w.apply(lat->simple_root(r.witness_i)) == r.vec);
            CHECK(reflection_element(lat, r).matrix() == m);
        }
    }
}

TEST_CASE("weyl matrices are unimodular and delta is fixed")
{
    auto lat = root_lat(a1aff());
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> gen(0, 1);
    IntVec delta{1, 1};
    for (int trial = 0; trial < 15; ++trial) {
        std::vector<int> word;
        for (int k = 0; k < 8; ++k) word.push_back(gen(rng));
        WeylElement w = weyl_reduce(lat, word);
        Rational det = linalg::int_det(w.matrix());
        CHECK((det == 1 || det == -1));
        CHECK(w.apply(delta) == delta);
        CHECK(linalg::mat_mul(w.matrix(), w.matrix_inverse()) == linalg::identity(2));
    }
}

TEST_CASE("unimodular extension of primitive vectors")
{
    std::mt19937 rng(808);
    std::uniform_int_distribution<int> gen(-6, 6);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + trial % 3;
        IntVec v(n);
        do {
            for (auto& x : v) x = gen(rng);
        } while (linalg::vec_gcd(v) != 1);
        auto [t, u] = linalg::unimodular_extend(v);
        CHECK(linalg::mat_mul(t, u) == linalg::identity(n));
        CHECK(linalg::column(t, 0) == v);
        IntVec e1(n, 0);
        e1[0] = 1;
        CHECK(linalg::mat_vec(u, v) == e1);
    }
    CHECK_THROWS_AS(linalg::unimodular_extend(IntVec{2, 4}), NotPrimitive);
}
