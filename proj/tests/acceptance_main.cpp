// Acceptance suite: one line per criterion, exit code = number of failures.
// Each criterion pins its tolerances and time budget in code.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "demazure/demazure.hpp"

using namespace demazure;
using linalg::IntVec;

namespace {

int failures = 0;

struct Criterion {
    int id;
    std::string title;
    double budget_seconds;
};

void run(const Criterion& c, const std::function<bool(std::string&)>& body)
{
    std::string detail;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_budget = c.budget_seconds <= 0 || secs <= c.budget_seconds;
    if (!in_budget) detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
    bool pass = ok && in_budget;
    if (!pass) ++failures;
    std::printf("[%s] criterion %d: %s (%.1fs%s%s)\n", pass ? "PASS" : "FAIL", c.id,
                c.title.c_str(), secs, detail.empty() ? "" : "; ", detail.c_str());
    std::fflush(stdout);
}

std::shared_ptr<const Lattice> root_lat(const Gcm& g)
{
    return std::make_shared<Lattice>(Lattice::root_lattice(g));
}

const Gcm kA2({{2, -1}, {-1, 2}});
const Gcm kM2({{2, 0}, {0, 2}});
const Gcm kB2({{2, -1}, {-2, 2}});
const Gcm kG2({{2, -1}, {-3, 2}});
const Gcm kA1Aff({{2, -2}, {-2, 2}});
const Gcm kG2Aff({{2, -1, 0}, {-1, 2, -1}, {0, -3, 2}});
const Gcm kInd24({{2, -4}, {-4, 2}});

constexpr int kOrder = 8; // default working order N

bool constant_equals(const PowerSeries& f, const Scalar& c,
                     const std::shared_ptr<const FGAContext>& ctx)
{
    PowerSeries want = ctx->constant(c).with_reliable(f.reliable());
    return f.reliable() >= 0 && (f.with_reliable(want.reliable()) - want).is_zero();
}

} // namespace

int main()
{
    // 1. Hyperbolic law axioms at order 10 and the formal inverse, termwise.
    run({1, "hyperbolic FGL axioms and formal inverse at order 10", 10.0}, [](std::string& d) {
        const int n = 10;
        FormalGroupLaw law = FormalGroupLaw::hyperbolic(n);
        FglAxiomReport ax = law.check_axioms();
        // Defining identity F(u, G(u)) = 0.
        PowerSeries u = PowerSeries::variable(1, n, 0);
        bool inv_id = law.series().substitute({u, law.inverse_series()}).is_zero();
        // Termwise closed form: the coefficient of u^{k+1} is -mu1^k.  The
        // sign pattern follows from F(u, G(u)) = 0 for F = (u+v-mu1 uv)/(1+mu2 uv);
        // it is the multiplicative inverse, independent of mu2.
        PowerSeries closed = PowerSeries::zero(1, n);
        for (int k = 0; k + 1 <= n; ++k)
            closed.add_term(Mono({k + 1}), -Scalar::mu1().pow(k));
        bool termwise = law.inverse_series() == closed;
        d = "axioms " + std::string(ax.pass() ? "ok" : "violated") + ", inverse identity " +
            (inv_id ? "ok" : "violated") + ", termwise " + (termwise ? "ok" : "mismatch");
        return ax.pass() && inv_id && termwise;
    });

    // 2. kappa identities with zero tolerance at order 8.
    run({2, "kappa_alpha = mu1, kappa_{i,j} = mu2 (m = 3,4,6), xi = 3 mu2^2", 300.0},
        [](std::string& d) {
            bool ok = true;
            for (const Gcm* g : {&kA2, &kB2, &kG2}) {
                auto ctx = make_fga_context(FglTag::hyperbolic, kOrder, root_lat(*g));
                for (int i : {0, 1})
                    ok = ok && constant_equals(ctx->kappa_alpha_simple(i), Scalar::mu1(), ctx);
                for (auto [i, j] : {std::pair{0, 1}, {1, 0}}) {
                    QFraction k = kappa_pair_fraction(ctx, ctx->lattice()->simple_root(i),
                                                      ctx->lattice()->simple_root(j));
                    auto c = k.as_constant();
                    ok = ok && c && *c == Scalar::mu2();
                }
            }
            VerificationInput in{root_lat(kG2), FglTag::hyperbolic, Scalar::mu1(),
                                 Scalar::mu2(), kOrder};
            XiReport xi = verify_xi(in, 0, 1, Scalar(3) * Scalar::mu2() * Scalar::mu2());
            ok = ok && xi.holds;
            d = "xi_ij = " + xi.xi_ij + ", xi_ji = " + xi.xi_ji +
                ", certified order " + std::to_string(xi.certified_order);
            return ok;
        });

    // 3. Complete relation suite: quadratic, braid m = 2,3,4,6 residual-zero
    //    certified to >= N-6, commutation for degree <= 3, and independence
    //    of X-words up to length 6 when m is infinite.
    run({3, "twisted-algebra relation suite (N = 8, certified >= N-6)", 0.0},
        [](std::string& d) {
            bool ok = true;
            const int threshold = kOrder - 6;
            auto in_for = [](const Gcm& g) {
                return VerificationInput{root_lat(g), FglTag::hyperbolic, Scalar::mu1(),
                                         Scalar::mu2(), kOrder};
            };
            for (int i : {0, 1}) {
                RelationReport r = verify_quadratic(in_for(kA2), i);
                ok = ok && r.holds && r.certified_order >= threshold;
            }
            std::string braids;
            for (const Gcm* g : {&kM2, &kA2, &kB2, &kG2}) {
                RelationReport r = verify_braid(in_for(*g), 0, 1);
                ok = ok && r.holds && r.eta_regular && r.certified_order >= threshold;
                braids += r.relation + ":" + std::to_string(r.certified_order) + " ";
            }
            for (int i : {0, 1}) {
                RelationReport r = verify_commutation(in_for(kA2), i, 3);
                ok = ok && r.holds && r.certified_order >= threshold;
            }
            IndependenceReport ind = verify_independence(in_for(kA1Aff), 6);
            ok = ok && ind.holds && ind.certified_order >= 0;
            d = "braid certified orders: " + braids + "| independence words " +
                std::to_string(ind.words_checked) + " certified " +
                std::to_string(ind.certified_order);
            return ok;
        });

    // 4. Specialization coherence: additive (mu1 = mu2 = 0) and mu2 = 0 kill
    //    all kappa_{i,j} and the braid corrections.
    run({4, "braid relations without corrections under mu2 = 0 specializations", 0.0},
        [](std::string& d) {
            bool ok = true;
            for (const Gcm* g : {&kA2, &kB2, &kG2}) {
                for (auto [tag, mu1] : {std::pair{FglTag::additive, Scalar()},
                                        {FglTag::hyperbolic, Scalar::mu1()}}) {
                    Scalar mu2; // zero in both regimes
                    VerificationInput in{root_lat(*g), tag, mu1, mu2, kOrder};
                    auto ctx = in.context(kOrder);
                    QFraction k = kappa_pair_fraction(ctx, ctx->lattice()->simple_root(0),
                                                      ctx->lattice()->simple_root(1));
                    auto c = k.as_constant();
                    ok = ok && c && c->is_zero();
                    RelationReport r = verify_braid(in, 0, 1);
                    ok = ok && r.holds && r.eta.empty();
                }
            }
            d = "additive and multiplicative regimes";
            return ok;
        });

    // 5. Hecke isomorphism: psi kills the defining relations and the round
    //    trips are identities on all words of length <= 5.
    run({5, "Hecke isomorphism round trips (length <= 5)", 600.0}, [](std::string& d) {
        bool ok = true;
        for (const Gcm* g : {&kA1Aff, &kA2, &kB2, &kG2}) {
            auto lat = root_lat(*g);
            HeckeCheckReport kills = verify_psi_relations(lat);
            VerificationInput in{lat, FglTag::hyperbolic, Scalar::mu1(), Scalar::mu2(),
                                 kOrder};
            HeckeCheckReport iso = verify_iso(in, 5);
            ok = ok && kills.holds && iso.holds && iso.certified_order >= 0;
            d += std::to_string(iso.certified_order) + " ";
            if (!iso.note.empty()) d += iso.note;
        }
        d = "certified orders: " + d;
        return ok;
    });

    // 6. Affine corollary with u = 1: gamma T_i - T_i s_i(gamma) =
    //    (1 - t x_{alpha_i}) Delta_i(gamma), certified to >= N-4.
    run({6, "affine Hecke identity for monomials of degree <= 3", 0.0}, [](std::string& d) {
        bool ok = true;
        VerificationInput in{root_lat(kA2), FglTag::hyperbolic, Scalar::mu1(), Scalar::mu2(),
                             kOrder};
        int worst = kOrder;
        for (int i : {0, 1}) {
            HeckeCheckReport r = affine_relation_check(in, i, 3);
            ok = ok && r.holds && r.certified_order >= kOrder - 4;
            worst = std::min(worst, r.certified_order);
        }
        d = "certified order " + std::to_string(worst);
        return ok;
    });

    // 7. The lattice family: containment iff n/m is odd, and the cyclic
    //    quotients |Lambda_n / Lambda_r| = 4n.
    run({7, "Lambda_n containment law and quotients", 5.0}, [](std::string& d) {
        bool ok = true;
        std::map<int64_t, Lattice> lam;
        for (int64_t n = -12; n <= 12; ++n)
            if (n != 0) lam.emplace(n, lambda_n_lattice(kA1Aff, n));
        ok = ok && lattice_compare(lam.at(1), lam.at(3)).a_in_b &&
             !lattice_compare(lam.at(3), lam.at(1)).a_in_b &&
             lattice_compare(lam.at(3), lam.at(9)).a_in_b &&
             !lattice_compare(lam.at(9), lam.at(3)).a_in_b;
        for (const auto& [m, lm] : lam)
            for (const auto& [n, ln] : lam) {
                bool odd_ratio = (n % m == 0) && ((n / m) % 2 != 0);
                if (lattice_compare(lm, ln).a_in_b != odd_ratio) ok = false;
            }
        for (int64_t n = 1; n <= 6; ++n) {
            int64_t size = 1;
            for (int64_t x : lam.at(n).root_quotient_invariants()) size *= x;
            if (size != 4 * n) ok = false;
        }
        d = "576 containment pairs, quotients 4n for n = 1..6";
        return ok;
    });

    // 8. Classification and affine data.
    run({8, "Vinberg classification and null roots", 1.0}, [](std::string& d) {
        bool ok = kA1Aff.classify().kind == CartanKind::Aff &&
                  kA1Aff.null_root() == IntVec{1, 1} &&
                  kG2Aff.classify().kind == CartanKind::Aff &&
                  kG2Aff.null_root() == IntVec{1, 2, 3} &&
                  kInd24.classify().kind == CartanKind::Ind &&
                  kA2.classify().kind == CartanKind::Fin;
        d = "A1aff, G2aff, [[2,-4],[-4,2]], A2";
        return ok;
    });

    // 9. The example lattices pass the FDL axioms; the restricted-weight
    //    counterexample fails FDL1.
    run({9, "FDL examples and the restricted-weight-lattice counterexample", 0.0},
        [](std::string& d) {
            bool ok = true;
            {
                // A-type affine with d*: basis (d*, delta/5, alpha_1)
                Lattice lat(kA1Aff, {{0, 0}, {5, 0}, {-1, 1}}, {{1, 0, -2}, {0, 0, 2}});
                ok = ok && lat.check_fdl().pass();
            }
            {
                // G2 affine: basis (delta/7, alpha_1, alpha_2)
                Lattice lat(kG2Aff, {{7, 0, 0}, {-2, 1, 0}, {-3, 0, 1}},
                            {{0, -1, 0}, {0, 2, -1}, {0, -3, 2}});
                ok = ok && lat.check_fdl().pass();
            }
            {
                // indefinite example: Z alpha_1 + Z (alpha_1 + alpha_2)/2
                linalg::RatMat b{{Rational(1), Rational(1, 2)}, {Rational(0), Rational(1, 2)}};
                ok = ok && Lattice::from_B(kInd24, b).check_fdl().pass();
            }
            {
                Lattice lat(kA1Aff, {{0, 0}, {-2, 2}, {1, 0}}, {{1, -1, 0}, {0, 1, 0}});
                FdlReport rep = lat.check_fdl();
                ok = ok && !rep.fdl1[1] && rep.fdl1[0] && rep.fdl2[0] && rep.fdl2[1];
            }
            d = "delta/m lattices pass; counterexample fails FDL1 on alpha_1";
            return ok;
        });

    std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
                failures);
    return failures;
}
