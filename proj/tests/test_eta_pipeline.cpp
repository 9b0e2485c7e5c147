#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fried/eta_pipeline.hpp"

#include <random>

using namespace fried;

static std::shared_ptr<const GroupModel> model(const char *name) {
    return std::make_shared<const GroupModel>(build_preset(name));
}

static MatrixRep metric_rep(std::shared_ptr<const GroupModel> m, const std::string &spec) {
    auto r = build_rep_from_spec(m, spec);
    find_admissible_metric(r);
    return r;
}

static Weight tw(const GroupModel &g, Rat t0) {
    Weight w{std::vector<Rat>(g.delta), std::vector<Rat>(g.dim_t())};
    w.t[0] = t0;
    return w;
}

static std::vector<TorusElement> random_samples(int count, int dim_t, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> len(0.05, 2.5), ang(-3.1, 3.1);
    std::vector<TorusElement> out;
    for (int i = 0; i < count; ++i) {
        TorusElement g;
        g.a_part = len(rng) * (i % 2 ? 1 : -1);
        g.t_angles.resize(dim_t);
        for (auto &v : g.t_angles) v = ang(rng);
        out.push_back(g);
    }
    return out;
}

TEST_CASE("trivial rep recovers the bare spinor kernel pattern") {
    auto sl2c = model("sl2c");
    auto fam = compute_eta_family(metric_rep(sl2c, "0,0"), "dirac");
    REQUIRE(fam.blocks.size() == 3);
    CHECK(fam.blocks[0].beta == Rat(-1));
    CHECK(fam.blocks[1].beta == Rat(0));
    CHECK(fam.blocks[2].beta == Rat(1));

    const GroupModel &g = *fam.rep.model;
    // kernel of the zero operator: all of S, dim 4
    long long total = 0;
    for (const auto &b : fam.blocks)
        total += b.chi_plus.virtual_dimension() + b.chi_minus.virtual_dimension();
    CHECK(total == 4);
    CHECK(fam.blocks[2].chi_plus == VirtualCharacter::monomial(tw(g, 0)));
    CHECK(fam.blocks[2].chi_minus.is_zero());
    CHECK(fam.blocks[1].chi_plus.is_zero());
    CHECK(fam.blocks[1].chi_minus ==
          VirtualCharacter::monomial(tw(g, 2)) + VirtualCharacter::monomial(tw(g, -2)));

    CHECK(fam.trace_constant == Rat(-2));
    CHECK(verify_casimir_scalar_eta(fam) == 0.0);
    CHECK(sigma_eta(fam, Rat(1)) == Rat(-2));
    CHECK(sigma_eta(fam, Rat(0)) == Rat(0));

    auto rep = verify_graded_kernel_identity(fam, random_samples(20, 1, 77));
    CHECK(rep.exact);
    CHECK(rep.max_residual <= 1e-10);
}

TEST_CASE("theta-augmented fundamental rep: full kernel family suite") {
    auto sl2c = model("sl2c");
    auto fam = compute_eta_family(metric_rep(sl2c, "1,0+theta"), "dirac");
    const GroupModel &g = *fam.rep.model;

    // support symmetric under beta -> -beta
    REQUIRE(fam.blocks.size() == 4);
    CHECK(fam.blocks[0].beta == Rat(-3, 2));
    CHECK(fam.blocks[1].beta == Rat(-1, 2));
    CHECK(fam.blocks[2].beta == Rat(1, 2));
    CHECK(fam.blocks[3].beta == Rat(3, 2));

    // highest slice is a plus pair of torus weights +-1, inner ones are minus
    // pairs of torus weights +-3
    auto pm = [&](Rat t0) {
        return VirtualCharacter::monomial(tw(g, t0)) + VirtualCharacter::monomial(tw(g, -t0));
    };
    CHECK(fam.blocks[3].chi_plus == pm(1));
    CHECK(fam.blocks[3].chi_minus.is_zero());
    CHECK(fam.blocks[2].chi_plus.is_zero());
    CHECK(fam.blocks[2].chi_minus == pm(3));
    CHECK(fam.blocks[0].chi_plus == fam.blocks[3].chi_plus);
    CHECK(fam.blocks[1].chi_minus == fam.blocks[2].chi_minus);

    // m-Casimir scalars measured on the slices
    CHECK(fam.blocks[3].casimir_um == Rat(-1, 2));
    CHECK(fam.blocks[2].casimir_um == Rat(-9, 2));
    CHECK(verify_casimir_scalar_eta(fam) == 0.0);

    // finiteness bound: support inside rep b-weights +- top spinor b-weight
    for (const auto &b : fam.blocks) {
        Rat a = b.beta < 0 ? -b.beta : b.beta;
        CHECK(a <= Rat(3, 2));
    }

    // shift scalars: sigma + |beta|^2 + Casimir(rep) = 0, checked inside
    CHECK(sigma_eta(fam, Rat(3, 2)) == Rat(-3, 2));
    CHECK(sigma_eta(fam, Rat(1, 2)) == Rat(5, 2));

    auto rep = verify_graded_kernel_identity(fam, random_samples(100, 1, 2026));
    CHECK(rep.exact);
    CHECK(rep.max_residual <= 1e-9);

    auto eh = compute_eta_hat(fam);
    REQUIRE(eh.entries.size() == 4);
    // no compact noncompact-part inside m here: hats coincide with the slices
    CHECK(eh.entries[3].hat_plus == fam.blocks[3].chi_plus);

    auto sum = verify_lift_sum_identity(eh, fam.rep);
    CHECK(sum.ok);
    CHECK(sum.diff.is_zero());
}

TEST_CASE("noncompact-center branch") {
    auto rxs = model("rline_x_su2");
    auto fam = compute_eta_family(metric_rep(rxs, "1/2;1+theta"), "direct");
    const GroupModel &g = *fam.rep.model;

    REQUIRE(fam.blocks.size() == 2);
    CHECK(fam.blocks[0].beta == Rat(-1, 2));
    CHECK(fam.blocks[1].beta == Rat(1, 2));
    auto pm = [&](Rat t0) {
        return VirtualCharacter::monomial(tw(g, t0)) + VirtualCharacter::monomial(tw(g, -t0));
    };
    // each slice is the 2-dimensional su2 rep; no zero slice
    CHECK(fam.blocks[1].chi_plus == pm(1));
    CHECK(fam.blocks[1].chi_minus.is_zero());
    CHECK(fam.find(Rat(0)) == nullptr);

    CHECK(fam.trace_constant == Rat(0));
    CHECK(fam.casimir_rep == Rat(-7, 4));
    CHECK(fam.blocks[1].casimir_um == Rat(-3, 2));
    CHECK(verify_casimir_scalar_eta(fam) == 0.0);
    CHECK(sigma_eta(fam, Rat(1, 2)) == Rat(3, 2));

    auto rep = verify_graded_kernel_identity(fam, random_samples(50, 1, 99));
    CHECK(rep.exact);
    CHECK(rep.max_residual <= 1e-9);

    auto eh = compute_eta_hat(fam);
    auto sum = verify_lift_sum_identity(eh, fam.rep);
    CHECK(sum.ok);

    // trivial rep: both sides collapse to the weighted exterior algebra of p*
    auto fam0 = compute_eta_family(metric_rep(rxs, "0;0"), "direct");
    REQUIRE(fam0.blocks.size() == 1);
    CHECK(fam0.blocks[0].beta == Rat(0));
    CHECK(verify_lift_sum_identity(compute_eta_hat(fam0), fam0.rep).ok);
}

TEST_CASE("branch and precondition errors") {
    auto sl2c = model("sl2c");
    CHECK_THROWS_AS(compute_eta_family(metric_rep(sl2c, "1,0"), "dirac"), RequiresThetaInvariant);
    auto red = direct_sum_rep(build_rep_from_spec(sl2c, "1,1"), build_rep_from_spec(sl2c, "0,0"));
    find_admissible_metric(red);
    CHECK_THROWS_AS(compute_eta_family(red, "dirac"), NotScalarCasimir);
    CHECK_THROWS_AS(compute_eta_family(metric_rep(sl2c, "1,0+theta"), "direct"), WrongBranch);
    CHECK_THROWS_AS(compute_eta_family(metric_rep(model("su2"), "1"), "dirac"), WrongBranch);
    CHECK_THROWS_AS(compute_eta_family(metric_rep(sl2c, "0,0"), "nope"), WrongBranch);

    // elliptic sample rejected
    auto fam = compute_eta_family(metric_rep(sl2c, "0,0"), "dirac");
    TorusElement ell;
    ell.a_part = 0.0;
    ell.t_angles = {0.4};
    CHECK_THROWS_AS(verify_graded_kernel_identity(fam, {ell}), EllipticClass);
}

TEST_CASE("negative control: dropping the determinant twist breaks the lift sum") {
    auto sl2c = model("sl2c");
    auto fam = compute_eta_family(metric_rep(sl2c, "1,0+theta"), "dirac");
    auto eh = compute_eta_hat(fam);
    // shift one entry by a nonzero torus weight (mimicking a missing twist)
    Weight shift{std::vector<Rat>{Rat(0)}, std::vector<Rat>{Rat(2)}};
    eh.entries[0].hat_plus = VirtualCharacter::monomial(shift) * eh.entries[0].hat_plus;
    auto sum = verify_lift_sum_identity(eh, fam.rep);
    CHECK(!sum.ok);
    CHECK(!sum.diff.is_zero());
}

TEST_CASE("half-sum identities") {
    auto sl2c = build_preset("sl2c");
    auto rep = kostant_checks(sl2c);
    CHECK(rep.rho_u == Weight{{Rat(1)}, {Rat(0)}});
    CHECK(rep.norm_rho_u == Rat(2));
    CHECK(rep.adjoint_trace == Rat(-48));
    CHECK(rep.strange_formula_ok);
    CHECK(rep.trace_constant == Rat(-2));
    CHECK(rep.trace_constant_ok);
    CHECK(rep.half_sum_shift_ok);
    CHECK(rep.all_ok());

    // classical compact check
    auto su2 = kostant_checks(build_preset("su2"));
    CHECK(su2.norm_rho_u == Rat(1, 2));
    CHECK(su2.all_ok());

    // additivity over product factors
    auto cubed = kostant_checks(build_preset("sl2c_cubed"));
    CHECK(cubed.norm_rho_u == Rat(6));
    CHECK(cubed.trace_constant == Rat(-6));
    CHECK(cubed.all_ok());

    CHECK(kostant_checks(build_preset("rline_x_su2")).all_ok());
    CHECK(kostant_checks(build_preset("sl2c_x_su2")).all_ok());
    CHECK(kostant_checks(build_preset("sl2r")).all_ok());
}

TEST_CASE("highest-weight casimir crosscheck") {
    auto sl2c = model("sl2c");
    CHECK(hc_casimir_crosscheck(metric_rep(sl2c, "0,0")) == Rat(0));
    for (int p = 0; p <= 2; ++p)
        for (int q = 0; q <= 2; ++q) {
            CAPTURE(p);
            CAPTURE(q);
            CHECK(hc_casimir_crosscheck(build_irrep_sl2c(sl2c, p, q)) == Rat(0));
        }
    auto su2 = model("su2");
    for (int n = 0; n <= 3; ++n) CHECK(hc_casimir_crosscheck(build_irrep_su2(su2, n)) == Rat(0));
    CHECK(hc_casimir_crosscheck(build_rep_from_spec(model("rline_x_su2"), "1/2;1")) == Rat(0));
    CHECK(hc_casimir_crosscheck(build_rep_from_spec(model("sl2c_cubed"), "1,0;0,1;1,1")) == Rat(0));

    CHECK_THROWS_AS(hc_casimir_crosscheck(metric_rep(sl2c, "1,0+theta")), NotIrreducible);
}
