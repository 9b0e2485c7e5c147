#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fried/representations.hpp"

using namespace fried;

static std::shared_ptr<const GroupModel> model(const char *name) {
    return std::make_shared<const GroupModel>(build_preset(name));
}

TEST_CASE("irreps are homomorphisms") {
    auto sl2c = model("sl2c");
    for (int p = 0; p <= 2; ++p)
        for (int q = 0; q <= 2; ++q) {
            auto r = build_irrep_sl2c(sl2c, p, q);
            CAPTURE(p); CAPTURE(q);
            CHECK(r.dim == (p + 1) * (q + 1));
            CHECK(is_homomorphism(r));
        }
    auto su2 = model("su2");
    for (int n = 0; n <= 3; ++n) CHECK(is_homomorphism(build_irrep_su2(su2, n)));
    CHECK(is_homomorphism(build_irrep_rline(model("rline"), Rat(1, 2))));
    CHECK(is_homomorphism(trivial_rep(model("sl2c_cubed"))));
}

TEST_CASE("casimir scalars") {
    auto sl2c = model("sl2c");
    CHECK(casimir_scalar(trivial_rep(sl2c)) == Rat(0));
    CHECK(casimir_scalar(build_irrep_sl2c(sl2c, 1, 0)) == Rat(-3));
    CHECK(casimir_scalar(build_irrep_su2(model("su2"), 1)) == Rat(-3, 2));

    auto v10 = build_irrep_sl2c(sl2c, 1, 0);
    auto v20 = build_irrep_sl2c(sl2c, 2, 0);
    CHECK_THROWS_AS(casimir_scalar(direct_sum_rep(v10, v20)), NotScalar);

    // Casimir is theta-stable
    CHECK(casimir_scalar(theta_twist(v10)) == casimir_scalar(v10));
}

TEST_CASE("theta twist") {
    auto sl2c = model("sl2c");
    auto v10 = build_irrep_sl2c(sl2c, 1, 0);
    auto v01 = build_irrep_sl2c(sl2c, 0, 1);
    auto tw = theta_twist(v10);
    CHECK(is_homomorphism(tw));
    CHECK(full_h_character(tw) == full_h_character(v01));
    CHECK(!(full_h_character(tw) == full_h_character(v10)));
    auto twtw = theta_twist(tw);
    for (int i = 0; i < 6; ++i) CHECK(twtw.rho[i] == v10.rho[i]);

    CHECK(!is_theta_invariant(v10));
    CHECK(is_theta_invariant(direct_sum_rep(v10, v01)));
    CHECK(is_theta_invariant(build_irrep_sl2c(sl2c, 1, 1)));
    // every rep of a delta=0 model is theta-fixed
    CHECK(is_theta_invariant(build_irrep_su2(model("su2"), 2)));
}

TEST_CASE("admissible metrics") {
    auto sl2c = model("sl2c");
    auto triv = trivial_rep(sl2c);
    CHECK(find_admissible_metric(triv) == Mat::identity(1));

    for (int p = 0; p <= 2; ++p)
        for (int q = 0; q <= 2; ++q) {
            auto r = build_irrep_sl2c(sl2c, p, q);
            CAPTURE(p); CAPTURE(q);
            find_admissible_metric(r);
            CHECK(metric_is_admissible(r));
            CHECK(r.metric.trace() == GQ(1));
        }

    auto v10 = build_irrep_sl2c(sl2c, 1, 0);
    find_admissible_metric(v10);
    Mat expect = GQ(Rat(1, 2)) * Mat::identity(2); // p acts by Hermitian Paulis
    CHECK(v10.metric == expect);
}

TEST_CASE("non-reducible rep has no admissible metric") {
    // X acts on C^2 by the nilpotent upper-triangular generator
    auto rl = model("rline");
    MatrixRep r;
    r.model = rl;
    r.dim = 2;
    Mat m(2, 2);
    m(0, 1) = GQ(1);
    r.rho = {m};
    r.label = "unipotent";
    CHECK(is_homomorphism(r));
    CHECK_THROWS_AS(find_admissible_metric(r), Infeasible);
}

TEST_CASE("b-weight decomposition") {
    auto sl2c = model("sl2c");
    auto v10 = build_irrep_sl2c(sl2c, 1, 0);
    CHECK_THROWS_AS(decompose_by_b(v10), RequiresAdmissibleMetric);
    find_admissible_metric(v10);
    auto blocks = decompose_by_b(v10);
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0].beta == Rat(-1, 2));
    CHECK(blocks[1].beta == Rat(1, 2));
    CHECK(blocks[0].basis.cols == 1);
    CHECK(blocks[1].basis.cols == 1);

    auto triv = trivial_rep(sl2c);
    auto tb = decompose_by_b(triv);
    REQUIRE(tb.size() == 1);
    CHECK(tb[0].beta == Rat(0));

    auto su2rep = build_irrep_su2(model("su2"), 1);
    find_admissible_metric(su2rep);
    CHECK_THROWS_AS(decompose_by_b(su2rep), NotRankOne);

    // +-beta blocks pair with equal dimensions on a theta-invariant rep
    auto aug = build_rep_from_spec(sl2c, "1,0+theta");
    find_admissible_metric(aug);
    auto ab = decompose_by_b(aug);
    REQUIRE(ab.size() == 2);
    CHECK(ab[0].beta == -ab[1].beta);
    CHECK(ab[0].basis.cols == ab[1].basis.cols);
}

TEST_CASE("full h character") {
    auto sl2c = model("sl2c");
    auto v10 = build_irrep_sl2c(sl2c, 1, 0);
    auto chi = full_h_character(v10);
    CHECK(chi.virtual_dimension() == 2);
    CHECK(chi.mult(Weight{{Rat(1, 2)}, {Rat(1)}}) == 1);
    CHECK(chi.mult(Weight{{Rat(-1, 2)}, {Rat(-1)}}) == 1);

    // tensor products multiply characters
    auto v11 = build_irrep_sl2c(sl2c, 1, 1);
    auto v01 = build_irrep_sl2c(sl2c, 0, 1);
    CHECK(full_h_character(v11) == full_h_character(v10) * full_h_character(v01));
}

TEST_CASE("rep specs") {
    auto sl2c = model("sl2c");
    CHECK(build_rep_from_spec(sl2c, "2,1").dim == 6);
    CHECK(build_rep_from_spec(sl2c, "1,0+theta").dim == 4);
    auto rxs = model("rline_x_su2");
    auto r = build_rep_from_spec(rxs, "1/2;1");
    CHECK(r.dim == 2);
    CHECK(is_homomorphism(r));
    auto cubed = model("sl2c_cubed");
    auto rc = build_rep_from_spec(cubed, "1,0;0,0;0,1");
    CHECK(rc.dim == 4);
    CHECK(is_homomorphism(rc));
    CHECK_THROWS_AS(build_rep_from_spec(sl2c, "1,0;1"), ParseError);
    CHECK_THROWS_AS(build_rep_from_spec(sl2c, "nope"), ParseError);
}
