#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fried/lattice_data.hpp"
#include "fried/zeta_engine.hpp"

#include <cmath>
#include <complex>

using namespace fried;

static std::shared_ptr<const GroupModel> model(const char *name) {
    return std::make_shared<const GroupModel>(build_preset(name));
}

static MatrixRep metric_rep(std::shared_ptr<const GroupModel> m, const std::string &spec) {
    auto r = build_rep_from_spec(m, spec);
    find_admissible_metric(r);
    return r;
}

static ConjugacyClassRecord simple_class(double ell, std::vector<double> angles, Rat chi,
                                         long long m) {
    ConjugacyClassRecord rec;
    rec.id = "c";
    rec.ell = ell;
    rec.holonomy.a_part = ell;
    rec.holonomy.t_angles = std::move(angles);
    rec.chi_orb = chi;
    rec.m_mult = m;
    return rec;
}

TEST_CASE("ruelle series basics") {
    VirtualCharacter two = 2 * VirtualCharacter::one(1, 1);
    CHECK(ruelle_log_series({}, two).terms.empty());

    auto s = ruelle_log_series({simple_class(1.0, {0.5}, 1, 1)}, two);
    REQUIRE(s.terms.size() == 1);
    CHECK(s.terms[0].first == 1.0);
    CHECK(std::abs(s.terms[0].second - std::complex<double>(2.0, 0.0)) <= 1e-14);
    // exp(2 e^{-sigma}) at sigma = 0: log value is 2
    CHECK(std::abs(s.evaluate(0.0) - std::complex<double>(2.0, 0.0)) <= 1e-14);

    // additivity in the character argument
    auto sl2c = model("sl2c");
    auto c1 = full_h_character(build_rep_from_spec(sl2c, "1,0"));
    auto c2 = full_h_character(build_rep_from_spec(sl2c, "0,1"));
    auto file = synthesize_classes(11, 20, 0.2, 2.5, *sl2c);
    auto sum = ruelle_log_series(file.records, c1 + c2);
    auto s1 = ruelle_log_series(file.records, c1);
    auto s2 = ruelle_log_series(file.records, c2);
    REQUIRE(sum.terms.size() == s1.terms.size());
    for (size_t i = 0; i < sum.terms.size(); ++i)
        CHECK(std::abs(sum.terms[i].second - s1.terms[i].second - s2.terms[i].second) <= 1e-12);

    // invalid records are rejected
    auto bad = simple_class(1.0, {0.1}, 1, 1);
    bad.holonomy.a_part = 2.0;
    CHECK_THROWS_AS(ruelle_log_series({bad}, two), InvariantViolation);
}

TEST_CASE("selberg series and the trivial-denominator branch") {
    auto rxs = model("rline_x_su2");
    auto fam = compute_eta_family(metric_rep(rxs, "0;0"), "direct");
    REQUIRE(fam.blocks.size() == 1);
    auto rec = simple_class(0.7, {1.1}, Rat(1, 2), 3);
    auto s = selberg_log_series({rec}, fam.blocks[0], *rxs);
    REQUIRE(s.terms.size() == 1);
    // zperp = 0: denominator is 1, trivial slice has supertrace 1
    CHECK(std::abs(s.terms[0].second - std::complex<double>(-1.0 / 6.0, 0.0)) <= 1e-14);

    // sl2c: coefficient matches a direct oracle evaluation
    auto sl2c = model("sl2c");
    auto fam2 = compute_eta_family(metric_rep(sl2c, "0,0"), "dirac");
    const EtaBlock *blk = fam2.find(Rat(0));
    REQUIRE(blk != nullptr);
    auto rec2 = simple_class(1.3, {0.4}, 1, 2);
    auto s2 = selberg_log_series({rec2}, *blk, *sl2c);
    double det = ad_determinant_factor(*sl2c, rec2.holonomy);
    std::complex<double> oracle =
        -0.5 * evaluate_character(blk->chi_plus - blk->chi_minus, rec2.holonomy) / det;
    CHECK(std::abs(s2.terms[0].second - oracle) <= 1e-14);

    TorusElement ell0;
    ell0.a_part = 0.0;
    ell0.t_angles = {0.2};
    ConjugacyClassRecord elliptic;
    elliptic.id = "e";
    elliptic.ell = 1.0;
    elliptic.holonomy = ell0;
    CHECK_THROWS_AS(selberg_log_series({elliptic}, *blk, *sl2c), InvariantViolation);
}

TEST_CASE("factorization of the ruelle series over family slices") {
    auto sl2c = model("sl2c");
    auto rep = metric_rep(sl2c, "1,0+theta");
    auto fam = compute_eta_family(rep, "dirac");
    auto chi = full_h_character(rep);

    auto file = synthesize_classes(2024, 50, 0.1, 3.0, *sl2c);
    CHECK(factorization_check(file.records, fam, chi) <= 1e-10);

    // all chi_orb = 0: the ruelle series vanishes identically
    auto zeroed = file.records;
    for (auto &rec : zeroed) rec.chi_orb = 0;
    CHECK(ruelle_log_series(zeroed, chi).max_coeff() == 0.0);
    CHECK(factorization_check(zeroed, fam, chi) == 0.0);

    // the per-class residual is the graded-kernel-identity defect: feed the
    // same holonomies through the pointwise identity check and compare
    std::vector<TorusElement> samples;
    for (const auto &rec : file.records) samples.push_back(rec.holonomy);
    auto idrep = verify_graded_kernel_identity(fam, samples);
    CHECK(idrep.exact);
    CHECK(idrep.max_residual <= 1e-10);

    // direct branch factorization
    auto rxs = model("rline_x_su2");
    auto rep2 = metric_rep(rxs, "1/2;1+theta");
    auto fam2 = compute_eta_family(rep2, "direct");
    auto file2 = synthesize_classes(7, 30, 0.2, 2.0, *rxs);
    CHECK(factorization_check(file2.records, fam2, full_h_character(rep2)) <= 1e-10);
}

TEST_CASE("conjugation symmetry of ruelle coefficients") {
    auto sl2c = model("sl2c");
    auto v10 = full_h_character(build_rep_from_spec(sl2c, "1,0"));
    auto v01 = full_h_character(build_rep_from_spec(sl2c, "0,1"));
    auto file = synthesize_classes(5150, 50, 0.1, 3.0, *sl2c);
    CHECK(conjugation_symmetry_check(file.records, v10, v01) <= 1e-12);
    CHECK(conjugation_symmetry_check({}, v10, v01) == 0.0);

    // a real-valued character is its own conjugate partner
    auto v11 = full_h_character(build_rep_from_spec(sl2c, "1,1"));
    CHECK(conjugation_symmetry_check(file.records, v11, v11) <= 1e-12);
}

TEST_CASE("graded determinants and order bookkeeping") {
    SpectrumTable empty{"empty", {}};
    CHECK(graded_determinant(empty, 3.7) == std::complex<double>(1.0, 0.0));

    SpectrumTable one{"one", {{1.0, 2, 0}}};
    CHECK(std::abs(graded_determinant(one, 1.0) - std::complex<double>(4.0, 0.0)) <= 1e-14);
    CHECK(graded_order(one, -1.0) == 2);
    CHECK(graded_determinant(one, -1.0) == std::complex<double>(0.0, 0.0));

    SpectrumTable balanced{"balanced", {{0.5, 3, 3}, {2.0, 1, 1}}};
    for (double s : {-0.3, 0.0, 1.7}) {
        CAPTURE(s);
        CHECK(std::abs(graded_determinant(balanced, s) - std::complex<double>(1.0, 0.0)) <= 1e-14);
    }

    SpectrumTable pole{"pole", {{1.0, 0, 1}}};
    CHECK(graded_order(pole, -1.0) == -1);
    CHECK_THROWS_AS(graded_determinant(pole, -1.0), EvaluationAtPole);

    // det(table) * det(negated table) = 1 away from poles
    SpectrumTable t{"t", {{0.3, 2, 1}, {1.5, 0, 2}}};
    SpectrumTable neg = t;
    for (auto &row : neg.rows) std::swap(row.mult_plus, row.mult_minus);
    for (double s : {0.1, 0.9, 4.2}) {
        CAPTURE(s);
        CHECK(std::abs(graded_determinant(t, s) * graded_determinant(neg, s) - 1.0) <= 1e-12);
    }
}

TEST_CASE("zero predictions follow the order rules") {
    CHECK(selberg_zero_predictions(SpectrumTable{"empty", {}}, Rat(1)).empty());

    // eigenvalue at minus the shift: one zero at 0 of doubled order
    auto at_zero = selberg_zero_predictions(SpectrumTable{"z", {{2.0, 1, 0}}}, Rat(-2));
    REQUIRE(at_zero.size() == 1);
    CHECK(at_zero[0].location == std::complex<double>(0.0, 0.0));
    CHECK(at_zero[0].order == 2);

    auto pair = selberg_zero_predictions(SpectrumTable{"p", {{0.5, 1, 0}}}, Rat(1, 2));
    REQUIRE(pair.size() == 2);
    CHECK(std::abs(pair[0].location - std::complex<double>(0.0, 1.0)) <= 1e-14);
    CHECK(std::abs(pair[1].location - std::complex<double>(0.0, -1.0)) <= 1e-14);
    CHECK(pair[0].order == 1);

    // balanced rows predict nothing
    CHECK(selberg_zero_predictions(SpectrumTable{"b", {{1.0, 2, 2}}}, Rat(0)).empty());
}

TEST_CASE("kernel bookkeeping and leading constants") {
    Rat c_u_rho = Rat(-3);
    SpectrumTable none{"beta-0", {{1.0, 1, 0}}};
    CHECK(r_eta_beta(none, c_u_rho) == 0);
    CHECK(leading_constants({{Rat(0), none}}, c_u_rho).c_rho == Rat(1));
    CHECK(leading_constants({{Rat(0), none}}, c_u_rho).r_rho == 0);

    SpectrumTable kernel{"beta-1/2", {{-3.0, 1, 0}}};
    auto lc = leading_constants({{Rat(1, 2), kernel}}, c_u_rho);
    CHECK(lc.c_rho == Rat(-1));
    CHECK(lc.r_rho == -2);

    // bookkeeping against prescribed cohomology dimensions:
    // r = -chi' with chi' = sum (-1)^i i h_i
    long long h[4] = {2, 1, 3, 1};
    long long chi_prime = -h[1] + 2 * h[2] - 3 * h[3];
    SpectrumTable built{"built", {{-3.0, h[1] + 3 * h[3], 2 * h[2]}}};
    CHECK(r_eta_beta(built, c_u_rho) == -chi_prime);
}

TEST_CASE("torsion series and leading term") {
    // kernel-free: value at 0 equals the direct product oracle
    std::vector<SpectrumTable> tables = {
        {"degree-0", {{1.0, 1, 0}}},
        {"degree-1", {{2.0, 2, 0}, {5.0, 1, 0}}},
        {"degree-2", {{3.0, 1, 0}}},
    };
    auto lead = torsion_leading_term(tables);
    CHECK(lead.exponent == 0);
    CHECK(lead.euler == 0);
    double oracle = std::pow(2.0, -2.0) * std::pow(5.0, -1.0) * std::pow(3.0, 2.0);
    CHECK(std::abs(lead.t_squared - oracle) <= 1e-9);
    CHECK(std::abs(torsion_series(tables, 0.0) - std::complex<double>(oracle, 0.0)) <= 1e-9);

    // one kernel dimension in degree 1
    std::vector<SpectrumTable> with_kernel = {
        {"degree-0", {{1.0, 1, 0}}},
        {"degree-1", {{0.0, 1, 0}, {2.0, 1, 0}}},
    };
    auto lead2 = torsion_leading_term(with_kernel);
    CHECK(lead2.exponent == -1);
    CHECK(lead2.euler == -1); // one kernel dimension in odd degree

    // mirror-symmetric data cancels: T identically 1
    std::vector<SpectrumTable> mirror = {
        {"degree-0", {{4.0, 1, 0}}},
        {"degree-1", {{4.0, 1, 0}, {9.0, 2, 0}}},
        {"degree-2", {{9.0, 4, 0}}},
        {"degree-3", {{4.0, 1, 0}, {9.0, 2, 0}}},
        {"degree-4", {{4.0, 1, 0}}},
    };
    // exponents weight degree i by (-1)^i i; the symmetric layout above makes
    // every eigenvalue's net weight zero
    for (double s : {0.0, 1.3, 2.9}) {
        CAPTURE(s);
        CHECK(std::abs(torsion_series(mirror, s) - std::complex<double>(1.0, 0.0)) <= 1e-10);
    }
    CHECK(torsion_leading_term(mirror).t_squared == doctest::Approx(1.0));
}

TEST_CASE("torsion-zeta consistency skeleton") {
    auto sl2c = model("sl2c");
    auto rep = metric_rep(sl2c, "1,0+theta");
    auto fam = compute_eta_family(rep, "dirac");
    auto file = synthesize_classes(99, 25, 0.3, 2.0, *sl2c);

    std::vector<SpectrumTable> spectra = {
        {"degree-0", {{1.0, 1, 0}}},
        {"degree-1", {{2.0, 1, 0}}},
        {"degree-2", {{3.0, 1, 0}}},
        {"degree-3", {{4.0, 1, 0}}},
    };
    auto rep1 = torsion_zeta_consistency(file.records, fam, spectra);
    CHECK(rep1.labels_ok);
    CHECK(rep1.skeleton_residual <= 1e-10);
    CHECK(rep1.ok());

    auto bad = spectra;
    bad[1].label = "degree-oops";
    CHECK(!torsion_zeta_consistency(file.records, fam, bad).labels_ok);
}
