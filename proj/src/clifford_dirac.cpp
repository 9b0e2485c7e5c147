#include "fried/clifford_dirac.hpp"

#include <algorithm>
#include <cmath>

namespace fried {

namespace {

GQ ipower(int n) {
    switch (((n % 4) + 4) % 4) {
    case 0: return GQ(1);
    case 1: return GQ::i();
    case 2: return GQ(-1);
    default: return -GQ::i();
    }
}

Mat column(const Mat &m, int j) {
    Mat c(m.rows, 1);
    for (int i = 0; i < m.rows; ++i) c(i, 0) = m(i, j);
    return c;
}

} // namespace

CliffordModule build_spinor(int dim_space, int sigma, const Rat &nu) {
    CliffordModule cm;
    cm.dim_space = dim_space;
    cm.sigma = sigma;
    cm.nu = nu;
    const int m = dim_space / 2;
    const int sdim = 1 << m;

    Mat s1(2, 2), s2(2, 2), s3(2, 2);
    s1(0, 1) = GQ(1);
    s1(1, 0) = GQ(1);
    s2(0, 1) = -GQ::i();
    s2(1, 0) = GQ::i();
    s3(0, 0) = GQ(1);
    s3(1, 1) = GQ(-1);

    auto slot = [&](const Mat &mid, int j) {
        Mat acc = Mat::identity(1);
        for (int t = 0; t < m; ++t) acc = kron(acc, t < j ? s3 : (t == j ? mid : Mat::identity(2)));
        return acc;
    };
    for (int j = 0; j < m; ++j) {
        cm.gammas.push_back(slot(GQ::i() * s1, j));
        cm.gammas.push_back(slot(GQ::i() * s2, j));
    }
    auto full_product = [&]() {
        Mat prod = Mat::identity(sdim);
        for (const auto &gmat : cm.gammas) prod = prod * gmat;
        return prod;
    };
    if (dim_space % 2 == 1) {
        // extra generator: the product of the even ones, scaled to square -1
        Mat prod = full_product();
        Mat sq = prod * prod;
        GQ c = sq(0, 0);
        cm.gammas.push_back(c == GQ(-1) ? prod : GQ::i() * prod);
    } else {
        Mat tau = full_product();
        Mat sq = tau * tau;
        cm.chirality = sq(0, 0) == GQ(1) ? tau : GQ::i() * tau;
    }
    if (sigma == -1)
        for (auto &gmat : cm.gammas) gmat = GQ::i() * gmat;
    return cm;
}

CompactSpace uperp_space(const GroupModel &g) {
    CompactSpace s;
    s.real_basis = g.zperp;
    for (int j = 0; j < g.zperp.cols; ++j) {
        Mat v = column(g.zperp, j);
        Mat tv = g.theta * v;
        if ((tv + v).is_zero())
            s.ipow.push_back(1);
        else if ((tv - v).is_zero())
            s.ipow.push_back(0);
        else
            throw BasisMismatch("zperp basis vector is not a theta eigenvector");
    }
    return s;
}

CompactSpace ub_space(const GroupModel &g) {
    CompactSpace s;
    s.real_basis = hcat(hcat(g.b, g.p_m), g.k_m);
    for (int j = 0; j < g.b.cols + g.p_m.cols; ++j) s.ipow.push_back(1);
    for (int j = 0; j < g.k_m.cols; ++j) s.ipow.push_back(0);
    return s;
}

CompactSpace p_space(const GroupModel &g) {
    CompactSpace s;
    s.real_basis = g.p;
    s.ipow.assign(g.p.cols, 0);
    return s;
}

Mat compact_gram(const GroupModel &g, const CompactSpace &s) {
    Mat raw = gram(g.B, s.real_basis);
    Mat out(raw.rows, raw.cols);
    for (int i = 0; i < raw.rows; ++i)
        for (int j = 0; j < raw.cols; ++j) {
            GQ v = ipower(s.ipow[i] + s.ipow[j]) * raw(i, j);
            if (!v.is_real()) throw BasisMismatch("compact Gram entry not real");
            out(i, j) = v;
        }
    return out;
}

Mat compact_ad(const GroupModel &g, const Mat &e_z, int alpha, const CompactSpace &target) {
    Mat c = restrict_operator(ad_of(g, e_z), target.real_basis);
    Mat a(c.rows, c.cols);
    for (int k = 0; k < c.rows; ++k)
        for (int i = 0; i < c.cols; ++i) {
            GQ v = ipower(alpha + target.ipow[i] - target.ipow[k]) * c(k, i);
            if (!v.is_real())
                throw InvariantViolation("compact ad does not preserve the real structure");
            a(k, i) = v;
        }
    return a;
}

Mat compact_rho(const MatrixRep &r, const Mat &e_z, int alpha) {
    return ipower(alpha) * r.rho_of(e_z);
}

Mat spin_matrix(const CliffordModule &cm, const Mat &a) {
    Mat out(cm.sdim(), cm.sdim());
    for (int i = 0; i < a.cols; ++i)
        for (int k = 0; k < a.rows; ++k)
            if (!a(k, i).is_zero())
                out = out + (GQ(Rat(cm.sigma, 4)) * a(k, i)) * (cm.gammas[i] * cm.gammas[k]);
    return out;
}

Mat k_spinor_action(const CliffordModule &cm, const GroupModel &g, const CompactSpace &space,
                    const Mat &e_a, int alpha) {
    return spin_matrix(cm, compact_ad(g, e_a, alpha, space));
}

DiracData dirac_operator(const MatrixRep &r, const std::string &path) {
    if (!r.has_metric()) throw RequiresAdmissibleMetric("dirac_operator");
    const GroupModel &g = *r.model;
    DiracData dd;
    dd.rep = r;
    dd.path = path;
    if (path == "p")
        dd.space = p_space(g);
    else if (path == "uperp")
        dd.space = uperp_space(g);
    else
        throw BasisMismatch("unknown Dirac path '" + path + "' (want p or uperp)");

    Mat gm = compact_gram(g, dd.space);
    int sigma = +1;
    Rat nu = 1;
    for (int i = 0; i < gm.rows; ++i)
        for (int j = 0; j < gm.cols; ++j) {
            if (i != j && !gm(i, j).is_zero())
                throw NonUniformNorm("Clifford basis not B-orthogonal");
            if (i == j) {
                if (i == 0) {
                    sigma = gm(0, 0).re > 0 ? +1 : -1;
                    nu = sigma > 0 ? gm(0, 0).re : -gm(0, 0).re;
                } else if (gm(i, i).re != Rat(sigma) * nu) {
                    throw NonUniformNorm("Clifford basis norms are not uniform");
                }
            }
        }
    dd.nu = nu;
    dd.cm = build_spinor(dd.space.dim(), sigma, nu);

    dd.dtilde = Mat(dd.cm.sdim() * r.dim, dd.cm.sdim() * r.dim);
    for (int i = 0; i < dd.space.dim(); ++i)
        dd.dtilde = dd.dtilde + kron(dd.cm.gammas[i],
                                     compact_rho(r, column(dd.space.real_basis, i),
                                                 dd.space.ipow[i]));

    Mat gtot = kron(Mat::identity(dd.cm.sdim()), r.metric);
    if (!(gtot * dd.dtilde + dd.dtilde.dagger() * gtot).is_zero())
        throw InvariantViolation("Dirac operator is not metric-skew");
    if (dd.cm.has_chirality()) {
        Mat tau = kron(dd.cm.chirality, Mat::identity(r.dim));
        if (!(tau * dd.dtilde + dd.dtilde * tau).is_zero())
            throw InvariantViolation("Dirac operator is not odd");
    }
    return dd;
}

ParthasarathyResult verify_parthasarathy(const DiracData &dd) {
    const GroupModel &g = *dd.rep.model;
    const int sdim = dd.cm.sdim();
    // With unit gammas squaring to -sigma, D^2 carries the same sign on both
    // paths relative to the Casimir decomposition.
    Mat lhs = dd.d_squared();

    Mat rhs = kron(Mat::identity(sdim), casimir_matrix(dd.rep));

    Rat constant;
    std::vector<Mat> sub_total;
    Mat sub_gram;
    if (dd.path == "p") {
        std::vector<Mat> ad_on_p;
        std::vector<Mat> spins;
        for (int j = 0; j < g.k.cols; ++j) {
            Mat kj = column(g.k, j);
            ad_on_p.push_back(compact_ad(g, kj, 0, dd.space));
            sub_total.push_back(kron(spin_matrix(dd.cm, ad_on_p.back()), Mat::identity(dd.rep.dim)) +
                                kron(Mat::identity(sdim), dd.rep.rho_of(kj)));
        }
        sub_gram = gram(g.B, g.k);
        GQ tr = casimir_action(ad_on_p, sub_gram).trace();
        constant = tr.re / 8;
    } else {
        CompactSpace ub = ub_space(g);
        for (int j = 0; j < ub.dim(); ++j) {
            Mat ej = column(ub.real_basis, j);
            sub_total.push_back(
                kron(k_spinor_action(dd.cm, g, dd.space, ej, ub.ipow[j]),
                     Mat::identity(dd.rep.dim)) +
                kron(Mat::identity(sdim), compact_rho(dd.rep, ej, ub.ipow[j])));
        }
        sub_gram = compact_gram(g, ub);
        constant = compact_form_data(g).trace_constant;
    }
    int total_dim = sdim * dd.rep.dim;
    rhs = rhs + GQ(constant) * Mat::identity(total_dim);
    if (!sub_total.empty()) rhs = rhs - casimir_action(sub_total, sub_gram);

    Mat resid = lhs - rhs;
    ParthasarathyResult out;
    out.exact = resid.is_zero();
    out.max_residual = resid.max_abs();
    return out;
}

namespace {

// simultaneous eigen-refinement of commuting operators on the spinor space
struct SpinBlock {
    Weight w;
    int tau = 0; // +-1 once chirality has been applied
    Mat basis;
};

std::vector<SpinBlock> refine_spin(std::vector<SpinBlock> blocks, const Mat &op,
                                   const char *kind, int coord) {
    std::vector<SpinBlock> next;
    for (auto &blk : blocks) {
        Mat sub = restrict_operator(op, blk.basis);
        auto spaces = eigenspaces(sub, float_eigen_candidates(sub), "spinor characters");
        for (const auto &[lam, vecs] : spaces) {
            SpinBlock nb = blk;
            nb.basis = blk.basis * vecs;
            std::string k(kind);
            if (k == "b") {
                if (lam.re != 0) throw InvariantViolation("split spin weight not imaginary");
                nb.w.b[coord] = lam.im;
            } else if (k == "t") {
                if (lam.re != 0) throw InvariantViolation("torus spin weight not imaginary");
                nb.w.t[coord] = lam.im;
            } else {
                if (!lam.is_real() || (lam.re != 1 && lam.re != -1))
                    throw InvariantViolation("chirality eigenvalue not +-1");
                nb.tau = lam.re == 1 ? +1 : -1;
            }
            next.push_back(std::move(nb));
        }
    }
    return next;
}

} // namespace

std::pair<VirtualCharacter, VirtualCharacter> spinor_b_m_characters(const GroupModel &g) {
    if (g.delta != 1) throw NotRankOne("spinor characters need delta = 1");
    VirtualCharacter plus(g.delta, g.t.cols), minus(g.delta, g.t.cols);
    if (g.zperp.cols == 0) {
        plus = VirtualCharacter::one(g.delta, g.t.cols);
        return {plus, minus};
    }
    CompactSpace space = uperp_space(g);
    CliffordModule cm = build_spinor(space.dim(), -1, 1); // norms validated by gram below
    Mat gm = compact_gram(g, space);
    for (int i = 0; i < gm.rows; ++i)
        if (gm(i, i).re >= 0) throw BasisMismatch("uperp Gram must be negative definite");

    std::vector<SpinBlock> blocks = {
        {Weight{std::vector<Rat>(g.delta), std::vector<Rat>(g.t.cols)}, 0,
         Mat::identity(cm.sdim())}};
    blocks = refine_spin(blocks, k_spinor_action(cm, g, space, g.a0, 1), "b", 0);
    for (int a = 0; a < g.t.cols; ++a)
        blocks = refine_spin(blocks, k_spinor_action(cm, g, space, column(g.t, a), 0), "t", a);
    blocks = refine_spin(blocks, cm.chirality, "tau", 0);

    for (const auto &blk : blocks)
        (blk.tau > 0 ? plus : minus).add_term(blk.w, blk.basis.cols);

    // convention: the highest split weight sits in S+
    Weight top = blocks[0].w;
    int top_tau = blocks[0].tau;
    for (const auto &blk : blocks)
        if (top.b < blk.w.b) {
            top = blk.w;
            top_tau = blk.tau;
        }
    if (top_tau < 0) std::swap(plus, minus);
    return {plus, minus};
}

std::pair<VirtualCharacter, VirtualCharacter> spinor_reference_characters(const GroupModel &g) {
    VirtualCharacter nbar_dual(g.delta, g.t.cols);
    Weight nsum{std::vector<Rat>(g.delta), std::vector<Rat>(g.t.cols)};
    for (const auto &[w, basis] : h_weight_spaces(g, g.nbar)) nbar_dual.add_term(-w, basis.cols);
    for (const auto &[w, basis] : h_weight_spaces(g, g.n))
        for (int c = 0; c < basis.cols; ++c) nsum = nsum + w;
    Weight twist = -nsum;
    for (auto &v : twist.b) v /= 2;
    for (auto &v : twist.t) v /= 2;

    auto ext = exterior_powers(nbar_dual);
    VirtualCharacter plus(g.delta, g.t.cols), minus(g.delta, g.t.cols);
    for (size_t j = 0; j < ext.size(); ++j)
        (j % 2 == 0 ? plus : minus) = (j % 2 == 0 ? plus : minus) + ext[j];
    auto tw = VirtualCharacter::monomial(twist);
    return {tw * plus, tw * minus};
}

double supertrace_determinant_check(const GroupModel &g, const TorusElement &gamma) {
    double rhs = ad_determinant_factor(g, gamma); // throws EllipticClass first
    auto [plus, minus] = spinor_b_m_characters(g);
    std::complex<double> str = evaluate_character(plus - minus, gamma);
    return std::abs(str - std::complex<double>(rhs, 0.0));
}

} // namespace fried
