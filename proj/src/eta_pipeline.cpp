#include "fried/eta_pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace fried {

namespace {

Mat column(const Mat &m, int j) {
    Mat c(m.rows, 1);
    for (int i = 0; i < m.rows; ++i) c(i, 0) = m(i, j);
    return c;
}

double rat_abs(const Rat &r) { return std::abs(GQ(r).to_complex().real()); }

Weight zero_weight(const GroupModel &g) {
    return Weight{std::vector<Rat>(g.delta), std::vector<Rat>(g.dim_t())};
}

// basis of the compact form of m: i * p_m columns first, then k_m
CompactSpace um_space(const GroupModel &g) {
    CompactSpace s;
    s.real_basis = hcat(g.p_m, g.k_m);
    for (int j = 0; j < g.p_m.cols; ++j) s.ipow.push_back(1);
    for (int j = 0; j < g.k_m.cols; ++j) s.ipow.push_back(0);
    return s;
}

// exact rational eigen-refinement of a (stabilizing, i*real-spectrum or
// real-spectrum) operator over an ambient column basis
std::vector<std::pair<Rat, Mat>> refine_rational(const Mat &op, const Mat &basis, bool imaginary,
                                                 const char *what) {
    std::vector<std::pair<Rat, Mat>> out;
    if (basis.cols == 0) return out;
    Mat sub = restrict_operator(op, basis);
    for (const auto &[lam, vecs] : eigenspaces(sub, float_eigen_candidates(sub), what)) {
        if (imaginary) {
            if (lam.re != 0) throw InvariantViolation(std::string(what) + ": eigenvalue not imaginary");
            out.emplace_back(lam.im, basis * vecs);
        } else {
            if (lam.im != 0) throw InvariantViolation(std::string(what) + ": eigenvalue not real");
            out.emplace_back(lam.re, basis * vecs);
        }
    }
    return out;
}

// t-weight character of the complexified span of `basis` (need not be
// ad(b)-stable, unlike the full Cartan decomposition)
VirtualCharacter torus_character_of(const GroupModel &g, const Mat &basis) {
    struct Blk {
        std::vector<Rat> t;
        Mat basis;
    };
    std::vector<Blk> blocks;
    if (basis.cols > 0) blocks.push_back({std::vector<Rat>(g.dim_t()), basis});
    for (int a = 0; a < g.dim_t(); ++a) {
        Mat op = ad_of(g, column(g.t, a));
        std::vector<Blk> next;
        for (auto &b : blocks)
            for (auto &[lam, vecs] : refine_rational(op, b.basis, true, "torus character")) {
                Blk nb{b.t, vecs};
                nb.t[a] = lam;
                next.push_back(std::move(nb));
            }
        blocks = std::move(next);
    }
    VirtualCharacter out(g.delta, g.dim_t());
    for (const auto &b : blocks)
        out.add_term(Weight{std::vector<Rat>(g.delta), b.t}, b.basis.cols);
    return out;
}

// character with every b-part zeroed out (restriction to the compact torus)
VirtualCharacter t_only(const VirtualCharacter &chi) {
    VirtualCharacter out(chi.dim_b, chi.dim_t);
    for (const auto &[w, m] : chi.terms)
        out.add_term(Weight{std::vector<Rat>(w.b.size()), w.t}, m);
    return out;
}

// sign s such that s * (raw chirality) puts the top split weight in S+,
// matching the convention of spinor_b_m_characters
int chirality_sign(const GroupModel &g, const CliffordModule &cm, const CompactSpace &space) {
    Mat a_spin = -GQ::i() * k_spinor_action(cm, g, space, g.a0, 1);
    Rat top;
    bool have = false;
    int top_tau = +1;
    for (auto &[beta, basis] : refine_rational(a_spin, Mat::identity(cm.sdim()), false,
                                               "spinor split grading"))
        for (auto &[tv, sub] : refine_rational(cm.chirality, basis, false, "spinor chirality")) {
            if (tv != Rat(1) && tv != Rat(-1))
                throw InvariantViolation("chirality eigenvalue not +-1");
            if (!have || top < beta) {
                top = beta;
                top_tau = tv == Rat(1) ? +1 : -1;
                have = true;
            }
        }
    return top_tau;
}

Rat beta_norm2(const GroupModel &g, const Rat &beta) {
    Weight w{{beta}, std::vector<Rat>(g.dim_t())};
    return weight_norm2(w, g.b_gram, g.t_gram);
}

Rat scalar_of(const Mat &m, const char *what) {
    if (m.rows == 0) return 0;
    GQ c = m(0, 0);
    if (!c.is_real()) throw InvariantViolation(std::string(what) + ": not a real scalar");
    Mat diff = m - c * Mat::identity(m.rows);
    if (!diff.is_zero()) throw InvariantViolation(std::string(what) + ": not scalar");
    return c.re;
}

Rat um_casimir_scalar(const std::vector<Mat> &acts, const Mat &um_gram, int dim) {
    if (acts.empty() || dim == 0) return 0;
    return scalar_of(casimir_action(acts, um_gram), "m-Casimir on a kernel slice");
}

} // namespace

const EtaBlock *EtaFamily::find(const Rat &beta) const {
    for (const auto &b : blocks)
        if (b.beta == beta) return &b;
    return nullptr;
}

VirtualCharacter EtaFamily::graded_character() const {
    const GroupModel &g = *rep.model;
    VirtualCharacter out(g.delta, g.dim_t());
    for (const auto &b : blocks) {
        Weight shift{{b.beta}, std::vector<Rat>(g.dim_t())};
        out = out + VirtualCharacter::monomial(shift) * (b.chi_plus - b.chi_minus);
    }
    return out;
}

EtaFamily compute_eta_family(const MatrixRep &r0, const std::string &mode) {
    MatrixRep r = r0;
    if (!r.has_metric()) find_admissible_metric(r);
    if (!is_theta_invariant(r))
        throw RequiresThetaInvariant("eta family needs a theta-invariant rep (augment first)");
    Rat cas;
    try {
        cas = casimir_scalar(r);
    } catch (const NotScalar &) {
        throw NotScalarCasimir("the Casimir does not act as a scalar on '" + r.label + "'");
    }
    const GroupModel &g = *r.model;

    EtaFamily fam;
    fam.source_label = r.label;
    fam.rep = r;
    fam.casimir_rep = cas;
    CompactSpace um = um_space(g);
    fam.um_gram = compact_gram(g, um);

    // per-slice pieces before assembly
    struct Piece {
        Rat beta;
        int tau;
        std::vector<Rat> twt;
        Mat basis;
    };
    std::vector<Piece> pieces;
    std::vector<Mat> um_full; // m basis acting on the ambient space

    if (mode == "dirac") {
        if (g.delta != 1 || g.n.cols == 0)
            throw WrongBranch("dirac mode needs delta = 1 and a nonzero split complement");
        fam.branch = "dirac";
        fam.trace_constant = compact_form_data(g).trace_constant;

        DiracData dd = dirac_operator(r, "uperp");
        const int sdim = dd.cm.sdim();
        auto total_op = [&](const Mat &e, int alpha) {
            return kron(k_spinor_action(dd.cm, g, dd.space, e, alpha), Mat::identity(r.dim)) +
                   kron(Mat::identity(sdim), compact_rho(r, e, alpha));
        };
        for (int j = 0; j < um.dim(); ++j)
            um_full.push_back(total_op(column(um.real_basis, j), um.ipow[j]));

        Mat kernel = nullspace(dd.dtilde * dd.dtilde);
        Mat split_op = -GQ::i() * total_op(g.a0, 1);
        int sign = chirality_sign(g, dd.cm, dd.space);
        Mat tau_op = GQ(Rat(sign)) * kron(dd.cm.chirality, Mat::identity(r.dim));

        for (auto &[beta, b1] : refine_rational(split_op, kernel, false, "kernel split grading"))
            for (auto &[tv, b2] : refine_rational(tau_op, b1, false, "kernel chirality")) {
                if (tv != Rat(1) && tv != Rat(-1))
                    throw InvariantViolation("kernel chirality eigenvalue not +-1");
                std::vector<Piece> stage = {{beta, tv == Rat(1) ? +1 : -1,
                                             std::vector<Rat>(g.dim_t()), b2}};
                for (int a = 0; a < g.dim_t(); ++a) {
                    Mat t_op = -GQ::i() * total_op(column(g.t, a), 0);
                    std::vector<Piece> next;
                    for (auto &p : stage)
                        for (auto &[tw, b3] : refine_rational(t_op, p.basis, false,
                                                              "kernel torus grading")) {
                            Piece np = p;
                            np.twt[a] = tw;
                            np.basis = b3;
                            next.push_back(std::move(np));
                        }
                    stage = std::move(next);
                }
                for (auto &p : stage) pieces.push_back(std::move(p));
            }
    } else if (mode == "direct") {
        if (g.zperp.cols != 0)
            throw WrongBranch("direct mode needs zperp = 0 (split-center-times-compact models)");
        fam.branch = "direct";
        fam.trace_constant = 0;
        for (int j = 0; j < um.dim(); ++j)
            um_full.push_back(compact_rho(r, column(um.real_basis, j), um.ipow[j]));

        for (const auto &blk : decompose_by_b(r)) {
            std::vector<Piece> stage = {{blk.beta, +1, std::vector<Rat>(g.dim_t()), blk.basis}};
            for (int a = 0; a < g.dim_t(); ++a) {
                Mat t_op = -GQ::i() * r.rho_of(column(g.t, a));
                std::vector<Piece> next;
                for (auto &p : stage)
                    for (auto &[tw, b3] : refine_rational(t_op, p.basis, false,
                                                          "slice torus grading")) {
                        Piece np = p;
                        np.twt[a] = tw;
                        np.basis = b3;
                        next.push_back(std::move(np));
                    }
                stage = std::move(next);
            }
            for (auto &p : stage) pieces.push_back(std::move(p));
        }
    } else {
        throw WrongBranch("unknown eta mode '" + mode + "' (want dirac or direct)");
    }

    std::map<Rat, EtaBlock> acc;
    for (const auto &p : pieces) {
        auto it = acc.find(p.beta);
        if (it == acc.end()) {
            EtaBlock eb;
            eb.beta = p.beta;
            eb.chi_plus = VirtualCharacter(g.delta, g.dim_t());
            eb.chi_minus = VirtualCharacter(g.delta, g.dim_t());
            it = acc.emplace(p.beta, std::move(eb)).first;
        }
        EtaBlock &eb = it->second;
        Weight w{std::vector<Rat>(g.delta), p.twt};
        if (p.tau > 0) {
            eb.chi_plus.add_term(w, p.basis.cols);
            eb.basis_plus = eb.basis_plus.cols == 0 && eb.basis_plus.rows == 0
                                ? p.basis
                                : hcat(eb.basis_plus, p.basis);
        } else {
            eb.chi_minus.add_term(w, p.basis.cols);
            eb.basis_minus = eb.basis_minus.cols == 0 && eb.basis_minus.rows == 0
                                 ? p.basis
                                 : hcat(eb.basis_minus, p.basis);
        }
    }

    for (auto &[beta, eb] : acc) {
        for (const auto &op : um_full) {
            if (eb.basis_plus.cols > 0) eb.um_plus.push_back(restrict_operator(op, eb.basis_plus));
            if (eb.basis_minus.cols > 0)
                eb.um_minus.push_back(restrict_operator(op, eb.basis_minus));
        }
        Rat cp = um_casimir_scalar(eb.um_plus, fam.um_gram, eb.basis_plus.cols);
        Rat cm_ = um_casimir_scalar(eb.um_minus, fam.um_gram, eb.basis_minus.cols);
        if (eb.basis_plus.cols > 0 && eb.basis_minus.cols > 0 && cp != cm_)
            throw InvariantViolation("m-Casimir scalars differ between the chirality halves");
        eb.casimir_um = eb.basis_plus.cols > 0 ? cp : cm_;
        eb.sigma = fam.trace_constant - eb.casimir_um;
        // lift certificate for each genuine half
        if (!eb.chi_plus.is_zero()) lift_to_rk(g.weyl_tk, eb.chi_plus);
        if (!eb.chi_minus.is_zero()) lift_to_rk(g.weyl_tk, eb.chi_minus);
    }
    // beta <-> -beta symmetry of the characters
    for (const auto &[beta, eb] : acc) {
        auto it = acc.find(-beta);
        if (it == acc.end() || !(it->second.chi_plus == eb.chi_plus) ||
            !(it->second.chi_minus == eb.chi_minus))
            throw InvariantViolation("family is not symmetric under beta -> -beta");
    }

    for (auto &[beta, eb] : acc) fam.blocks.push_back(std::move(eb));
    return fam;
}

double verify_casimir_scalar_eta(const EtaFamily &fam) {
    const GroupModel &g = *fam.rep.model;
    double worst = 0.0;
    for (const auto &eb : fam.blocks) {
        Rat expected = beta_norm2(g, eb.beta) + fam.casimir_rep + fam.trace_constant;
        for (int half = 0; half < 2; ++half) {
            const auto &acts = half == 0 ? eb.um_plus : eb.um_minus;
            int dim = half == 0 ? eb.basis_plus.cols : eb.basis_minus.cols;
            if (dim == 0) continue;
            Rat got = um_casimir_scalar(acts, fam.um_gram, dim);
            worst = std::max(worst, rat_abs(got - expected));
        }
    }
    return worst;
}

KernelCharacterReport verify_graded_kernel_identity(const EtaFamily &fam,
                                                    const std::vector<TorusElement> &samples) {
    const GroupModel &g = *fam.rep.model;
    auto [splus, sminus] = spinor_b_m_characters(g);
    VirtualCharacter rho_char = full_h_character(fam.rep);
    VirtualCharacter lhs = fam.graded_character();
    VirtualCharacter rhs = (splus - sminus) * rho_char;

    KernelCharacterReport rep;
    rep.exact = lhs == rhs;
    for (const auto &gam : samples) {
        double det = ad_determinant_factor(g, gam); // throws EllipticClass first
        std::complex<double> l = evaluate_character(lhs, gam);
        std::complex<double> rho_val = evaluate_character(rho_char, gam);
        rep.max_residual = std::max(rep.max_residual, std::abs(l - det * rho_val));
        // localization: the graded kernel supertrace equals the full one
        std::complex<double> full = evaluate_character(rhs, gam);
        rep.max_residual = std::max(rep.max_residual, std::abs(l - full));
    }
    return rep;
}

EtaHat compute_eta_hat(const EtaFamily &fam) {
    const GroupModel &g = *fam.rep.model;
    auto ext = exterior_powers(torus_character_of(g, g.p_m).dual());
    VirtualCharacter even(g.delta, g.dim_t()), odd(g.delta, g.dim_t());
    for (size_t j = 0; j < ext.size(); ++j) (j % 2 == 0 ? even : odd) = (j % 2 == 0 ? even : odd) + ext[j];

    EtaHat out;
    for (const auto &eb : fam.blocks) {
        EtaHatEntry e;
        e.beta = eb.beta;
        e.hat_plus = even * eb.chi_plus + odd * eb.chi_minus;
        e.hat_minus = even * eb.chi_minus + odd * eb.chi_plus;
        if (!e.hat_plus.is_zero()) lift_to_rk(g.weyl_tk, e.hat_plus);
        if (!e.hat_minus.is_zero()) lift_to_rk(g.weyl_tk, e.hat_minus);
        out.entries.push_back(std::move(e));
    }
    return out;
}

LiftSumReport verify_lift_sum_identity(const EtaHat &eh, const MatrixRep &r) {
    const GroupModel &g = *r.model;
    VirtualCharacter lhs(g.delta, g.dim_t());
    for (const auto &e : eh.entries) lhs = lhs + e.hat_plus - e.hat_minus;

    VirtualCharacter rho_k = t_only(full_h_character(r));
    auto ext = exterior_powers(torus_character_of(g, g.p).dual());
    VirtualCharacter rhs(g.delta, g.dim_t());
    for (size_t i = 1; i < ext.size(); ++i) {
        long long coeff = static_cast<long long>(i) * (i % 2 == 1 ? 1 : -1);
        rhs = rhs + coeff * (ext[i] * rho_k);
    }
    LiftSumReport rep;
    rep.ok = lhs == rhs;
    rep.diff = lhs - rhs;
    return rep;
}

Rat sigma_eta(const EtaFamily &fam, const Rat &beta) {
    const EtaBlock *eb = fam.find(beta);
    if (!eb) throw InvariantViolation("sigma_eta: beta outside the family support");
    const GroupModel &g = *fam.rep.model;
    if (eb->sigma + beta_norm2(g, beta) + fam.casimir_rep != 0)
        throw InvariantViolation("sigma_eta: shift scalar violates the Casimir relation");
    return eb->sigma;
}

KostantReport kostant_checks(const GroupModel &g) {
    KostantReport rep;
    Weight zero = zero_weight(g);
    std::vector<std::pair<Weight, int>> positive;
    for (const auto &[w, m] : root_space_weights(g)) {
        if (w.is_zero()) continue;
        if (zero < w) positive.emplace_back(w, m);
    }
    // the fixed positive system keeps non-imaginary roots conjugation-stable
    for (const auto &[w, m] : positive) {
        bool b_zero = true;
        for (const auto &v : w.b) b_zero = b_zero && v == 0;
        if (b_zero) continue;
        Weight conj{w.b, (-w).t};
        bool found = false;
        for (const auto &[u, mu] : positive) found = found || (u == conj && mu == m);
        if (!found) throw InvariantViolation("positive system not conjugation-stable");
    }

    rep.rho_u = zero;
    rep.rho_ub = zero;
    std::vector<Rat> split_counts(g.delta);
    for (const auto &[w, m] : positive) {
        for (int rep_i = 0; rep_i < m; ++rep_i) {
            rep.rho_u = rep.rho_u + w;
            bool b_zero = true;
            for (const auto &v : w.b) b_zero = b_zero && v == 0;
            if (b_zero) rep.rho_ub = rep.rho_ub + w;
        }
        for (int i = 0; i < g.delta; ++i)
            if (w.b[i] != 0) split_counts[i] += m;
    }
    for (auto &v : rep.rho_u.b) v /= 2;
    for (auto &v : rep.rho_u.t) v /= 2;
    for (auto &v : rep.rho_ub.b) v /= 2;
    for (auto &v : rep.rho_ub.t) v /= 2;

    rep.norm_rho_u = weight_norm2(rep.rho_u, g.b_gram, g.t_gram);
    rep.norm_rho_ub = weight_norm2(rep.rho_ub, g.b_gram, g.t_gram);

    // compact-form Casimir acting on the compact form itself
    CompactSpace ug;
    ug.real_basis = hcat(g.p, g.k);
    for (int j = 0; j < g.p.cols; ++j) ug.ipow.push_back(1);
    for (int j = 0; j < g.k.cols; ++j) ug.ipow.push_back(0);
    std::vector<Mat> acts;
    for (int j = 0; j < ug.dim(); ++j)
        acts.push_back(compact_ad(g, column(ug.real_basis, j), ug.ipow[j], ug));
    GQ tr = casimir_action(acts, compact_gram(g, ug)).trace();
    if (!tr.is_real()) throw InvariantViolation("adjoint Casimir trace not real");
    rep.adjoint_trace = tr.re;
    rep.strange_formula_ok = rep.norm_rho_u == -rep.adjoint_trace / 24;

    rep.trace_constant = compact_form_data(g).trace_constant;
    rep.trace_constant_ok = rep.trace_constant == rep.norm_rho_ub - rep.norm_rho_u;

    Weight shift = rep.rho_u;
    for (size_t i = 0; i < shift.b.size(); ++i) shift.b[i] -= rep.rho_ub.b[i];
    for (size_t i = 0; i < shift.t.size(); ++i) shift.t[i] -= rep.rho_ub.t[i];
    bool ok = true;
    for (int i = 0; i < g.delta; ++i) ok = ok && shift.b[i] == split_counts[i] / 2;
    for (const auto &v : shift.t) ok = ok && v == 0;
    rep.half_sum_shift_ok = ok;
    return rep;
}

Rat hc_casimir_crosscheck(const MatrixRep &r) {
    // commutant dimension 1 certifies irreducibility
    const int n = r.dim;
    Mat sys(static_cast<int>(r.rho.size()) * n * n, n * n);
    for (size_t s = 0; s < r.rho.size(); ++s) {
        const Mat &a = r.rho[s];
        // vec([a, X]) rows
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                int row = static_cast<int>(s) * n * n + i * n + j;
                for (int k = 0; k < n; ++k) {
                    sys(row, k * n + j) += a(i, k);
                    sys(row, i * n + k) -= a(k, j);
                }
            }
    }
    if (nullspace(sys).cols != 1)
        throw NotIrreducible("commutant dimension is not 1 for '" + r.label + "'");

    Rat cas = casimir_scalar(r);
    const GroupModel &g = *r.model;
    VirtualCharacter chi = full_h_character(r);
    Weight lambda = chi.terms.rbegin()->first; // lex-highest weight
    Weight rho_u = kostant_checks(g).rho_u;
    Rat big = weight_norm2(lambda + rho_u, g.b_gram, g.t_gram);
    Rat small = weight_norm2(rho_u, g.b_gram, g.t_gram);
    Rat resid = big - small + cas;
    return resid < 0 ? -resid : resid;
}

} // namespace fried
