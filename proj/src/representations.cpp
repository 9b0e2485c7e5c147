#include "fried/representations.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace fried {

namespace {

Mat block_diag2(const Mat &x, const Mat &y) {
    Mat out(x.rows + y.rows, x.cols + y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) out(i, j) = x(i, j);
    for (int i = 0; i < y.rows; ++i)
        for (int j = 0; j < y.cols; ++j) out(x.rows + i, x.cols + j) = y(i, j);
    return out;
}

// derivation action on Sym^n(C^2): basis x^a y^(n-a), a = 0..n
Mat sym_derivation(const Mat &m, int n) {
    Mat out(n + 1, n + 1);
    for (int a = 0; a <= n; ++a) {
        out(a, a) = GQ(Rat(a)) * m(0, 0) + GQ(Rat(n - a)) * m(1, 1);
        if (a > 0) out(a - 1, a) += GQ(Rat(a)) * m(1, 0);
        if (a < n) out(a + 1, a) += GQ(Rat(n - a)) * m(0, 1);
    }
    return out;
}

std::vector<Mat> pauli() {
    Mat s1(2, 2), s2(2, 2), s3(2, 2);
    s1(0, 1) = GQ(1);
    s1(1, 0) = GQ(1);
    s2(0, 1) = -GQ::i();
    s2(1, 0) = GQ::i();
    s3(0, 0) = GQ(1);
    s3(1, 1) = GQ(-1);
    return {s1, s2, s3};
}

Mat entrywise_conj(const Mat &m) {
    Mat out(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) out.a[i] = m.a[i].conj();
    return out;
}

void require_model(const MatrixRep &r, const std::string &name, const char *what) {
    if (!r.model || r.model->name != name)
        throw UnknownPreset(std::string(what) + " needs the " + name + " model");
}

MatrixRep atomic_rep(std::shared_ptr<const GroupModel> model, const std::string &chunk);

} // namespace

Mat MatrixRep::rho_of(const Mat &x) const {
    if (x.rows != model->dim || x.cols != 1)
        throw DimensionMismatch("rho_of expects a model-dim column");
    Mat out(dim, dim);
    for (int i = 0; i < model->dim; ++i)
        if (!x(i, 0).is_zero()) out = out + x(i, 0) * rho[i];
    return out;
}

MatrixRep trivial_rep(std::shared_ptr<const GroupModel> model) {
    MatrixRep r;
    r.dim = 1;
    r.label = "trivial";
    r.rho.assign(model->dim, Mat(1, 1));
    r.metric = Mat::identity(1);
    r.model = std::move(model);
    return r;
}

MatrixRep build_irrep_sl2c(std::shared_ptr<const GroupModel> model, int p, int q) {
    MatrixRep r;
    r.model = model;
    require_model(r, "sl2c", "build_irrep_sl2c");
    if (p < 0 || q < 0) throw DimensionMismatch("negative symmetric power");
    auto s = pauli();
    std::vector<Mat> std_rep, conj_rep;
    for (int i = 0; i < 3; ++i) {
        std_rep.push_back(s[i]);                       // P_i
        conj_rep.push_back(entrywise_conj(s[i]));
    }
    for (int i = 0; i < 3; ++i) {
        std_rep.push_back(GQ::i() * s[i]);             // K_i
        conj_rep.push_back(entrywise_conj(GQ::i() * s[i]));
    }
    r.dim = (p + 1) * (q + 1);
    for (int i = 0; i < 6; ++i)
        r.rho.push_back(kron(sym_derivation(std_rep[i], p), Mat::identity(q + 1)) +
                        kron(Mat::identity(p + 1), sym_derivation(conj_rep[i], q)));
    std::ostringstream os;
    os << "V" << p << "," << q;
    r.label = os.str();
    return r;
}

MatrixRep build_irrep_su2(std::shared_ptr<const GroupModel> model, int n) {
    MatrixRep r;
    r.model = model;
    require_model(r, "su2", "build_irrep_su2");
    if (n < 0) throw DimensionMismatch("negative symmetric power");
    auto s = pauli();
    r.dim = n + 1;
    for (int i = 0; i < 3; ++i) r.rho.push_back(sym_derivation(GQ::i() * s[i], n));
    r.label = "sym" + std::to_string(n);
    return r;
}

MatrixRep build_irrep_rline(std::shared_ptr<const GroupModel> model, const Rat &beta) {
    MatrixRep r;
    r.model = model;
    require_model(r, "rline", "build_irrep_rline");
    r.dim = 1;
    Mat m(1, 1);
    m(0, 0) = GQ(beta);
    r.rho = {m};
    r.label = "C" + rat_to_string(beta);
    return r;
}

static MatrixRep build_irrep_sl2r(std::shared_ptr<const GroupModel> model, int n) {
    MatrixRep r;
    r.model = model;
    require_model(r, "sl2r", "build_irrep_sl2r");
    if (n < 0) throw DimensionMismatch("negative symmetric power");
    Mat A(2, 2), S(2, 2), K(2, 2);
    A(0, 0) = GQ(1);
    A(1, 1) = GQ(-1);
    S(0, 1) = GQ(1);
    S(1, 0) = GQ(1);
    K(0, 1) = GQ(1);
    K(1, 0) = GQ(-1);
    r.dim = n + 1;
    for (const Mat &m : {A, S, K}) r.rho.push_back(sym_derivation(m, n));
    r.label = "sym" + std::to_string(n);
    return r;
}

static void check_same_model(const MatrixRep &a, const MatrixRep &b, const char *what) {
    if (!a.model || !b.model || a.model->name != b.model->name || a.model->dim != b.model->dim)
        throw DimensionMismatch(std::string(what) + ": reps live on different models");
}

MatrixRep tensor_rep(const MatrixRep &a, const MatrixRep &b) {
    check_same_model(a, b, "tensor_rep");
    MatrixRep r;
    r.model = a.model;
    r.dim = a.dim * b.dim;
    for (int i = 0; i < a.model->dim; ++i)
        r.rho.push_back(kron(a.rho[i], Mat::identity(b.dim)) +
                        kron(Mat::identity(a.dim), b.rho[i]));
    if (a.has_metric() && b.has_metric()) r.metric = kron(a.metric, b.metric);
    r.label = a.label + "*" + b.label;
    return r;
}

MatrixRep direct_sum_rep(const MatrixRep &a, const MatrixRep &b) {
    check_same_model(a, b, "direct_sum_rep");
    MatrixRep r;
    r.model = a.model;
    r.dim = a.dim + b.dim;
    for (int i = 0; i < a.model->dim; ++i) r.rho.push_back(block_diag2(a.rho[i], b.rho[i]));
    if (a.has_metric() && b.has_metric()) r.metric = block_diag2(a.metric, b.metric);
    r.label = a.label + "+" + b.label;
    return r;
}

MatrixRep external_tensor(std::shared_ptr<const GroupModel> product, const MatrixRep &a,
                          const MatrixRep &b) {
    if (a.model->dim + b.model->dim != product->dim)
        throw DimensionMismatch("external_tensor: factor dims do not add up");
    MatrixRep r;
    r.model = product;
    r.dim = a.dim * b.dim;
    for (int i = 0; i < a.model->dim; ++i) r.rho.push_back(kron(a.rho[i], Mat::identity(b.dim)));
    for (int i = 0; i < b.model->dim; ++i) r.rho.push_back(kron(Mat::identity(a.dim), b.rho[i]));
    if (a.has_metric() && b.has_metric()) r.metric = kron(a.metric, b.metric);
    r.label = a.label + "#" + b.label;
    return r;
}

namespace {

MatrixRep atomic_rep(std::shared_ptr<const GroupModel> model, const std::string &chunk) {
    const std::string &name = model->name;
    try {
        if (name == "sl2c") {
            auto comma = chunk.find(',');
            if (comma == std::string::npos) throw ParseError("sl2c rep chunk needs 'p,q'");
            return build_irrep_sl2c(model, std::stoi(chunk.substr(0, comma)),
                                    std::stoi(chunk.substr(comma + 1)));
        }
        if (name == "su2") return build_irrep_su2(model, std::stoi(chunk));
        if (name == "sl2r") return build_irrep_sl2r(model, std::stoi(chunk));
        if (name == "rline") return build_irrep_rline(model, rat_from_string(chunk));
    } catch (const std::invalid_argument &) {
        throw ParseError("bad rep chunk '" + chunk + "' for " + name);
    }
    throw UnknownPreset("no rep family for model " + name);
}

} // namespace

MatrixRep build_rep_from_spec(std::shared_ptr<const GroupModel> model, const std::string &spec) {
    std::string body = spec;
    bool augment = false;
    const std::string suffix = "+theta";
    if (body.size() >= suffix.size() && body.substr(body.size() - suffix.size()) == suffix) {
        augment = true;
        body = body.substr(0, body.size() - suffix.size());
    }
    std::vector<std::string> chunks;
    size_t pos = 0;
    while (true) {
        size_t semi = body.find(';', pos);
        chunks.push_back(body.substr(pos, semi == std::string::npos ? semi : semi - pos));
        if (semi == std::string::npos) break;
        pos = semi + 1;
    }
    if (chunks.size() != model->factor_names.size())
        throw ParseError("rep spec has " + std::to_string(chunks.size()) + " chunks, model has " +
                         std::to_string(model->factor_names.size()) + " factors");
    MatrixRep out;
    if (chunks.size() == 1 && body == "trivial") {
        out = trivial_rep(model);
    } else if (chunks.size() == 1) {
        out = atomic_rep(model, chunks[0]);
    } else {
        // fold over factors; intermediate product models are rebuilt on the fly
        std::vector<MatrixRep> parts;
        for (size_t i = 0; i < chunks.size(); ++i) {
            auto fac = std::make_shared<const GroupModel>(build_preset(model->factor_names[i]));
            parts.push_back(chunks[i] == "trivial" ? trivial_rep(fac) : atomic_rep(fac, chunks[i]));
        }
        MatrixRep acc = parts[0];
        std::shared_ptr<const GroupModel> acc_model = acc.model;
        for (size_t i = 1; i < parts.size(); ++i) {
            std::shared_ptr<const GroupModel> next_model =
                i + 1 == parts.size()
                    ? model
                    : std::make_shared<const GroupModel>(
                          direct_sum(*acc_model, *parts[i].model, "partial"));
            acc = external_tensor(next_model, acc, parts[i]);
            acc_model = next_model;
        }
        out = acc;
    }
    if (augment) out = direct_sum_rep(out, theta_twist(out));
    return out;
}

bool is_homomorphism(const MatrixRep &r) {
    const GroupModel &g = *r.model;
    for (int i = 0; i < g.dim; ++i) {
        Mat ej(g.dim, 1);
        for (int j = 0; j < g.dim; ++j) {
            Mat e(g.dim, 1);
            e(j, 0) = GQ(1);
            if (!(commutator(r.rho[i], r.rho[j]) == r.rho_of(g.ad[i] * e))) return false;
        }
    }
    return true;
}

Mat casimir_matrix(const MatrixRep &r) { return casimir_action(r.rho, r.model->B); }

static Mat casimir_compact(const MatrixRep &r) {
    // recompute through the compact form u = i*p + k
    const GroupModel &g = *r.model;
    std::vector<Mat> rho;
    for (int j = 0; j < g.p.cols; ++j) {
        Mat x(g.dim, 1);
        for (int i = 0; i < g.dim; ++i) x(i, 0) = g.p(i, j);
        rho.push_back(GQ::i() * r.rho_of(x));
    }
    for (int j = 0; j < g.k.cols; ++j) {
        Mat x(g.dim, 1);
        for (int i = 0; i < g.dim; ++i) x(i, 0) = g.k(i, j);
        rho.push_back(r.rho_of(x));
    }
    Mat ggram = block_diag2(GQ(-1) * gram(g.B, g.p), gram(g.B, g.k));
    return casimir_action(rho, ggram);
}

Rat casimir_scalar(const MatrixRep &r) {
    Mat c = casimir_matrix(r);
    if (c.rows == 0) return 0;
    GQ lam = c(0, 0);
    Mat dev = c - lam * Mat::identity(c.rows);
    if (!dev.is_zero()) {
        std::ostringstream os;
        os << "Casimir is not scalar (off-scalar max " << dev.max_abs() << ") on " << r.label;
        throw NotScalar(os.str());
    }
    if (!lam.is_real()) throw InvariantViolation("Casimir scalar not real on " + r.label);
    if (!(casimir_compact(r) == c))
        throw InvariantViolation("compact-form Casimir disagrees on " + r.label);
    return lam.re;
}

MatrixRep theta_twist(const MatrixRep &r) {
    const GroupModel &g = *r.model;
    MatrixRep out;
    out.model = r.model;
    out.dim = r.dim;
    out.metric = r.metric;
    for (int i = 0; i < g.dim; ++i) {
        Mat e(g.dim, 1);
        e(i, 0) = GQ(1);
        out.rho.push_back(r.rho_of(g.theta * e));
    }
    out.label = r.label + "^theta";
    return out;
}

bool metric_is_admissible(const MatrixRep &r) {
    if (!r.has_metric()) return false;
    const GroupModel &g = *r.model;
    const Mat &G = r.metric;
    if (!(G == G.dagger()) || !hermitian_positive_definite(G)) return false;
    for (int j = 0; j < g.p.cols; ++j) {
        Mat x(g.dim, 1);
        for (int i = 0; i < g.dim; ++i) x(i, 0) = g.p(i, j);
        Mat m = r.rho_of(x);
        if (!(G * m == m.dagger() * G)) return false;
    }
    for (int j = 0; j < g.k.cols; ++j) {
        Mat x(g.dim, 1);
        for (int i = 0; i < g.dim; ++i) x(i, 0) = g.k(i, j);
        Mat m = r.rho_of(x);
        if (!(G * m + m.dagger() * G).is_zero()) return false;
    }
    return true;
}

Mat find_admissible_metric(MatrixRep &r) {
    const GroupModel &g = *r.model;
    const int n = r.dim;
    // real coordinates on the space of Hermitian matrices
    std::vector<Mat> herm_basis;
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            Mat h(n, n);
            if (a == b) {
                h(a, a) = GQ(1);
                herm_basis.push_back(h);
            } else {
                h(a, b) = GQ(1);
                h(b, a) = GQ(1);
                herm_basis.push_back(h);
                Mat h2(n, n);
                h2(a, b) = GQ::i();
                h2(b, a) = -GQ::i();
                herm_basis.push_back(h2);
            }
        }
    const int nvars = static_cast<int>(herm_basis.size());

    // constraints G*rho(x) -+ rho(x)^dagger*G = 0 for x over p (+) and k (-)
    std::vector<std::pair<Mat, int>> constraints;
    for (int j = 0; j < g.p.cols; ++j) {
        Mat x(g.dim, 1);
        for (int i = 0; i < g.dim; ++i) x(i, 0) = g.p(i, j);
        constraints.emplace_back(r.rho_of(x), +1);
    }
    for (int j = 0; j < g.k.cols; ++j) {
        Mat x(g.dim, 1);
        for (int i = 0; i < g.dim; ++i) x(i, 0) = g.k(i, j);
        constraints.emplace_back(r.rho_of(x), -1);
    }

    Mat sys(static_cast<int>(constraints.size()) * 2 * n * n, nvars);
    int row0 = 0;
    for (const auto &[m, sign] : constraints) {
        for (int v = 0; v < nvars; ++v) {
            Mat e = herm_basis[v] * m - GQ(Rat(sign)) * (m.dagger() * herm_basis[v]);
            for (int rr = 0; rr < n; ++rr)
                for (int cc = 0; cc < n; ++cc) {
                    sys(row0 + 2 * (rr * n + cc), v) = GQ(e(rr, cc).re);
                    sys(row0 + 2 * (rr * n + cc) + 1, v) = GQ(e(rr, cc).im);
                }
        }
        row0 += 2 * n * n;
    }
    Mat ns = constraints.empty() ? Mat::identity(nvars) : nullspace(sys);
    if (ns.cols == 0) throw Infeasible("no invariant Hermitian form exists");

    std::vector<Mat> sol_basis;
    for (int j = 0; j < ns.cols; ++j) {
        Mat gj(n, n);
        for (int v = 0; v < nvars; ++v)
            if (!ns(v, j).is_zero()) gj = gj + ns(v, j) * herm_basis[v];
        sol_basis.push_back(gj);
    }

    // certificate: a diagonal entry that vanishes on the whole solution space
    for (int d = 0; d < n; ++d) {
        bool all_zero = true;
        for (const auto &gj : sol_basis)
            if (!gj(d, d).is_zero()) all_zero = false;
        if (all_zero)
            throw Infeasible("diagonal entry " + std::to_string(d) +
                             " vanishes on every invariant form: no positive-definite solution");
    }

    auto try_install = [&](Mat cand) -> bool {
        if (!(cand == cand.dagger())) return false;
        if (!hermitian_positive_definite(cand)) return false;
        GQ tr = cand.trace();
        cand = (GQ(1) / tr) * cand;
        r.metric = cand;
        return true;
    };

    // Frobenius projection of the identity onto the solution space
    {
        int s = static_cast<int>(sol_basis.size());
        Mat gmat(s, s), rhs(s, 1);
        for (int i = 0; i < s; ++i) {
            for (int j = 0; j < s; ++j) gmat(i, j) = (sol_basis[i] * sol_basis[j]).trace();
            rhs(i, 0) = sol_basis[i].trace();
        }
        try {
            Mat c = solve(gmat, rhs);
            Mat cand(n, n);
            for (int i = 0; i < s; ++i) cand = cand + c(i, 0) * sol_basis[i];
            if (try_install(cand)) {
                if (!metric_is_admissible(r))
                    throw InvariantViolation("installed metric fails exact admissibility");
                return r.metric;
            }
        } catch (const std::domain_error &) {
            // fall through to the random search
        }
    }

    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> coeff(-9, 9);
    for (int attempt = 0; attempt < 500; ++attempt) {
        Mat cand(n, n);
        for (const auto &gj : sol_basis) cand = cand + GQ(Rat(coeff(rng))) * gj;
        if (try_install(cand)) {
            if (!metric_is_admissible(r))
                throw InvariantViolation("installed metric fails exact admissibility");
            return r.metric;
        }
    }
    throw Infeasible("no positive-definite invariant form found (search exhausted)");
}

// simultaneous diagonalization of rho over the fundamental Cartan
static std::vector<std::pair<Weight, Mat>> rep_h_weight_spaces(const MatrixRep &r) {
    const GroupModel &g = *r.model;
    struct Block {
        Weight w;
        Mat basis;
    };
    std::vector<Block> blocks = {
        {Weight{std::vector<Rat>(g.delta), std::vector<Rat>(g.t.cols)}, Mat::identity(r.dim)}};
    auto refine = [&](const Mat &hvec, bool split_part, int coord) {
        Mat op = r.rho_of(hvec);
        std::vector<Block> next;
        for (auto &blk : blocks) {
            Mat sub;
            try {
                sub = restrict_operator(op, blk.basis);
            } catch (const NotStabilizing &) {
                throw NonSemisimpleBAction("Cartan does not stabilize a weight block");
            }
            std::vector<std::pair<GQ, Mat>> spaces;
            try {
                spaces = eigenspaces(sub, float_eigen_candidates(sub), "rep_h_weight_spaces");
            } catch (const std::runtime_error &e) {
                throw NonSemisimpleBAction(e.what());
            }
            for (const auto &[lam, vecs] : spaces) {
                Block nb;
                nb.w = blk.w;
                if (split_part) {
                    if (!lam.is_real())
                        throw NonSemisimpleBAction("split generator acts with nonreal eigenvalue");
                    nb.w.b[coord] = lam.re;
                } else {
                    if (lam.re != 0)
                        throw NonSemisimpleBAction("torus generator acts non-skew");
                    nb.w.t[coord] = lam.im;
                }
                nb.basis = blk.basis * vecs;
                next.push_back(std::move(nb));
            }
        }
        blocks = std::move(next);
    };
    for (int i = 0; i < g.delta; ++i) {
        Mat ai(g.dim, 1);
        for (int rr = 0; rr < g.dim; ++rr) ai(rr, 0) = g.a0_per_b(rr, i);
        refine(ai, true, i);
    }
    for (int a = 0; a < g.t.cols; ++a) {
        Mat ta(g.dim, 1);
        for (int rr = 0; rr < g.dim; ++rr) ta(rr, 0) = g.t(rr, a);
        refine(ta, false, a);
    }
    std::vector<std::pair<Weight, Mat>> out;
    for (auto &blk : blocks) out.emplace_back(blk.w, blk.basis);
    return out;
}

VirtualCharacter full_h_character(const MatrixRep &r) {
    VirtualCharacter chi(r.model->delta, r.model->t.cols);
    for (const auto &[w, basis] : rep_h_weight_spaces(r)) chi.add_term(w, basis.cols);
    return chi;
}

bool is_theta_invariant(const MatrixRep &r) {
    return full_h_character(r) == full_h_character(theta_twist(r));
}

std::vector<BWeightBlock> decompose_by_b(const MatrixRep &r) {
    const GroupModel &g = *r.model;
    if (g.delta != 1) throw NotRankOne("decompose_by_b needs delta = 1");
    if (!r.has_metric()) throw RequiresAdmissibleMetric("decompose_by_b");
    Mat op = r.rho_of(g.a0);
    std::vector<std::pair<GQ, Mat>> spaces;
    try {
        spaces = eigenspaces(op, float_eigen_candidates(op), "decompose_by_b");
    } catch (const std::runtime_error &e) {
        throw NonSemisimpleBAction(e.what());
    }
    std::vector<BWeightBlock> blocks;
    for (const auto &[lam, vecs] : spaces) {
        if (!lam.is_real()) throw NonSemisimpleBAction("rho(a0) eigenvalue not real");
        BWeightBlock blk;
        blk.beta = lam.re;
        blk.basis = vecs;
        for (int j = 0; j < g.m.cols; ++j) {
            Mat x(g.dim, 1);
            for (int i = 0; i < g.dim; ++i) x(i, 0) = g.m(i, j);
            blk.m_action.push_back(restrict_operator(r.rho_of(x), vecs));
        }
        blocks.push_back(std::move(blk));
    }
    std::sort(blocks.begin(), blocks.end(),
              [](const BWeightBlock &x, const BWeightBlock &y) { return x.beta < y.beta; });
    // blocks of distinct rho(a0) eigenvalues must be metric-orthogonal
    for (size_t i = 0; i < blocks.size(); ++i)
        for (size_t j = i + 1; j < blocks.size(); ++j)
            if (!(blocks[i].basis.dagger() * r.metric * blocks[j].basis).is_zero())
                throw InvariantViolation("b-weight blocks not metric-orthogonal");
    return blocks;
}

} // namespace fried
