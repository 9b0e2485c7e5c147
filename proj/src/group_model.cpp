#include "fried/group_model.hpp"

#include <cmath>
#include <complex>
#include <sstream>

namespace fried {

namespace {

Mat cols_of(int dim, const std::vector<std::vector<Rat>> &vecs) {
    Mat m(dim, static_cast<int>(vecs.size()));
    for (size_t j = 0; j < vecs.size(); ++j)
        for (int i = 0; i < dim; ++i) m(i, static_cast<int>(j)) = GQ(vecs[j][i]);
    return m;
}

Mat basis_cols(int dim, const std::vector<int> &idx) {
    Mat m(dim, static_cast<int>(idx.size()));
    for (size_t j = 0; j < idx.size(); ++j) m(idx[j], static_cast<int>(j)) = GQ(1);
    return m;
}

Mat diag_mat(const std::vector<Rat> &d) {
    Mat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = GQ(d[i]);
    return m;
}

// ad matrices from a structure-constant table c[i][j] = coords of [e_i,e_j]
std::vector<Mat> ads_from_table(int dim, const std::vector<std::vector<std::vector<Rat>>> &c) {
    std::vector<Mat> ad(dim, Mat(dim, dim));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k) ad[i](k, j) = GQ(c[i][j][k]);
    return ad;
}

void finalize_grams(GroupModel &g) {
    if (g.delta > 0) {
        g.b_gram = inverse(gram(g.B, g.a0_per_b));
    } else {
        g.b_gram = Mat(0, 0);
    }
    if (g.t.cols > 0) {
        g.t_gram = GQ(-1) * inverse(gram(g.B, g.t));
    } else {
        g.t_gram = Mat(0, 0);
    }
}

bool real_sym_positive_definite(const Mat &m) {
    // leading principal minors, exact
    for (int k = 1; k <= m.rows; ++k) {
        Mat sub(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) sub(i, j) = m(i, j);
        GQ d = determinant(sub);
        if (!d.is_real() || d.re <= 0) return false;
    }
    return true;
}

int levi_civita(int i, int j, int k) {
    if (i == j || j == k || i == k) return 0;
    return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

GroupModel preset_sl2c() {
    // basis P1,P2,P3 (Pauli matrices), K1,K2,K3 (i * Pauli); B(X,Y) = Re tr(XY)
    const int dim = 6;
    std::vector<std::vector<std::vector<Rat>>> c(
        dim, std::vector<std::vector<Rat>>(dim, std::vector<Rat>(dim)));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                int e = levi_civita(i, j, k);
                if (!e) continue;
                c[i][j][3 + k] = 2 * e;          // [Pi,Pj] =  2 eps K
                c[3 + i][3 + j][3 + k] = -2 * e; // [Ki,Kj] = -2 eps K
                c[3 + i][j][k] = -2 * e;         // [Ki,Pj] = -2 eps P
                c[i][3 + j][k] = -2 * e;         // [Pi,Kj] = -2 eps P
            }
    GroupModel g;
    g.name = "sl2c";
    g.factor_names = {"sl2c"};
    g.factor_dims = {6};
    g.dim = dim;
    g.rank = 2;
    g.basis_labels = {"P1", "P2", "P3", "K1", "K2", "K3"};
    g.ad = ads_from_table(dim, c);
    g.theta = diag_mat({-1, -1, -1, 1, 1, 1});
    g.B = diag_mat({2, 2, 2, -2, -2, -2});
    g.p = basis_cols(dim, {0, 1, 2});
    g.k = basis_cols(dim, {3, 4, 5});
    g.b = basis_cols(dim, {2});
    g.t = basis_cols(dim, {5});
    g.m = basis_cols(dim, {5});
    g.p_m = Mat(dim, 0);
    g.k_m = basis_cols(dim, {5});
    g.n = cols_of(dim, {{1, 0, 0, 0, 1, 0}, {0, 1, 0, -1, 0, 0}});       // P1+K2, P2-K1
    g.nbar = cols_of(dim, {{1, 0, 0, 0, -1, 0}, {0, 1, 0, 1, 0, 0}});    // theta images
    g.zperp = basis_cols(dim, {0, 1, 3, 4});
    g.a0 = cols_of(dim, {{0, 0, Rat(1, 2), 0, 0, 0}});
    g.a0_per_b = g.a0;
    g.delta = 1;
    g.ell_per_b = {1};
    g.center_compact = true;
    g.weyl_tk.dim_b = 1;
    g.weyl_tk.dim_t = 1;
    g.weyl_tk.generators = {diag_mat({-1, -1})};
    finalize_grams(g);
    return g;
}

GroupModel preset_sl2r() {
    // basis A = diag(1,-1), S = offdiag(1,1), K = offdiag(1,-1); B = Re tr
    const int dim = 3;
    std::vector<std::vector<std::vector<Rat>>> c(
        dim, std::vector<std::vector<Rat>>(dim, std::vector<Rat>(dim)));
    c[0][1][2] = 2;  c[1][0][2] = -2; // [A,S] =  2K
    c[0][2][1] = 2;  c[2][0][1] = -2; // [A,K] =  2S
    c[1][2][0] = -2; c[2][1][0] = 2;  // [S,K] = -2A
    GroupModel g;
    g.name = "sl2r";
    g.factor_names = {"sl2r"};
    g.factor_dims = {3};
    g.dim = dim;
    g.rank = 1;
    g.basis_labels = {"A", "S", "K"};
    g.ad = ads_from_table(dim, c);
    g.theta = diag_mat({-1, -1, 1});
    g.B = diag_mat({2, 2, -2});
    g.p = basis_cols(dim, {0, 1});
    g.k = basis_cols(dim, {2});
    g.b = Mat(dim, 0);
    g.t = basis_cols(dim, {2});
    g.m = Mat::identity(dim);
    g.p_m = basis_cols(dim, {0, 1});
    g.k_m = basis_cols(dim, {2});
    g.n = Mat(dim, 0);
    g.nbar = Mat(dim, 0);
    g.zperp = Mat(dim, 0);
    g.a0 = Mat(dim, 1);
    g.a0_per_b = Mat(dim, 0);
    g.delta = 0;
    g.ell_per_b = {};
    g.center_compact = true;
    g.weyl_tk.dim_b = 0;
    g.weyl_tk.dim_t = 1;
    finalize_grams(g);
    return g;
}

GroupModel preset_su2() {
    const int dim = 3;
    std::vector<std::vector<std::vector<Rat>>> c(
        dim, std::vector<std::vector<Rat>>(dim, std::vector<Rat>(dim)));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                int e = levi_civita(i, j, k);
                if (e) c[i][j][k] = -2 * e; // [Ki,Kj] = -2 eps K (K = i*Pauli)
            }
    GroupModel g;
    g.name = "su2";
    g.factor_names = {"su2"};
    g.factor_dims = {3};
    g.dim = dim;
    g.rank = 1;
    g.basis_labels = {"K1", "K2", "K3"};
    g.ad = ads_from_table(dim, c);
    g.theta = Mat::identity(dim);
    g.B = diag_mat({-2, -2, -2});
    g.p = Mat(dim, 0);
    g.k = Mat::identity(dim);
    g.b = Mat(dim, 0);
    g.t = basis_cols(dim, {2});
    g.m = Mat::identity(dim);
    g.p_m = Mat(dim, 0);
    g.k_m = Mat::identity(dim);
    g.n = Mat(dim, 0);
    g.nbar = Mat(dim, 0);
    g.zperp = Mat(dim, 0);
    g.a0 = Mat(dim, 1);
    g.a0_per_b = Mat(dim, 0);
    g.delta = 0;
    g.ell_per_b = {};
    g.center_compact = true;
    g.weyl_tk.dim_b = 0;
    g.weyl_tk.dim_t = 1;
    g.weyl_tk.generators = {diag_mat({-1})};
    finalize_grams(g);
    return g;
}

GroupModel preset_rline() {
    GroupModel g;
    g.name = "rline";
    g.factor_names = {"rline"};
    g.factor_dims = {1};
    g.dim = 1;
    g.rank = 1;
    g.basis_labels = {"X"};
    g.ad = {Mat(1, 1)};
    g.theta = diag_mat({-1});
    g.B = diag_mat({1});
    g.p = Mat::identity(1);
    g.k = Mat(1, 0);
    g.b = Mat::identity(1);
    g.t = Mat(1, 0);
    g.m = Mat(1, 0);
    g.p_m = Mat(1, 0);
    g.k_m = Mat(1, 0);
    g.n = Mat(1, 0);
    g.nbar = Mat(1, 0);
    g.zperp = Mat(1, 0);
    g.a0 = Mat::identity(1);
    g.a0_per_b = Mat::identity(1);
    g.delta = 1;
    g.ell_per_b = {0};
    g.center_compact = false; // noncompact split center
    g.weyl_tk.dim_b = 1;
    g.weyl_tk.dim_t = 0;
    finalize_grams(g);
    return g;
}

Mat embed(const Mat &m, int dim, int offset) {
    Mat out(dim, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) out(offset + i, j) = m(i, j);
    return out;
}

Mat block_diag(const Mat &x, const Mat &y) {
    Mat out(x.rows + y.rows, x.cols + y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) out(i, j) = x(i, j);
    for (int i = 0; i < y.rows; ++i)
        for (int j = 0; j < y.cols; ++j) out(x.rows + i, x.cols + j) = y(i, j);
    return out;
}

Mat embed_cat(const Mat &x, const Mat &y, int dim) {
    return hcat(embed(x, dim, 0), embed(y, dim, x.rows));
}

} // namespace

GroupModel direct_sum(const GroupModel &x, const GroupModel &y, const std::string &name) {
    GroupModel g;
    g.name = name;
    g.dim = x.dim + y.dim;
    g.rank = x.rank + y.rank;
    g.basis_labels = x.basis_labels;
    g.basis_labels.insert(g.basis_labels.end(), y.basis_labels.begin(), y.basis_labels.end());
    g.factor_names = x.factor_names;
    g.factor_names.insert(g.factor_names.end(), y.factor_names.begin(), y.factor_names.end());
    g.factor_dims = x.factor_dims;
    g.factor_dims.insert(g.factor_dims.end(), y.factor_dims.begin(), y.factor_dims.end());
    for (const auto &a : x.ad) g.ad.push_back(block_diag(a, Mat(y.dim, y.dim)));
    for (const auto &a : y.ad) g.ad.push_back(block_diag(Mat(x.dim, x.dim), a));
    g.theta = block_diag(x.theta, y.theta);
    g.B = block_diag(x.B, y.B);
    g.p = embed_cat(x.p, y.p, g.dim);
    g.k = embed_cat(x.k, y.k, g.dim);
    g.b = embed_cat(x.b, y.b, g.dim);
    g.t = embed_cat(x.t, y.t, g.dim);
    g.m = embed_cat(x.m, y.m, g.dim);
    g.p_m = embed_cat(x.p_m, y.p_m, g.dim);
    g.k_m = embed_cat(x.k_m, y.k_m, g.dim);
    g.n = embed_cat(x.n, y.n, g.dim);
    g.nbar = embed_cat(x.nbar, y.nbar, g.dim);
    g.zperp = embed_cat(x.zperp, y.zperp, g.dim);
    g.a0 = embed(x.a0, g.dim, 0) + embed(y.a0, g.dim, x.dim);
    g.a0_per_b = embed_cat(x.a0_per_b, y.a0_per_b, g.dim);
    g.delta = x.delta + y.delta;
    g.ell_per_b = x.ell_per_b;
    g.ell_per_b.insert(g.ell_per_b.end(), y.ell_per_b.begin(), y.ell_per_b.end());
    g.center_compact = x.center_compact && y.center_compact;
    g.weyl_tk.dim_b = x.weyl_tk.dim_b + y.weyl_tk.dim_b;
    g.weyl_tk.dim_t = x.weyl_tk.dim_t + y.weyl_tk.dim_t;
    // generators act on stacked (b-parts | t-parts), so re-interleave blocks
    auto lift_gen = [&](const Mat &w, bool first) {
        int db1 = x.weyl_tk.dim_b, dt1 = x.weyl_tk.dim_t;
        int db2 = y.weyl_tk.dim_b, dt2 = y.weyl_tk.dim_t;
        int n = db1 + db2 + dt1 + dt2;
        Mat out = Mat::identity(n);
        auto bpos = [&](int i, bool f) { return f ? i : db1 + i; };
        auto tpos = [&](int i, bool f) { return db1 + db2 + (f ? i : dt1 + i); };
        int db = first ? db1 : db2, dt = first ? dt1 : dt2;
        auto pos = [&](int i) { return i < db ? bpos(i, first) : tpos(i - db, first); };
        for (int i = 0; i < db + dt; ++i)
            for (int j = 0; j < db + dt; ++j) out(pos(i), pos(j)) = w(i, j);
        return out;
    };
    for (const auto &w : x.weyl_tk.generators) g.weyl_tk.generators.push_back(lift_gen(w, true));
    for (const auto &w : y.weyl_tk.generators) g.weyl_tk.generators.push_back(lift_gen(w, false));
    finalize_grams(g);
    return g;
}

GroupModel build_preset(const std::string &name) {
    if (name == "sl2c") return preset_sl2c();
    if (name == "sl2r") return preset_sl2r();
    if (name == "su2") return preset_su2();
    if (name == "rline") return preset_rline();
    if (name == "sl2c_cubed")
        return direct_sum(direct_sum(preset_sl2c(), preset_sl2c(), "sl2c_squared"), preset_sl2c(),
                          "sl2c_cubed");
    if (name == "sl2c_x_su2") return direct_sum(preset_sl2c(), preset_su2(), "sl2c_x_su2");
    if (name == "rline_x_su2") return direct_sum(preset_rline(), preset_su2(), "rline_x_su2");
    throw UnknownPreset(name);
}

Mat ad_of(const GroupModel &g, const Mat &x) {
    if (x.rows != g.dim || x.cols != 1) throw DimensionMismatch("ad_of expects a dim x 1 column");
    Mat out(g.dim, g.dim);
    for (int i = 0; i < g.dim; ++i)
        if (!x(i, 0).is_zero()) out = out + x(i, 0) * g.ad[i];
    return out;
}

Mat bracket(const GroupModel &g, const Mat &x, const Mat &y) { return ad_of(g, x) * y; }

Mat gram(const Mat &B, const Mat &basis) { return basis.transpose() * B * basis; }

bool in_span(const Mat &basis, const Mat &vecs) {
    if (vecs.cols == 0) return true;
    return rank(basis) == rank(hcat(basis, vecs));
}

Mat restrict_operator(const Mat &op, const Mat &basis) {
    if (basis.cols == 0) return Mat(0, 0);
    try {
        return solve(basis, op * basis);
    } catch (const std::domain_error &) {
        throw NotStabilizing("operator does not preserve the subspace");
    }
}

Mat casimir_action(const std::vector<Mat> &rho, const Mat &g_gram) {
    if (rho.empty()) return Mat(0, 0);
    Mat ginv = inverse(g_gram);
    int n = rho[0].rows;
    Mat c(n, n);
    for (int i = 0; i < g_gram.rows; ++i)
        for (int j = 0; j < g_gram.cols; ++j)
            if (!ginv(i, j).is_zero()) c = c - ginv(i, j) * (rho[i] * rho[j]);
    return c;
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    for (const auto &c : checks) {
        os << (c.pass ? "[ok]   " : "[FAIL] ") << c.name;
        if (!c.detail.empty()) os << " -- " << c.detail;
        os << "\n";
    }
    return os.str();
}

ValidationReport validate_model(const GroupModel &g) {
    ValidationReport rep;
    auto add = [&](const std::string &name, bool pass, const std::string &detail = "") {
        rep.checks.push_back({name, pass, pass ? "" : detail});
    };

    add("theta_involution", g.theta * g.theta == Mat::identity(g.dim), "theta^2 != id");

    {
        bool ok = true;
        for (int i = 0; i < g.dim && ok; ++i) {
            Mat lhs = g.theta * g.ad[i] * g.theta; // theta ad(e_i) theta^{-1}
            Mat ei(g.dim, 1);
            ei(i, 0) = GQ(1);
            if (!(lhs == ad_of(g, g.theta * ei))) ok = false;
        }
        add("theta_automorphism", ok, "theta does not respect the bracket");
    }

    {
        bool anti = true, jac = true;
        for (int i = 0; i < g.dim; ++i) {
            Mat ei(g.dim, 1);
            ei(i, 0) = GQ(1);
            for (int j = 0; j < g.dim; ++j) {
                Mat ej(g.dim, 1);
                ej(j, 0) = GQ(1);
                if (!((g.ad[i] * ej) + (g.ad[j] * ei)).is_zero()) anti = false;
                if (!(ad_of(g, g.ad[i] * ej) == commutator(g.ad[i], g.ad[j]))) jac = false;
            }
        }
        add("bracket_antisymmetric", anti, "[x,y] != -[y,x]");
        add("jacobi", jac, "ad is not a homomorphism");
    }

    add("B_symmetric", g.B == g.B.transpose(), "B != B^T");

    {
        bool ok = true;
        for (int i = 0; i < g.dim && ok; ++i)
            if (!((g.B * g.ad[i]).transpose() + g.B * g.ad[i]).is_zero()) ok = false;
        add("B_invariant", ok, "B(ad x ., .) not antisymmetric");
    }

    add("B_theta_invariant", g.theta.transpose() * g.B * g.theta == g.B,
        "B not theta-invariant");

    {
        bool sig = real_sym_positive_definite(gram(g.B, g.p)) &&
                   real_sym_positive_definite(GQ(-1) * gram(g.B, g.k)) &&
                   (g.p.transpose() * g.B * g.k).is_zero();
        add("B_signature", sig, "B must be positive on p, negative on k, p perp k");
    }

    {
        bool ok = g.p.cols + g.k.cols == g.dim && rank(hcat(g.p, g.k)) == g.dim &&
                  (g.theta * g.p + g.p).is_zero() && (g.theta * g.k - g.k).is_zero();
        add("cartan_decomposition", ok, "g != p + k as theta eigenspaces");
    }

    {
        // b = { x in p : [x, t] = 0 }
        Mat stacked(0, g.p.cols);
        for (int a = 0; a < g.t.cols; ++a) {
            Mat ta(g.dim, 1);
            for (int i = 0; i < g.dim; ++i) ta(i, 0) = g.t(i, a);
            Mat rows = ad_of(g, ta) * g.p;
            Mat tmp(stacked.rows + rows.rows, g.p.cols);
            for (int i = 0; i < stacked.rows; ++i)
                for (int j = 0; j < g.p.cols; ++j) tmp(i, j) = stacked(i, j);
            for (int i = 0; i < rows.rows; ++i)
                for (int j = 0; j < g.p.cols; ++j) tmp(stacked.rows + i, j) = rows(i, j);
            stacked = tmp;
        }
        Mat kerp = g.t.cols == 0 ? Mat::identity(g.p.cols) : nullspace(stacked);
        Mat cand = g.p * kerp; // centralizer of t inside p, ambient coords
        bool ok = g.b.cols == g.delta && in_span(cand, g.b) && in_span(g.b, cand) &&
                  in_span(g.b, g.a0_per_b) && rank(g.a0_per_b) == g.delta;
        // b abelian and ad(b) kills t
        for (int i = 0; i < g.b.cols && ok; ++i) {
            Mat bi(g.dim, 1);
            for (int r = 0; r < g.dim; ++r) bi(r, 0) = g.b(r, i);
            if (!(ad_of(g, bi) * g.b).is_zero() || !(ad_of(g, bi) * g.t).is_zero()) ok = false;
        }
        add("b_is_split_cartan_part", ok, "b != centralizer of t in p (abelian)");
    }

    {
        // z(b) = ker ad(a0^(i)) for all i must equal b + m, with m = p_m + k_m
        Mat stacked(0, g.dim);
        for (int i = 0; i < g.delta; ++i) {
            Mat ai(g.dim, 1);
            for (int r = 0; r < g.dim; ++r) ai(r, 0) = g.a0_per_b(r, i);
            Mat rows = ad_of(g, ai);
            Mat tmp(stacked.rows + g.dim, g.dim);
            for (int r = 0; r < stacked.rows; ++r)
                for (int c = 0; c < g.dim; ++c) tmp(r, c) = stacked(r, c);
            for (int r = 0; r < g.dim; ++r)
                for (int c = 0; c < g.dim; ++c) tmp(stacked.rows + r, c) = rows(r, c);
            stacked = tmp;
        }
        Mat zb = g.delta == 0 ? Mat::identity(g.dim) : nullspace(stacked);
        Mat bm = hcat(g.b, g.m);
        bool ok = in_span(zb, bm) && in_span(bm, zb) &&
                  (g.b.transpose() * g.B * g.m).is_zero() &&
                  in_span(g.p, g.p_m) && in_span(g.k, g.k_m) &&
                  in_span(g.m, hcat(g.p_m, g.k_m)) && in_span(hcat(g.p_m, g.k_m), g.m) &&
                  g.p_m.cols + g.k_m.cols == g.m.cols;
        add("centralizer_split", ok, "z(b) != b + m or m not split by theta");
    }

    {
        Mat zb = hcat(hcat(g.b, g.m), g.zperp);
        bool ok = g.b.cols + g.m.cols + g.zperp.cols == g.dim && rank(zb) == g.dim &&
                  (g.zperp.transpose() * g.B * hcat(g.b, g.m)).is_zero();
        add("zperp_complement", ok, "zperp is not the B-orthocomplement of z(b)");
    }

    {
        bool ok = in_span(g.zperp, hcat(g.n, g.nbar)) &&
                  g.n.cols + g.nbar.cols == g.zperp.cols &&
                  g.n.cols == 2 * g.ell_total() &&
                  in_span(g.nbar, g.theta * g.n) && in_span(g.theta * g.n, g.nbar) &&
                  (ad_of(g, g.a0) * g.n - g.n).is_zero() &&
                  (ad_of(g, g.a0) * g.nbar + g.nbar).is_zero() &&
                  gram(g.B, g.n).is_zero() && gram(g.B, g.nbar).is_zero();
        add("n_split", ok, "zperp != n + nbar with ad(a0) = +-1 and n isotropic");
    }

    add("parity", (g.dim_p() - g.delta) % 2 == 0, "dim p and delta have different parity");

    {
        // projections of n to p and k are injective, images B-orthogonal to p_m/k_m
        Mat half = GQ(Rat(1, 2)) * (Mat::identity(g.dim) - g.theta); // onto p
        Mat halfk = GQ(Rat(1, 2)) * (Mat::identity(g.dim) + g.theta);
        Mat np = half * g.n, nk = halfk * g.n;
        bool ok = rank(np) == g.n.cols && rank(nk) == g.n.cols &&
                  (np.transpose() * g.B * g.p_m).is_zero() &&
                  (nk.transpose() * g.B * g.k_m).is_zero();
        add("n_projections", ok, "n projections to p/k not injective or not orthogonal to m");
    }

    {
        bool ok = true;
        for (int i = 0; i < g.t.cols && ok; ++i) {
            Mat ti(g.dim, 1);
            for (int r = 0; r < g.dim; ++r) ti(r, 0) = g.t(r, i);
            if (!(ad_of(g, ti) * g.t).is_zero()) ok = false;
        }
        if (ok) {
            try {
                fundamental_cartan(g);
            } catch (const std::exception &) {
                ok = false;
            }
        }
        add("t_maximal_torus", ok, "t not maximal abelian in k");
    }

    add("rank", g.delta + g.t.cols == g.rank, "rank != dim b + dim t");

    {
        bool ok = true;
        size_t order = 0;
        try {
            for (const auto &w : g.weyl_tk.generators)
                if (w.rows != g.weyl_tk.dim_b + g.weyl_tk.dim_t || determinant(w).is_zero())
                    ok = false;
            if (ok) order = weyl_elements(g.weyl_tk).size();
        } catch (const std::exception &) {
            ok = false;
        }
        add("weyl_group_finite", ok && order >= 1, "Weyl generators invalid or closure failed");
    }

    {
        bool ok = true;
        try {
            GroupModel tmp = g;
            finalize_grams(tmp);
            ok = tmp.b_gram == g.b_gram && tmp.t_gram == g.t_gram;
        } catch (const std::exception &) {
            ok = false;
        }
        add("dual_grams", ok, "stored b_gram/t_gram inconsistent with B");
    }

    return rep;
}

Mat fundamental_cartan(const GroupModel &g) {
    // centralizer of t inside k must be exactly t
    Mat stacked(0, g.k.cols);
    for (int a = 0; a < g.t.cols; ++a) {
        Mat ta(g.dim, 1);
        for (int i = 0; i < g.dim; ++i) ta(i, 0) = g.t(i, a);
        Mat rows = ad_of(g, ta) * g.k;
        Mat tmp(stacked.rows + rows.rows, g.k.cols);
        for (int i = 0; i < stacked.rows; ++i)
            for (int j = 0; j < g.k.cols; ++j) tmp(i, j) = stacked(i, j);
        for (int i = 0; i < rows.rows; ++i)
            for (int j = 0; j < g.k.cols; ++j) tmp(stacked.rows + i, j) = rows(i, j);
        stacked = tmp;
    }
    Mat ker = g.t.cols == 0 ? Mat::identity(g.k.cols) : nullspace(stacked);
    Mat cent = g.k * ker;
    if (!(in_span(cent, g.t) && in_span(g.t, cent)))
        throw NotMaximalTorus("centralizer of t in k exceeds t");
    Mat h = hcat(g.b, g.t);
    if (h.cols != g.rank) throw DimensionMismatch("fundamental Cartan dimension != rank");
    return h;
}

SplitZb split_zb(const GroupModel &g) {
    if (g.delta == 0) throw NotRankOne("model has no split factor");
    SplitZb out;
    if (g.zperp.cols == 0) {
        out.n = Mat(g.dim, 0);
        out.nbar = Mat(g.dim, 0);
        out.ell = 0;
        return out;
    }
    Mat r = restrict_operator(ad_of(g, g.a0), g.zperp);
    std::vector<GQ> cands = {GQ(1), GQ(-1)};
    for (const auto &c : float_eigen_candidates(r)) cands.push_back(c);
    std::vector<std::pair<GQ, Mat>> spaces;
    try {
        spaces = eigenspaces(r, cands, "split_zb");
    } catch (const std::runtime_error &e) {
        throw NonSemisimpleAction(e.what());
    }
    Mat n(g.dim, 0), nbar(g.dim, 0);
    for (const auto &[lam, vecs] : spaces) {
        if (!lam.is_real() || lam.re == 0)
            throw NonSemisimpleAction("ad(a0) eigenvalue on zperp not real nonzero: " + lam.str());
        Mat amb = g.zperp * vecs;
        if (lam.re > 0)
            n = hcat(n, amb);
        else
            nbar = hcat(nbar, amb);
    }
    out.n = n;
    out.nbar = nbar;
    out.ell = n.cols / 2;
    return out;
}

std::vector<std::pair<Weight, Mat>> h_weight_spaces(const GroupModel &g, const Mat &basis) {
    struct Block {
        Weight w;
        Mat basis;
    };
    std::vector<Block> blocks = {
        {Weight(std::vector<Rat>(g.delta), std::vector<Rat>(g.t.cols)), basis}};
    auto refine = [&](const Mat &hvec, bool split_part, int coord) {
        Mat op = ad_of(g, hvec);
        std::vector<Block> next;
        for (auto &blk : blocks) {
            if (blk.basis.cols == 0) continue;
            Mat r;
            try {
                r = restrict_operator(op, blk.basis);
            } catch (const NotStabilizing &) {
                throw NonSemisimpleAction("Cartan does not stabilize the subspace");
            }
            std::vector<GQ> cands = float_eigen_candidates(r);
            std::vector<std::pair<GQ, Mat>> spaces;
            try {
                spaces = eigenspaces(r, cands, "h_weight_spaces");
            } catch (const std::runtime_error &e) {
                throw NonSemisimpleAction(e.what());
            }
            for (const auto &[lam, vecs] : spaces) {
                Block nb;
                nb.w = blk.w;
                if (split_part) {
                    if (!lam.is_real())
                        throw NonSemisimpleAction("split generator with nonreal eigenvalue");
                    nb.w.b[coord] = lam.re;
                } else {
                    if (lam.re != 0)
                        throw NonSemisimpleAction("torus generator with non-imaginary eigenvalue");
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
        for (int r = 0; r < g.dim; ++r) ai(r, 0) = g.a0_per_b(r, i);
        refine(ai, true, i);
    }
    for (int a = 0; a < g.t.cols; ++a) {
        Mat ta(g.dim, 1);
        for (int r = 0; r < g.dim; ++r) ta(r, 0) = g.t(r, a);
        refine(ta, false, a);
    }
    std::vector<std::pair<Weight, Mat>> out;
    for (auto &blk : blocks) out.emplace_back(blk.w, blk.basis);
    return out;
}

static std::vector<std::pair<Weight, int>> weight_multiset(const GroupModel &g, const Mat &basis) {
    std::map<Weight, int> acc;
    for (const auto &[w, m] : h_weight_spaces(g, basis)) acc[w] += m.cols;
    return {acc.begin(), acc.end()};
}

std::vector<std::pair<Weight, int>> zperp_weights(const GroupModel &g) {
    return weight_multiset(g, g.zperp);
}

std::vector<std::pair<Weight, int>> root_space_weights(const GroupModel &g) {
    return weight_multiset(g, Mat::identity(g.dim));
}

double ad_determinant_factor(const GroupModel &g, const TorusElement &gamma) {
    if (gamma.a_part == 0.0) throw EllipticClass("split length vanishes");
    if (static_cast<int>(gamma.t_angles.size()) != g.t.cols)
        throw DimensionMismatch("torus angle count");
    std::complex<double> prod = 1.0;
    for (const auto &[w, mult] : zperp_weights(g)) {
        double radial = 0.0, phase = 0.0;
        for (const auto &bi : w.b) radial += to_double(bi);
        radial *= gamma.a_part;
        for (size_t i = 0; i < w.t.size(); ++i)
            phase += to_double(w.t[i]) * gamma.t_angles[i];
        std::complex<double> eig =
            std::exp(radial) * std::complex<double>(std::cos(phase), std::sin(phase));
        for (int rep = 0; rep < mult; ++rep) prod *= (1.0 - eig);
    }
    return std::sqrt(std::abs(prod));
}

CompactFormData compact_form_data(const GroupModel &g) {
    CompactFormData out;
    out.trace_constant = 0;
    if (g.zperp.cols == 0) return out;
    Mat z = hcat(hcat(g.b, g.p_m), g.k_m);
    if (z.cols == 0) return out;
    std::vector<Mat> rho;
    for (int j = 0; j < z.cols; ++j) {
        Mat zj(g.dim, 1);
        for (int r = 0; r < g.dim; ++r) zj(r, 0) = z(r, j);
        rho.push_back(restrict_operator(ad_of(g, zj), g.zperp));
    }
    GQ tr = casimir_action(rho, gram(g.B, z)).trace();
    if (!tr.is_real()) throw InvariantViolation("compact-form trace not real");
    out.trace_constant = tr.re / 8;
    return out;
}

} // namespace fried
