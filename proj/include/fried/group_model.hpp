#pragma once

#include "fried/characters.hpp"
#include "fried/matrix.hpp"

#include <string>
#include <vector>

namespace fried {

// Exact rational model of a real reductive Lie algebra with Cartan involution
// theta, invariant form B, and the subspace data attached to a maximally split
// torus-times-compact-torus pair (b, t). Subspaces are stored as column-basis
// matrices in the ambient coordinates.
struct GroupModel {
    std::string name;
    int dim = 0;
    int rank = 0; // rank of the complexification, must equal dim b + dim t
    std::vector<std::string> basis_labels;
    std::vector<Mat> ad; // ad(e_i), dim x dim, real rational
    Mat theta;           // Cartan involution on the basis coordinates
    Mat B;               // invariant symmetric form, theta-invariant

    Mat p, k;            // eigenspaces of theta (+1 would-be-noncompact is p... theta=-1 on p)
    Mat b, t;            // split part / compact part of the fundamental Cartan
    Mat m, p_m, k_m;     // B-orthocomplement of b inside z(b), and its theta split
    Mat n, nbar;         // positive / negative ad(a0)-eigenspaces of zperp
    Mat zperp;           // B-orthocomplement of z(b) in g
    Mat a0;              // preferred split generator (sum over factors), dim x 1
    Mat a0_per_b;        // dim x delta, column i spans the i-th split line

    int delta = 0;                // dim b
    std::vector<int> ell_per_b;   // (dim n_i)/2 per split factor
    bool center_compact = true;

    // atomic factors in order (a single name for atomic models)
    std::vector<std::string> factor_names;
    std::vector<int> factor_dims;

    WeylGroupData weyl_tk;
    Mat b_gram; // delta x delta, Gram of the dual basis alpha0^(i) under B*
    Mat t_gram; // dim t square, Gram of the eps_a under B*

    int dim_p() const { return p.cols; }
    int dim_k() const { return k.cols; }
    int dim_t() const { return t.cols; }
    int ell_total() const {
        int s = 0;
        for (int e : ell_per_b) s += e;
        return s;
    }
};

// Named models: sl2c, sl2r, su2, rline and the products sl2c_cubed,
// sl2c_x_su2, rline_x_su2. Throws UnknownPreset.
GroupModel build_preset(const std::string &name);

GroupModel direct_sum(const GroupModel &x, const GroupModel &y, const std::string &name);

// ad of an arbitrary vector (dim x 1 column).
Mat ad_of(const GroupModel &g, const Mat &x);
Mat bracket(const GroupModel &g, const Mat &x, const Mat &y);

// basis^T * B * basis (exact; entries of B-restrictions are real).
Mat gram(const Mat &B, const Mat &basis);

// True iff every column of vecs lies in the column span of basis.
bool in_span(const Mat &basis, const Mat &vecs);

// Matrix of op restricted to the column span of basis, in basis coordinates.
// Throws NotStabilizing if op does not preserve the span.
Mat restrict_operator(const Mat &op, const Mat &basis);

// Casimir-type contraction -sum_ij (G^{-1})_ij rho_i rho_j for operators
// rho_i representing a basis with B-Gram matrix G.
Mat casimir_action(const std::vector<Mat> &rho, const Mat &g_gram);

struct ValidationCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool all_pass() const {
        for (const auto &c : checks)
            if (!c.pass) return false;
        return true;
    }
    std::string summary() const;
};

// Structural audit: Jacobi, theta an involutive automorphism, B invariant and
// definite on p/k, bracket relations between the stored subspaces, b maximal
// abelian in p with centralizer split z(b) = b + m, zperp = n + nbar with
// ad(a0) acting as +-1, parity dim p = delta mod 2, t maximal abelian in k.
ValidationReport validate_model(const GroupModel &g);

// Basis [b | t] of the fundamental Cartan; verifies t is maximal abelian in k
// (throws NotMaximalTorus) and that dim matches the declared rank.
Mat fundamental_cartan(const GroupModel &g);

struct SplitZb {
    Mat n, nbar;
    int ell = 0;
};

// Recompute the +-1 split of zperp under ad(a0), independent of the stored
// n/nbar. Throws NotRankOne if there is no split part and NonSemisimpleAction
// if ad(a0) fails to diagonalize over the rationals.
SplitZb split_zb(const GroupModel &g);

// Simultaneous weight decomposition of the (complexified) span of `basis`
// under ad of the fundamental Cartan. Returns (weight, eigenbasis columns in
// ambient coordinates) pairs. Throws NonSemisimpleAction.
std::vector<std::pair<Weight, Mat>> h_weight_spaces(const GroupModel &g, const Mat &basis);

// Weight multiset of zperp_C (resp. all of g_C) as (weight, multiplicity).
std::vector<std::pair<Weight, int>> zperp_weights(const GroupModel &g);
std::vector<std::pair<Weight, int>> root_space_weights(const GroupModel &g);

// |det(1 - Ad(gamma))|_{zperp}|^{1/2} for gamma = exp(a) k^{-1}; throws
// EllipticClass when the split length vanishes.
double ad_determinant_factor(const GroupModel &g, const TorusElement &gamma);

struct CompactFormData {
    Rat trace_constant; // (1/8) tr of the z(b)-Casimir acting on zperp
};

CompactFormData compact_form_data(const GroupModel &g);

} // namespace fried
