#pragma once

#include "fried/group_model.hpp"

#include <memory>
#include <string>
#include <vector>

namespace fried {

// Finite-dimensional matrix representation of a model, one matrix per model
// basis element. The metric, when installed, is a Hermitian Gram matrix under
// which p acts self-adjointly and k skew-adjointly.
struct MatrixRep {
    std::shared_ptr<const GroupModel> model;
    std::string label;
    int dim = 0;
    std::vector<Mat> rho;
    Mat metric; // 0x0 until installed

    bool has_metric() const { return metric.rows == dim && dim > 0; }
    Mat rho_of(const Mat &x) const; // rho of an arbitrary g-vector (dim(g) x 1)
};

MatrixRep trivial_rep(std::shared_ptr<const GroupModel> model);

// Sym^p(std) tensor Sym^q(conjugate std) on the sl2c preset.
MatrixRep build_irrep_sl2c(std::shared_ptr<const GroupModel> model, int p, int q);

// Sym^n of the defining rep on the su2 preset.
MatrixRep build_irrep_su2(std::shared_ptr<const GroupModel> model, int n);

// One-dimensional rep X -> beta on the rline preset.
MatrixRep build_irrep_rline(std::shared_ptr<const GroupModel> model, const Rat &beta);

// Same model: V tensor W and V + W.
MatrixRep tensor_rep(const MatrixRep &a, const MatrixRep &b);
MatrixRep direct_sum_rep(const MatrixRep &a, const MatrixRep &b);

// Product model from reps of its two halves (outer tensor product).
MatrixRep external_tensor(std::shared_ptr<const GroupModel> product, const MatrixRep &a,
                          const MatrixRep &b);

// Rep from a spec string: one chunk per atomic factor, ';'-separated.
// sl2c chunk "p,q"; su2 chunk "n"; rline chunk a rational; "0"-chunks allowed.
// Optional "+theta" suffix replaces the rep by rep + theta_twist(rep).
MatrixRep build_rep_from_spec(std::shared_ptr<const GroupModel> model, const std::string &spec);

// Verify [rho(x),rho(y)] = rho([x,y]) on all basis pairs.
bool is_homomorphism(const MatrixRep &r);

Mat casimir_matrix(const MatrixRep &r);

// Scalar value of the Casimir; recomputed independently through the compact
// form (i*p + k basis) and cross-verified. Throws NotScalar.
Rat casimir_scalar(const MatrixRep &r);

MatrixRep theta_twist(const MatrixRep &r);

// Exact admissibility check for an installed metric.
bool metric_is_admissible(const MatrixRep &r);

// Solve for a positive-definite Hermitian Gram matrix making p self-adjoint
// and k skew-adjoint; installs it (unit trace). Throws Infeasible.
Mat find_admissible_metric(MatrixRep &r);

// Weight multiset of the fundamental Cartan acting through rho.
VirtualCharacter full_h_character(const MatrixRep &r);

// True iff r and theta_twist(r) have equal full h-weight multisets.
bool is_theta_invariant(const MatrixRep &r);

struct BWeightBlock {
    Rat beta;                  // rho(a0) eigenvalue, in alpha0 units
    Mat basis;                 // columns inside V
    std::vector<Mat> m_action; // restrictions of rho over the m basis columns
};

// Exact eigenspace decomposition of rho(a0) for delta = 1 models.
// Requires an installed metric; blocks come out metric-orthogonal.
std::vector<BWeightBlock> decompose_by_b(const MatrixRep &r);

} // namespace fried
