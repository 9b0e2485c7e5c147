#pragma once

#include "fried/representations.hpp"

namespace fried {

// Clifford module for a definite form of sign `sigma` (+1: positive definite,
// -1: negative definite) on a space whose chosen basis has uniform |norm| nu.
// Gammas are unit-normalized: gamma_i^2 = -sigma, pairwise anticommuting, so
// c(e_i) = sqrt(nu) * gamma_i satisfies c(x)c(y)+c(y)c(x) = -2B(x,y) exactly.
struct CliffordModule {
    int dim_space = 0;
    int sigma = +1;
    Rat nu = 1;
    std::vector<Mat> gammas;
    Mat chirality; // 0x0 for odd dim_space

    int sdim() const { return gammas.empty() ? 1 : gammas[0].rows; }
    bool has_chirality() const { return chirality.rows > 0; }
};

CliffordModule build_spinor(int dim_space, int sigma, const Rat &nu);

// Basis of a subspace of the compact form u = i*p + k: real ambient vectors
// e_k, with u_k = i^{ipow_k} e_k.
struct CompactSpace {
    Mat real_basis;
    std::vector<int> ipow;
    int dim() const { return real_basis.cols; }
};

// u-perp(b) from zperp columns (each must be a theta eigenvector), and
// u(b) from b, p_m (both i-twisted) and k_m.
CompactSpace uperp_space(const GroupModel &g);
CompactSpace ub_space(const GroupModel &g);
CompactSpace p_space(const GroupModel &g); // plain p, no twist

// Gram matrix B(u_i, u_j); entries must come out real.
Mat compact_gram(const GroupModel &g, const CompactSpace &s);

// Matrix of ad(i^alpha * e_z) on the span of `target`, in u-coordinates.
// Throws NotStabilizing.
Mat compact_ad(const GroupModel &g, const Mat &e_z, int alpha, const CompactSpace &target);

// rho(i^alpha e_z) on the rep space.
Mat compact_rho(const MatrixRep &r, const Mat &e_z, int alpha);

// Spin representation of an infinitesimal isometry with matrix A on the
// Clifford-generating basis: (sigma/4) sum A_ki gamma_i gamma_k.
Mat spin_matrix(const CliffordModule &cm, const Mat &A);

// Action of a model element on the spinor space of `space`, through the spin
// representation of its adjoint matrix.
Mat k_spinor_action(const CliffordModule &cm, const GroupModel &g, const CompactSpace &space,
                    const Mat &e_a, int alpha = 0);

struct DiracData {
    MatrixRep rep;
    CliffordModule cm;
    CompactSpace space;
    std::string path; // "p" or "uperp"
    Mat dtilde;       // sum gamma_i (x) rho(u_i); D = dtilde / sqrt(nu)
    Rat nu;

    Mat d_squared() const { return GQ(Rat(1) / nu) * (dtilde * dtilde); }
};

// Assemble the Dirac operator of a metric-carrying rep along the chosen path.
// Verifies oddness (when graded) and skew-adjointness under spinor (x) rep
// metric. Throws RequiresAdmissibleMetric, BasisMismatch, NonUniformNorm.
DiracData dirac_operator(const MatrixRep &r, const std::string &path);

struct ParthasarathyResult {
    bool exact = false;
    double max_residual = 0.0;
};

// D^2 against Casimir + trace constant - subalgebra Casimir on S (x) V:
// the p-path identity uses (g, k), the uperp-path identity uses (u, u(b)).
ParthasarathyResult verify_parthasarathy(const DiracData &dd);

// h-characters of the chirality halves of S^{uperp(b)}; the chirality sign is
// normalized so the top split weight lands in S+. Throws NotRankOne.
std::pair<VirtualCharacter, VirtualCharacter> spinor_b_m_characters(const GroupModel &g);

// Reference expansion: S+- = det(n_C)^{-1/2} * (even/odd exterior powers of
// the dual of nbar), computed purely from weight data.
std::pair<VirtualCharacter, VirtualCharacter> spinor_reference_characters(const GroupModel &g);

// |supertrace of gamma on S - |det(1-Ad(gamma))|_{zperp}|^{1/2}| at a
// nonelliptic torus element. Throws EllipticClass.
double supertrace_determinant_check(const GroupModel &g, const TorusElement &gamma);

} // namespace fried
