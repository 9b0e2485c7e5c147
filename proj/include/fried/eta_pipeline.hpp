#pragma once

#include "fried/clifford_dirac.hpp"

namespace fried {

// One split-weight slice of the graded kernel family: a pair of genuine
// compact-subgroup characters (chirality halves) together with the matrices of
// the compact form of m on each half, so the m-Casimir can be evaluated rather
// than inferred.
struct EtaBlock {
    Rat beta;
    VirtualCharacter chi_plus, chi_minus; // b-part identically zero
    Mat basis_plus, basis_minus;          // ambient-coordinate column bases
    std::vector<Mat> um_plus, um_minus;   // compact m basis acting on each half
    Rat casimir_um;                       // scalar of the m-Casimir on the slice
    Rat sigma;                            // shift scalar attached to the slice
};

struct EtaFamily {
    std::string source_label;
    std::string branch; // "dirac" | "direct"
    MatrixRep rep;      // theta-invariant, metric installed
    Mat um_gram;        // compact Gram of the m basis (i*p_m then k_m)
    Rat casimir_rep;    // scalar Casimir of the source rep
    Rat trace_constant; // (1/8) tr of the z(b)-Casimir on zperp (0 on direct)
    std::vector<EtaBlock> blocks; // sorted by beta

    const EtaBlock *find(const Rat &beta) const;
    // sum over beta of e^{beta} times (chi_plus - chi_minus)
    VirtualCharacter graded_character() const;
};

// Build the family of a theta-invariant rep with scalar Casimir.
//   mode "dirac": exact kernel of the squared Dirac operator on S (x) E,
//     graded by chirality, split weight and torus weights (needs delta = 1
//     and a nonzero split part).
//   mode "direct": slices of the split-weight decomposition of E itself
//     (needs zperp = 0, so the group splits off its noncompact center).
// Throws RequiresThetaInvariant, NotScalarCasimir, WrongBranch; the block
// invariants (beta <-> -beta symmetry, scalar m-Casimir equal on both halves,
// liftability of each half) are verified before returning.
EtaFamily compute_eta_family(const MatrixRep &r, const std::string &mode);

// Exact check of the m-Casimir scalar on every slice against
//   |beta|^2 + C(rep) + trace_constant   (dirac branch)
//   |beta|^2 + C(rep)                    (direct branch)
// Returns the worst absolute residual (0 in exact arithmetic).
double verify_casimir_scalar_eta(const EtaFamily &fam);

struct KernelCharacterReport {
    bool exact = false;        // virtual-character identity as weight multisets
    double max_residual = 0.0; // pointwise residual over the samples
};

// Graded kernel vs (S+ - S-) (x) rep: exact equality of virtual characters,
// then pointwise at each nonelliptic sample against the determinant factor
// times the rep trace. Throws EllipticClass on a sample with zero split part.
KernelCharacterReport verify_graded_kernel_identity(const EtaFamily &fam,
                                                    const std::vector<TorusElement> &samples);

struct EtaHatEntry {
    Rat beta;
    VirtualCharacter hat_plus, hat_minus;
};

// Per-slice characters certified to lift to the maximal compact subgroup:
// the graded tensor of the exterior algebra of p_m^* with the slice halves.
struct EtaHat {
    std::vector<EtaHatEntry> entries;
};

// Throws NotLiftable when a half fails the lift certificate (non-integral
// torus weights or a Weyl-noninvariant multiset) -- an internal-consistency
// failure for families produced by compute_eta_family.
EtaHat compute_eta_hat(const EtaFamily &fam);

struct LiftSumReport {
    bool ok = false;
    VirtualCharacter diff; // weight-level difference when ok is false
};

// Sum over beta of the lifted slices against
//   sum_{i=1..dim p} (-1)^{i-1} i Lambda^i(p^*) (x) rep|_K,
// compared on the compact torus.
LiftSumReport verify_lift_sum_identity(const EtaHat &eh, const MatrixRep &r);

// Shift scalar of the slice at beta; asserts sigma + |beta|^2 + C(rep) = 0.
Rat sigma_eta(const EtaFamily &fam, const Rat &beta);

struct KostantReport {
    Weight rho_u, rho_ub; // half-sums of positive roots (all / b-trivial ones)
    Rat norm_rho_u, norm_rho_ub;
    Rat adjoint_trace;       // trace of the compact-form Casimir on itself
    Rat trace_constant;      // (1/8) tr of the z(b)-Casimir on zperp
    bool strange_formula_ok; // |rho_u|^2 == -(1/24) adjoint_trace
    bool trace_constant_ok;  // trace_constant == |rho_ub|^2 - |rho_u|^2
    bool half_sum_shift_ok;  // rho_u - rho_ub is the split half-count weight
    bool all_ok() const { return strange_formula_ok && trace_constant_ok && half_sum_shift_ok; }
};

// Exact half-sum identities for the fixed lexicographic positive system
// (split part first); verifies that the non-imaginary positive roots are
// stable under conjugation.
KostantReport kostant_checks(const GroupModel &g);

// |B*(lambda + rho_u, lambda + rho_u) - B*(rho_u, rho_u) + C(rep)| for an
// irreducible rep with highest weight lambda; 0 exactly. The Casimir scalar
// enters with a plus sign because the contraction convention used throughout
// is the negative of the weight-theoretic one. Throws NotIrreducible.
Rat hc_casimir_crosscheck(const MatrixRep &r);

} // namespace fried
