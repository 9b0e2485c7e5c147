#pragma once

#include "fried/eta_pipeline.hpp"

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace fried {

// Data of one conjugacy class meeting the split-times-compact torus: geodesic
// length, holonomy, orbifold Euler factor and multiplicities. Lengths are
// measured in the unit where the split generator a0 has norm 1, so ell must
// equal the holonomy's a_part.
struct ConjugacyClassRecord {
    std::string id;
    double ell = 0.0;
    TorusElement holonomy;
    Rat chi_orb = 0;
    long long m_mult = 1;
    long long n_mult = 1;
};

// Throws InvariantViolation: needs ell > 0, a_part > 0, ell consistent with
// a_part, multiplicities >= 1, and (when dim_t >= 0 is given) matching angle
// count. Pass dim_t = -1 to skip the angle-count check.
void validate_record(const ConjugacyClassRecord &rec, int dim_t = -1);

// Coefficients of a log-zeta series sum_j c_j e^{-sigma * length_j}; terms are
// kept sorted with lengths merged at an absolute tolerance.
struct LogZetaSeries {
    std::vector<std::pair<double, std::complex<double>>> terms;
    double merge_tol = 1e-9;

    void add(double length, std::complex<double> coeff);
    std::complex<double> evaluate(std::complex<double> sigma) const;
    double max_coeff() const;
};

// One term per class: (chi_orb / m_mult) * Tr[rep](holonomy) at the length.
LogZetaSeries ruelle_log_series(const std::vector<ConjugacyClassRecord> &classes,
                                const VirtualCharacter &rep_char);

// One term per class: -(chi_orb / m_mult) * supertrace of the slice at the
// holonomy, divided by the determinant factor. Throws EllipticClass.
LogZetaSeries selberg_log_series(const std::vector<ConjugacyClassRecord> &classes,
                                 const EtaBlock &eta, const GroupModel &g);

// Per-class residual of the log-series factorization of the Ruelle series
// into shifted Selberg series over the family slices; sigma-free. Returns the
// worst absolute residual.
double factorization_check(const std::vector<ConjugacyClassRecord> &classes, const EtaFamily &fam,
                           const VirtualCharacter &rep_char);

// Per-class |coeff(theta-twisted char) - conj(coeff(char))|, worst case.
double conjugation_symmetry_check(const std::vector<ConjugacyClassRecord> &classes,
                                  const VirtualCharacter &rep_char,
                                  const VirtualCharacter &rep_theta_char);

// Finite truncated stand-in for a graded spectrum: distinct eigenvalues with
// plus/minus multiplicities. No zeta regularization is performed; only
// orders of vanishing and kernel bookkeeping are meaningful downstream.
struct SpectrumRow {
    double lambda = 0.0;
    long long mult_plus = 0, mult_minus = 0;
};

struct SpectrumTable {
    std::string label;
    std::vector<SpectrumRow> rows;
};

// Net multiplicity (plus minus minus) of rows with lambda + sigma = 0.
long long graded_order(const SpectrumTable &t, std::complex<double> sigma);

// prod (lambda + sigma)^(mult_plus - mult_minus); value 0 at a zero; throws
// EvaluationAtPole when the net order at sigma is negative (query the order
// first via graded_order).
std::complex<double> graded_determinant(const SpectrumTable &t, std::complex<double> sigma);

struct ZeroPrediction {
    std::complex<double> location;
    long long order = 0;
};

// Zero/pole locations +-i sqrt(lambda + shift) with the net multiplicity as
// order; a row at lambda = -shift contributes a single location 0 with
// doubled order.
std::vector<ZeroPrediction> selberg_zero_predictions(const SpectrumTable &t, const Rat &shift);

// Net kernel multiplicity of the table at lambda = c_u_rho (0 when absent).
long long r_eta_beta(const SpectrumTable &t, const Rat &c_u_rho);

struct LeadingConstants {
    Rat c_rho = 1;
    long long r_rho = 0;
};

// Over slices (beta, table): c_rho = prod over beta != 0 of (-4 beta^2)^(-r),
// r_rho = -2 sum of r, with r the net kernel multiplicity at c_u_rho.
LeadingConstants leading_constants(const std::vector<std::pair<Rat, SpectrumTable>> &tables,
                                   const Rat &c_u_rho);

// prod over degrees i of det(sigma + table_i)^((-1)^i i) on truncated tables.
std::complex<double> torsion_series(const std::vector<SpectrumTable> &per_degree,
                                    std::complex<double> sigma);

struct TorsionLeading {
    double t_squared = 1.0;  // nonzero factor at sigma = 0 (truncated surrogate)
    long long exponent = 0;  // power of sigma factored out (weighted kernel count)
    long long euler = 0;     // alternating sum of kernel dims
    long long euler_prime = 0; // degree-weighted alternating sum (== exponent)
};

TorsionLeading torsion_leading_term(const std::vector<SpectrumTable> &per_degree);

struct TorsionZetaReport {
    bool labels_ok = false;        // per-degree tables labeled degree-0..degree-(dim p)
    double skeleton_residual = 0.0; // sigma-free factorization residual
    double spectral_value = 0.0;    // truncated torsion factor at sigma = 0
    long long spectral_exponent = 0;
    bool ok(double tol = 1e-10) const { return labels_ok && skeleton_residual <= tol; }
};

// Consistency skeleton between the geodesic side (factorization residual of
// the family) and a truncated spectral side; reports the spectral value
// separately and makes no claim of numerical equality between the two sides.
TorsionZetaReport torsion_zeta_consistency(const std::vector<ConjugacyClassRecord> &classes,
                                           const EtaFamily &fam,
                                           const std::vector<SpectrumTable> &per_degree);

} // namespace fried
