#include "fried/zeta_engine.hpp"

#include <algorithm>
#include <cmath>

namespace fried {

namespace {

constexpr double kLambdaTol = 1e-12;

double rat_to_double(const Rat &r) { return GQ(r).to_complex().real(); }

std::complex<double> class_coeff(const ConjugacyClassRecord &rec, const VirtualCharacter &chi) {
    std::complex<double> weight(rat_to_double(rec.chi_orb) / static_cast<double>(rec.m_mult), 0.0);
    return weight * evaluate_character(chi, rec.holonomy);
}

} // namespace

void validate_record(const ConjugacyClassRecord &rec, int dim_t) {
    if (!(rec.ell > 0)) throw InvariantViolation("record '" + rec.id + "': ell must be positive");
    if (!(rec.holonomy.a_part > 0))
        throw InvariantViolation("record '" + rec.id + "': holonomy must be nonelliptic");
    if (std::abs(rec.ell - rec.holonomy.a_part) > 1e-9)
        throw InvariantViolation("record '" + rec.id + "': ell inconsistent with the split part");
    if (rec.m_mult < 1 || rec.n_mult < 1)
        throw InvariantViolation("record '" + rec.id + "': multiplicities must be >= 1");
    if (dim_t >= 0 && static_cast<int>(rec.holonomy.t_angles.size()) != dim_t)
        throw InvariantViolation("record '" + rec.id + "': wrong number of holonomy angles");
}

void LogZetaSeries::add(double length, std::complex<double> coeff) {
    auto it = std::lower_bound(terms.begin(), terms.end(), length - merge_tol,
                               [](const auto &t, double v) { return t.first < v; });
    if (it != terms.end() && std::abs(it->first - length) <= merge_tol) {
        it->second += coeff;
        return;
    }
    terms.insert(it, {length, coeff});
}

std::complex<double> LogZetaSeries::evaluate(std::complex<double> sigma) const {
    std::complex<double> out = 0.0;
    for (const auto &[len, c] : terms) out += c * std::exp(-sigma * len);
    return out;
}

double LogZetaSeries::max_coeff() const {
    double m = 0.0;
    for (const auto &[len, c] : terms) m = std::max(m, std::abs(c));
    return m;
}

LogZetaSeries ruelle_log_series(const std::vector<ConjugacyClassRecord> &classes,
                                const VirtualCharacter &rep_char) {
    LogZetaSeries out;
    for (const auto &rec : classes) {
        validate_record(rec, rep_char.dim_t);
        out.add(rec.ell, class_coeff(rec, rep_char));
    }
    return out;
}

LogZetaSeries selberg_log_series(const std::vector<ConjugacyClassRecord> &classes,
                                 const EtaBlock &eta, const GroupModel &g) {
    LogZetaSeries out;
    VirtualCharacter supertrace = eta.chi_plus - eta.chi_minus;
    for (const auto &rec : classes) {
        validate_record(rec, g.dim_t());
        double det = ad_determinant_factor(g, rec.holonomy); // throws EllipticClass
        out.add(rec.ell, -class_coeff(rec, supertrace) / det);
    }
    return out;
}

double factorization_check(const std::vector<ConjugacyClassRecord> &classes, const EtaFamily &fam,
                           const VirtualCharacter &rep_char) {
    const GroupModel &g = *fam.rep.model;
    double worst = 0.0;
    for (const auto &rec : classes) {
        validate_record(rec, g.dim_t());
        std::complex<double> total = class_coeff(rec, rep_char);
        double det = ad_determinant_factor(g, rec.holonomy);
        for (const auto &blk : fam.blocks) {
            // shift sigma -> sigma - beta scales the coefficient at this
            // length by e^{beta * ell} (lengths are in split-generator units)
            double shift = std::exp(rat_to_double(blk.beta) * rec.ell);
            std::complex<double> c =
                -class_coeff(rec, blk.chi_plus - blk.chi_minus) / det;
            total += shift * c;
        }
        worst = std::max(worst, std::abs(total));
    }
    return worst;
}

double conjugation_symmetry_check(const std::vector<ConjugacyClassRecord> &classes,
                                  const VirtualCharacter &rep_char,
                                  const VirtualCharacter &rep_theta_char) {
    double worst = 0.0;
    for (const auto &rec : classes) {
        validate_record(rec, rep_char.dim_t);
        std::complex<double> a = class_coeff(rec, rep_char);
        std::complex<double> b = class_coeff(rec, rep_theta_char);
        worst = std::max(worst, std::abs(b - std::conj(a)));
    }
    return worst;
}

long long graded_order(const SpectrumTable &t, std::complex<double> sigma) {
    long long order = 0;
    for (const auto &row : t.rows)
        if (std::abs(std::complex<double>(row.lambda, 0.0) + sigma) <= kLambdaTol)
            order += row.mult_plus - row.mult_minus;
    return order;
}

std::complex<double> graded_determinant(const SpectrumTable &t, std::complex<double> sigma) {
    long long order = graded_order(t, sigma);
    if (order < 0)
        throw EvaluationAtPole("graded determinant of '" + t.label + "' has a pole of order " +
                               std::to_string(-order) + " here");
    if (order > 0) return 0.0;
    std::complex<double> out = 1.0;
    for (const auto &row : t.rows) {
        std::complex<double> base = std::complex<double>(row.lambda, 0.0) + sigma;
        if (std::abs(base) <= kLambdaTol) continue;
        out *= std::pow(base, static_cast<double>(row.mult_plus - row.mult_minus));
    }
    return out;
}

std::vector<ZeroPrediction> selberg_zero_predictions(const SpectrumTable &t, const Rat &shift) {
    std::vector<ZeroPrediction> out;
    double s = rat_to_double(shift);
    for (const auto &row : t.rows) {
        long long m = row.mult_plus - row.mult_minus;
        if (m == 0) continue;
        double arg = row.lambda + s;
        if (std::abs(arg) <= kLambdaTol) {
            out.push_back({std::complex<double>(0.0, 0.0), 2 * m});
        } else {
            std::complex<double> root =
                std::complex<double>(0.0, 1.0) * std::sqrt(std::complex<double>(arg, 0.0));
            out.push_back({root, m});
            out.push_back({-root, m});
        }
    }
    return out;
}

long long r_eta_beta(const SpectrumTable &t, const Rat &c_u_rho) {
    return graded_order(t, -rat_to_double(c_u_rho));
}

LeadingConstants leading_constants(const std::vector<std::pair<Rat, SpectrumTable>> &tables,
                                   const Rat &c_u_rho) {
    LeadingConstants out;
    for (const auto &[beta, table] : tables) {
        long long r = r_eta_beta(table, c_u_rho);
        out.r_rho -= 2 * r;
        if (beta == 0 || r == 0) continue;
        Rat base = Rat(-4) * beta * beta;
        Rat factor = 1;
        for (long long j = 0; j < (r < 0 ? -r : r); ++j) factor *= base;
        if (r > 0)
            out.c_rho /= factor;
        else
            out.c_rho *= factor;
    }
    return out;
}

std::complex<double> torsion_series(const std::vector<SpectrumTable> &per_degree,
                                    std::complex<double> sigma) {
    std::complex<double> out = 1.0;
    for (size_t i = 0; i < per_degree.size(); ++i) {
        long long e = static_cast<long long>(i) * (i % 2 == 0 ? 1 : -1);
        if (e == 0) continue;
        std::complex<double> det = graded_determinant(per_degree[i], sigma);
        if (std::abs(det) <= kLambdaTol && e < 0)
            throw EvaluationAtPole("torsion series has a pole at this sigma");
        out *= std::pow(det, static_cast<double>(e));
    }
    return out;
}

TorsionLeading torsion_leading_term(const std::vector<SpectrumTable> &per_degree) {
    TorsionLeading out;
    double value = 1.0;
    for (size_t i = 0; i < per_degree.size(); ++i) {
        long long sign = i % 2 == 0 ? 1 : -1;
        long long kernel = 0;
        double reduced = 1.0; // nonzero eigenvalue product with net multiplicity
        for (const auto &row : per_degree[i].rows) {
            long long m = row.mult_plus - row.mult_minus;
            if (std::abs(row.lambda) <= kLambdaTol)
                kernel += m;
            else
                reduced *= std::pow(row.lambda, static_cast<double>(m));
        }
        out.euler += sign * kernel;
        out.euler_prime += sign * static_cast<long long>(i) * kernel;
        if (i > 0) value *= std::pow(reduced, static_cast<double>(sign * static_cast<long long>(i)));
    }
    out.exponent = out.euler_prime;
    out.t_squared = value;
    return out;
}

TorsionZetaReport torsion_zeta_consistency(const std::vector<ConjugacyClassRecord> &classes,
                                           const EtaFamily &fam,
                                           const std::vector<SpectrumTable> &per_degree) {
    TorsionZetaReport rep;
    const GroupModel &g = *fam.rep.model;
    rep.labels_ok = static_cast<int>(per_degree.size()) == g.dim_p() + 1;
    for (size_t i = 0; rep.labels_ok && i < per_degree.size(); ++i)
        rep.labels_ok = per_degree[i].label == "degree-" + std::to_string(i);
    rep.skeleton_residual = factorization_check(classes, fam, full_h_character(fam.rep));
    TorsionLeading lead = torsion_leading_term(per_degree);
    rep.spectral_value = lead.t_squared;
    rep.spectral_exponent = lead.exponent;
    return rep;
}

} // namespace fried
