#include "fried/characters.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fried {

std::string Weight::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << rat_to_string(b[i]);
    os << ";";
    for (size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << rat_to_string(t[i]);
    os << ")";
    return os.str();
}

std::string VirtualCharacter::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &[w, m] : terms) {
        if (!first) os << " ";
        if (m >= 0 && !first) os << "+";
        os << m << "*" << w.str();
        first = false;
    }
    return os.str();
}

Weight apply_weyl(const Mat &w, const Weight &wt) {
    int db = static_cast<int>(wt.b.size()), dt = static_cast<int>(wt.t.size());
    if (w.rows != db + dt || w.cols != db + dt) throw DimensionMismatch("weyl element size");
    Mat v(db + dt, 1);
    for (int i = 0; i < db; ++i) v(i, 0) = GQ(wt.b[i]);
    for (int i = 0; i < dt; ++i) v(db + i, 0) = GQ(wt.t[i]);
    Mat r = w * v;
    Weight out{std::vector<Rat>(db), std::vector<Rat>(dt)};
    for (int i = 0; i < db + dt; ++i) {
        if (!r(i, 0).is_real()) throw InvariantViolation("weyl element must be real");
        (i < db ? out.b[i] : out.t[i - db]) = r(i, 0).re;
    }
    return out;
}

std::vector<Mat> weyl_elements(const WeylGroupData &wg) {
    int n = wg.dim_b + wg.dim_t;
    std::vector<Mat> elems = {Mat::identity(n)};
    // closure by repeated right multiplication; groups here have <= 16 elements
    for (size_t i = 0; i < elems.size(); ++i) {
        for (const auto &g : wg.generators) {
            Mat prod = elems[i] * g;
            if (std::find(elems.begin(), elems.end(), prod) == elems.end()) {
                elems.push_back(prod);
                if (elems.size() > 1024) throw InvariantViolation("weyl closure did not terminate");
            }
        }
    }
    return elems;
}

std::vector<Weight> weyl_orbit(const WeylGroupData &wg, const Weight &wt) {
    std::vector<Weight> orbit;
    for (const auto &w : weyl_elements(wg)) {
        Weight im = apply_weyl(w, wt);
        if (std::find(orbit.begin(), orbit.end(), im) == orbit.end()) orbit.push_back(im);
    }
    std::sort(orbit.begin(), orbit.end());
    return orbit;
}

bool is_w_invariant(const WeylGroupData &wg, const VirtualCharacter &chi) {
    for (const auto &w : weyl_elements(wg))
        for (const auto &[wt, m] : chi.terms)
            if (chi.mult(apply_weyl(w, wt)) != m) return false;
    return true;
}

VirtualCharacter lift_to_rk(const WeylGroupData &wg, const VirtualCharacter &chi) {
    for (const auto &[w, m] : chi.terms) {
        if (m < 0) throw NotLiftable("negative multiplicity at " + w.str());
        for (const auto &v : w.t)
            if (denominator(v) != 1)
                throw NotLiftable("non-integral torus weight " + w.str());
    }
    if (!is_w_invariant(wg, chi)) throw NotLiftable("character is not Weyl-invariant");
    return chi;
}

std::vector<VirtualCharacter> exterior_powers(const VirtualCharacter &chi) {
    if (chi.has_negative_mult())
        throw NegativeMultiplicity("exterior power of a virtual character");
    long long n = chi.virtual_dimension();
    std::vector<VirtualCharacter> e(static_cast<size_t>(n) + 1,
                                    VirtualCharacter(chi.dim_b, chi.dim_t));
    e[0] = VirtualCharacter::one(chi.dim_b, chi.dim_t);
    // elementary symmetric polynomials in the weight-lines, one line at a time
    size_t seen = 0;
    for (const auto &[w, m] : chi.terms) {
        for (long long rep = 0; rep < m; ++rep) {
            ++seen;
            for (size_t k = std::min(seen, static_cast<size_t>(n)); k >= 1; --k)
                e[k] = e[k] + VirtualCharacter::monomial(w) * e[k - 1];
        }
    }
    return e;
}

VirtualCharacter exterior_power_character(const VirtualCharacter &chi, int k) {
    if (k < 0) throw DimensionMismatch("negative exterior power");
    auto e = exterior_powers(chi);
    if (static_cast<size_t>(k) >= e.size()) return VirtualCharacter(chi.dim_b, chi.dim_t);
    return e[static_cast<size_t>(k)];
}

std::complex<double> evaluate_character(const VirtualCharacter &chi, const TorusElement &g) {
    std::complex<double> acc = 0.0;
    for (const auto &[w, m] : chi.terms) {
        if (w.t.size() != g.t_angles.size()) throw DimensionMismatch("torus angle count");
        double radial = 0.0, phase = 0.0;
        for (const auto &bi : w.b) radial += to_double(bi);
        radial *= g.a_part;
        for (size_t i = 0; i < w.t.size(); ++i) phase += to_double(w.t[i]) * g.t_angles[i];
        acc += static_cast<double>(m) * std::exp(radial) *
               std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return acc;
}

Rat weight_dot(const Weight &x, const Weight &y, const Mat &b_gram, const Mat &t_gram) {
    int db = static_cast<int>(x.b.size()), dt = static_cast<int>(x.t.size());
    if (static_cast<int>(y.b.size()) != db || static_cast<int>(y.t.size()) != dt ||
        b_gram.rows != db || t_gram.rows != dt)
        throw DimensionMismatch("weight_dot");
    Rat s = 0;
    for (int i = 0; i < db; ++i)
        for (int j = 0; j < db; ++j) {
            if (!b_gram(i, j).is_real()) throw InvariantViolation("b_gram must be real");
            s += x.b[i] * b_gram(i, j).re * y.b[j];
        }
    for (int i = 0; i < dt; ++i)
        for (int j = 0; j < dt; ++j) {
            if (!t_gram(i, j).is_real()) throw InvariantViolation("t_gram must be real");
            s += x.t[i] * t_gram(i, j).re * y.t[j];
        }
    return s;
}

Rat weight_norm2(const Weight &w, const Mat &b_gram, const Mat &t_gram) {
    return weight_dot(w, w, b_gram, t_gram);
}

} // namespace fried
