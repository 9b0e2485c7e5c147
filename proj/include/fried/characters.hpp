#pragma once

#include "fried/errors.hpp"
#include "fried/matrix.hpp"

#include <complex>
#include <map>
#include <vector>

namespace fried {

// Weight of the fundamental Cartan h = b + t, stored in split coordinates:
// b-part in units of the duals of the per-factor split generators a0^(i),
// t-part in the basis eps_a with eps_a(T_b) = i * delta_ab (so an integer
// t-part n means the torus generator acts with eigenvalue i*n).
struct Weight {
    std::vector<Rat> b, t;

    Weight() = default;
    Weight(std::vector<Rat> b_, std::vector<Rat> t_) : b(std::move(b_)), t(std::move(t_)) {}

    friend bool operator==(const Weight &x, const Weight &y) { return x.b == y.b && x.t == y.t; }
    friend bool operator<(const Weight &x, const Weight &y) {
        if (x.b != y.b) return x.b < y.b;
        return x.t < y.t;
    }
    friend Weight operator+(const Weight &x, const Weight &y) {
        if (x.b.size() != y.b.size() || x.t.size() != y.t.size())
            throw DimensionMismatch("weight addition");
        Weight w = x;
        for (size_t i = 0; i < w.b.size(); ++i) w.b[i] += y.b[i];
        for (size_t i = 0; i < w.t.size(); ++i) w.t[i] += y.t[i];
        return w;
    }
    Weight operator-() const {
        Weight w = *this;
        for (auto &v : w.b) v = -v;
        for (auto &v : w.t) v = -v;
        return w;
    }
    bool is_zero() const {
        for (const auto &v : b)
            if (v != 0) return false;
        for (const auto &v : t)
            if (v != 0) return false;
        return true;
    }
    std::string str() const;
};

// Finite integer combination of h-weights; the common currency for all the
// character identities (restrictions, graded pieces, alternating sums).
struct VirtualCharacter {
    int dim_b = 0, dim_t = 0;
    std::map<Weight, long long> terms;

    VirtualCharacter() = default;
    VirtualCharacter(int db, int dt) : dim_b(db), dim_t(dt) {}

    static VirtualCharacter one(int db, int dt) {
        VirtualCharacter c(db, dt);
        c.terms[Weight(std::vector<Rat>(db), std::vector<Rat>(dt))] = 1;
        return c;
    }
    static VirtualCharacter monomial(Weight w, long long m = 1) {
        VirtualCharacter c(static_cast<int>(w.b.size()), static_cast<int>(w.t.size()));
        if (m != 0) c.terms[std::move(w)] = m;
        return c;
    }

    void add_term(const Weight &w, long long m) {
        if (m == 0) return;
        auto it = terms.find(w);
        if (it == terms.end()) {
            terms.emplace(w, m);
        } else {
            it->second += m;
            if (it->second == 0) terms.erase(it);
        }
    }
    long long mult(const Weight &w) const {
        auto it = terms.find(w);
        return it == terms.end() ? 0 : it->second;
    }
    long long virtual_dimension() const {
        long long d = 0;
        for (const auto &[w, m] : terms) d += m;
        return d;
    }
    bool is_zero() const { return terms.empty(); }
    bool has_negative_mult() const {
        for (const auto &[w, m] : terms)
            if (m < 0) return true;
        return false;
    }

    friend VirtualCharacter operator+(const VirtualCharacter &x, const VirtualCharacter &y) {
        VirtualCharacter c = x;
        for (const auto &[w, m] : y.terms) c.add_term(w, m);
        return c;
    }
    friend VirtualCharacter operator-(const VirtualCharacter &x, const VirtualCharacter &y) {
        VirtualCharacter c = x;
        for (const auto &[w, m] : y.terms) c.add_term(w, -m);
        return c;
    }
    friend VirtualCharacter operator*(long long s, const VirtualCharacter &x) {
        VirtualCharacter c(x.dim_b, x.dim_t);
        if (s != 0)
            for (const auto &[w, m] : x.terms) c.terms[w] = s * m;
        return c;
    }
    // Tensor product = convolution of weight supports.
    friend VirtualCharacter operator*(const VirtualCharacter &x, const VirtualCharacter &y) {
        VirtualCharacter c(x.dim_b, x.dim_t);
        for (const auto &[w1, m1] : x.terms)
            for (const auto &[w2, m2] : y.terms) c.add_term(w1 + w2, m1 * m2);
        return c;
    }
    friend bool operator==(const VirtualCharacter &x, const VirtualCharacter &y) {
        return x.terms == y.terms;
    }

    VirtualCharacter dual() const {
        VirtualCharacter c(dim_b, dim_t);
        for (const auto &[w, m] : terms) c.terms[-w] = m;
        return c;
    }
    std::string str() const;
};

// Point exp(a) k^{-1} of the split-torus x compact-torus family the characters
// are evaluated on: a = a_part * a0, k^{-1} has angles t_angles on T.
struct TorusElement {
    double a_part = 0.0;
    std::vector<double> t_angles;
};

// W(T:K) acting on the stacked (b-part | t-part) coordinates.
struct WeylGroupData {
    int dim_b = 0, dim_t = 0;
    std::vector<Mat> generators; // (dim_b+dim_t) square, rational entries
};

Weight apply_weyl(const Mat &w, const Weight &wt);

// Full element list generated from the generators (small groups only).
std::vector<Mat> weyl_elements(const WeylGroupData &wg);

std::vector<Weight> weyl_orbit(const WeylGroupData &wg, const Weight &wt);

bool is_w_invariant(const WeylGroupData &wg, const VirtualCharacter &chi);

// Certify that a t-character descends to a genuine representation of the
// compact group: nonnegative multiplicities, integral t-parts, W-invariance.
// Returns chi unchanged on success, throws NotLiftable with the failing reason.
VirtualCharacter lift_to_rk(const WeylGroupData &wg, const VirtualCharacter &chi);

// Character of Lambda^k of an actual (nonvirtual) character.
VirtualCharacter exterior_power_character(const VirtualCharacter &chi, int k);

// All exterior powers Lambda^0..Lambda^dim at once (same cost as the last one).
std::vector<VirtualCharacter> exterior_powers(const VirtualCharacter &chi);

std::complex<double> evaluate_character(const VirtualCharacter &chi, const TorusElement &g);

// B*-norm-squared of a weight given the Gram matrices of the dual bases.
Rat weight_norm2(const Weight &w, const Mat &b_gram, const Mat &t_gram);

Rat weight_dot(const Weight &x, const Weight &y, const Mat &b_gram, const Mat &t_gram);

} // namespace fried
