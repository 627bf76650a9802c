#ifndef QWEYL_ALGEBRA_HPP
#define QWEYL_ALGEBRA_HPP

#include <map>
#include <vector>

#include "qweyl/laurent.hpp"

namespace qweyl {

// Parameters of the generalized q-Weyl algebra: Z u Z^-1 = q^2 u,
// Z v Z^-1 = q^-2 v, u v = P(q^-1 Z), v u = P(q Z).
struct AlgebraParams {
    LaurentPoly P;
    cplx q;
    int n; // nonzero roots of P with multiplicity

    AlgebraParams(LaurentPoly P_, cplx q_);
};

// Element in normal form: component i >= 0 is u^i R_i(Z), component i < 0 is
// v^{-i} R_i(Z). Zero components pruned.
class AlgebraElement {
public:
    AlgebraElement() = default;

    static AlgebraElement zero() { return {}; }
    static AlgebraElement one() { return term(0, LaurentPoly::constant(1.0)); }
    static AlgebraElement u(int power = 1) { return term(power, LaurentPoly::constant(1.0)); }
    static AlgebraElement v(int power = 1) { return term(-power, LaurentPoly::constant(1.0)); }
    static AlgebraElement z_power(int j) { return term(0, LaurentPoly::monomial(j)); }
    static AlgebraElement from_poly(const LaurentPoly& R) { return term(0, R); }
    static AlgebraElement term(int i, const LaurentPoly& R);

    bool is_zero() const { return comps_.empty(); }
    const std::map<int, LaurentPoly>& components() const { return comps_; }
    LaurentPoly component(int i) const;
    void add_term(int i, const LaurentPoly& R);

    AlgebraElement operator-() const;
    AlgebraElement& operator+=(const AlgebraElement& o);
    AlgebraElement& operator-=(const AlgebraElement& o);
    AlgebraElement& operator*=(cplx s);
    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator*(AlgebraElement a, cplx s) { return a *= s; }
    friend AlgebraElement operator*(cplx s, AlgebraElement a) { return a *= s; }

    double max_abs_coeff() const;

private:
    std::map<int, LaurentPoly> comps_;
};

double coeff_distance(const AlgebraElement& a, const AlgebraElement& b);

// Normal form of a * b. Bilinear over components; a u^i / v^i block commutes
// across the Z-polynomial with R(Z) g = g R(q^{+-2} Z), then adjacent uv / vu
// pairs are contracted innermost-first via u v = P(q^-1 Z), v u = P(q Z).
AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b,
                        const AlgebraParams& params);

// g_t(u) = t u, g_t(v) = t^-1 v, g_t(Z) = Z: scales component i by t^i
AlgebraElement apply_g_t(const AlgebraElement& a, cplx t);

// Antilinear conjugation rho(u) = e^{-pi i c} v, rho(v) = e^{pi i c} u,
// rho(Z) = Z^-1, with rho^2 = g_t and t = e^{2 pi i c}. Exists only for real
// q in (0,1) and P real on the unit circle.
struct ConjugationParams {
    double c; // t = e^{2 pi i c}, c in [0,1)

    ConjugationParams(const AlgebraParams& params, double c_);
    cplx t() const;
};

AlgebraElement apply_rho(const AlgebraElement& a, const ConjugationParams& conj);

// Filtration degree on A_+ (deg u = deg v = n, deg Z = 2); the zero element
// reports -1. Throws if a component polynomial has a negative exponent.
int filtration_degree(const AlgebraElement& a, int n);

// Words u^i Z^j (i >= 0) and v^i Z^j (i >= 1) with n i + 2 j <= k, u-family
// first, i ascending, j ascending within each block.
std::vector<AlgebraElement> filtered_basis(int k, int n);

} // namespace qweyl

#endif
