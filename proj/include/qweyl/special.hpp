#ifndef QWEYL_SPECIAL_HPP
#define QWEYL_SPECIAL_HPP

#include <array>
#include <vector>

#include "qweyl/laurent.hpp"

namespace qweyl {

// theta(x; tau) = sum_n q^{n^2} e^{2 pi i x n}, q = e^{pi i tau}, Im tau > 0.
struct ThetaParams {
    cplx tau;
    double tol = 1e-12;

    ThetaParams(cplx tau_, double tol_ = 1e-12);
    cplx nome() const; // e^{pi i tau}
};

// series value after lattice range reduction; absolute tail error <= tol
cplx theta(cplx z, const ThetaParams& p);

// Jacobi triple product form of the same function
cplx theta_triple_product(cplx z, const ThetaParams& p);

// w(z) = lambda prod theta(z - a_i) / prod theta(z - beta_i), the general
// quasiperiodic weight: w(x+1) = w(x), w(x+tau) = e^{2 pi i c} w(x).
struct WeightParams {
    double lambda;
    std::vector<cplx> a;
    std::vector<cplx> beta;
    cplx tau;
    double c; // t = e^{2 pi i c}

    WeightParams(double lambda_, std::vector<cplx> a_, std::vector<cplx> beta_, cplx tau_,
                 double c_);
    ThetaParams theta_params(double tol = 1e-12) const;
    int n() const { return int(a.size()); }
};

// throws PoleError carrying the offending beta when x is within 1e-9 of the
// pole lattice of the denominator
cplx weight_w(cplx x, const WeightParams& wp);

// Weierstrass p-function for the lattice (2 ln q) Z + (2 pi i) Z, computed
// from theta log-derivatives; e-values at the half-periods.
struct WeierstrassParams {
    double q;       // 0 < q < 1
    cplx tau_w;     // i ln(1/q) / pi; the lattice nome e^{pi i tau_w} equals q
    cplx series_c0; // constant term of (log f)'' at the lattice point
    double e1, e2, e3;

    static WeierstrassParams from_q(double q);
};

cplx weierstrass_p(cplx z, const WeierstrassParams& wp);
cplx weierstrass_p_prime(cplx z, const WeierstrassParams& wp);

// e1 = p(pi i), e2 = p(pi i + ln q), e3 = p(ln q); e1 < e2 < e3, sum 0
std::array<double, 3> half_period_values(const WeierstrassParams& wp);

// invariants of 4 t^3 - g2 t - g3 from the e-values
std::pair<double, double> weierstrass_invariants(const WeierstrassParams& wp);

// log of a nonzero root mapped into the fundamental strip:
// Re in [0,1), Im = -ln|z| / (2 pi); P's root alpha -> alpha_hat with
// e^{2 pi i alpha_hat} = alpha.
cplx log_over_2pii(cplx root);

// beta_i = alpha_hat_i + 1/2 for every nonzero root of P (multiplicity kept)
std::vector<cplx> betas_from_p(const LaurentPoly& P);

} // namespace qweyl

#endif
