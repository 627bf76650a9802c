#ifndef QWEYL_SL2_HPP
#define QWEYL_SL2_HPP

#include <vector>

#include "qweyl/positivity.hpp"

namespace qweyl {

// P(x) = -(x + x^-1 - 2)/(q - q^-1)^2 + c, the central reduction of U_q(sl2)
// at Casimir value c
LaurentPoly casimir_to_P(double q, double c);

// open interval of c with both roots in the open annulus q < |z| < 1/q
std::pair<double, double> unitarizability_interval(double q);

// interval of c with both roots on the unit circle
std::pair<double, double> circle_root_interval(double q);

enum class Sl2Regime { RootsOnCircle, RootsOnPositiveRay, RootsOnNegativeRay };
const char* sl2_regime_name(Sl2Regime r);

struct Sl2Params {
    double q = 0.0;
    double c = 0.0;
    LaurentPoly P;
    cplx z1, z2;  // roots of P, z1 z2 = 1
    double c0 = 0.0; // w0(q z1) = p(ln(q z1)), real
    WeierstrassParams wp;

    static Sl2Params make(double q, double c);
};

// Positive-trace cone over the basis {1, w1 = 1/(w0 - c0)}: ray families
// s (a + w1), a in [a_lo, a_hi], each tagged with the sign of P it certifies
// against. Circle regime endpoints are the closed forms in e1, e2, e3, c0;
// the ray regimes are computed by the same sign procedure numerically and
// flagged extrapolated.
struct Sl2ConeDescription {
    Sl2Regime regime = Sl2Regime::RootsOnCircle;
    struct RayFamily {
        int weight_sign = 1; // w = weight_sign * (a + w1)
        double a_lo = 0.0, a_hi = 0.0;
        int p_sign = 1; // certifies positivity for p_sign * P
        bool extrapolated = false;
    };
    std::vector<RayFamily> families;
    double e1 = 0.0, e2 = 0.0, e3 = 0.0, c0 = 0.0;
};

Sl2ConeDescription sl2_cone(const Sl2Params& params);

// multiplicative weight s (a + 1/(w0(z) - c0)) evaluated at z
cplx sl2_weight(const Sl2Params& params, int weight_sign, double a, cplx z);

// g_1-twisted trace from the elliptic weight: moments T(z^i) =
// int_0^1 w(e^{2 pi i x}) e^{2 pi i i x} dx over the centered window {-1, 0}
TraceSpec sl2_member_spec(const Sl2Params& params, int weight_sign, double a,
                          int p_sign = 1, double tol = -1.0);

// Residuals of the ad-invariance identities for T(a) = T0(K^-1 a) under
// u <-> E, v <-> F, Z <-> K, on the A_+ filtered basis up to k_max.
struct InvariantTraceReport {
    double max_residual_K = 0.0; // T(K a K^-1) - T(a)
    double max_residual_E = 0.0; // T(E a - K a K^-1 E)
    double max_residual_F = 0.0; // T((F a - a F) K)
    int words = 0;
};

InvariantTraceReport invariant_trace_check(const Sl2Params& params, const TraceSpec& T0,
                                           int k_max);

} // namespace qweyl

#endif
