#ifndef QWEYL_TRACE_ANALYTIC_HPP
#define QWEYL_TRACE_ANALYTIC_HPP

#include <functional>
#include <optional>
#include <vector>

#include "qweyl/special.hpp"
#include "qweyl/trace_alg.hpp"

namespace qweyl {

double default_quadrature_tol();

struct QuadratureResult {
    cplx value = 0.0;
    int nodes = 0;
    bool converged = false;
};

// Periodic trapezoid rule over [0,1] with node doubling (N = 16, 32, ...)
// until successive values differ by < tol; spectrally accurate for analytic
// periodic integrands. Throws Convergence past N = 2^16.
QuadratureResult circle_integral(const std::function<cplx(double)>& f, double tol);

// T(R) = int_0^1 w(x) R(e^{2 pi i x}) dx
cplx analytic_trace(const WeightParams& wp, const LaurentPoly& R, double tol = -1.0);

// t_i = analytic_trace(z^i) for i in the window
std::vector<cplx> moments_from_weight(const WeightParams& wp, int window_start, int count,
                                      double tol = -1.0);

// Trace data in the closed-annulus / general case: contour part against
// w * Q, point masses at roots of Q on the circle, and the off-circle
// delta-derivative part Phi(R) = sum c_{ak} R^(k)(a).
struct GeneralTraceSpec {
    WeightParams weight;
    LaurentPoly Qfactor; // all roots on the unit circle; constant Q allowed
    struct PointMass {
        cplx z; // root of Qfactor
        cplx c;
    };
    std::vector<PointMass> point_masses;
    struct DeltaTerm {
        cplx a; // ||a| - 1| > 1e-8
        int k = 0;
        cplx c = 0.0;
    };
    std::vector<DeltaTerm> delta_part;
    std::optional<int> q_window_start; // window for the R0 split; centered default

    void validate() const;
    int q_window() const;
};

// int R1 Q w dx + sum_j c_j R0(z_j) + sum c_{ak} R^(k)(a), with R = R1 Q + R0
// split by divmod_window; derivatives taken exactly from the coefficients
cplx general_trace_eval(const GeneralTraceSpec& spec, const LaurentPoly& R, double tol = -1.0);

struct TraceEvalDetail {
    cplx value = 0.0;
    int nodes_used = 0;
    bool converged = true;
};

TraceEvalDetail analytic_trace_detailed(const WeightParams& wp, const LaurentPoly& R,
                                        double tol = -1.0);
TraceEvalDetail general_trace_eval_detailed(const GeneralTraceSpec& spec, const LaurentPoly& R,
                                            double tol = -1.0);

// Root shifting z -> q^{+-2k} z into the closed annulus |q| <= |z| <= 1/|q|
struct RootShiftReport {
    LaurentPoly P_tilde; // all roots shifted into the closed annulus
    LaurentPoly P_circ;  // only the roots already in the closed annulus
    struct Shift {
        cplx original;
        cplx shifted;
        int k; // minimal positive shift count
    };
    std::vector<Shift> shifts; // only genuinely shifted roots
};

RootShiftReport root_shift(const LaurentPoly& P, cplx q);

// Weight attached to an algebra: beta_i from the roots of P, a's supplied by
// the caller; validates the quasiperiodicity class against t = e^{2 pi i c}.
WeightParams weight_for_params(const AlgebraParams& params, double c, std::vector<cplx> a,
                               double lambda = 1.0);

// tau with q = e^{pi i tau} for real q in (0,1)
cplx tau_from_q(double q);

} // namespace qweyl

#endif
