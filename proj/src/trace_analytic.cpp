#include "qweyl/trace_analytic.hpp"

#include <cmath>
#include <cstdlib>

namespace qweyl {

namespace {
const cplx kI(0.0, 1.0);
}

double default_quadrature_tol() {
    if (const char* s = std::getenv("QWEYL_TOL")) {
        const double v = std::atof(s);
        if (v > 0.0) return v;
    }
    return 1e-11;
}

QuadratureResult circle_integral(const std::function<cplx(double)>& f, double tol) {
    if (tol <= 0.0) tol = default_quadrature_tol();
    int n = 16;
    cplx sum = 0.0;
    for (int j = 0; j < n; ++j) sum += f(double(j) / n);
    cplx value = sum / double(n);
    while (n < (1 << 16)) {
        // reuse: midpoints of the current grid
        cplx odd = 0.0;
        for (int j = 0; j < n; ++j) odd += f((double(j) + 0.5) / n);
        n *= 2;
        sum += odd;
        const cplx next = sum / double(n);
        const bool done = std::abs(next - value) < tol;
        value = next;
        if (done) return {value, n, true};
    }
    throw Error(ErrorKind::Convergence,
                "circle integral did not converge (pole on the contour?)");
}

TraceEvalDetail analytic_trace_detailed(const WeightParams& wp, const LaurentPoly& R,
                                        double tol) {
    if (R.is_zero()) return {};
    const auto f = [&](double x) {
        const cplx z = std::exp(2.0 * M_PI * kI * x);
        return weight_w(cplx(x, 0.0), wp) * R.eval(z);
    };
    const QuadratureResult quad = circle_integral(f, tol);
    return {quad.value, quad.nodes, quad.converged};
}

cplx analytic_trace(const WeightParams& wp, const LaurentPoly& R, double tol) {
    return analytic_trace_detailed(wp, R, tol).value;
}

std::vector<cplx> moments_from_weight(const WeightParams& wp, int window_start, int count,
                                      double tol) {
    std::vector<cplx> out;
    out.reserve(size_t(count));
    for (int i = window_start; i < window_start + count; ++i)
        out.push_back(analytic_trace(wp, LaurentPoly::monomial(i), tol));
    return out;
}

void GeneralTraceSpec::validate() const {
    const double qscale = std::max(Qfactor.max_abs_coeff(), 1e-300);
    for (const auto& pm : point_masses) {
        if (std::abs(std::abs(pm.z) - 1.0) > 1e-8)
            throw Error(ErrorKind::Config, "point masses must sit on the unit circle");
        if (std::abs(Qfactor.eval(pm.z)) > 1e-8 * qscale * 8.0)
            throw Error(ErrorKind::Config, "point mass is not at a root of Q");
    }
    for (const auto& d : delta_part) {
        if (std::abs(std::abs(d.a) - 1.0) <= 1e-8)
            throw Error(ErrorKind::Config, "delta terms must sit off the unit circle");
        if (d.k < 0) throw Error(ErrorKind::Config, "delta derivative order must be >= 0");
    }
    if (Qfactor.is_zero()) throw Error(ErrorKind::Config, "Q factor must be nonzero");
}

int GeneralTraceSpec::q_window() const {
    if (q_window_start) return *q_window_start;
    return -(Qfactor.nonzero_root_count() / 2);
}

TraceEvalDetail general_trace_eval_detailed(const GeneralTraceSpec& spec, const LaurentPoly& R,
                                            double tol) {
    spec.validate();
    LaurentPoly R1, R0;
    if (spec.Qfactor.nonzero_root_count() == 0) {
        // constant Q: R = (R / Q) Q + 0
        R1 = R * (1.0 / spec.Qfactor.coeff(spec.Qfactor.min_exp()));
        R1 = R1.shifted(-spec.Qfactor.min_exp());
    } else {
        auto dm = divmod_window(R, spec.Qfactor, spec.q_window());
        R1 = std::move(dm.quotient);
        R0 = std::move(dm.remainder);
    }

    TraceEvalDetail out;
    if (!R1.is_zero()) {
        const auto f = [&](double x) {
            const cplx z = std::exp(2.0 * M_PI * kI * x);
            return weight_w(cplx(x, 0.0), spec.weight) * spec.Qfactor.eval(z) * R1.eval(z);
        };
        const QuadratureResult quad = circle_integral(f, tol);
        out.value += quad.value;
        out.nodes_used = quad.nodes;
        out.converged = quad.converged;
    }
    for (const auto& pm : spec.point_masses)
        if (!R0.is_zero()) out.value += pm.c * R0.eval(pm.z);
    for (const auto& d : spec.delta_part) out.value += d.c * R.eval_derivative(d.a, d.k);
    return out;
}

cplx general_trace_eval(const GeneralTraceSpec& spec, const LaurentPoly& R, double tol) {
    return general_trace_eval_detailed(spec, R, tol).value;
}

RootShiftReport root_shift(const LaurentPoly& P, cplx q) {
    if (P.is_zero()) throw Error(ErrorKind::Domain, "root_shift of the zero polynomial");
    const double aq = std::abs(q);
    if (aq <= 0.0 || aq >= 1.0) throw Error(ErrorKind::Domain, "root_shift needs 0 < |q| < 1");
    const RootList roots = nonzero_roots(P);

    RootShiftReport rep;
    // relative slack keeps boundary roots (|r| = |q| or 1/|q| to roundoff) put
    const double slack = 1.0 + 1e-10;
    std::vector<cplx> shifted_all, kept;
    for (const auto& e : roots.roots) {
        cplx r = e.location;
        int k = 0;
        if (std::abs(r) > slack / aq) {
            // minimal positive k with |q^{2k} z| <= 1/|q|
            while (std::abs(ipow(q, 2 * (k + 1)) * r) > slack / aq) ++k;
            ++k;
            r = ipow(q, 2 * k) * r;
        } else if (std::abs(r) < aq / slack) {
            // minimal positive k with |q^{-2k} z| >= |q|
            while (std::abs(ipow(q, -2 * (k + 1)) * r) < aq / slack) ++k;
            ++k;
            r = ipow(q, -2 * k) * r;
        }
        for (int i = 0; i < e.multiplicity; ++i) shifted_all.push_back(r);
        if (k == 0)
            for (int i = 0; i < e.multiplicity; ++i) kept.push_back(r);
        else
            rep.shifts.push_back({e.location, r, k});
    }
    const int shift = P.min_exp();
    rep.P_tilde = LaurentPoly::from_roots(shifted_all, shift);
    rep.P_circ = kept.empty() ? LaurentPoly::monomial(shift)
                              : LaurentPoly::from_roots(kept, shift);
    return rep;
}

cplx tau_from_q(double q) {
    if (!(q > 0.0 && q < 1.0)) throw Error(ErrorKind::Domain, "tau_from_q needs 0 < q < 1");
    return kI * std::log(1.0 / q) / M_PI;
}

WeightParams weight_for_params(const AlgebraParams& params, double c, std::vector<cplx> a,
                               double lambda) {
    if (std::abs(params.q.imag()) > 1e-14 || params.q.real() <= 0.0)
        throw Error(ErrorKind::Config, "analytic weights are set up for real q in (0,1)");
    const cplx tau = tau_from_q(params.q.real());
    std::vector<cplx> beta = betas_from_p(params.P);
    return WeightParams(lambda, std::move(a), std::move(beta), tau, c);
}

} // namespace qweyl
