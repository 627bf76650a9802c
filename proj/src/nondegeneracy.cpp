#include "qweyl/nondegeneracy.hpp"

#include <cmath>

#include "qweyl/trace_analytic.hpp"

namespace qweyl {

namespace {
const cplx kI(0.0, 1.0);
}

ExplicitWeightParams::ExplicitWeightParams(cplx a_, cplx q_) : a(a_), q(q_) {
    const double aq = std::abs(q);
    if (aq <= 0.0 || aq >= 1.0) throw Error(ErrorKind::Domain, "need 0 < |q| < 1");
    if (!(std::abs(a) > aq * aq && std::abs(a) < 1.0))
        throw Error(ErrorKind::Domain, "need |q|^2 < |a| < 1");
}

cplx mittag_leffler_w(const ExplicitWeightParams& p, cplx x, int truncation_K) {
    if (truncation_K < 8) throw Error(ErrorKind::Domain, "truncation K must be >= 8");
    const cplx A = p.residue_a(), B = p.residue_b(), a = p.a, b = p.b();
    cplx s = 0.0; // the additive constant C is fixed to 0
    for (int k = -truncation_K; k <= truncation_K; ++k) {
        const cplx q2k = ipow(p.q, 2 * k);
        const cplx pa = x - q2k * a, pb = x - q2k * b;
        if (std::abs(pa) < 1e-9 * (1.0 + std::abs(x)) ||
            std::abs(pb) < 1e-9 * (1.0 + std::abs(x)))
            throw PoleError(q2k * a, "Mittag-Leffler weight evaluated at a pole");
        if (k >= 0)
            s += q2k * A / pa + q2k * B / pb;
        else
            s += A * x / (a * pa) + B * x / (b * pb);
    }
    return s;
}

cplx laurent_coeff_w(const ExplicitWeightParams& p, int i) {
    if (i < 0) throw Error(ErrorKind::Domain, "laurent_coeff_w is defined for i >= 0");
    const cplx q2 = p.q * p.q;
    const cplx denom = 1.0 - ipow(q2, i + 1);
    if (std::abs(denom) <= 1e-12)
        throw ResonanceError(i + 1, "vanishing denominator 1 - q^{2(i+1)}");
    return (ipow(p.a, i + 1) - ipow(q2, i + 1) * ipow(p.a, -(i + 1))) / denom;
}

Matrix hilbert_like_matrix(const LaurentPoly& R, int m, const ExplicitWeightParams& p,
                           double tol, int truncation_K) {
    if (m < 0) throw Error(ErrorKind::Domain, "m must be >= 0");
    Matrix M(m + 1, m + 1);
    // Hankel: the integrand depends on i + j only
    for (int s = 0; s <= 2 * m; ++s) {
        const auto f = [&](double x) {
            const cplx z = std::exp(2.0 * M_PI * kI * x);
            return R.eval(z) * mittag_leffler_w(p, z, truncation_K) * ipow(z, s + 1);
        };
        const cplx v = 2.0 * M_PI * kI * circle_integral(f, tol).value;
        for (int i = 0; i <= m; ++i) {
            const int j = s - i;
            if (j >= 0 && j <= m) M.at(i, j) = v;
        }
    }
    return M;
}

cplx cauchy_det_closed_form(std::span<const cplx> x, std::span<const cplx> y) {
    if (x.size() != y.size()) throw Error(ErrorKind::Domain, "Cauchy data size mismatch");
    const size_t n = x.size();
    cplx num = 1.0, den = 1.0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            if (std::abs(x[i] - x[j]) == 0.0 || std::abs(y[i] - y[j]) == 0.0)
                throw Error(ErrorKind::Domain, "coincident Cauchy nodes");
            num *= (x[j] - x[i]) * (y[i] - y[j]);
        }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (std::abs(x[i] - y[j]) == 0.0)
                throw Error(ErrorKind::Domain, "x_i equals y_j");
            den *= x[i] - y[j];
        }
    return num / den;
}

NondegeneracyReport nondeg_scan(const TraceSpec& spec,
                                const std::optional<ConjugationParams>& conj, int k_max) {
    if (k_max < 0) throw Error(ErrorKind::Domain, "k_max must be >= 0");
    require_plus_nonresonant(spec);
    NondegeneracyReport rep;
    rep.nondegenerate_up_to_k_max = true;
    for (int k = 0; k <= k_max; ++k) {
        GramReport g;
        if (conj) {
            const auto basis = filtered_basis(k, spec.params.n);
            const int d = int(basis.size());
            Matrix m(d, d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    m.at(i, j) = trace_eval(
                        spec, multiply(basis[size_t(i)], apply_rho(basis[size_t(j)], *conj),
                                       spec.params));
            g.k = k;
            g.dim = d;
            g.det = lu_determinant(m);
            const auto sv = singular_values(ruiz_equilibrate(m));
            g.max_singular_value = sv.empty() ? 0.0 : sv.front();
            g.min_singular_value = sv.empty() ? 0.0 : sv.back();
            g.nondegenerate = g.max_singular_value > 0.0 &&
                              g.min_singular_value > 1e-8 * g.max_singular_value;
        } else {
            g = gram_matrix(spec, k);
        }
        rep.per_k.push_back(
            {k, g.dim, g.det, g.min_singular_value, g.max_singular_value, g.nondegenerate});
        if (!g.nondegenerate && rep.degenerate_at < 0) {
            rep.degenerate_at = k;
            rep.nondegenerate_up_to_k_max = false;
        }
    }
    return rep;
}

TraceSpec explicit_trace_spec(const ExplicitWeightParams& p) {
    const std::vector<cplx> roots{p.a, p.b()};
    LaurentPoly P = LaurentPoly::from_roots(roots);
    AlgebraParams params(std::move(P), p.q);
    std::vector<cplx> moments{laurent_coeff_w(p, 0), laurent_coeff_w(p, 1)};
    return TraceSpec(std::move(params), p.q * p.q, 0, std::move(moments));
}

} // namespace qweyl
