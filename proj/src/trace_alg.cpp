#include "qweyl/trace_alg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qweyl {

cplx phi_factor(int k, cplx q, cplx t) { return ipow(q, -k) * (1.0 - t * ipow(q, 2 * k)); }

LaurentPoly phi(const LaurentPoly& S, cplx q, cplx t) {
    LaurentPoly out;
    for (const auto& [k, v] : S.coeffs()) out.set_coeff(k, v * phi_factor(k, q, t));
    out.prune();
    return out;
}

LaurentPoly phi_inverse(const LaurentPoly& R, cplx q, cplx t, std::optional<int> skip_exponent) {
    LaurentPoly out;
    for (const auto& [k, v] : R.coeffs()) {
        if (skip_exponent && k == *skip_exponent) continue;
        if (std::abs(1.0 - t * ipow(q, 2 * k)) <= 1e-12)
            throw ResonanceError(k, "phi is singular on z^k, t = q^{-2k}");
        out.set_coeff(k, v / phi_factor(k, q, t));
    }
    return out;
}

int TraceSpec::default_window_start(const AlgebraParams& params) {
    if (params.P.min_exp() >= 0) return 0; // ordinary P: the A_+ moment window
    return -(params.n / 2);               // ceil(-n/2)
}

TraceSpec::TraceSpec(AlgebraParams params_, cplx t_, std::vector<cplx> moments_)
    : TraceSpec(params_, t_, default_window_start(params_), std::move(moments_)) {}

TraceSpec::TraceSpec(AlgebraParams params_, cplx t_, int window_start_,
                     std::vector<cplx> moments_)
    : params(std::move(params_)), t(t_), window_start(window_start_),
      moments(std::move(moments_)) {
    if (t == cplx(0.0)) throw Error(ErrorKind::Domain, "twist t must be nonzero");
    if (int(moments.size()) != params.n)
        throw Error(ErrorKind::Config, "moment vector length must equal n");
}

std::optional<int> TraceSpec::resonant_exponent() const {
    for (int k = -64; k <= 64; ++k)
        if (std::abs(1.0 - t * ipow(params.q, 2 * k)) <= 1e-12) return k;
    return std::nullopt;
}

cplx trace_eval(const TraceSpec& spec, const AlgebraElement& a) {
    const LaurentPoly A = a.component(0);
    if (A.is_zero()) return 0.0; // twisted traces are supported on A_0
    return trace_eval_poly(spec, A);
}

cplx trace_eval_poly(const TraceSpec& spec, const LaurentPoly& A) {
    if (A.is_zero()) return 0.0;
    const int w = spec.window_start;
    const int n = spec.params.n;
    auto detected = spec.resonant_exponent();
    // On A_+ (ordinary P, window {0..n-1}) negative exponents never arise in
    // any reduction, so a twist resonant only at k0 < 0 acts as non-resonant;
    // phi_inverse still rejects arguments that do reach z^{k0}.
    const bool plus_mode = w == 0 && spec.params.P.min_exp() >= 0;
    if (detected && plus_mode && *detected < 0) detected.reset();
    const bool resonant = detected.has_value();
    const int k0 = resonant ? *detected : std::numeric_limits<int>::min();

    cplx extra_term = 0.0;
    LaurentPoly body = A;
    LaurentPoly S;
    if (resonant) {
        const cplx c = body.coeff(k0);
        if (c != cplx(0.0)) {
            cplx extra;
            if (spec.resonant_extra && spec.resonant_extra->first == k0)
                extra = spec.resonant_extra->second;
            else if (k0 - w >= 0 && k0 - w < n)
                extra = spec.moments[size_t(k0 - w)];
            else
                throw ResonanceError(k0, "resonant twist needs the extra moment T(z^k)");
            extra_term = c * extra;
            body.set_coeff(k0, 0.0);
        }
        if (k0 - w < 0 || k0 - w >= n) {
            // k0 outside the window: the window moments must annihilate
            // phi(P S) for every S whose product reaches z^{k0}
            const auto rem = divmod_window(LaurentPoly::monomial(k0), spec.params.P, w).remainder;
            cplx resid = 0.0;
            double scale = 1e-300;
            for (const auto& [k, v] : rem.coeffs()) {
                const cplx term = v * phi_factor(k, spec.params.q, spec.t) *
                                  spec.moments[size_t(k - w)];
                resid += term;
                scale += std::abs(term);
            }
            if (std::abs(resid) > 1e-8 * scale)
                throw Error(ErrorKind::Inconsistency,
                            "moments incompatible with the resonant twist constraint");
        }
        S = phi_inverse(body, spec.params.q, spec.t, k0);
    } else {
        S = phi_inverse(body, spec.params.q, spec.t);
    }

    const LaurentPoly B = divmod_window(S, spec.params.P, w).remainder;
    cplx sum = extra_term;
    for (const auto& [k, v] : B.coeffs()) {
        if (k - w < 0 || k - w >= n)
            throw Error(ErrorKind::Inconsistency, "remainder escaped the moment window");
        if (resonant && k == k0) continue; // phi kills z^{k0} exactly
        sum += v * phi_factor(k, spec.params.q, spec.t) * spec.moments[size_t(k - w)];
    }
    return sum;
}

int trace_space_dimension(const AlgebraParams& params, cplx t, const ExponentWindow& window) {
    const int n = params.n;
    if (window.size < 3 * n)
        throw Error(ErrorKind::Config, "dimension check needs a window of size >= 3n");
    const int w_lo = window.start;
    const int w_hi = window.start + window.size - 1;
    const int k_lo = w_lo - params.P.min_exp();
    const int k_hi = w_hi - params.P.max_exp();
    const int rows = k_hi - k_lo + 1;
    if (rows <= 0) throw Error(ErrorKind::Config, "window too small for any constraint row");

    Matrix m(rows, window.size);
    for (int r = 0; r < rows; ++r) {
        const LaurentPoly row = phi(params.P.shifted(k_lo + r), params.q, t);
        for (const auto& [k, v] : row.coeffs()) {
            if (k < w_lo || k > w_hi)
                throw Error(ErrorKind::Inconsistency, "constraint row escaped the window");
            m.at(r, k - w_lo) = v;
        }
    }
    return window.size - numeric_rank(m);
}

namespace {

GramReport finish_report(int k, Matrix m) {
    GramReport rep;
    rep.k = k;
    rep.dim = m.rows();
    rep.det = lu_determinant(m);
    // the filtered basis scales rows and columns geometrically in i, j; only
    // the equilibrated singular-value gap is a stable degeneracy measure
    const auto sv = singular_values(ruiz_equilibrate(m));
    rep.max_singular_value = sv.empty() ? 0.0 : sv.front();
    rep.min_singular_value = sv.empty() ? 0.0 : sv.back();
    rep.nondegenerate =
        rep.max_singular_value > 0.0 && rep.min_singular_value > 1e-8 * rep.max_singular_value;
    rep.matrix = std::move(m);
    return rep;
}

} // namespace

void require_plus_nonresonant(const TraceSpec& spec, int k_max_guard) {
    if (spec.window_start != 0) return;
    for (int k = 0; k <= k_max_guard; ++k)
        if (std::abs(1.0 - spec.t * ipow(spec.params.q, 2 * k)) <= 1e-12)
            throw ResonanceError(k, "t = q^{-2k} is not admissible on A_+");
}

GramReport gram_matrix(const TraceSpec& spec, int k) {
    if (k < 0) throw Error(ErrorKind::Domain, "filtration cutoff must be nonnegative");
    require_plus_nonresonant(spec);
    const auto basis = filtered_basis(k, spec.params.n);
    const int d = int(basis.size());
    Matrix m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            m.at(i, j) = trace_eval(spec, multiply(basis[size_t(i)], basis[size_t(j)], spec.params));
    return finish_report(k, std::move(m));
}

GramReport hermitian_gram(const TraceSpec& spec, const ConjugationParams& conj, int sector,
                          int m) {
    if (sector != 0 && sector != 1) throw Error(ErrorKind::Domain, "sector must be 0 or 1");
    if (m < 0) throw Error(ErrorKind::Domain, "m must be nonnegative");
    const cplx q = spec.params.q;

    Matrix mat;
    if (sector == 0) {
        const int d = 2 * m + 1;
        mat = Matrix(d, d);
        for (int j = -m; j <= m; ++j)
            for (int k = -m; k <= m; ++k)
                mat.at(j + m, k + m) = trace_eval_poly(spec, LaurentPoly::monomial(j - k));
    } else {
        const int d = m + 1;
        mat = Matrix(d, d);
        const cplx phase = std::exp(cplx(0.0, -M_PI * conj.c));
        const LaurentPoly Pshift = spec.params.P.scale_arg(1.0 / q);
        for (int j = 0; j <= m; ++j)
            for (int k = 0; k <= m; ++k) {
                // e^{-pi i c} P(q^-1 z) (q^-1 z)^j (q z^-1)^k
                const LaurentPoly probe =
                    Pshift.shifted(j - k) * (ipow(q, k - j));
                mat.at(j, k) = phase * trace_eval_poly(spec, probe);
            }
    }

    const double scale = std::max(mat.max_abs(), 1e-300);
    const double resid = mat.hermitian_residual();
    if (resid > 1e-8 * scale)
        throw Error(ErrorKind::Inconsistency,
                    "Gram matrix is not Hermitian: input is not a rho-compatible trace");

    // symmetrize before the eigenvalue pass
    Matrix h = mat;
    for (int i = 0; i < h.rows(); ++i)
        for (int j = 0; j < h.cols(); ++j)
            h.at(i, j) = 0.5 * (mat.at(i, j) + std::conj(mat.at(j, i)));

    GramReport rep = finish_report(m, h);
    rep.hermitian_residual = resid;
    // for Hermitian grams report the raw spectrum: singular values are the
    // absolute eigenvalues, and positivity thresholds need the raw norm
    const auto ev = hermitian_eigenvalues(rep.matrix);
    rep.min_eigenvalue = ev.front();
    rep.max_singular_value = std::max(std::abs(ev.front()), std::abs(ev.back()));
    double min_abs = rep.max_singular_value;
    for (double e : ev) min_abs = std::min(min_abs, std::abs(e));
    rep.min_singular_value = min_abs;
    rep.nondegenerate = rep.max_singular_value > 0.0 &&
                        rep.min_singular_value > 1e-8 * rep.max_singular_value;
    return rep;
}

} // namespace qweyl
