#include "qweyl/positivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qweyl {

namespace {

const cplx kI(0.0, 1.0);

bool is_real(cplx z, double tol = 1e-8) { return std::abs(z.imag()) <= tol; }

// greedy perfect matching of the multiset {a_i} into conjugate pairs
bool conjugate_paired(std::vector<cplx> a, double tol = 1e-8) {
    if (a.size() % 2 != 0) return false;
    while (!a.empty()) {
        const cplx x = a.back();
        a.pop_back();
        bool matched = false;
        for (size_t j = 0; j < a.size(); ++j) {
            if (std::abs(a[j] - std::conj(x)) <= tol) {
                a.erase(a.begin() + long(j));
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

} // namespace

int m0_sign(const LaurentPoly& P, const std::vector<cplx>& beta, cplx tau) {
    (void)tau;
    const int grid = 257;
    const double pscale = P.max_abs_coeff();
    double sign = 0.0;
    int used = 0;
    for (int j = 0; j < grid; ++j) {
        const double x = (double(j) + 0.5) / grid;
        double cosprod = 1.0;
        bool near_zero = false;
        for (const cplx& b : beta) {
            if (!is_real(b)) continue;
            const double c = std::cos(M_PI * (x - b.real()));
            if (std::abs(c) < 1e-2) {
                near_zero = true;
                break;
            }
            cosprod *= c;
        }
        if (near_zero) continue;
        const cplx pv = P.eval(std::exp(2.0 * M_PI * kI * x));
        if (std::abs(pv.imag()) > 1e-8 * (pscale + std::abs(pv)))
            throw Error(ErrorKind::Inconsistency, "P is not real on the unit circle");
        if (std::abs(pv) < 1e-10 * pscale) continue; // too close to a circle zero of P
        const double r = pv.real() / cosprod;
        if (sign == 0.0)
            sign = (r > 0.0) ? 1.0 : -1.0;
        else if (r * sign < 0.0)
            throw Error(ErrorKind::Inconsistency,
                        "sign of P over the cosine product changes across the grid");
        ++used;
    }
    if (used < grid / 4)
        throw Error(ErrorKind::Inconsistency, "too few usable samples for the m0 sign");
    return sign < 0.0 ? 1 : 0;
}

SignSamples sampled_sign_minima(const WeightParams& wp, const LaurentPoly& P, int grid) {
    SignSamples out;
    const cplx half_shift = wp.tau * 0.5;
    const cplx phase = std::exp(-M_PI * kI * wp.c);
    bool first = true;
    for (int j = 0; j < grid; ++j) {
        const double x = (double(j) + 0.5) / grid;
        const cplx wv = weight_w(cplx(x, 0.0), wp);
        const cplx sv =
            phase * P.eval(std::exp(2.0 * M_PI * kI * x)) * weight_w(x + half_shift, wp);
        if (std::abs(wv.imag()) > 1e-7 * (1.0 + std::abs(wv)) ||
            std::abs(sv.imag()) > 1e-7 * (1.0 + std::abs(sv)))
            out.real_ok = false;
        if (first) {
            out.min_w = wv.real();
            out.min_shifted = sv.real();
            first = false;
        } else {
            out.min_w = std::min(out.min_w, wv.real());
            out.min_shifted = std::min(out.min_shifted, sv.real());
        }
        out.max_abs_w = std::max(out.max_abs_w, std::abs(wv));
        out.max_abs_shifted = std::max(out.max_abs_shifted, std::abs(sv));
    }
    return out;
}

ConeMembershipReport cone_membership_annulus(const WeightParams& wp, const LaurentPoly& P) {
    const double aq = std::abs(ThetaParams(wp.tau).nome());
    for (const auto& e : nonzero_roots(P).roots) {
        const double r = std::abs(e.location);
        if (r <= aq * (1.0 + 1e-10) || r >= (1.0 - 1e-10) / aq)
            throw Error(ErrorKind::WrongRegime,
                        "P has roots outside the open annulus; use general_cone_check");
    }

    ConeMembershipReport rep;
    rep.m0 = m0_sign(P, betas_from_p(P), wp.tau);
    rep.pairing_ok = conjugate_paired(wp.a);
    cplx sum = -wp.c - double(rep.m0);
    for (size_t i = 0; i < wp.a.size(); ++i) sum += wp.a[i] - wp.beta[i];
    const double nearest_even = 2.0 * std::round(sum.real() / 2.0);
    rep.parity_ok =
        std::abs(sum.imag()) <= 1e-8 && std::abs(sum.real() - nearest_even) <= 1e-8;
    rep.lambda_positive = wp.lambda > 0.0;

    const SignSamples s = sampled_sign_minima(wp, P);
    rep.grid_min_w = s.min_w;
    rep.grid_min_shifted = s.min_shifted;
    rep.sampled_sign_ok = s.nonnegative();

    rep.member = rep.pairing_ok && rep.parity_ok && rep.lambda_positive && rep.sampled_sign_ok;
    return rep;
}

namespace {

// p with a conj-reflect-stable root multiset satisfies conj_reflect(p) = mu p
// with |mu| = 1; rescale so the result is a fixed point (real on |z| = 1)
LaurentPoly make_circle_real(const LaurentPoly& p) {
    int kbig = p.min_exp();
    double best = 0.0;
    for (const auto& [k, v] : p.coeffs())
        if (std::abs(v) > best) {
            best = std::abs(v);
            kbig = k;
        }
    const cplx mu = p.conj_reflect().coeff(kbig) / p.coeff(kbig);
    const cplx s = std::exp(kI * std::arg(mu) / 2.0);
    LaurentPoly out = p * s;
    if (coeff_distance(out, out.conj_reflect()) > 1e-8 * out.max_abs_coeff())
        throw Error(ErrorKind::Inconsistency, "polynomial cannot be made real on the circle");
    return out;
}

// rescaled copy of p_part with p / p_part positive on the unit circle
LaurentPoly align_sign_with(const LaurentPoly& p, const LaurentPoly& p_part) {
    LaurentPoly out = make_circle_real(p_part);
    for (int j = 0; j < 64; ++j) {
        const cplx z = std::exp(2.0 * M_PI * kI * (double(j) + 0.37) / 64.0);
        const cplx num = p.eval(z), den = out.eval(z);
        if (std::abs(den) < 1e-6 * out.max_abs_coeff() ||
            std::abs(num) < 1e-6 * p.max_abs_coeff())
            continue;
        const double r = (num / den).real();
        if (r < 0.0) out *= cplx(-1.0);
        return out;
    }
    throw Error(ErrorKind::Inconsistency, "could not align the sign of P_circ with P");
}

PositivityCertificate certificate_core(const TraceSpec& spec, const ConjugationParams& conj,
                                       int m_max) {
    if (m_max < 1) throw Error(ErrorKind::Domain, "m_max must be >= 1");
    PositivityCertificate cert;
    bool any_negative = false, all_positive = true;
    for (int m = 1; m <= m_max; ++m) {
        for (int sector = 0; sector <= 1; ++sector) {
            double eig = 0.0;
            try {
                const GramReport g = hermitian_gram(spec, conj, sector, m);
                const double tol = 1e-8 * std::max(g.max_singular_value, 1e-300);
                eig = *g.min_eigenvalue;
                if (eig < -tol) any_negative = true;
                if (!(eig > tol)) all_positive = false;
            } catch (const Error& e) {
                // a non-Hermitian sector matrix already refutes positivity
                if (e.kind() != ErrorKind::Inconsistency) throw;
                any_negative = true;
                eig = std::numeric_limits<double>::quiet_NaN();
            }
            (sector == 0 ? cert.sector0_min_eig : cert.sector1_min_eig).push_back(eig);
        }
    }
    if (any_negative)
        cert.verdict = PositivityCertificate::Verdict::NotPositive;
    else if (all_positive)
        cert.verdict = PositivityCertificate::Verdict::Positive;
    else
        cert.verdict = PositivityCertificate::Verdict::Inconclusive;
    return cert;
}

} // namespace

PositivityCertificate positivity_certificate(const TraceSpec& spec,
                                             const ConjugationParams& conj, int m_max) {
    return certificate_core(spec, conj, m_max);
}

PositivityCertificate positivity_certificate(const TraceSpec& spec,
                                             const ConjugationParams& conj, int m_max,
                                             const WeightParams& wp) {
    PositivityCertificate cert = certificate_core(spec, conj, m_max);
    const SignSamples s = sampled_sign_minima(wp, spec.params.P);
    cert.grid_min_w = s.min_w;
    cert.grid_min_shifted = s.min_shifted;
    if (!s.nonnegative()) cert.verdict = PositivityCertificate::Verdict::NotPositive;
    return cert;
}

ConeMembershipReport general_cone_check(const GeneralTraceSpec& spec, const LaurentPoly& P,
                                        cplx q) {
    spec.validate();
    ConeMembershipReport rep;
    rep.phi_zero_ok = spec.delta_part.empty();
    rep.masses_ok = true;
    for (const auto& pm : spec.point_masses)
        if (pm.c.real() < -1e-10 || std::abs(pm.c.imag()) > 1e-10) rep.masses_ok = false;

    // weight part against P_circ: positivity for P is positivity for P_circ
    LaurentPoly Pc = root_shift(P, q).P_circ;
    if (Pc.nonzero_root_count() == 0)
        throw Error(ErrorKind::WrongRegime, "P has no roots in the closed annulus");
    Pc = align_sign_with(P, Pc);
    rep.m0 = m0_sign(Pc, betas_from_p(Pc), spec.weight.tau);
    rep.pairing_ok = conjugate_paired(spec.weight.a);
    cplx sum = -spec.weight.c - double(rep.m0);
    for (size_t i = 0; i < spec.weight.a.size(); ++i) sum += spec.weight.a[i] - spec.weight.beta[i];
    const double nearest_even = 2.0 * std::round(sum.real() / 2.0);
    rep.parity_ok =
        std::abs(sum.imag()) <= 1e-8 && std::abs(sum.real() - nearest_even) <= 1e-8;
    rep.lambda_positive = spec.weight.lambda > 0.0;

    const SignSamples s = sampled_sign_minima(spec.weight, Pc);
    rep.grid_min_w = s.min_w;
    rep.grid_min_shifted = s.min_shifted;
    rep.sampled_sign_ok = s.nonnegative();

    rep.member = rep.phi_zero_ok && rep.masses_ok && rep.pairing_ok && rep.parity_ok &&
                 rep.lambda_positive && rep.sampled_sign_ok;
    return rep;
}

} // namespace qweyl
