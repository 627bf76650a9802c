#include "qweyl/sl2.hpp"

#include <algorithm>
#include <cmath>

namespace qweyl {

namespace {
const cplx kI(0.0, 1.0);
}

LaurentPoly casimir_to_P(double q, double c) {
    if (!(q > 0.0 && q < 1.0)) throw Error(ErrorKind::Domain, "sl2 needs 0 < q < 1");
    const double d = (q - 1.0 / q) * (q - 1.0 / q);
    LaurentPoly P;
    P.set_coeff(1, -1.0 / d);
    P.set_coeff(-1, -1.0 / d);
    P.set_coeff(0, 2.0 / d + c);
    return P;
}

std::pair<double, double> unitarizability_interval(double q) {
    if (!(q > 0.0 && q < 1.0)) throw Error(ErrorKind::Domain, "sl2 needs 0 < q < 1");
    const double d = (q - 1.0 / q) * (q - 1.0 / q);
    return {(-q - 1.0 / q - 2.0) / d, (q + 1.0 / q - 2.0) / d};
}

std::pair<double, double> circle_root_interval(double q) {
    if (!(q > 0.0 && q < 1.0)) throw Error(ErrorKind::Domain, "sl2 needs 0 < q < 1");
    const double d = (q - 1.0 / q) * (q - 1.0 / q);
    return {-4.0 / d, 0.0};
}

const char* sl2_regime_name(Sl2Regime r) {
    switch (r) {
    case Sl2Regime::RootsOnCircle: return "roots-on-circle";
    case Sl2Regime::RootsOnPositiveRay: return "roots-on-positive-ray";
    case Sl2Regime::RootsOnNegativeRay: return "roots-on-negative-ray";
    }
    return "unknown";
}

Sl2Params Sl2Params::make(double q, double c) {
    Sl2Params p;
    p.q = q;
    p.c = c;
    p.P = casimir_to_P(q, c);
    const double d = (q - 1.0 / q) * (q - 1.0 / q);
    const cplx sum = c * d + 2.0; // z1 + z2, z1 z2 = 1
    const cplx disc = std::sqrt(sum * sum - 4.0);
    p.z1 = (sum + disc) / 2.0;
    p.z2 = (sum - disc) / 2.0;
    if (std::abs(p.z1) < std::abs(p.z2)) std::swap(p.z1, p.z2);
    p.wp = WeierstrassParams::from_q(q);
    const cplx lnqz = std::log(std::abs(q * p.z1)) + kI * std::arg(q * p.z1);
    const cplx c0 = weierstrass_p(lnqz, p.wp);
    if (std::abs(c0.imag()) > 1e-8 * (1.0 + std::abs(c0)))
        throw Error(ErrorKind::Inconsistency, "c0 = w0(q z1) is not real");
    p.c0 = c0.real();
    return p;
}

cplx sl2_weight(const Sl2Params& params, int weight_sign, double a, cplx z) {
    cplx w1 = 0.0;
    try {
        const cplx lnz = std::log(std::abs(z)) + kI * std::arg(z);
        w1 = 1.0 / (weierstrass_p(lnz, params.wp) - params.c0);
    } catch (const PoleError&) {
        w1 = 0.0; // w0 -> infinity at the lattice, so w1 -> 0
    }
    return double(weight_sign) * (a + w1);
}

namespace {

struct Bounds {
    double lo = -1e300;
    double hi = 1e300;
    void require_ge(double v) { lo = std::max(lo, v); }
    void require_le(double v) { hi = std::min(hi, v); }
};

// one-sided bound on a from s (a + w1val) * coef >= 0
void accumulate(Bounds& b, double s_times_coef, double w1val) {
    if (s_times_coef > 0.0)
        b.require_ge(-w1val);
    else if (s_times_coef < 0.0)
        b.require_le(-w1val);
}

double w1_at(const Sl2Params& p, cplx z) {
    const cplx lnz = std::log(std::abs(z)) + kI * std::arg(z);
    const cplx v = weierstrass_p(lnz, p.wp) - p.c0;
    return (1.0 / v).real();
}

// numeric interval for the family weight_sign (a + w1) against p_sign P
Bounds numeric_family_interval(const Sl2Params& p, int weight_sign, int p_sign, int grid) {
    Bounds b;
    for (int j = 0; j < grid; ++j) {
        const double x = (double(j) + 0.5) / grid;
        const cplx z = std::exp(2.0 * M_PI * kI * x);
        accumulate(b, double(weight_sign), w1_at(p, z));
        const double pv = (double(p_sign) * p.P.eval(z)).real();
        if (std::abs(pv) > 1e-9 * p.P.max_abs_coeff())
            accumulate(b, double(weight_sign) * pv, w1_at(p, p.q * z));
    }
    return b;
}

} // namespace

Sl2ConeDescription sl2_cone(const Sl2Params& params) {
    const auto [ulo, uhi] = unitarizability_interval(params.q);
    if (!(params.c > ulo && params.c < uhi))
        throw Error(ErrorKind::NoPositiveTrace,
                    "Casimir value outside the unitarizability interval");

    Sl2ConeDescription desc;
    desc.e1 = params.wp.e1;
    desc.e2 = params.wp.e2;
    desc.e3 = params.wp.e3;
    desc.c0 = params.c0;

    const double d = (params.q - 1.0 / params.q) * (params.q - 1.0 / params.q);
    const double sum = params.c * d + 2.0;
    if (std::abs(sum) <= 2.0)
        desc.regime = Sl2Regime::RootsOnCircle;
    else if (sum > 2.0)
        desc.regime = Sl2Regime::RootsOnPositiveRay;
    else
        desc.regime = Sl2Regime::RootsOnNegativeRay;

    if (desc.regime == Sl2Regime::RootsOnCircle) {
        // closed-form endpoints; p_sign per family resolved numerically
        Sl2ConeDescription::RayFamily plus;
        plus.weight_sign = 1;
        plus.a_lo = 1.0 / (params.c0 - desc.e1);
        plus.a_hi = 1.0 / (params.c0 - desc.e2);
        Sl2ConeDescription::RayFamily minus;
        minus.weight_sign = -1;
        minus.a_lo = -1.0 / (desc.e3 - params.c0);
        minus.a_hi = 0.0;
        for (auto fam : {plus, minus}) {
            for (int p_sign : {1, -1}) {
                const Bounds b = numeric_family_interval(params, fam.weight_sign, p_sign, 512);
                if (b.lo <= b.hi + 1e-9) {
                    fam.p_sign = p_sign;
                    desc.families.push_back(fam);
                    break;
                }
            }
        }
    } else {
        for (int weight_sign : {1, -1})
            for (int p_sign : {1, -1}) {
                const Bounds b = numeric_family_interval(params, weight_sign, p_sign, 2048);
                if (b.lo > b.hi + 1e-9) continue;
                Sl2ConeDescription::RayFamily fam;
                fam.weight_sign = weight_sign;
                fam.p_sign = p_sign;
                fam.a_lo = std::max(b.lo, -1e300);
                fam.a_hi = std::min(b.hi, 1e300);
                fam.extrapolated = true;
                desc.families.push_back(fam);
            }
    }
    return desc;
}

TraceSpec sl2_member_spec(const Sl2Params& params, int weight_sign, double a, int p_sign,
                          double tol) {
    std::vector<cplx> moments;
    for (int i = -1; i <= 0; ++i) {
        const auto f = [&](double x) {
            const cplx z = std::exp(2.0 * M_PI * kI * x);
            return sl2_weight(params, weight_sign, a, z) * ipow(z, i);
        };
        moments.push_back(circle_integral(f, tol).value);
    }
    AlgebraParams alg(double(p_sign) * params.P, cplx(params.q));
    return TraceSpec(std::move(alg), cplx(1.0), -1, std::move(moments));
}

InvariantTraceReport invariant_trace_check(const Sl2Params& params, const TraceSpec& T0,
                                           int k_max) {
    if (k_max < 0) throw Error(ErrorKind::Domain, "k_max must be >= 0");
    const AlgebraParams& alg = T0.params;
    if (coeff_distance(alg.P, params.P) > 1e-10 * params.P.max_abs_coeff())
        throw Error(ErrorKind::Config, "T0 is not a trace for the sl2 parameter P");
    if (std::abs(T0.t - cplx(1.0)) > 1e-12)
        throw Error(ErrorKind::Config, "T0 must be a g_1-twisted trace");
    const AlgebraElement E = AlgebraElement::u();
    const AlgebraElement F = AlgebraElement::v();
    const AlgebraElement K = AlgebraElement::z_power(1);
    const AlgebraElement Kinv = AlgebraElement::z_power(-1);

    const auto T = [&](const AlgebraElement& x) {
        return trace_eval(T0, multiply(Kinv, x, alg));
    };

    InvariantTraceReport rep;
    for (const AlgebraElement& a : filtered_basis(k_max, alg.n)) {
        ++rep.words;
        const AlgebraElement KaKinv = multiply(K, multiply(a, Kinv, alg), alg);

        const cplx tK1 = T(KaKinv), tK2 = T(a);
        rep.max_residual_K = std::max(rep.max_residual_K,
                                      std::abs(tK1 - tK2) / (1.0 + std::abs(tK1) + std::abs(tK2)));

        const cplx tE1 = T(multiply(E, a, alg)), tE2 = T(multiply(KaKinv, E, alg));
        rep.max_residual_E = std::max(rep.max_residual_E,
                                      std::abs(tE1 - tE2) / (1.0 + std::abs(tE1) + std::abs(tE2)));

        const AlgebraElement comm = multiply(F, a, alg) - multiply(a, F, alg);
        const cplx tF = T(multiply(comm, K, alg));
        rep.max_residual_F = std::max(rep.max_residual_F, std::abs(tF) / (1.0 + std::abs(tF)));
    }
    return rep;
}

} // namespace qweyl
