#include "qweyl/special.hpp"

#include <cmath>

namespace qweyl {

namespace {

const cplx kI(0.0, 1.0);

struct Reduced {
    cplx z0;     // in the fundamental cell
    cplx prefix; // theta(z) = prefix * theta(z0)
};

// theta(z + m tau) = e^{-pi i (m^2 tau + 2 m z)} theta(z), theta(z + 1) = theta(z)
Reduced reduce_to_cell(cplx z, cplx tau) {
    const double m = std::round(z.imag() / tau.imag());
    cplx z1 = z - m * tau;
    z1 -= std::round(z1.real());
    const cplx prefix = std::exp(-M_PI * kI * (m * m * tau + 2.0 * m * z1));
    return {z1, prefix};
}

int theta_terms(const ThetaParams& p) {
    const double aq = std::abs(p.nome());
    const double arg = std::log(p.tol * (1.0 - aq)) / std::log(aq);
    const int N = int(std::ceil(std::sqrt(std::max(arg, 1.0)))) + 2;
    return std::max(N, 4);
}

} // namespace

ThetaParams::ThetaParams(cplx tau_, double tol_) : tau(tau_), tol(tol_) {
    if (tau.imag() <= 0.0) throw Error(ErrorKind::Domain, "theta needs Im tau > 0");
    if (!(tol > 0.0) || tol > 1e-6)
        throw Error(ErrorKind::Domain, "theta tolerance must lie in (0, 1e-6]");
}

cplx ThetaParams::nome() const { return std::exp(M_PI * kI * tau); }

cplx theta(cplx z, const ThetaParams& p) {
    const auto red = reduce_to_cell(z, p.tau);
    const cplx q = p.nome();
    const int N = theta_terms(p);
    cplx s = 1.0;
    for (int n = 1; n <= N; ++n) {
        const cplx qn2 = ipow(q, 1LL * n * n);
        const cplx e = std::exp(2.0 * M_PI * kI * red.z0 * double(n));
        s += qn2 * (e + 1.0 / e);
    }
    return red.prefix * s;
}

cplx theta_triple_product(cplx z, const ThetaParams& p) {
    const auto red = reduce_to_cell(z, p.tau);
    const cplx q = p.nome();
    const cplx e2z = std::exp(2.0 * M_PI * kI * red.z0);
    cplx prod = 1.0;
    for (int m = 1; m <= 200; ++m) {
        const cplx q2m = ipow(q, 2 * m);
        const cplx qodd = ipow(q, 2 * m - 1);
        const cplx f1 = 1.0 - q2m;
        const cplx f2 = 1.0 + qodd * e2z;
        const cplx f3 = 1.0 + qodd / e2z;
        prod *= f1 * f2 * f3;
        if (std::abs(q2m) + std::abs(qodd * e2z) + std::abs(qodd / e2z) < p.tol) break;
    }
    return red.prefix * prod;
}

WeightParams::WeightParams(double lambda_, std::vector<cplx> a_, std::vector<cplx> beta_,
                           cplx tau_, double c_)
    : lambda(lambda_), a(std::move(a_)), beta(std::move(beta_)), tau(tau_), c(c_) {
    if (tau.imag() <= 0.0) throw Error(ErrorKind::Config, "weight needs Im tau > 0");
    if (a.size() != beta.size())
        throw Error(ErrorKind::Config, "weight needs equally many a's and beta's");
    cplx sum = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i].imag()) >= tau.imag() || std::abs(beta[i].imag()) >= tau.imag())
            throw Error(ErrorKind::Config, "weight parameters must satisfy |Im| < Im tau");
        sum += a[i] - beta[i];
    }
    sum -= c;
    if (std::abs(sum.imag()) > 1e-8 ||
        std::abs(sum.real() - std::round(sum.real())) > 1e-8)
        throw Error(ErrorKind::Config, "sum a_i - sum beta_i - c must be an integer");
}

ThetaParams WeightParams::theta_params(double tol) const { return ThetaParams(tau, tol); }

cplx weight_w(cplx x, const WeightParams& wp) {
    const ThetaParams tp = wp.theta_params();
    // poles sit where theta(x - beta_i) = 0, i.e. x - beta_i - 1/2 - tau/2 on
    // the lattice Z + Z tau
    for (const cplx& b : wp.beta) {
        cplx u = x - b - 0.5 - wp.tau * 0.5;
        const double m = std::round(u.imag() / wp.tau.imag());
        u -= m * wp.tau;
        u -= std::round(u.real());
        if (std::abs(u) < 1e-9)
            throw PoleError(b, "weight evaluated within 1e-9 of a pole");
    }
    cplx num = wp.lambda, den = 1.0;
    for (size_t i = 0; i < wp.a.size(); ++i) {
        num *= theta(x - wp.a[i], tp);
        den *= theta(x - wp.beta[i], tp);
    }
    return num / den;
}

namespace {

// f(x) = theta(x + 1/2 + tau/2): simple zero at every lattice point; value and
// first three derivatives by term-wise differentiation of the series
std::array<cplx, 4> logf_series(cplx x, cplx tau, int N) {
    const cplx q = std::exp(M_PI * kI * tau);
    std::array<cplx, 4> d{0.0, 0.0, 0.0, 0.0};
    const cplx shift = x + 0.5 + tau * 0.5;
    for (int n = -N; n <= N; ++n) {
        const cplx base = ipow(q, 1LL * n * n) * std::exp(2.0 * M_PI * kI * shift * double(n));
        const cplx fac = 2.0 * M_PI * kI * double(n);
        cplx p = 1.0;
        for (int k = 0; k < 4; ++k) {
            d[size_t(k)] += base * p;
            p *= fac;
        }
    }
    return d;
}

cplx logf_second(cplx x, cplx tau, int N) {
    const auto d = logf_series(x, tau, N);
    return (d[2] * d[0] - d[1] * d[1]) / (d[0] * d[0]);
}

cplx logf_third(cplx x, cplx tau, int N) {
    const auto d = logf_series(x, tau, N);
    const cplx f = d[0], f1 = d[1], f2 = d[2], f3 = d[3];
    return (f3 * f * f - 3.0 * f2 * f1 * f + 2.0 * f1 * f1 * f1) / (f * f * f);
}

int wp_terms(double q) {
    const double arg = std::log(1e-16 * (1.0 - q)) / std::log(q);
    return std::max(int(std::ceil(std::sqrt(arg))) + 2, 4);
}

void check_off_lattice(cplx z, const WeierstrassParams& wp) {
    // lattice (2 ln q) Z + (2 pi i) Z
    const double px = 2.0 * std::log(wp.q);
    cplx u = z;
    u -= std::round(u.imag() / (2.0 * M_PI)) * cplx(0.0, 2.0 * M_PI);
    u -= std::round(u.real() / px) * px;
    if (std::abs(u) < 1e-9)
        throw PoleError(z, "Weierstrass p evaluated within 1e-9 of a lattice point");
}

} // namespace

WeierstrassParams WeierstrassParams::from_q(double q) {
    if (!(q > 0.0 && q < 1.0)) throw Error(ErrorKind::Domain, "Weierstrass setup needs 0 < q < 1");
    WeierstrassParams wp;
    wp.q = q;
    wp.tau_w = kI * std::log(1.0 / q) / M_PI;
    const int N = wp_terms(q);
    // c0 = lim (log f)''(x) + 1/x^2 = 2 a3/a1 - (a2/a1)^2 with f = a1 x + a2 x^2 + ...
    const auto d = logf_series(0.0, wp.tau_w, N);
    const cplx a1 = d[1], a2 = d[2] / 2.0, a3 = d[3] / 6.0;
    wp.series_c0 = 2.0 * a3 / a1 - (a2 / a1) * (a2 / a1);
    wp.e1 = wp.e2 = wp.e3 = 0.0; // filled below once p is computable
    const auto ev = [&](cplx z) {
        const cplx x = z / (2.0 * M_PI * kI);
        return ((logf_second(x, wp.tau_w, N) - wp.series_c0) / (4.0 * M_PI * M_PI)).real();
    };
    wp.e1 = ev(cplx(0.0, M_PI));
    wp.e2 = ev(cplx(std::log(q), M_PI));
    wp.e3 = ev(cplx(std::log(q), 0.0));
    return wp;
}

cplx weierstrass_p(cplx z, const WeierstrassParams& wp) {
    check_off_lattice(z, wp);
    const cplx x = z / (2.0 * M_PI * kI);
    return (logf_second(x, wp.tau_w, wp_terms(wp.q)) - wp.series_c0) / (4.0 * M_PI * M_PI);
}

cplx weierstrass_p_prime(cplx z, const WeierstrassParams& wp) {
    check_off_lattice(z, wp);
    const cplx x = z / (2.0 * M_PI * kI);
    return logf_third(x, wp.tau_w, wp_terms(wp.q)) / (4.0 * M_PI * M_PI) / (2.0 * M_PI * kI);
}

std::array<double, 3> half_period_values(const WeierstrassParams& wp) {
    return {wp.e1, wp.e2, wp.e3};
}

std::pair<double, double> weierstrass_invariants(const WeierstrassParams& wp) {
    const double g2 = -4.0 * (wp.e1 * wp.e2 + wp.e1 * wp.e3 + wp.e2 * wp.e3);
    const double g3 = 4.0 * wp.e1 * wp.e2 * wp.e3;
    return {g2, g3};
}

cplx log_over_2pii(cplx root) {
    if (root == cplx(0.0)) throw Error(ErrorKind::Domain, "log of zero root");
    double re = std::arg(root) / (2.0 * M_PI);
    if (re < 0.0) re += 1.0;
    return cplx(re, -std::log(std::abs(root)) / (2.0 * M_PI));
}

std::vector<cplx> betas_from_p(const LaurentPoly& P) {
    std::vector<cplx> betas;
    for (const cplx& r : nonzero_roots(P).flattened()) betas.push_back(log_over_2pii(r) + 0.5);
    return betas;
}

} // namespace qweyl
