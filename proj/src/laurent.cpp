#include "qweyl/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace qweyl {

cplx ipow(cplx z, long long n) {
    if (n < 0) {
        if (z == cplx(0.0)) throw Error(ErrorKind::Domain, "0 raised to a negative power");
        return ipow(1.0 / z, -n);
    }
    cplx acc = 1.0, base = z;
    while (n > 0) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

LaurentPoly LaurentPoly::constant(cplx c) { return monomial(0, c); }

LaurentPoly LaurentPoly::monomial(int exponent, cplx c) {
    LaurentPoly p;
    if (c != cplx(0.0)) p.coeffs_[exponent] = c;
    return p;
}

LaurentPoly LaurentPoly::from_terms(std::span<const std::pair<int, cplx>> terms) {
    LaurentPoly p;
    for (const auto& [k, v] : terms) p.coeffs_[k] += v;
    p.prune();
    return p;
}

LaurentPoly LaurentPoly::from_roots(std::span<const cplx> roots, int shift, cplx lead) {
    LaurentPoly p = monomial(shift, lead);
    for (cplx r : roots) {
        LaurentPoly factor;
        factor.coeffs_[1] = 1.0;
        if (r != cplx(0.0)) factor.coeffs_[0] = -r;
        p = p * factor;
    }
    return p;
}

int LaurentPoly::min_exp() const {
    if (is_zero()) throw Error(ErrorKind::Domain, "min_exp of the zero polynomial");
    return coeffs_.begin()->first;
}

int LaurentPoly::max_exp() const {
    if (is_zero()) throw Error(ErrorKind::Domain, "max_exp of the zero polynomial");
    return coeffs_.rbegin()->first;
}

cplx LaurentPoly::coeff(int k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? cplx(0.0) : it->second;
}

void LaurentPoly::set_coeff(int k, cplx v) {
    if (v == cplx(0.0))
        coeffs_.erase(k);
    else
        coeffs_[k] = v;
}

double LaurentPoly::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [k, v] : coeffs_) m = std::max(m, std::abs(v));
    return m;
}

LaurentPoly& LaurentPoly::prune(double rel) {
    const double cut = rel * max_abs_coeff();
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (std::abs(it->second) <= cut)
            it = coeffs_.erase(it);
        else
            ++it;
    }
    return *this;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly p = *this;
    for (auto& [k, v] : p.coeffs_) v = -v;
    return p;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [k, v] : o.coeffs_) coeffs_[k] += v;
    prune();
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (const auto& [k, v] : o.coeffs_) coeffs_[k] -= v;
    prune();
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(cplx s) {
    if (s == cplx(0.0)) {
        coeffs_.clear();
        return *this;
    }
    for (auto& [k, v] : coeffs_) v *= s;
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly p;
    for (const auto& [ka, va] : a.coeffs_)
        for (const auto& [kb, vb] : b.coeffs_) p.coeffs_[ka + kb] += va * vb;
    p.prune();
    return p;
}

LaurentPoly LaurentPoly::shifted(int k) const {
    LaurentPoly p;
    for (const auto& [e, v] : coeffs_) p.coeffs_[e + k] = v;
    return p;
}

namespace {

// Horner on a map slice with exponents of one sign, argument already inverted
// for the negative side. exps ascending in |exponent|.
cplx horner_side(const std::vector<std::pair<int, cplx>>& terms, cplx z) {
    // terms sorted by exponent descending, all exponents >= 1
    cplx acc = 0.0;
    int prev = 0;
    bool first = true;
    for (const auto& [e, c] : terms) {
        if (first) {
            acc = c;
            prev = e;
            first = false;
        } else {
            acc = acc * ipow(z, prev - e) + c;
            prev = e;
        }
    }
    if (first) return 0.0;
    return acc * ipow(z, prev);
}

} // namespace

cplx LaurentPoly::eval(cplx z) const {
    if (z == cplx(0.0)) throw Error(ErrorKind::Domain, "Laurent polynomial evaluated at z = 0");
    std::vector<std::pair<int, cplx>> pos, neg;
    cplx c0 = 0.0;
    for (const auto& [k, v] : coeffs_) {
        if (k > 0)
            pos.emplace_back(k, v);
        else if (k < 0)
            neg.emplace_back(-k, v);
        else
            c0 = v;
    }
    std::sort(pos.begin(), pos.end(), [](auto& a, auto& b) { return a.first > b.first; });
    std::sort(neg.begin(), neg.end(), [](auto& a, auto& b) { return a.first > b.first; });
    return horner_side(pos, z) + c0 + horner_side(neg, 1.0 / z);
}

cplx LaurentPoly::eval_derivative(cplx z, int order) const {
    if (order < 0) throw Error(ErrorKind::Domain, "negative derivative order");
    LaurentPoly p = *this;
    for (int i = 0; i < order; ++i) p = p.derivative();
    return p.eval(z);
}

LaurentPoly LaurentPoly::derivative() const {
    LaurentPoly p;
    for (const auto& [k, v] : coeffs_)
        if (k != 0) p.coeffs_[k - 1] = double(k) * v;
    return p;
}

LaurentPoly LaurentPoly::scale_arg(cplx s) const {
    if (s == cplx(0.0)) throw Error(ErrorKind::Domain, "scale_arg with s = 0");
    LaurentPoly p;
    for (const auto& [k, v] : coeffs_) p.coeffs_[k] = v * ipow(s, k);
    p.prune();
    return p;
}

LaurentPoly LaurentPoly::conj_reflect() const {
    LaurentPoly p;
    for (const auto& [k, v] : coeffs_) p.coeffs_[-k] = std::conj(v);
    return p;
}

double coeff_distance(const LaurentPoly& a, const LaurentPoly& b) {
    double m = 0.0;
    for (const auto& [k, v] : a.coeffs()) m = std::max(m, std::abs(v - b.coeff(k)));
    for (const auto& [k, v] : b.coeffs()) m = std::max(m, std::abs(v - a.coeff(k)));
    return m;
}

DivModResult divmod_window(const LaurentPoly& dividend, const LaurentPoly& divisor,
                           int window_start) {
    if (divisor.is_zero()) throw Error(ErrorKind::Domain, "division by the zero polynomial");
    const int n = divisor.nonzero_root_count();
    if (n < 1)
        throw Error(ErrorKind::Domain, "windowed division needs a divisor with nonzero roots");
    const int lead_exp = divisor.max_exp();
    const int trail_exp = divisor.min_exp();
    const cplx lead = divisor.coeff(lead_exp);
    const cplx trail = divisor.coeff(trail_exp);
    const int window_end = window_start + n - 1;

    LaurentPoly q;
    LaurentPoly r = dividend;
    // clear everything above the window using the leading term
    while (!r.is_zero() && r.max_exp() > window_end) {
        const int e = r.max_exp();
        const cplx c = r.coeff(e) / lead;
        const int shift = e - lead_exp;
        q.set_coeff(shift, q.coeff(shift) + c);
        r -= divisor.shifted(shift) * c;
        r.set_coeff(e, 0.0); // exact cancellation
    }
    // clear everything below the window using the trailing term; the terms this
    // introduces stay at exponents <= window_end
    while (!r.is_zero() && r.min_exp() < window_start) {
        const int e = r.min_exp();
        const cplx c = r.coeff(e) / trail;
        const int shift = e - trail_exp;
        q.set_coeff(shift, q.coeff(shift) + c);
        r -= divisor.shifted(shift) * c;
        r.set_coeff(e, 0.0);
    }
    return {std::move(q), std::move(r)};
}

int RootList::total_multiplicity() const {
    int t = 0;
    for (const auto& e : roots) t += e.multiplicity;
    return t;
}

std::vector<cplx> RootList::flattened() const {
    std::vector<cplx> out;
    for (const auto& e : roots)
        for (int i = 0; i < e.multiplicity; ++i) out.push_back(e.location);
    return out;
}

namespace {

// value and derivative of an ordinary polynomial (coefficient vector, ascending)
std::pair<cplx, cplx> poly_val_der(const std::vector<cplx>& c, cplx z) {
    cplx p = 0.0, d = 0.0;
    for (int i = int(c.size()) - 1; i >= 0; --i) {
        d = d * z + p;
        p = p * z + c[size_t(i)];
    }
    return {p, d};
}

bool aberth_pass(const std::vector<cplx>& c, std::vector<cplx>& z) {
    const int n = int(z.size());
    for (int iter = 0; iter < 600; ++iter) {
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            auto [p, d] = poly_val_der(c, z[size_t(i)]);
            if (p == cplx(0.0)) continue;
            cplx newton = (d == cplx(0.0)) ? cplx(0.0) : p / d;
            cplx sum = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                cplx diff = z[size_t(i)] - z[size_t(j)];
                if (std::abs(diff) < 1e-300) diff = cplx(1e-300, 0.0);
                sum += 1.0 / diff;
            }
            cplx denom = 1.0 - newton * sum;
            cplx step = (std::abs(denom) < 1e-300) ? newton : newton / denom;
            z[size_t(i)] -= step;
            worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[size_t(i)])));
        }
        if (worst < 1e-14) return true;
    }
    return false;
}

} // namespace

RootList nonzero_roots(const LaurentPoly& p) {
    if (p.is_zero()) throw Error(ErrorKind::Domain, "roots of the zero polynomial");
    const int n = p.nonzero_root_count();
    RootList out;
    if (n == 0) return out;

    // shift to an ordinary polynomial with nonzero constant term
    const int m = p.min_exp();
    std::vector<cplx> c(size_t(n) + 1, 0.0);
    for (const auto& [k, v] : p.coeffs()) c[size_t(k - m)] = v;

    const double r0 = std::pow(std::abs(c[0] / c[size_t(n)]), 1.0 / n);
    std::mt19937 rng(0x5eed); // fixed seed: deterministic output
    std::uniform_real_distribution<double> jitter(-0.05, 0.05);

    std::vector<cplx> z(static_cast<size_t>(n));
    bool converged = false;
    for (int attempt = 0; attempt < 6 && !converged; ++attempt) {
        for (int i = 0; i < n; ++i) {
            double ang = 2.0 * M_PI * (double(i) + 0.37) / double(n) + (attempt ? jitter(rng) : 0.0);
            double rad = r0 * (1.0 + (attempt ? jitter(rng) : 0.0));
            z[size_t(i)] = rad * cplx(std::cos(ang), std::sin(ang));
        }
        converged = aberth_pass(c, z);
    }
    if (!converged) throw Error(ErrorKind::RootFinding, "Aberth iteration did not converge");

    // Newton contraction: simple roots stay put, the eps^{1/m} halo around an
    // m-fold root contracts by (1 - 1/m) per step until it fits the cluster
    // radius below
    for (int i = 0; i < n; ++i) {
        for (int it = 0; it < 40; ++it) {
            auto [pv, dv] = poly_val_der(c, z[size_t(i)]);
            if (std::abs(dv) < 1e-300) break;
            const cplx step = pv / dv;
            z[size_t(i)] -= step;
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(z[size_t(i)]))) break;
        }
    }

    // cluster within 1e-6 (1 + |root|)
    struct Cluster {
        cplx center;
        int mult;
    };
    std::vector<Cluster> clusters;
    std::vector<bool> used(size_t(n), false);
    for (int i = 0; i < n; ++i) {
        if (used[size_t(i)]) continue;
        std::vector<int> cluster{i};
        used[size_t(i)] = true;
        for (int j = i + 1; j < n; ++j) {
            if (used[size_t(j)]) continue;
            if (std::abs(z[size_t(i)] - z[size_t(j)]) <= 1e-6 * (1.0 + std::abs(z[size_t(i)]))) {
                cluster.push_back(j);
                used[size_t(j)] = true;
            }
        }
        cplx center = 0.0;
        for (int j : cluster) center += z[size_t(j)];
        center /= double(cluster.size());
        clusters.push_back({center, int(cluster.size())});
    }

    // Newton on the (mult-1)-th derivative: a simple, well-conditioned root
    const auto polish_multiple = [&c](Cluster& cl) {
        if (cl.mult < 2) return;
        std::vector<cplx> d = c;
        for (int k = 1; k < cl.mult; ++k) {
            std::vector<cplx> nd(d.size() - 1);
            for (size_t s = 1; s < d.size(); ++s) nd[s - 1] = double(s) * d[s];
            d = std::move(nd);
        }
        for (int it = 0; it < 8; ++it) {
            auto [pv, dv] = poly_val_der(d, cl.center);
            if (std::abs(dv) < 1e-300) break;
            cl.center -= pv / dv;
        }
    };
    for (Cluster& cl : clusters) polish_multiple(cl);

    // An m-fold root is only approximated to eps^{1/m}, so clusters of higher
    // multiplicity arrive split beyond the base radius. Merge candidates when
    // the derivative magnitudes certify the combined multiplicity:
    // |p^(l)(center)| <= C eps^{(m-l)/m} scale_l for all l < m.
    const auto profile_supports = [&c](cplx center, int m) {
        std::vector<cplx> d = c;
        const double r = std::abs(center);
        for (int l = 0; l < m; ++l) {
            double scale = 1e-300, rp = 1.0;
            for (size_t k = 0; k < d.size(); ++k) {
                scale += std::abs(d[k]) * rp;
                rp *= r;
            }
            const double bound = 100.0 * std::pow(2.2e-16, double(m - l) / double(m));
            if (std::abs(poly_val_der(d, center).first) > bound * scale) return false;
            std::vector<cplx> nd(d.size() - 1);
            for (size_t s = 1; s < d.size(); ++s) nd[s - 1] = double(s) * d[s];
            d = std::move(nd);
        }
        return true;
    };
    for (bool merged = true; merged;) {
        merged = false;
        for (size_t i = 0; i < clusters.size() && !merged; ++i)
            for (size_t j = i + 1; j < clusters.size() && !merged; ++j) {
                const double dist = std::abs(clusters[i].center - clusters[j].center);
                if (dist > 1e-4 * (1.0 + std::abs(clusters[i].center))) continue;
                const int m = clusters[i].mult + clusters[j].mult;
                const cplx center = (double(clusters[i].mult) * clusters[i].center +
                                     double(clusters[j].mult) * clusters[j].center) /
                                    double(m);
                if (!profile_supports(center, m)) continue;
                clusters[i] = {center, m};
                clusters.erase(clusters.begin() + long(j));
                polish_multiple(clusters[i]);
                merged = true;
            }
    }

    for (const Cluster& cl : clusters) out.roots.push_back({cl.center, cl.mult});

    // residual sanity against the local coefficient scale
    for (const auto& e : out.roots) {
        double scale = 0.0;
        const double r = std::abs(e.location);
        double rp = 1.0;
        for (size_t k = 0; k < c.size(); ++k) {
            scale += std::abs(c[k]) * rp;
            rp *= r;
        }
        const cplx val = poly_val_der(c, e.location).first;
        if (std::abs(val) > 1e-6 * scale)
            throw Error(ErrorKind::RootFinding, "root residual above tolerance");
    }

    std::sort(out.roots.begin(), out.roots.end(), [](const auto& a, const auto& b) {
        if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
        return a.location.imag() < b.location.imag();
    });
    return out;
}

} // namespace qweyl
