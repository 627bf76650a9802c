#include "qweyl/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace qweyl {

AlgebraParams::AlgebraParams(LaurentPoly P_, cplx q_) : P(std::move(P_)), q(q_) {
    if (q == cplx(0.0) || std::abs(q) >= 1.0)
        throw Error(ErrorKind::Domain, "q must satisfy 0 < |q| < 1");
    if (P.is_zero()) throw Error(ErrorKind::Domain, "P must be nonzero");
    n = P.nonzero_root_count();
    if (n < 1) throw Error(ErrorKind::Domain, "P must have at least one nonzero root");
}

AlgebraElement AlgebraElement::term(int i, const LaurentPoly& R) {
    AlgebraElement a;
    a.add_term(i, R);
    return a;
}

LaurentPoly AlgebraElement::component(int i) const {
    auto it = comps_.find(i);
    return it == comps_.end() ? LaurentPoly() : it->second;
}

void AlgebraElement::add_term(int i, const LaurentPoly& R) {
    if (R.is_zero()) return;
    auto it = comps_.find(i);
    if (it == comps_.end()) {
        comps_.emplace(i, R);
    } else {
        it->second += R;
        if (it->second.is_zero()) comps_.erase(it);
    }
}

AlgebraElement AlgebraElement::operator-() const {
    AlgebraElement a;
    for (const auto& [i, R] : comps_) a.comps_.emplace(i, -R);
    return a;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
    for (const auto& [i, R] : o.comps_) add_term(i, R);
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
    for (const auto& [i, R] : o.comps_) add_term(i, -R);
    return *this;
}

AlgebraElement& AlgebraElement::operator*=(cplx s) {
    if (s == cplx(0.0)) {
        comps_.clear();
        return *this;
    }
    for (auto& [i, R] : comps_) R *= s;
    return *this;
}

double AlgebraElement::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [i, R] : comps_) m = std::max(m, R.max_abs_coeff());
    return m;
}

double coeff_distance(const AlgebraElement& a, const AlgebraElement& b) {
    double m = 0.0;
    for (const auto& [i, R] : a.components()) m = std::max(m, coeff_distance(R, b.component(i)));
    for (const auto& [i, R] : b.components()) m = std::max(m, coeff_distance(R, a.component(i)));
    return m;
}

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b,
                        const AlgebraParams& params) {
    AlgebraElement out;
    for (const auto& [i, R] : a.components()) {
        for (const auto& [j, S] : b.components()) {
            // R(Z) across the second generator block: R -> R(q^{2j} Z)
            LaurentPoly piece = R.scale_arg(ipow(params.q, 2 * j)) * S;
            // contract the u/v blocks: each step removes one adjacent uv or vu
            // pair, pushing a P factor into the Z-polynomial
            if (i > 0 && j < 0) {
                const int m = std::min(i, -j);
                for (int l = 0; l < m; ++l) {
                    const int b_rem = -j - l; // v-count before this contraction
                    piece = piece * params.P.scale_arg(ipow(params.q, -(2 * b_rem - 1)));
                }
            } else if (i < 0 && j > 0) {
                const int m = std::min(-i, j);
                for (int l = 0; l < m; ++l) {
                    const int u_rem = j - l; // u-count before this contraction
                    piece = piece * params.P.scale_arg(ipow(params.q, 2 * u_rem - 1));
                }
            }
            out.add_term(i + j, piece);
        }
    }
    return out;
}

AlgebraElement apply_g_t(const AlgebraElement& a, cplx t) {
    if (t == cplx(0.0)) throw Error(ErrorKind::Domain, "g_t needs t != 0");
    AlgebraElement out;
    for (const auto& [i, R] : a.components()) out.add_term(i, R * ipow(t, i));
    return out;
}

ConjugationParams::ConjugationParams(const AlgebraParams& params, double c_) {
    if (std::abs(params.q.imag()) > 1e-14 || params.q.real() <= 0.0 || params.q.real() >= 1.0)
        throw Error(ErrorKind::Config, "conjugation rho needs real q in (0,1)");
    const double scale = params.P.max_abs_coeff();
    if (coeff_distance(params.P, params.P.conj_reflect()) > 1e-10 * scale)
        throw Error(ErrorKind::Config, "conjugation rho needs P real on the unit circle");
    c = c_ - std::floor(c_);
}

cplx ConjugationParams::t() const { return std::exp(cplx(0.0, 2.0 * M_PI * c)); }

AlgebraElement apply_rho(const AlgebraElement& a, const ConjugationParams& conj) {
    AlgebraElement out;
    for (const auto& [i, R] : a.components()) {
        const cplx phase = std::exp(cplx(0.0, -M_PI * conj.c * double(i)));
        out.add_term(-i, R.conj_reflect() * phase);
    }
    return out;
}

int filtration_degree(const AlgebraElement& a, int n) {
    if (a.is_zero()) return -1;
    int deg = 0;
    for (const auto& [i, R] : a.components()) {
        if (R.min_exp() < 0)
            throw Error(ErrorKind::NotInSubalgebra,
                        "element has a negative Z-exponent, not in A_+");
        deg = std::max(deg, n * std::abs(i) + 2 * R.max_exp());
    }
    return deg;
}

std::vector<AlgebraElement> filtered_basis(int k, int n) {
    if (k < 0) throw Error(ErrorKind::Domain, "filtration cutoff must be nonnegative");
    std::vector<AlgebraElement> basis;
    for (int i = 0; n * i <= k; ++i)
        for (int j = 0; n * i + 2 * j <= k; ++j)
            basis.push_back(AlgebraElement::term(i, LaurentPoly::monomial(j)));
    for (int i = 1; n * i <= k; ++i)
        for (int j = 0; n * i + 2 * j <= k; ++j)
            basis.push_back(AlgebraElement::term(-i, LaurentPoly::monomial(j)));
    return basis;
}

} // namespace qweyl
