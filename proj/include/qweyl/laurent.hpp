#ifndef QWEYL_LAURENT_HPP
#define QWEYL_LAURENT_HPP

#include <complex>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "qweyl/errors.hpp"

namespace qweyl {

using cplx = std::complex<double>;

// z^n for integer n, z != 0 required when n < 0
cplx ipow(cplx z, long long n);

// Sparse Laurent polynomial over C: exponent -> coefficient, zeros pruned.
// The zero polynomial is the empty map.
class LaurentPoly {
public:
    static constexpr double kPruneRel = 1e-14;

    LaurentPoly() = default;

    static LaurentPoly constant(cplx c);
    static LaurentPoly monomial(int exponent, cplx c = 1.0);
    // coefficient list [(exponent, value), ...]
    static LaurentPoly from_terms(std::span<const std::pair<int, cplx>> terms);
    // lead * z^shift * prod (z - r_i)
    static LaurentPoly from_roots(std::span<const cplx> roots, int shift = 0, cplx lead = 1.0);

    bool is_zero() const { return coeffs_.empty(); }
    int min_exp() const;
    int max_exp() const;
    // number of nonzero roots counted with multiplicity (= exponent span)
    int nonzero_root_count() const { return is_zero() ? 0 : max_exp() - min_exp(); }

    cplx coeff(int k) const;
    void set_coeff(int k, cplx v);
    const std::map<int, cplx>& coeffs() const { return coeffs_; }
    double max_abs_coeff() const;

    LaurentPoly& prune(double rel = kPruneRel);

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(cplx s);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(LaurentPoly a, cplx s) { return a *= s; }
    friend LaurentPoly operator*(cplx s, LaurentPoly a) { return a *= s; }

    // multiply by z^k
    LaurentPoly shifted(int k) const;

    // Horner evaluation split at exponent 0; z must be nonzero
    cplx eval(cplx z) const;
    // order-th derivative evaluated exactly from the coefficients
    cplx eval_derivative(cplx z, int order) const;
    LaurentPoly derivative() const;

    // p(s z): coefficient c_k -> c_k s^k; s must be nonzero
    LaurentPoly scale_arg(cplx s) const;
    // conj(p)(1/z): c_k -> conj(c_{-k}); fixed points are real on |z| = 1
    LaurentPoly conj_reflect() const;

    bool operator==(const LaurentPoly& o) const { return coeffs_ == o.coeffs_; }

private:
    std::map<int, cplx> coeffs_;
};

// max |a_k - b_k| over all exponents
double coeff_distance(const LaurentPoly& a, const LaurentPoly& b);

struct DivModResult {
    LaurentPoly quotient;
    LaurentPoly remainder; // supported on {window_start, ..., window_start + n - 1}
};

// dividend = quotient * divisor + remainder with the remainder confined to the
// n consecutive exponents starting at window_start (n = divisor's nonzero-root
// count, required >= 1). Works in C[z, z^-1]: exponents above the window are
// cleared with the leading coefficient, exponents below with the trailing one.
DivModResult divmod_window(const LaurentPoly& dividend, const LaurentPoly& divisor,
                           int window_start);

struct RootList {
    struct Entry {
        cplx location;
        int multiplicity;
    };
    std::vector<Entry> roots;
    int total_multiplicity() const;
    std::vector<cplx> flattened() const; // each root repeated multiplicity times
};

// All nonzero roots of p with multiplicities. Aberth-Ehrlich simultaneous
// iteration on z^{-min_exp} p, random perturbation restarts, clustering radius
// 1e-6 (1 + |root|) for multiplicity detection.
RootList nonzero_roots(const LaurentPoly& p);

} // namespace qweyl

#endif
