#ifndef QWEYL_TRACE_ALG_HPP
#define QWEYL_TRACE_ALG_HPP

#include <optional>
#include <vector>

#include "qweyl/algebra.hpp"
#include "qweyl/linalg.hpp"

namespace qweyl {

// phi(S)(z) = S(q^-1 z) - t S(q z); diagonal on monomials with
// phi(z^k) = q^-k (1 - t q^{2k}) z^k
LaurentPoly phi(const LaurentPoly& S, cplx q, cplx t);
cplx phi_factor(int k, cplx q, cplx t);

// Monomial-wise inverse; throws ResonanceError naming k when |1 - t q^{2k}|
// <= 1e-12 for an exponent k present in R. skip_exponent removes z^{k0} from
// the inversion (resonant twists).
LaurentPoly phi_inverse(const LaurentPoly& R, cplx q, cplx t,
                        std::optional<int> skip_exponent = std::nullopt);

// A g_t-twisted trace identified by the moments T(z^{w}), ..., T(z^{w+n-1}).
// For a resonant twist t = q^{-2 k0} on the Laurent algebra the moment data is
// augmented by T(z^{k0}) (resonant_extra); when k0 lies inside the window the
// window moment is used. On A_+ (window_start = 0) resonant twists are
// rejected by the Gram/scan entry points.
struct TraceSpec {
    AlgebraParams params;
    cplx t;
    int window_start;
    std::vector<cplx> moments;
    std::optional<std::pair<int, cplx>> resonant_extra;

    TraceSpec(AlgebraParams params_, cplx t_, std::vector<cplx> moments_);
    TraceSpec(AlgebraParams params_, cplx t_, int window_start_, std::vector<cplx> moments_);

    // {0,...,n-1} for ordinary P, else the centered window starting at ceil(-n/2)
    static int default_window_start(const AlgebraParams& params);

    // k0 with t = q^{-2 k0} within 1e-12, if any (|k0| <= 64)
    std::optional<int> resonant_exponent() const;
};

// T on the degree-0 Laurent polynomial A: B = windowed remainder of
// phi^-1(A) mod P, then sum_k B_k phi_factor(k) t_{k - w}. Elements with no
// degree-0 component map to 0.
cplx trace_eval(const TraceSpec& spec, const AlgebraElement& a);
cplx trace_eval_poly(const TraceSpec& spec, const LaurentPoly& A);

struct ExponentWindow {
    int start;
    int size;
};

// Numeric corank of the constraint system {coefficients of phi(P z^k)}
// restricted to the window (size >= 3n required); equals the twisted-trace
// space dimension, including the resonant t = q^{-2k} case.
int trace_space_dimension(const AlgebraParams& params, cplx t, const ExponentWindow& window);

struct GramReport {
    int k = 0;   // filtration cutoff (or sector size for hermitian grams)
    int dim = 0; // matrix dimension
    Matrix matrix;
    cplx det = 0.0;
    // singular values of the Ruiz-equilibrated matrix: the raw filtered basis
    // scales rows/columns geometrically in the word indices, so only the
    // equilibrated gap measures degeneracy
    double min_singular_value = 0.0;
    double max_singular_value = 0.0;
    bool nondegenerate = false; // min_sv > 1e-8 * max_sv
    std::optional<double> min_eigenvalue; // hermitian grams only
    double hermitian_residual = 0.0;
};

// M_ij = T(w_i w_j) over filtered_basis(k, n)
GramReport gram_matrix(const TraceSpec& spec, int k);

// Hermitian Gram of (a, b) = T(a rho(b)) restricted to one sector:
//   sector 0: basis { Z^j : |j| <= m },   entries T(z^{j-k})
//   sector 1: basis { u (qZ)^j : 0 <= j <= m },
//             entries e^{-pi i c} T(P(q^-1 z) (q^-1 z)^j (q z^-1)^k)
// Throws Inconsistency when the matrix fails to be Hermitian within
// 1e-8 * scale (the functional is then not a rho-compatible trace).
GramReport hermitian_gram(const TraceSpec& spec, const ConjugationParams& conj, int sector,
                          int m);

// throws ResonanceError when t = q^{-2k}, 0 <= k <= k_max_guard (A_+ guard)
void require_plus_nonresonant(const TraceSpec& spec, int k_max_guard = 64);

} // namespace qweyl

#endif
