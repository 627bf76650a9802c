#ifndef QWEYL_NONDEGENERACY_HPP
#define QWEYL_NONDEGENERACY_HPP

#include <optional>
#include <span>
#include <vector>

#include "qweyl/trace_alg.hpp"

namespace qweyl {

// The explicit t = q^2 weight of the nondegeneracy construction: simple poles
// at q^{2k} a and q^{2k} b, b = q^2 / a, residues normalized by A/a = 1,
// B/b = -1, additive constant fixed to 0.
struct ExplicitWeightParams {
    cplx a;
    cplx q;

    ExplicitWeightParams(cplx a_, cplx q_);
    cplx b() const { return q * q / a; }
    cplx residue_a() const { return a; }
    cplx residue_b() const { return -b(); }
};

// Mittag-Leffler series with k = -K..K; negative-k terms use the rewritten
// form A x / (a (x - q^{2k} a)) + B x / (b (x - q^{2k} b)) for convergence.
cplx mittag_leffler_w(const ExplicitWeightParams& p, cplx x, int truncation_K);

// coefficient of z^{-i-1} in the Laurent expansion of w on the unit circle:
// (a^{i+1} - q^{2i+2} a^{-i-1}) / (1 - q^{2(i+1)})
cplx laurent_coeff_w(const ExplicitWeightParams& p, int i);

// M_ij = int_{S^1} R(z) w(z) z^{i+j} dz (Hankel), 0 <= i,j <= m, computed by
// quadrature with dz = 2 pi i e^{2 pi i x} dx
Matrix hilbert_like_matrix(const LaurentPoly& R, int m, const ExplicitWeightParams& p,
                           double tol = -1.0, int truncation_K = 24);

// det [1 / (x_i - y_j)] in closed form
cplx cauchy_det_closed_form(std::span<const cplx> x, std::span<const cplx> y);

struct NondegeneracyReport {
    struct PerK {
        int k = 0;
        int dim = 0;
        cplx det = 0.0;
        double min_singular_value = 0.0;
        double max_singular_value = 0.0;
        bool nondegenerate = false;
    };
    std::vector<PerK> per_k;
    bool nondegenerate_up_to_k_max = false;
    int degenerate_at = -1; // first failing k, -1 when none
};

// Gram determinant scan over filtration levels 0..k_max. With a conjugation
// the pairing is the Hermitian (a,b) = T(a rho(b)); without it the bilinear
// (a,b) = T(ab) of the star-product correspondence.
NondegeneracyReport nondeg_scan(const TraceSpec& spec,
                                const std::optional<ConjugationParams>& conj, int k_max);

// Assembled trace of the explicit weight: P = (z - a)(z - b), t = q^2,
// moments t_i = laurent_coeff_w(i) on the window {0, 1}.
TraceSpec explicit_trace_spec(const ExplicitWeightParams& p);

} // namespace qweyl

#endif
