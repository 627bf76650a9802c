#ifndef QWEYL_POSITIVITY_HPP
#define QWEYL_POSITIVITY_HPP

#include <optional>
#include <vector>

#include "qweyl/trace_analytic.hpp"

namespace qweyl {

// Parity bit separating P from -P: (-1)^m0 P(e^{2 pi i x}) / prod cos(pi(x - beta_j))
// over the real beta_j is positive on R. Sign constancy is verified across the
// sample grid.
int m0_sign(const LaurentPoly& P, const std::vector<cplx>& beta, cplx tau);

struct ConeMembershipReport {
    bool pairing_ok = false;     // a_i closed under conjugation in pairs
    bool parity_ok = false;      // sum a - sum beta - c - m0 in 2Z
    bool lambda_positive = false;
    bool sampled_sign_ok = false; // both grid sign conditions
    bool phi_zero_ok = true;      // general case: no delta part
    bool masses_ok = true;        // general case: masses real and >= 0
    int m0 = 0;
    bool member = false;
    double grid_min_w = 0.0;
    double grid_min_shifted = 0.0;
};

// Membership test for the annulus-interior classification (all roots of P
// inside |q| < |z| < 1/|q|). Throws WrongRegime otherwise.
ConeMembershipReport cone_membership_annulus(const WeightParams& wp, const LaurentPoly& P);

struct PositivityCertificate {
    std::vector<double> sector0_min_eig; // m = 1..m_max
    std::vector<double> sector1_min_eig;
    std::optional<double> grid_min_w;       // set when a weight was available
    std::optional<double> grid_min_shifted;
    enum class Verdict { Positive, NotPositive, Inconclusive } verdict =
        Verdict::Inconclusive;
};

PositivityCertificate positivity_certificate(const TraceSpec& spec,
                                             const ConjugationParams& conj, int m_max);

// Variant with the generating weight attached: adds the sampled minima of w
// and of e^{-pi i c} P(e^{2 pi i x}) w(x + tau/2) to the certificate.
PositivityCertificate positivity_certificate(const TraceSpec& spec,
                                             const ConjugationParams& conj, int m_max,
                                             const WeightParams& wp);

// General-case membership: non-member as soon as the delta part is nonempty
// (Phi != 0) or a point mass has negative real part / a nontrivial imaginary
// part; otherwise the weight part is tested against P_circ.
ConeMembershipReport general_cone_check(const GeneralTraceSpec& spec, const LaurentPoly& P,
                                        cplx q);

// Sampled values of w(x) and e^{-pi i c} P(e^{2 pi i x}) w(x + tau/2) on the
// offset grid x = (j + 1/2)/grid. For weights outside L_R the samples pick up
// imaginary parts; real_ok records that both stayed real to 1e-7 relative.
struct SignSamples {
    double min_w = 0.0;
    double min_shifted = 0.0;
    double max_abs_w = 0.0;       // grid max |value|, the nonnegativity scale
    double max_abs_shifted = 0.0;
    bool real_ok = true;

    // analytic nonnegative functions may dip to tiny negatives at double
    // zeros; the tolerance is relative to the grid max
    bool nonnegative() const {
        return real_ok && min_w >= -1e-10 * max_abs_w &&
               min_shifted >= -1e-10 * max_abs_shifted;
    }
};

SignSamples sampled_sign_minima(const WeightParams& wp, const LaurentPoly& P, int grid = 512);

} // namespace qweyl

#endif
