#include <doctest.h>

#include <thread>

#include "qweyl/trace_alg.hpp"
#include "test_util.hpp"

using namespace qweyl;
using testutil::random_laurent;
using testutil::random_word;

namespace {

AlgebraParams annulus_params(int n, cplx q) {
    LaurentPoly P = LaurentPoly::constant(1.0);
    for (int i = 0; i < n; ++i) {
        LaurentPoly f;
        f.set_coeff(1, 1.0);
        f.set_coeff(0, cplx(0.7 + 0.2 * i, 0.15 * (i % 2 ? 1 : -1)));
        P = P * f;
    }
    return AlgebraParams(std::move(P), q);
}

std::vector<cplx> random_moments(int n) {
    std::vector<cplx> m;
    for (int i = 0; i < n; ++i) m.push_back(testutil::random_cplx() + cplx(0.5, 0.0));
    return m;
}

} // namespace

TEST_CASE("phi acts diagonally with the cited factor") {
    const cplx q = 0.5, t = 2.0;
    // q^-1 (1 - t q^2) = 2 (1 - 0.5) = 1
    CHECK(coeff_distance(phi(LaurentPoly::monomial(1), q, t), LaurentPoly::monomial(1)) < 1e-15);
    CHECK(coeff_distance(phi(LaurentPoly::constant(1.0), q, t),
                         LaurentPoly::constant(1.0 - t)) < 1e-15);
    // t = q^{-2k} kills z^k
    CHECK(phi(LaurentPoly::monomial(1), q, 4.0).is_zero());

    // phi really is S(q^-1 z) - t S(q z)
    const LaurentPoly S = random_laurent(-3, 3);
    const LaurentPoly direct = S.scale_arg(1.0 / q) - S.scale_arg(q) * t;
    CHECK(coeff_distance(phi(S, q, t), direct) < 1e-13);
}

TEST_CASE("phi_inverse: round trip, explicit value, resonance") {
    const cplx q = 0.5;
    for (int trial = 0; trial < 10; ++trial) {
        const LaurentPoly S = random_laurent(-4, 4);
        const cplx t = testutil::random_cplx() + cplx(1.5, 0.5);
        CHECK(coeff_distance(phi_inverse(phi(S, q, t), q, t), S) < 1e-12);
    }
    CHECK(coeff_distance(phi_inverse(LaurentPoly::monomial(1), q, 2.0),
                         LaurentPoly::monomial(1)) < 1e-15);
    CHECK_THROWS_AS((void)phi_inverse(LaurentPoly::monomial(1), q, 4.0), ResonanceError);
    try {
        (void)phi_inverse(LaurentPoly::monomial(1), q, 4.0);
    } catch (const ResonanceError& e) {
        CHECK(e.exponent() == 1);
    }
}

TEST_CASE("trace_eval: degree support, 1x1 hand oracle, moment reproduction") {
    LaurentPoly P;
    P.set_coeff(1, 1.0);
    P.set_coeff(0, -1.5);
    TraceSpec spec(AlgebraParams(P, 0.5), 2.0, {cplx(1.0)});

    CHECK(trace_eval(spec, AlgebraElement::u()) == cplx(0.0));

    // solve T(phi(P)) = 0 by hand: T(Z) = -1.5 T(1)
    CHECK(std::abs(trace_eval(spec, AlgebraElement::z_power(1)) - cplx(-1.5)) < 1e-13);

    const AlgebraParams params = annulus_params(3, cplx(0.45, 0.05));
    const auto moments = random_moments(3);
    TraceSpec spec3(params, cplx(1.3, 0.4), moments);
    for (int i = 0; i < 3; ++i) {
        const cplx got = trace_eval(spec3, AlgebraElement::z_power(spec3.window_start + i));
        CHECK(std::abs(got - moments[size_t(i)]) < 1e-12 * (1.0 + std::abs(moments[size_t(i)])));
    }
}

TEST_CASE("ideal annihilation: T(phi(P z^k)) = 0") {
    for (const int n : {1, 2, 3}) {
        const AlgebraParams params = annulus_params(n, cplx(0.5, 0.0));
        TraceSpec spec(params, cplx(0.8, 0.3), random_moments(n));
        double scale = 0.0;
        for (const cplx& m : spec.moments) scale = std::max(scale, std::abs(m));
        for (int k = -8; k <= 8; ++k) {
            const LaurentPoly probe = phi(params.P.shifted(k), params.q, spec.t);
            CHECK(std::abs(trace_eval_poly(spec, probe)) <=
                  1e-10 * (1.0 + scale) * (1.0 + probe.max_abs_coeff()));
        }
    }
}

TEST_CASE("twisted-trace identity on random elements") {
    for (const int n : {1, 2, 3}) {
        const AlgebraParams params = annulus_params(n, cplx(0.5, 0.0));
        const cplx t(1.1, 0.6);
        TraceSpec spec(params, t, random_moments(n));
        for (int trial = 0; trial < 25; ++trial) {
            const AlgebraElement a = random_word(3, params);
            const AlgebraElement b = random_word(3, params);
            const cplx lhs = trace_eval(spec, multiply(a, b, params));
            const cplx rhs = trace_eval(spec, multiply(b, apply_g_t(a, t), params));
            CHECK(std::abs(lhs - rhs) <= 1e-9 * (1.0 + std::abs(lhs)));
        }
    }
}

TEST_CASE("trace_eval is linear in the moments") {
    const AlgebraParams params = annulus_params(2, cplx(0.5, 0.0));
    const cplx t(0.9, 0.2);
    const LaurentPoly A = random_laurent(-5, 5);
    const auto m = random_moments(2);
    const cplx full = trace_eval_poly(TraceSpec(params, t, m), A);
    cplx recombined = 0.0;
    for (int i = 0; i < 2; ++i) {
        std::vector<cplx> basis(2, cplx(0.0));
        basis[size_t(i)] = 1.0;
        recombined += m[size_t(i)] * trace_eval_poly(TraceSpec(params, t, basis), A);
    }
    CHECK(std::abs(full - recombined) < 1e-11 * (1.0 + std::abs(full)));
}

TEST_CASE("trace space dimension equals n, generic and resonant") {
    for (const int n : {1, 2, 3, 4}) {
        const AlgebraParams params = annulus_params(n, cplx(0.5, 0.0));
        const ExponentWindow window{-2 * n, 5 * n};
        CHECK(trace_space_dimension(params, cplx(1.7, 0.3), window) == n);
    }
    // resonant t = q^-2
    const AlgebraParams params = annulus_params(2, cplx(0.5, 0.0));
    CHECK(trace_space_dimension(params, cplx(4.0), ExponentWindow{-4, 10}) == 2);
    CHECK_THROWS_AS(
        (void)trace_space_dimension(params, cplx(1.7), ExponentWindow{0, 3}), Error);
}

TEST_CASE("gram matrix: unit word, degree blocks, resonance guard") {
    const AlgebraParams params = annulus_params(2, cplx(0.5, 0.0));
    const auto moments = random_moments(2);
    TraceSpec spec(params, cplx(1.2, 0.1), moments);
    REQUIRE(spec.window_start == 0);

    const GramReport g0 = gram_matrix(spec, 0);
    CHECK(g0.dim == 1);
    CHECK(std::abs(g0.matrix.at(0, 0) - moments[0]) < 1e-13);

    const GramReport g = gram_matrix(spec, 4);
    const auto basis = filtered_basis(4, params.n);
    // entries vanish off the degree-pairing blocks
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = 0; j < basis.size(); ++j) {
            const int di = basis[i].components().begin()->first;
            const int dj = basis[j].components().begin()->first;
            if (di + dj != 0)
                CHECK(std::abs(g.matrix.at(int(i), int(j))) < 1e-12);
        }

    TraceSpec resonant(params, cplx(4.0), moments); // t = q^-2 on A_+
    CHECK_THROWS_AS((void)gram_matrix(resonant, 2), ResonanceError);
}

TEST_CASE("resonant Laurent twist: coefficient-extraction trace") {
    // sl2-shaped P on the window {-1, 0}, t = q^-2 resonant with k0 = 1
    LaurentPoly P;
    P.set_coeff(1, 1.0);
    P.set_coeff(-1, 1.0);
    P.set_coeff(0, 3.0);
    const cplx q = 0.5;
    AlgebraParams params(P, q);
    const cplx t = 1.0 / (q * q);

    TraceSpec extraction(params, t, -1, {cplx(0.0), cplx(0.0)});
    extraction.resonant_extra = {{1, cplx(1.0)}};

    // T1(z) = 1, T1(z^j) = 0 on the window
    CHECK(std::abs(trace_eval(extraction, AlgebraElement::z_power(1)) - cplx(1.0)) < 1e-13);
    CHECK(std::abs(trace_eval(extraction, AlgebraElement::z_power(0))) < 1e-13);
    CHECK(std::abs(trace_eval(extraction, AlgebraElement::z_power(-1))) < 1e-13);

    // it annihilates the ideal, hence is a genuine twisted trace
    for (int trial = 0; trial < 10; ++trial) {
        const LaurentPoly S = random_laurent(-3, 3);
        const LaurentPoly probe = phi(P * S, q, t);
        CHECK(std::abs(trace_eval_poly(extraction, probe)) <
              1e-10 * (1.0 + probe.max_abs_coeff()));
    }

    // twisted-trace identity through the algebra
    for (int trial = 0; trial < 10; ++trial) {
        const AlgebraElement a = random_word(3, params);
        const AlgebraElement b = random_word(3, params);
        const cplx lhs = trace_eval(extraction, multiply(a, b, params));
        const cplx rhs = trace_eval(extraction, multiply(b, apply_g_t(a, t), params));
        CHECK(std::abs(lhs - rhs) <= 1e-9 * (1.0 + std::abs(lhs)));
    }

    // incompatible window moments are rejected
    TraceSpec bad(params, t, -1, {cplx(0.3), cplx(0.4)});
    bad.resonant_extra = {{1, cplx(0.0)}};
    CHECK_THROWS_AS((void)trace_eval(bad, AlgebraElement::z_power(2)), Error);
}

TEST_CASE("hermitian gram: sector 0 basics") {
    LaurentPoly P;
    P.set_coeff(1, 1.0);
    P.set_coeff(-1, 1.0);
    P.set_coeff(0, 3.0);
    AlgebraParams params(P, cplx(0.5, 0.0));
    const ConjugationParams conj(params, 0.0);

    // real symmetric moments give a Hermitian Toeplitz sector-0 matrix
    TraceSpec spec(params, conj.t(), -1, {cplx(0.2), cplx(1.0)});
    const GramReport g = hermitian_gram(spec, conj, 0, 0);
    CHECK(g.dim == 1);
    CHECK(std::abs(g.matrix.at(0, 0) - cplx(1.0)) < 1e-12);
    REQUIRE(g.min_eigenvalue.has_value());
    CHECK(*g.min_eigenvalue > 0.0);
}

TEST_CASE("pure value semantics: concurrent multiplies and traces agree") {
    const AlgebraParams params = annulus_params(2, cplx(0.5, 0.0));
    TraceSpec spec(params, cplx(1.3, 0.2), {cplx(0.7, 0.1), cplx(-0.2, 0.4)});
    std::vector<AlgebraElement> words;
    for (int i = 0; i < 16; ++i) words.push_back(testutil::random_word(4, params));

    std::vector<cplx> serial;
    for (const auto& w : words)
        serial.push_back(trace_eval(spec, multiply(w, w, params)));

    std::vector<cplx> parallel(words.size());
    std::vector<std::thread> pool;
    for (int t = 0; t < 4; ++t)
        pool.emplace_back([&, t] {
            for (size_t i = size_t(t); i < words.size(); i += 4)
                parallel[i] = trace_eval(spec, multiply(words[i], words[i], params));
        });
    for (auto& th : pool) th.join();

    for (size_t i = 0; i < words.size(); ++i)
        CHECK(std::abs(serial[i] - parallel[i]) == 0.0);
}
