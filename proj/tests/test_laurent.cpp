#include <doctest.h>

#include "qweyl/laurent.hpp"
#include "test_util.hpp"

using namespace qweyl;
using testutil::random_laurent;

namespace {
LaurentPoly from_list(std::initializer_list<std::pair<int, cplx>> terms) {
    return LaurentPoly::from_terms(std::span<const std::pair<int, cplx>>(terms.begin(), terms.size()));
}
} // namespace

TEST_CASE("eval: symmetric, zero, quadratic") {
    const LaurentPoly p = from_list({{1, 1.0}, {-1, 1.0}});
    CHECK(std::abs(p.eval(1.0) - 2.0) < 1e-15);

    CHECK(LaurentPoly().eval(cplx(0.3, 0.7)) == cplx(0.0));

    const LaurentPoly q = from_list({{2, 1.0}, {1, -3.0}, {0, 1.0}});
    CHECK(std::abs(q.eval(2.0) - (-1.0)) < 1e-14);

    CHECK_THROWS_AS((void)q.eval(0.0), Error);
}

TEST_CASE("scale_arg: monomial, inverse, direct") {
    const LaurentPoly z = LaurentPoly::monomial(1);
    const cplx qinv = 1.0 / cplx(0.5, 0.1);
    CHECK(coeff_distance(z.scale_arg(qinv), LaurentPoly::monomial(1, qinv)) < 1e-15);

    const LaurentPoly p = random_laurent(-3, 4);
    const cplx s(0.8, -0.3);
    CHECK(coeff_distance(p.scale_arg(s).scale_arg(1.0 / s), p) < 1e-13);

    const LaurentPoly sym = from_list({{1, 1.0}, {-1, 1.0}});
    const LaurentPoly expect = from_list({{1, 2.0}, {-1, 0.5}});
    CHECK(coeff_distance(sym.scale_arg(2.0), expect) < 1e-15);

    CHECK_THROWS_AS((void)p.scale_arg(0.0), Error);
}

TEST_CASE("scale_arg is multiplicative") {
    for (int trial = 0; trial < 20; ++trial) {
        const LaurentPoly p = random_laurent(-2, 3);
        const LaurentPoly r = random_laurent(-1, 2);
        const cplx s = testutil::random_cplx() + cplx(1.5, 0.0);
        CHECK(coeff_distance((p * r).scale_arg(s), p.scale_arg(s) * r.scale_arg(s)) <
              1e-11 * (1.0 + (p * r).max_abs_coeff()));
    }
}

TEST_CASE("divmod_window: self-division and explicit quotient") {
    const LaurentPoly p = from_list({{1, 1.0}, {0, -1.5}});
    const auto self = divmod_window(p, p, 0);
    CHECK(coeff_distance(self.quotient, LaurentPoly::constant(1.0)) < 1e-15);
    CHECK(self.remainder.is_zero());

    const auto dm = divmod_window(LaurentPoly::monomial(2), p, 0);
    CHECK(coeff_distance(dm.quotient, from_list({{1, 1.0}, {0, 1.5}})) < 1e-15);
    CHECK(coeff_distance(dm.remainder, LaurentPoly::constant(2.25)) < 1e-15);
}

TEST_CASE("divmod_window rejects unusable divisors") {
    CHECK_THROWS_AS((void)divmod_window(LaurentPoly::monomial(2), LaurentPoly(), 0), Error);
    // a pure monomial has no nonzero roots to divide by
    CHECK_THROWS_AS((void)divmod_window(LaurentPoly::monomial(2), LaurentPoly::monomial(1), 0),
                    Error);
}

TEST_CASE("divmod_window round trip on random Laurent input") {
    for (int trial = 0; trial < 40; ++trial) {
        const LaurentPoly dividend = random_laurent(-6, 6);
        // well-scaled end coefficients keep the reduction steps conditioned
        LaurentPoly divisor = random_laurent(-2, 2);
        divisor.set_coeff(-2, divisor.coeff(-2) + cplx(0.7, 0.4));
        divisor.set_coeff(2, divisor.coeff(2) + cplx(0.9, -0.3));
        if (divisor.nonzero_root_count() < 1) continue;
        const int w = int(testutil::uniform(-4.0, 4.0));
        const auto dm = divmod_window(dividend, divisor, w);
        REQUIRE(!dm.remainder.is_zero() ? dm.remainder.min_exp() >= w : true);
        if (!dm.remainder.is_zero()) {
            CHECK(dm.remainder.min_exp() >= w);
            CHECK(dm.remainder.max_exp() <= w + divisor.nonzero_root_count() - 1);
        }
        const LaurentPoly back = dm.quotient * divisor + dm.remainder;
        CHECK(coeff_distance(back, dividend) <= 1e-10 * (1.0 + dividend.max_abs_coeff()));
    }
}

TEST_CASE("nonzero_roots: linear, annulus pair, double root") {
    const cplx a(0.7, 0.4);
    const auto lin = nonzero_roots(from_list({{1, 1.0}, {0, -a}}));
    REQUIRE(lin.roots.size() == 1);
    CHECK(std::abs(lin.roots[0].location - a) < 1e-12);
    CHECK(lin.roots[0].multiplicity == 1);

    // z + z^-1 - (a + 1/a) has roots a and 1/a
    const cplx b(1.3, 0.25);
    const auto pair = nonzero_roots(from_list({{1, 1.0}, {-1, 1.0}, {0, -(b + 1.0 / b)}}));
    REQUIRE(pair.total_multiplicity() == 2);
    double err = 1e9;
    for (const auto& e : pair.roots)
        err = std::min(err, std::abs(e.location - b));
    CHECK(err < 1e-10);

    const auto dbl = nonzero_roots(from_list({{2, 1.0}, {1, -4.0}, {0, 4.0}}));
    REQUIRE(dbl.roots.size() == 1);
    CHECK(dbl.roots[0].multiplicity == 2);
    CHECK(std::abs(dbl.roots[0].location - 2.0) < 1e-9);

    CHECK_THROWS_AS((void)nonzero_roots(LaurentPoly()), Error);
}

TEST_CASE("nonzero_roots count equals exponent span") {
    for (int trial = 0; trial < 15; ++trial) {
        const LaurentPoly p = random_laurent(-3, 4);
        if (p.is_zero()) continue;
        CHECK(nonzero_roots(p).total_multiplicity() == p.nonzero_root_count());
    }
}

TEST_CASE("nonzero_roots recovers known configurations at higher degree") {
    // degree 12 with spread moduli
    std::vector<cplx> roots;
    for (int i = 0; i < 12; ++i) {
        const double mod = 0.4 + 0.25 * i;
        const double arg = 0.5 * i + 0.2;
        roots.push_back(mod * std::exp(cplx(0.0, arg)));
    }
    const LaurentPoly p = LaurentPoly::from_roots(roots, -5, cplx(0.8, 0.4));
    const auto found = nonzero_roots(p).flattened();
    REQUIRE(found.size() == 12);
    for (const cplx& r : roots) {
        double best = 1e9;
        for (const cplx& f : found) best = std::min(best, std::abs(f - r));
        CHECK(best < 1e-8 * (1.0 + std::abs(r)));
    }

    // triple root among simple ones
    const std::vector<cplx> mult{cplx(1.5, 0.0), cplx(1.5, 0.0), cplx(1.5, 0.0),
                                 cplx(0.5, 0.5), cplx(-0.8, 0.0)};
    const auto clustered = nonzero_roots(LaurentPoly::from_roots(mult));
    int three = 0;
    for (const auto& e : clustered.roots)
        if (e.multiplicity == 3) {
            ++three;
            CHECK(std::abs(e.location - cplx(1.5)) < 1e-9);
        }
    CHECK(three == 1);
    CHECK(clustered.total_multiplicity() == 5);

    // genuinely distinct roots 1e-5 apart must not be merged into a double
    const std::vector<cplx> close{cplx(0.9, 0.0), cplx(0.9 + 1e-5, 0.0), cplx(-1.1, 0.3)};
    const auto kept = nonzero_roots(LaurentPoly::from_roots(close));
    CHECK(kept.roots.size() == 3);
    for (const auto& e : kept.roots) CHECK(e.multiplicity == 1);
}

TEST_CASE("conj_reflect: fixed point, monomial, sampled identity, involution") {
    const LaurentPoly sym = from_list({{1, 1.0}, {-1, 1.0}});
    CHECK(coeff_distance(sym.conj_reflect(), sym) == 0.0);

    const LaurentPoly iz = LaurentPoly::monomial(1, cplx(0.0, 1.0));
    CHECK(coeff_distance(iz.conj_reflect(), LaurentPoly::monomial(-1, cplx(0.0, -1.0))) == 0.0);

    for (int trial = 0; trial < 10; ++trial) {
        const LaurentPoly p = random_laurent(-2, 3);
        CHECK(coeff_distance(p.conj_reflect().conj_reflect(), p) == 0.0);
        const double x = testutil::uniform(0.0, 1.0);
        const cplx z = std::exp(cplx(0.0, 2.0 * M_PI * x));
        CHECK(std::abs(p.conj_reflect().eval(z) - std::conj(p.eval(z))) <
              1e-12 * (1.0 + std::abs(p.eval(z))));
    }
}

TEST_CASE("from_roots and derivative agree with finite products") {
    const std::vector<cplx> roots{cplx(1.2, 0.0), cplx(0.5, 0.5), cplx(0.5, -0.5)};
    const LaurentPoly p = LaurentPoly::from_roots(roots, -1, 2.0);
    const cplx z(0.9, 0.3);
    cplx expect = 2.0 / z;
    for (const cplx& r : roots) expect *= (z - r);
    CHECK(std::abs(p.eval(z) - expect) < 1e-13);

    const double h = 1e-6;
    const cplx fd = (p.eval(z + h) - p.eval(z - h)) / (2.0 * h);
    CHECK(std::abs(p.eval_derivative(z, 1) - fd) < 1e-7);
}
