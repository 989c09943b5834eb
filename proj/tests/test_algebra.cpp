#include "doctest.h"

#include <random>

#include "gk/residue.hpp"
#include "gk/scalar.hpp"
#include "gk/series.hpp"

using namespace gk;

TEST_CASE("rational arithmetic and normal form") {
    scalar a(rat_of(1, 3)), b(rat_of(2, 6));
    CHECK(a == b);
    CHECK((a + b) == scalar(rat_of(2, 3)));
    CHECK(rat_str((a / b).rational_value()) == "1");
    CHECK(rat_parse("-4/6") == rat_of(-2, 3));
}

TEST_CASE("quadratic field") {
    scalar s2 = scalar::sqrt_of(2);
    CHECK(s2 * s2 == scalar(2));
    scalar x = scalar::quad(rat_of(1), rat_of(1), 2);  // 1 + sqrt2
    CHECK(x * x.inverse() == scalar(1));
    CHECK(x.inverse() == scalar::quad(rat_of(-1), rat_of(1), 2));  // (sqrt2 - 1)
    CHECK_THROWS(scalar::sqrt_of(4));
    CHECK_THROWS((void)(s2 + scalar::root_of_unity(5)));
}

TEST_CASE("cyclotomic field") {
    scalar w5 = scalar::root_of_unity(5);
    CHECK(w5.pow(5) == scalar(1));
    CHECK(w5.pow(4) == w5.inverse());
    scalar x = w5 + scalar(3);
    CHECK(x * x.inverse() == scalar(1));
    // 1 + w + w^2 + w^3 + w^4 = 0 in Q[w]/Phi_5
    scalar acc(0);
    for (int k = 0; k < 5; ++k) acc += w5.pow(k);
    CHECK(acc.is_zero());
}

TEST_CASE("cyclotomic_sum_powers") {
    CHECK(cyclotomic_sum_powers(3, 0) == scalar(3));
    CHECK(cyclotomic_sum_powers(3, 1) == scalar(0));
    CHECK(cyclotomic_sum_powers(4, 6) == scalar(0));
    CHECK(cyclotomic_sum_powers(4, 8) == scalar(4));
    CHECK(cyclotomic_sum_powers(2, 7) == scalar(0));
}

TEST_CASE("field axioms on randomized triples") {
    std::mt19937 rng(20240811);
    auto rnd_rat = [&] {
        return rat_of((long)(rng() % 19) - 9, (long)(rng() % 7) + 1);
    };
    auto rnd_scalar = [&](int kind) -> scalar {
        switch (kind) {
            case 0: return scalar(rnd_rat());
            case 1: return scalar::quad(rnd_rat(), rnd_rat(), 5);
            default: return scalar::cyclo({rnd_rat(), rnd_rat(), rnd_rat(), rnd_rat()}, 5);
        }
    };
    for (int kind = 0; kind < 3; ++kind) {
        for (int it = 0; it < 40; ++it) {
            scalar a = rnd_scalar(kind), b = rnd_scalar(kind), c = rnd_scalar(kind);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            if (!a.is_zero()) CHECK(a * a.inverse() == scalar(1));
        }
    }
}

TEST_CASE("polynomial basics") {
    poly z1 = poly::var("z1"), z2 = poly::var("z2");
    poly p = (z1 + z2) * (z1 - z2);
    CHECK(p == z1 * z1 - z2 * z2);
    CHECK(p.exact_div(z1 - z2) == z1 + z2);
    CHECK_THROWS((void)p.exact_div(z1 + poly(1)));
    CHECK(p.derivative(sym("z1")) == z1 * scalar(2));
    CHECK(p.substitute(sym("z2"), poly(scalar(3))) == z1 * z1 - poly(9));
    CHECK(poly_gcd(p, z1 * z1 - z2 * z2 + z1 + z2) == (z1 + z2).monic());
}

TEST_CASE("rf_normalize examples") {
    int z = sym("z1");
    poly zp = poly::var(z);
    // (z^2 - 1, z - 1) -> z + 1
    ratfun a = ratfun::fraction(zp * zp - poly(1), zp - poly(1));
    CHECK(a == ratfun(zp + poly(1)));
    CHECK(a.is_poly());
    // (0, z^3 + 2) -> 0
    CHECK(ratfun::fraction(poly(), zp.pow(3) + poly(2)).is_zero());
    // (a1 - a2, a1^2 - a2^2) -> 1/(a1 + a2)
    poly a1 = poly::var("z1"), a2 = poly::var("z2");
    ratfun b = ratfun::fraction(a1 - a2, a1 * a1 - a2 * a2);
    CHECK(b == ratfun(1) / ratfun(a1 + a2));
    CHECK_THROWS((void)ratfun::fraction(a1, poly()));
}

TEST_CASE("ratfun arithmetic and substitution") {
    ratfun z1 = ratfun::var("z1"), z2 = ratfun::var("z2");
    ratfun f = ratfun(1) / (z1 - z2) + ratfun(1) / (z1 + z2);
    CHECK(f == 2 * z1 / (z1 * z1 - z2 * z2));
    // removable singularity cancels before substitution
    ratfun g = (z1 * z1 - z2 * z2) / (z1 - z2);
    CHECK(g.substitute(sym("z2"), ratfun::var("z1")) == 2 * z1);
    ratfun h = ratfun(1) / (z1 - z2);
    CHECK_THROWS((void)h.substitute(sym("z2"), ratfun::var("z1")));
    // derivative
    ratfun d = (ratfun(1) / z1).derivative(sym("z1"));
    CHECK(d == -ratfun(1) / (z1 * z1));
}

TEST_CASE("alpha series windows") {
    ratfun one(1);
    aseries a = aseries::windowed(0, {one, one}, 2);       // 1 + ah + O(ah^3)
    aseries b = aseries::monomial(one, 1);                 // ah, exact
    aseries p = a * b;                                     // ah + ah^2, valid to 3
    CHECK(p.coeff(1) == one);
    CHECK(p.coeff(2) == one);
    CHECK(p.coeff(3).is_zero());
    CHECK_THROWS((void)p.coeff(4));
    aseries inv = a.inverse();
    CHECK(inv.coeff(0) == one);
    CHECK(inv.coeff(1) == -one);
    CHECK(inv.coeff(2) == one);  // 1/(1+ah) = 1 - ah + ah^2 - ...
    CHECK((a * inv).coeff(0) == one);
    CHECK((a * inv).coeff(1).is_zero());
    CHECK(aseries(one).truncated(kWinInf) == aseries(one));
}

TEST_CASE("series_compose examples") {
    // identity
    sseries s_id = sseries::monomial(aseries(1), 1);
    sseries f = sseries::windowed(1, {aseries(1), aseries(1)}, 3);  // s + s^2 + O(s^4)
    CHECK(series_compose(s_id, f) == f);
    // outer = t^2, inner = s + s^2 (trunc 3) -> s^2 + 2 s^3
    sseries outer = sseries::monomial(aseries(1), 2);
    sseries comp = series_compose(outer, f);
    CHECK(comp.coeff(2) == aseries(1));
    CHECK(comp.coeff(3) == aseries(ratfun(2)));
    // outer = t^3 with Laurent inner zeta + c/zeta in the coordinate w = 1/zeta:
    // inner = w^{-1} + c w -> w^{-3} + 3c w^{-1} + 3c^2 w + c^3 w^3
    ratfun c = ratfun::var("z2");
    sseries inner = sseries::monomial(aseries(1), -1) + sseries::monomial(aseries(c), 1);
    sseries cube = series_compose(sseries::monomial(aseries(1), 3), inner);
    CHECK(cube.coeff(-3) == aseries(1));
    CHECK(cube.coeff(-1) == aseries(3 * c));
    CHECK(cube.coeff(1) == aseries(3 * c * c));
    CHECK(cube.coeff(3) == aseries(c * c * c));
}

TEST_CASE("series_reversion examples") {
    sseries s_id = sseries::monomial(aseries(1), 1);
    CHECK(series_reversion(s_id.truncated(5)) == s_id.truncated(5));
    // f = s + s^2 -> s - s^2 + 2 s^3 - 5 s^4
    sseries f = (s_id + sseries::monomial(aseries(1), 2)).truncated(4);
    sseries g = series_reversion(f);
    CHECK(g.coeff(1) == aseries(1));
    CHECK(g.coeff(2) == aseries(ratfun(-1)));
    CHECK(g.coeff(3) == aseries(ratfun(2)));
    CHECK(g.coeff(4) == aseries(ratfun(-5)));
    // f = 2s -> s/2
    sseries h = series_reversion((s_id + s_id).truncated(3));
    CHECK(h.coeff(1) == aseries(ratfun(poly(scalar(rat_of(1, 2))))));
    // round trip on a randomized invertible series
    std::mt19937 rng(7);
    for (int it = 0; it < 10; ++it) {
        std::vector<aseries> cs;
        cs.push_back(aseries(ratfun((long)(rng() % 5) + 1)));
        for (int k = 0; k < 4; ++k) cs.push_back(aseries(ratfun((long)(rng() % 9) - 4)));
        sseries r = sseries::windowed(1, cs, 5);
        sseries back = series_compose(r, series_reversion(r));
        CHECK(back == sseries::monomial(aseries(1), 1).truncated(5));
    }
}

TEST_CASE("residue_at examples") {
    int z = sym("z1");
    ratfun zz = ratfun::var(z);
    CHECK(residue_at(ratfun(1) / zz, z, scalar(0)) == ratfun(1));
    CHECK(residue_at(ratfun(1) / (zz * zz), z, scalar(0)).is_zero());
    // zeta dzeta/(zeta^2-1) at zeta=1 -> 1/2
    ratfun f = zz / (zz * zz - ratfun(1));
    CHECK(residue_at(f, z, scalar(1)) == ratfun(poly(scalar(rat_of(1, 2)))));
    // residue at infinity: dz/z has residue -1 there
    CHECK(residue_at_infinity(ratfun(1) / zz, z) == ratfun(-1));
    CHECK(residue_at_infinity(zz * zz, z).is_zero());
}

TEST_CASE("residue sum over all poles vanishes (randomized)") {
    std::mt19937 rng(99);
    int z = sym("z1");
    ratfun zz = ratfun::var(z);
    ratfun lam = ratfun::var("l1");
    for (int it = 0; it < 12; ++it) {
        // random numerator, denominator splitting over {0, 1, -2} with mults
        poly num;
        for (int k = 0; k <= 3; ++k)
            num += poly::var(z, k) * scalar(rat_of((long)(rng() % 11) - 5));
        if (num.is_zero()) continue;
        int e0 = 1 + rng() % 2, e1 = 1 + rng() % 2, e2 = 1 + rng() % 2;
        ratfun f = ratfun(num) / (zz.pow(e0) * (zz - ratfun(1)).pow(e1) * (zz + ratfun(2)).pow(e2));
        ratfun total = residue_at(f, z, scalar(0)) + residue_at(f, z, scalar(1)) +
                       residue_at(f, z, scalar(-2)) + residue_at_infinity(f, z);
        CHECK(total.is_zero());
    }
}

TEST_CASE("partial fractions") {
    int z = sym("z1");
    ratfun zz = ratfun::var(z);
    ratfun half(poly(scalar(rat_of(1, 2))));
    // 1/(z^2-1) = (1/2)/(z-1) - (1/2)/(z+1)
    ratfun f = ratfun(1) / (zz * zz - ratfun(1));
    auto pf = partial_fractions(f, z, {{scalar(1), 1}, {scalar(-1), 1}});
    CHECK(pf.terms[0].coeffs[0] == half);
    CHECK(pf.terms[1].coeffs[0] == -half);
    CHECK(recombine(pf, z) == f);
    // 1/z^2 already atomic
    ratfun g = ratfun(1) / (zz * zz);
    auto pg = partial_fractions(g, z, {{scalar(0), 2}});
    CHECK(pg.terms[0].coeffs[0].is_zero());
    CHECK(pg.terms[0].coeffs[1] == ratfun(1));
    CHECK(recombine(pg, z) == g);
    // 3z/(z^2-1) = (3/2)/(z-1) + (3/2)/(z+1)
    ratfun h = 3 * zz / (zz * zz - ratfun(1));
    auto ph = partial_fractions(h, z, {{scalar(1), 1}, {scalar(-1), 1}});
    CHECK(ph.terms[0].coeffs[0] == half * ratfun(3));
    CHECK(ph.terms[1].coeffs[0] == half * ratfun(3));
    CHECK(recombine(ph, z) == h);
    // roots outside the declared tower are rejected
    ratfun bad = ratfun(1) / (zz * zz - ratfun(2));
    CHECK_THROWS((void)partial_fractions(bad, z, {{scalar(1), 1}, {scalar(-1), 1}}));
    // randomized recombination
    std::mt19937 rng(5);
    for (int it = 0; it < 8; ++it) {
        poly num;
        for (int k = 0; k <= 4; ++k)
            num += poly::var(z, k) * scalar(rat_of((long)(rng() % 9) - 4));
        ratfun q = ratfun(num) / (zz.pow(2) * (zz - ratfun(3)));
        auto pq = partial_fractions(q, z, {{scalar(0), 2}, {scalar(3), 1}});
        CHECK(recombine(pq, z) == q);
    }
}

TEST_CASE("poly part at infinity") {
    int z = sym("z1");
    ratfun zz = ratfun::var(z);
    ratfun f = (zz.pow(3) + ratfun(1)) / (zz - ratfun(2));
    // z^3+1 = (z^2+2z+4)(z-2) + 9
    CHECK(poly_part_at_infinity(f, z) == zz * zz + 2 * zz + ratfun(4));
    CHECK(f - poly_part_at_infinity(f, z) == ratfun(9) / (zz - ratfun(2)));
}

TEST_CASE("subst_series Taylor substitution") {
    int z = sym("z1");
    ratfun f = ratfun(1) / ratfun::var(z);
    // z -> 1 + ah: 1/(1+ah) = 1 - ah + ah^2 - O(ah^3)
    aseries val = aseries(ratfun(1)) + aseries::monomial(ratfun(1), 1);
    aseries out = subst_series(f, z, val, 2);
    CHECK(out.coeff(0) == ratfun(1));
    CHECK(out.coeff(1) == ratfun(-1));
    CHECK(out.coeff(2) == ratfun(1));
}
