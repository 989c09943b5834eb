#pragma once

#include "series.hpp"

namespace gk {

// Laurent expansion of f at var = p + s, to order s^{s_hi}.
inline sseries expand_at(const ratfun& f, int var, const aseries& p, int s_hi,
                         int a_hi = kWinInf) {
    sseries point = sseries::monomial(p, 0) + sseries::monomial(aseries(1), 1);
    return eval_at(f, {{var, point}}, s_hi, a_hi);
}
inline sseries expand_at(const ratfun& f, int var, const scalar& p, int s_hi) {
    return expand_at(f, var, aseries(ratfun(p)), s_hi);
}

// residue of the differential f dvar at the finite point p, with the
// convention Res_{z=0} dz/z = 1
inline ratfun residue_at(const ratfun& f, int var, const scalar& p, int order_hint = 8) {
    for (int w = order_hint;; w *= 2) {
        if (w > 4096) throw std::domain_error("residue_at: expansion window exhausted");
        try {
            sseries e = expand_at(f, var, p, w);
            aseries c = e.coeff(-1);
            if (c.is_zero()) return ratfun();
            return c.coeff(0);
        } catch (const window_error&) {
            continue;
        } catch (const std::domain_error& err) {
            if (std::string(err.what()).find("window") != std::string::npos) continue;
            throw;
        }
    }
}

// ---- partial fractions over a declared root list ----

struct partial_fraction_term {
    scalar root;
    std::vector<ratfun> coeffs;  // coeffs[k-1] / (var - root)^k
};
struct partial_fractions_result {
    std::vector<ratfun> poly_part;  // coefficient of var^k at index k
    std::vector<partial_fraction_term> terms;
};

inline partial_fractions_result partial_fractions(const ratfun& f, int var,
                                                  const std::vector<std::pair<scalar, int>>& roots) {
    poly den = f.den_poly();
    poly check(scalar(1));
    for (auto& [r, m] : roots) check *= (poly::var(var) - poly(r)).pow(m);
    if (!(check * den.leading_coeff()) .divides(den) || den.degree(var) != check.degree(var))
        throw std::domain_error("partial_fractions: denominator roots outside the declared list");
    partial_fractions_result out;
    auto sp = split_at_infinity(f, var);
    out.poly_part = sp.poly_part;
    for (auto& [r, m] : roots) {
        partial_fraction_term t;
        t.root = r;
        sseries e = expand_at(f, var, r, 2 * m + 2);
        for (int k = 1; k <= m; ++k) {
            aseries c = e.coeff(-k);
            t.coeffs.push_back(c.is_zero() ? ratfun() : c.coeff(0));
        }
        out.terms.push_back(std::move(t));
    }
    return out;
}

inline ratfun recombine(const partial_fractions_result& pf, int var) {
    ratfun out;
    for (size_t k = 0; k < pf.poly_part.size(); ++k)
        out += pf.poly_part[k] * ratfun::var(var, (int)k);
    for (auto& t : pf.terms)
        for (size_t k = 0; k < t.coeffs.size(); ++k)
            out += t.coeffs[k] / ratfun(poly::var(var) - poly(t.root)).pow((long)k + 1);
    return out;
}

// ---- composition / reversion of local series ----

// outer(inner): inner must have positive valuation unless outer has finite
// support (then inner just needs to be invertible for negative powers)
inline sseries series_compose(const sseries& outer, const sseries& inner, int a_hi = kWinInf) {
    if (outer.is_zero()) return outer;
    if (!inner.is_zero() && inner.lo() <= 0 && !outer.exact())
        throw std::domain_error("series_compose: inner valuation must be positive");
    sseries out;
    int cap = kWinInf;
    if (!outer.exact() && !inner.is_zero() && inner.lo() >= 1)
        cap = (outer.hi() + 1) * inner.lo() - 1;
    sseries ipow(aseries(1));
    int k = 0;
    // non-negative powers of the outer variable
    for (int d = std::max(0, outer.lo()); d < outer.lo() + (int)outer.coeffs().size(); ++d) {
        while (k < d) {
            ipow = ipow * inner;
            ++k;
        }
        aseries c = outer.coeff(d);
        if (!c.is_zero()) out += ipow * c;
    }
    if (outer.lo() < 0) {
        sseries iinv = inner.inverse(a_hi);
        sseries ineg(aseries(1));
        int kk = 0;
        for (int d = -1; d >= outer.lo(); --d) {
            while (kk < -d) {
                ineg = ineg * iinv;
                ++kk;
            }
            aseries c = outer.coeff(d);
            if (!c.is_zero()) out += ineg * c;
        }
    }
    return out.truncated(cap);
}

// g with outer(g(s)) = s; outer must have a simple zero
inline sseries series_reversion(const sseries& f, int a_hi = kWinInf) {
    if (f.is_zero() || f.lo() != 1)
        throw std::domain_error("series_reversion: input needs a simple zero");
    int hi = f.exact() ? (int)f.coeffs().size() + 2 : f.hi();
    sseries s_id = sseries::monomial(aseries(1), 1).truncated(hi);
    sseries g = sseries::monomial(f.coeff(1).inverse(a_hi), 1).truncated(hi);
    sseries fp = f.derivative();
    for (int it = 0; it < 32; ++it) {
        sseries err = series_compose(f, g, a_hi) - s_id;
        if (err.is_zero()) break;
        g = g - err * series_compose(fp, g, a_hi).inverse(a_hi);
        g = g.truncated(hi);
        if (err.lo() > hi) break;
    }
    return g;
}

// Nontrivial local solution tau(s) of X(b + tau) = X(b + s), tau = -s + ...,
// at a simple branchpoint b of the projection X (X'(b) = 0, X''(b) unit).
inline sseries local_deck(const ratfun& X, int var, const aseries& b, int s_hi,
                          int a_hi = kWinInf) {
    sseries P = expand_at(X, var, b, s_hi + 2, a_hi);
    P = P - sseries::monomial(P.coeff(0), 0);
    if (P.is_zero() || P.lo() != 2)
        throw std::domain_error("local_deck: branchpoint is not simple");
    sseries Pp = P.derivative();
    sseries tau = sseries::monomial(-aseries(1), 1).truncated(s_hi);
    for (int it = 0; it < 32; ++it) {
        sseries err = series_compose(P, tau, a_hi) - P.truncated(s_hi + 1);
        if (err.is_zero()) break;
        tau = tau - err * series_compose(Pp, tau, a_hi).inverse(a_hi);
        tau = tau.truncated(s_hi);
        if (err.lo() > s_hi + 1) break;
    }
    return tau;
}

// expansion in w = 1/var at var = infinity: coefficient of w^k is the
// coefficient of var^{-k}
inline sseries expand_at_infinity(const ratfun& f, int var, int s_hi) {
    return eval_at(f, {{var, sseries::monomial(aseries(1), -1)}}, s_hi);
}

// ---- deck-transformation sums via traces ----
//
// For R rational in `var` and P(x) monic with coefficients in the rational
// function field, computes  sum_{P(x)=0} R(x)  as the trace of R in K[x]/(P).
// Coefficients are aseries so curve data with ahat-series coefficients works.

using upoly = std::vector<aseries>;  // coefficient of x^k at index k

inline upoly umod(upoly a, const upoly& p, int a_hi) {
    int n = (int)p.size() - 1;
    while ((int)a.size() - 1 >= n) {
        aseries lead = a.back();
        a.pop_back();
        if (lead.is_zero()) continue;
        int off = (int)a.size() - n;
        for (int i = 0; i < n; ++i) a[off + i] -= lead * p[i];
    }
    while (!a.empty() && a.back().is_zero()) a.pop_back();
    return a;
}

inline upoly umul_mod(const upoly& a, const upoly& b, const upoly& p, int a_hi) {
    if (a.empty() || b.empty()) return {};
    upoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return umod(std::move(r), p, a_hi);
}

// inverse of a modulo monic p over the fraction field (coefficients must be
// invertible aseries where needed)
inline upoly uinv_mod(upoly a, upoly p, int a_hi) {
    upoly r0 = p, r1 = umod(a, p, a_hi), s0, s1 = {aseries(1)};
    if (r1.empty()) throw std::domain_error("uinv_mod: zero element");
    while ((int)r1.size() - 1 > 0) {
        // divide r0 by r1
        upoly q((int)r0.size() - (int)r1.size() + 1);
        upoly rem = r0;
        aseries lead_inv = r1.back().inverse(a_hi);
        for (int i = (int)q.size() - 1; i >= 0; --i) {
            if ((int)rem.size() < (int)r1.size() + i) continue;
            aseries f = rem[r1.size() - 1 + i] * lead_inv;
            q[i] = f;
            if (f.is_zero()) continue;
            for (size_t j = 0; j < r1.size(); ++j) rem[i + j] -= f * r1[j];
        }
        while (!rem.empty() && rem.back().is_zero()) rem.pop_back();
        // s2 = s0 - q s1
        upoly s2 = s0;
        if (!q.empty() && !s1.empty()) {
            s2.resize(std::max(s2.size(), q.size() + s1.size() - 1));
            for (size_t i = 0; i < q.size(); ++i) {
                if (q[i].is_zero()) continue;
                for (size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
            }
        }
        while (!s2.empty() && s2.back().is_zero()) s2.pop_back();
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.empty()) throw std::domain_error("uinv_mod: not invertible (gcd nontrivial)");
    aseries c = r1[0].inverse(a_hi);
    for (auto& v : s1) v = v * c;
    return umod(std::move(s1), p, a_hi);
}

// power sums of the roots of monic p via Newton's identities
inline std::vector<aseries> root_power_sums(const upoly& p, int upto, int a_hi) {
    int n = (int)p.size() - 1;
    std::vector<aseries> ps(upto + 1);
    ps[0] = aseries(ratfun(n));
    auto a = [&](int k) { return k >= 0 && k < n ? p[k] : aseries(); };
    for (int k = 1; k <= upto; ++k) {
        aseries acc;
        for (int i = 1; i < k; ++i) acc += a(n - i) * ps[k - i];
        if (k <= n) acc += a(n - k) * ratfun(k);
        ps[k] = -acc;
    }
    return ps;
}

// sum over the roots of monic P of R(root); R given as rational in `var`
inline aseries trace_sum(const ratfun& R, int var, const upoly& P, int a_hi) {
    int n = (int)P.size() - 1;
    auto lift = [&](const poly& q) {
        upoly out;
        for (auto& c : q.coeffs_in(var)) out.push_back(aseries(ratfun(c)));
        while (!out.empty() && out.back().is_zero()) out.pop_back();
        return umod(std::move(out), P, a_hi);
    };
    upoly A = lift(R.num());
    for (auto& [f, e] : R.den()) {
        upoly Fi = uinv_mod(lift(f), P, a_hi);
        for (int k = 0; k < e; ++k) A = umul_mod(A, Fi, P, a_hi);
    }
    auto ps = root_power_sums(P, n - 1, a_hi);
    aseries out;
    for (size_t j = 0; j < A.size(); ++j) out += A[j] * ps[j];
    return out;
}

}  // namespace gk
