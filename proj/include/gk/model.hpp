#pragma once

#include "ratfun.hpp"

namespace gk {

// The potential V(z) = sum_{j=1}^{r+1} (v_j / j) z^j. Coefficients are
// polynomials so one-parameter families (e.g. v_2 = -r eps^{r-1}) stay exact.
struct potential {
    int r = 2;
    std::vector<poly> v;  // v[j] for j = 1..r+1; v[0] unused

    potential() = default;
    potential(int r_, std::vector<poly> vs) : r(r_), v(std::move(vs)) {
        if ((int)v.size() != r + 2) throw std::invalid_argument("potential: need v_1..v_{r+1}");
        if (v[r + 1].is_zero()) throw std::invalid_argument("potential: v_{r+1} must be nonzero");
    }
    // V(z) = z^{r+1}/(r+1)
    static potential monomial(int r) {
        std::vector<poly> vs(r + 2);
        vs[r + 1] = poly(1);
        return potential(r, std::move(vs));
    }
    // V'(z) = z^r - r eps^{r-1} z (the epsilon deformation of the monomial)
    static potential airy_deformed(int r, const poly& eps) {
        std::vector<poly> vs(r + 2);
        vs[r + 1] = poly(1);
        vs[2] = -poly(scalar(r)) * eps.pow(r - 1);
        return potential(r, std::move(vs));
    }
    static potential from_rationals(int r, const std::vector<rat>& vs) {
        std::vector<poly> out(r + 2);
        for (int j = 1; j <= r + 1; ++j) out[j] = poly(scalar(vs.at(j - 1)));
        return potential(r, std::move(out));
    }

    poly vprime(const poly& x) const {  // V'(x)
        poly out;
        for (int j = 1; j <= r + 1; ++j)
            if (!v[j].is_zero()) out += v[j] * x.pow(j - 1);
        return out;
    }
    poly vpp(const poly& x) const {  // V''(x)
        poly out;
        for (int j = 2; j <= r + 1; ++j)
            if (!v[j].is_zero()) out += v[j] * scalar(j - 1) * x.pow(j - 2);
        return out;
    }
    poly dk(int k, const poly& x) const {  // V^{(k)}(x)
        poly out;
        for (int j = k; j <= r + 1; ++j) {
            if (v[j].is_zero()) continue;
            long m = 1;
            for (int i = 1; i < k; ++i) m *= (j - i);
            out += v[j] * scalar(m) * x.pow(j - k);
        }
        return out;
    }

    // complete homogeneous symmetric polynomial h_k(args)
    static poly schur_row(int k, const std::vector<poly>& args) {
        if (k < 0) return poly();
        std::vector<poly> h(k + 1);
        h[0] = poly(1);
        for (const poly& a : args) {
            // h_new_k = sum_{i=0..k} a^i h_old_{k-i}  done incrementally:
            for (int d = 1; d <= k; ++d) h[d] = h[d] + a * h[d - 1];
        }
        return h[k];
    }

    // divided difference (V'(a) - V'(b)) / (a - b), a polynomial
    poly dd(const poly& a, const poly& b) const {
        poly out;
        for (int j = 2; j <= r + 1; ++j)
            if (!v[j].is_zero()) out += v[j] * schur_row(j - 2, {a, b});
        return out;
    }
    ratfun prop(const poly& a, const poly& b) const {  // the propagator
        return ratfun(1) / ratfun(dd(a, b));
    }

    // black vertex weight V_d(args) = -sum_{j>=d} v_j schur_{j-d}(args)
    poly vertex(const std::vector<poly>& args) const {
        int d = (int)args.size();
        poly out;
        for (int j = d; j <= r + 1; ++j)
            if (!v[j].is_zero()) out += v[j] * schur_row(j - d, args);
        return -out;
    }
};

}  // namespace gk
