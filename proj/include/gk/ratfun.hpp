#pragma once

#include <cstdlib>
#include <map>
#include <utility>
#include <vector>

#include "poly.hpp"

namespace gk {

// Rational function num / prod(f_i^{e_i}) with the denominator kept as a map
// of monic non-constant factors. All arithmetic reduces the numerator against
// the denominator factors by trial exact division; a real multivariate gcd is
// only invoked when a substitution hits a vanishing denominator factor.
class ratfun {
public:
    ratfun() = default;
    ratfun(const scalar& c) : num_(c) {}
    ratfun(long v) : num_(v) {}
    ratfun(poly p) : num_(std::move(p)) {}
    static ratfun var(int s, int k = 1) { return ratfun(poly::var(s, k)); }
    static ratfun var(const std::string& s, int k = 1) { return ratfun(poly::var(s, k)); }

    // num over an explicit factor list (факtors need not be monic; scale folds
    // into the numerator)
    static ratfun with_den(poly num, const std::vector<std::pair<poly, int>>& den) {
        ratfun r(std::move(num));
        for (auto& [f, e] : den) r.mul_den_factor(f, e);
        r.reduce();
        return r;
    }
    static ratfun fraction(poly num, const poly& den) {
        return ratfun(std::move(num)) / ratfun(den);
    }

    const poly& num() const { return num_; }
    const std::map<poly, int>& den() const { return den_; }
    poly den_poly() const {
        poly d(1);
        for (auto& [f, e] : den_) d *= f.pow(e);
        return d;
    }
    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const { return den_.empty(); }
    bool is_constant() const { return den_.empty() && num_.is_constant(); }
    scalar constant_value() const {
        if (!is_constant()) throw std::domain_error("ratfun: not constant");
        return num_.constant_value();
    }
    bool depends_on(int s) const {
        if (num_.depends_on(s)) return true;
        for (auto& [f, e] : den_)
            if (f.depends_on(s)) return true;
        return false;
    }
    std::vector<int> symbols() const {
        std::vector<int> out = num_.symbols();
        for (auto& [f, e] : den_)
            for (int s : f.symbols())
                if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
        std::sort(out.begin(), out.end());
        return out;
    }

    friend ratfun operator-(const ratfun& a) {
        ratfun r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend ratfun operator+(const ratfun& a, const ratfun& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        ratfun r;
        r.den_ = a.den_;
        for (auto& [f, e] : b.den_) {
            int& re = r.den_[f];
            re = std::max(re, e);
        }
        poly scale_a(1), scale_b(1);
        for (auto& [f, e] : r.den_) {
            int ea = a.den_exp(f), eb = b.den_exp(f);
            if (e > ea) scale_a *= f.pow(e - ea);
            if (e > eb) scale_b *= f.pow(e - eb);
        }
        r.num_ = a.num_ * scale_a + b.num_ * scale_b;
        r.reduce();
        return r;
    }
    friend ratfun operator-(const ratfun& a, const ratfun& b) { return a + (-b); }
    friend ratfun operator*(const ratfun& a, const ratfun& b) {
        if (a.is_zero() || b.is_zero()) return {};
        ratfun r;
        r.num_ = a.num_ * b.num_;
        r.den_ = a.den_;
        for (auto& [f, e] : b.den_) r.den_[f] += e;
        r.reduce();
        return r;
    }
    friend ratfun operator*(const ratfun& a, const scalar& c) {
        if (c.is_zero()) return {};
        ratfun r = a;
        r.num_ = r.num_ * c;
        return r;
    }
    ratfun inverse() const {
        if (is_zero()) throw std::domain_error("ratfun: division by zero");
        ratfun r;
        r.num_ = den_poly();
        r.mul_den_poly(num_);
        r.reduce();
        return r;
    }
    friend ratfun operator/(const ratfun& a, const ratfun& b) {
        if (a.is_zero()) {
            if (b.is_zero()) throw std::domain_error("ratfun: 0/0");
            return {};
        }
        ratfun r;
        r.num_ = a.num_ * b.den_poly();
        r.den_ = a.den_;
        r.mul_den_poly(b.num_);
        r.reduce();
        return r;
    }
    ratfun& operator+=(const ratfun& b) { return *this = *this + b; }
    ratfun& operator-=(const ratfun& b) { return *this = *this - b; }
    ratfun& operator*=(const ratfun& b) { return *this = *this * b; }
    ratfun& operator/=(const ratfun& b) { return *this = *this / b; }

    ratfun pow(long k) const {
        if (k < 0) return inverse().pow(-k);
        ratfun r(1), b = *this;
        while (k) {
            if (k & 1) r *= b;
            if (k >>= 1) b *= b;
        }
        return r;
    }

    friend bool operator==(const ratfun& a, const ratfun& b) {
        if (a.den_ == b.den_) return a.num_ == b.num_;
        return a.num_ * b.den_poly() == b.num_ * a.den_poly();
    }
    friend bool operator!=(const ratfun& a, const ratfun& b) { return !(a == b); }

    ratfun derivative(int s) const;

    ratfun substitute(int s, const ratfun& val) const {
        if (!depends_on(s)) return *this;
        if (val.is_poly()) {
            // pre-split denominator factors vanishing at the point so that
            // removable singularities cancel against the numerator
            const ratfun* self = this;
            ratfun split;
            for (auto& [f, e] : den_) {
                if (f.depends_on(s) && f.substitute(s, val.num()).is_zero()) {
                    split = cancelled_at(s, val.num());
                    self = &split;
                    break;
                }
            }
            ratfun out(self->num_.substitute(s, val.num()));
            for (auto& [f, e] : self->den_) {
                poly fs = f.substitute(s, val.num());
                if (fs.is_zero())
                    throw std::domain_error("ratfun: pole at substitution point (factor " +
                                            f.str() + ")");
                // divide keeping the factor power structure
                out = out * ratfun::with_den(poly(1), {{std::move(fs), e}});
            }
            return out;
        }
        ratfun out = eval_poly(num_, s, val);
        for (auto& [f, e] : den_) {
            ratfun fs = eval_poly(f, s, val);
            if (fs.is_zero()) throw std::domain_error("ratfun: pole at substitution point");
            out = out / fs.pow(e);
        }
        return out;
    }
    ratfun substitute(int s, const scalar& val) const { return substitute(s, ratfun(val)); }

    // cancel (var - root) poles against the numerator where possible; used
    // before substituting coincident points
    ratfun cancelled_at(int s, const poly& value) const {
        poly divisor = (poly::var(s) - value).monic();
        ratfun r;
        r.num_ = num_;
        for (auto& [f, e] : den_) {
            if (f == divisor || !f.substitute(s, value).is_zero()) {
                r.mul_den_factor(f, e);
                continue;
            }
            poly rest = f;
            int k = 0;
            while (rest.substitute(s, value).is_zero() && divisor.divides(rest)) {
                rest = rest.exact_div(divisor);
                ++k;
            }
            r.mul_den_factor(divisor, k * e);
            r.mul_den_factor(rest, e);
        }
        r.reduce();
        return r;
    }

    // full canonical reduction via multivariate gcd (slow path)
    ratfun normalized() const {
        ratfun r = *this;
        r.reduce();
        for (bool again = true; again;) {
            again = false;
            for (auto it = r.den_.begin(); it != r.den_.end(); ++it) {
                poly g = poly_gcd(r.num_, it->first);
                if (g.is_constant()) continue;
                poly f = it->first;
                int e = it->second;
                r.den_.erase(it);
                r.num_ = r.num_.exact_div(g);
                r.mul_den_factor(f.exact_div(g), e);
                if (e > 1) r.mul_den_factor(g, e - 1);
                again = true;
                break;
            }
        }
        r.reduce();
        return r;
    }

    std::string str() const {
        std::string out = "(" + num_.str() + ")";
        if (!den_.empty()) {
            out += " / [";
            bool first = true;
            for (auto& [f, e] : den_) {
                if (!first) out += " * ";
                first = false;
                out += "(" + f.str() + ")";
                if (e > 1) out += "^" + std::to_string(e);
            }
            out += "]";
        }
        return out;
    }

private:
    poly num_;
    std::map<poly, int> den_;

    int den_exp(const poly& f) const {
        auto it = den_.find(f);
        return it == den_.end() ? 0 : it->second;
    }

    static ratfun eval_poly(const poly& p, int s, const ratfun& val) {
        int d = p.degree(s);
        auto coef = p.coeffs_in(s);
        ratfun r(coef[d]);
        for (int k = d - 1; k >= 0; --k) r = r * val + ratfun(coef[k]);
        return r;
    }

    // push a (possibly non-monic, possibly composite) polynomial into the
    // denominator, splitting off what is cheap to split
    void mul_den_factor(poly f, int e) {
        if (e == 0 || f.is_zero()) {
            if (f.is_zero()) throw std::domain_error("ratfun: zero denominator");
            return;
        }
        // scalar normalization
        scalar lc = f.leading_coeff();
        if (!lc.is_one()) {
            f = f.monic();
            num_ = num_ * lc.inverse().pow(e);
        }
        if (f.is_constant()) return;
        // monomial content
        for (int s : f.symbols()) {
            int m = 1 << 30;
            for (auto& tr : f.terms()) m = std::min(m, tr.m.deg(s));
            if (m > 0) {
                f = f.exact_div(poly::var(s, m));
                den_[poly::var(s)] += m * e;
            }
        }
        if (f.is_constant()) {
            scalar c = f.constant_value();
            if (!c.is_one()) num_ = num_ * c.inverse().pow(e);
            return;
        }
        // monic univariate quadratics with rational roots split into linears
        auto syms = f.symbols();
        if (syms.size() == 1 && f.degree(syms[0]) == 2) {
            auto c = f.coeffs_in(syms[0]);
            if (c[0].is_constant() && c[1].is_constant() &&
                c[0].constant_value().is_rational() && c[1].constant_value().is_rational()) {
                rat B = c[1].constant_value().rational_value();
                rat C = c[0].constant_value().rational_value();
                rat disc = B * B - 4 * C;
                if (disc >= 0 && mpz_perfect_square_p(disc.get_num_mpz_t()) &&
                    mpz_perfect_square_p(disc.get_den_mpz_t())) {
                    mpz_class num_root, den_root;
                    mpz_sqrt(num_root.get_mpz_t(), disc.get_num_mpz_t());
                    mpz_sqrt(den_root.get_mpz_t(), disc.get_den_mpz_t());
                    rat sq(num_root, den_root);
                    rat r1 = (-B + sq) / 2, r2 = (-B - sq) / 2;
                    poly x = poly::var(syms[0]);
                    den_[x - poly(scalar(r1))] += e;
                    den_[x - poly(scalar(r2))] += e;
                    return;
                }
            }
        }
        den_[f] += e;
    }
    void mul_den_poly(const poly& p) { mul_den_factor(p, 1); }

    void reduce() {
        if (num_.is_zero()) {
            den_.clear();
            return;
        }
        for (bool again = true; again;) {
            again = false;
            for (auto it = den_.begin(); it != den_.end();) {
                bool cancelled = false;
                while (it->second > 0 && it->first.divides(num_)) {
                    num_ = num_.exact_div(it->first);
                    --it->second;
                    cancelled = true;
                }
                if (it->second == 0) {
                    it = den_.erase(it);
                    again = again || cancelled;
                } else {
                    ++it;
                }
            }
        }
    }
};

inline ratfun operator+(const ratfun& a, long b) { return a + ratfun(b); }
inline ratfun operator-(const ratfun& a, long b) { return a - ratfun(b); }
inline ratfun operator*(long a, const ratfun& b) { return ratfun(a) * b; }

// N'/D - sum_i e_i N f_i' / (D f_i), assembled termwise so the expanded
// product of all denominator factors never materialises
inline ratfun ratfun::derivative(int s) const {
    if (is_zero()) return {};
    ratfun dnum;
    dnum.num_ = num_.derivative(s);
    dnum.den_ = den_;
    dnum.reduce();
    bool den_dep = false;
    for (auto& [f, e] : den_) den_dep = den_dep || f.depends_on(s);
    if (!den_dep) return dnum;
    // assemble N'/D - sum_i e_i N f_i'/(D f_i) over one common denominator
    std::map<poly, int> den = den_;
    poly num;
    {
        poly scale(1);
        for (auto& [f, e] : den_)
            if (f.depends_on(s)) scale *= f;
        num = num_.derivative(s) * scale;
    }
    for (auto& [f, e] : den_) {
        if (!f.depends_on(s)) continue;
        den[f] += 1;
        poly scale(1);
        for (auto& [f2, e2] : den_)
            if (f2.depends_on(s) && f2 != f) scale *= f2;
        num -= num_ * f.derivative(s) * scale * scalar(e);
    }
    std::vector<std::pair<poly, int>> dd(den.begin(), den.end());
    return ratfun::with_den(std::move(num), dd);
}

// simultaneous symbol renaming (targets may collide with sources)
inline ratfun rename_symbols(const ratfun& f, const std::vector<std::pair<int, int>>& subs) {
    ratfun out = f;
    std::vector<int> temps;
    for (size_t i = 0; i < subs.size(); ++i) {
        int t = sym("_tmp" + std::to_string(i));
        temps.push_back(t);
        out = out.substitute(subs[i].first, ratfun::var(t));
    }
    for (size_t i = 0; i < subs.size(); ++i)
        out = out.substitute(temps[i], ratfun::var(subs[i].second));
    return out;
}

// sum of many terms over one common denominator, with a single reduction at
// the end; much cheaper than folding operator+ across a long accumulation
class ratfun_sum {
public:
    void operator+=(const ratfun& t) {
        if (!t.is_zero()) terms_.push_back(t);
    }
    void operator-=(const ratfun& t) {
        if (!t.is_zero()) terms_.push_back(-t);
    }
    ratfun value() const {
        if (terms_.empty()) return {};
        // balanced pairwise merging keeps intermediate numerators reduced
        std::vector<ratfun> work = terms_;
        while (work.size() > 1) {
            std::vector<ratfun> next;
            for (size_t i = 0; i + 1 < work.size(); i += 2) next.push_back(work[i] + work[i + 1]);
            if (work.size() & 1) next.push_back(work.back());
            work = std::move(next);
        }
        return work[0];
    }

private:
    std::vector<ratfun> terms_;
};

}  // namespace gk
