#pragma once

#include <climits>
#include <functional>
#include <map>
#include <vector>

#include "ratfun.hpp"

namespace gk {

constexpr int kWinInf = INT_MAX / 4;

// Truncated formal series in the bookkeeping symbol ahat = alpha^{-(r+1)}.
// A series is either exact (finitely supported, coefficients known to all
// orders) or windowed: coefficients are valid only up to exponent hi(), and
// reading beyond the window throws instead of silently returning garbage.
class aseries {
public:
    aseries() = default;  // exact zero
    aseries(const ratfun& c) : lo_(0), c_{c}, hi_(kWinInf) { trim(); }
    aseries(long v) : aseries(ratfun(v)) {}
    static aseries monomial(ratfun c, int e) {
        aseries r;
        r.lo_ = e;
        r.c_ = {std::move(c)};
        r.hi_ = kWinInf;
        r.trim();
        return r;
    }
    static aseries windowed(int lo, std::vector<ratfun> cs, int hi) {
        aseries r;
        r.lo_ = lo;
        r.c_ = std::move(cs);
        r.hi_ = hi;
        r.trim();
        return r;
    }

    bool exact() const { return hi_ == kWinInf; }
    bool is_zero() const { return c_.empty(); }
    // lowest stored exponent (first nonzero coefficient for nonzero series)
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    const std::vector<ratfun>& coeffs() const { return c_; }

    ratfun coeff(int d) const {
        if (d > hi_) throw std::domain_error("aseries: read beyond truncation window");
        if (d < lo_ || d >= lo_ + (int)c_.size()) return ratfun();
        return c_[d - lo_];
    }

    aseries truncated(int hi) const {
        if (hi >= hi_) return *this;
        aseries r = *this;
        r.hi_ = hi;
        if (lo_ + (int)r.c_.size() - 1 > hi) r.c_.resize(std::max(0, hi - lo_ + 1));
        r.trim();
        return r;
    }
    aseries shifted(int k) const {  // multiply by ahat^k
        if (is_zero()) return *this;
        aseries r = *this;
        r.lo_ += k;
        if (r.hi_ != kWinInf) r.hi_ += k;
        return r;
    }

    friend aseries operator-(const aseries& a) {
        aseries r = a;
        for (auto& c : r.c_) c = -c;
        return r;
    }
    friend aseries operator+(const aseries& a, const aseries& b) {
        if (a.is_zero()) return b.truncated(a.hi_);
        if (b.is_zero()) return a.truncated(b.hi_);
        aseries r;
        r.hi_ = std::min(a.hi_, b.hi_);
        r.lo_ = std::min(a.lo_, b.lo_);
        int top = std::min(r.hi_, std::max(a.lo_ + (int)a.c_.size(), b.lo_ + (int)b.c_.size()) - 1);
        for (int d = r.lo_; d <= top; ++d) r.c_.push_back(a.coeff(d) + b.coeff(d));
        r.trim();
        return r;
    }
    friend aseries operator-(const aseries& a, const aseries& b) { return a + (-b); }
    friend aseries operator*(const aseries& a, const aseries& b) {
        if (a.is_zero() || b.is_zero()) return zero_like(a, b);
        aseries r;
        r.hi_ = std::min(a.exact() ? kWinInf : a.hi_ + b.lo_,
                         b.exact() ? kWinInf : b.hi_ + a.lo_);
        r.lo_ = a.lo_ + b.lo_;
        int top = r.exact() ? a.lo_ + b.lo_ + (int)(a.c_.size() + b.c_.size()) - 2
                            : std::min(r.hi_, a.lo_ + b.lo_ + (int)(a.c_.size() + b.c_.size()) - 2);
        r.c_.assign(std::max(0, top - r.lo_ + 1), ratfun());
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) {
                int d = a.lo_ + (int)i + b.lo_ + (int)j;
                if (d > top) break;
                r.c_[d - r.lo_] += a.c_[i] * b.c_[j];
            }
        }
        r.trim();
        return r;
    }
    friend aseries operator*(const aseries& a, const ratfun& c) { return a * aseries(c); }
    aseries& operator+=(const aseries& b) { return *this = *this + b; }
    aseries& operator-=(const aseries& b) { return *this = *this - b; }
    aseries& operator*=(const aseries& b) { return *this = *this * b; }

    // multiplicative inverse; exact non-monomial input needs an explicit
    // window for the (infinite) result
    aseries inverse(int want_hi = kWinInf) const {
        if (is_zero()) throw std::domain_error("aseries: inverting zero");
        int v = lo_;
        if (c_.size() == 1 && exact()) {
            aseries r;
            r.lo_ = -v;
            r.c_ = {c_[0].inverse()};
            r.hi_ = want_hi == kWinInf ? kWinInf : want_hi;
            return r;
        }
        int out_hi = exact() ? want_hi : std::min(want_hi, hi_ - 2 * v);
        if (out_hi >= kWinInf)
            throw std::domain_error("aseries: inverse of exact series needs a window");
        aseries r;
        r.lo_ = -v;
        r.hi_ = out_hi;
        ratfun lead_inv = c_[0].inverse();
        for (int m = -v; m <= out_hi; ++m) {
            ratfun acc;
            for (int j = -v; j < m; ++j) {
                const ratfun& gj = r.c_[j + v];
                if (gj.is_zero()) continue;
                int fi = m - j;  // f coefficient of exponent m+v-j sits at index m-j
                if (fi >= 1 && fi < (int)c_.size()) acc += gj * c_[fi];
            }
            r.c_.push_back(m == -v ? lead_inv : -(lead_inv * acc));
        }
        r.trim_trailing_only();
        return r;
    }
    friend aseries operator/(const aseries& a, const aseries& b) { return a * b.inverse(); }

    friend bool operator==(const aseries& a, const aseries& b) {
        int top = std::min(a.hi_, b.hi_);
        if (top >= kWinInf)
            top = std::max(a.lo_ + (int)a.c_.size(), b.lo_ + (int)b.c_.size()) - 1;
        int bot = std::min(a.lo_, b.lo_);
        for (int d = bot; d <= top; ++d)
            if (a.coeff(d) != b.coeff(d)) return false;
        return true;
    }
    friend bool operator!=(const aseries& a, const aseries& b) { return !(a == b); }

    aseries map_coeffs(const std::function<ratfun(const ratfun&)>& f) const {
        aseries r = *this;
        for (auto& c : r.c_) c = f(c);
        r.trim();
        return r;
    }
    aseries derivative(int s) const {
        return map_coeffs([&](const ratfun& c) { return c.derivative(s); });
    }
    aseries substitute(int s, const ratfun& v) const {
        return map_coeffs([&](const ratfun& c) { return c.substitute(s, v); });
    }

    std::string str() const {
        std::string out;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "ah^" + std::to_string(lo_ + (int)i) + "*" + c_[i].str();
        }
        if (out.empty()) out = "0";
        if (!exact()) out += " + O(ah^" + std::to_string(hi_ + 1) + ")";
        return out;
    }

private:
    int lo_ = 0;
    std::vector<ratfun> c_;
    int hi_ = kWinInf;

    static aseries zero_like(const aseries& a, const aseries& b) {
        aseries r;
        r.hi_ = std::min(a.exact() ? kWinInf : a.hi_ + b.lo_,
                         b.exact() ? kWinInf : b.hi_ + a.lo_);
        return r;
    }
    void trim() {
        size_t k = 0;
        while (k < c_.size() && c_[k].is_zero()) ++k;
        if (k) {
            c_.erase(c_.begin(), c_.begin() + k);
            lo_ += (int)k;
        }
        trim_trailing_only();
        if (c_.empty()) lo_ = 0;
    }
    void trim_trailing_only() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
        if (c_.empty()) lo_ = 0;
    }
};

// Taylor substitution of an aseries value into a rational function: the
// order-zero part is substituted exactly, higher orders enter through the
// derivative expansion. val must have no negative ahat powers.
inline aseries subst_series(const ratfun& f, int s, const aseries& val,
                            int want_hi = kWinInf) {
    if (!f.depends_on(s)) return aseries(f).truncated(std::min(val.hi(), want_hi));
    if (val.lo() < 0) throw std::domain_error("subst_series: negative valuation value");
    ratfun x0 = val.lo() == 0 ? val.coeff(0) : ratfun();
    aseries eps = val - aseries(x0);
    int hi = std::min(val.hi(), want_hi);
    if (eps.is_zero()) return aseries(f.substitute(s, x0)).truncated(hi);
    if (hi == kWinInf && !f.is_poly())
        throw std::domain_error("subst_series: window required for non-polynomial target");
    int steps = hi == kWinInf ? f.num().degree(s) : hi;  // eps has valuation >= 1
    aseries out(f.substitute(s, x0));
    ratfun fk = f;
    aseries eps_pow(1);
    rat kfac(1);
    for (int k = 1; k <= steps; ++k) {
        fk = fk.derivative(s);
        if (fk.is_zero()) break;
        kfac *= k;
        eps_pow *= eps;
        out += eps_pow * (ratfun(fk.substitute(s, x0)) * scalar(rat(1) / kfac));
    }
    return out.truncated(hi);
}

// ---- univariate views over the rational function field ----

// f as a Laurent object at var = infinity: polynomial part coefficients
// (index = power of var) plus the proper remainder rem with deg_var(rem num)
// < deg_var(den)
struct infinity_split {
    std::vector<ratfun> poly_part;  // coefficient of var^k at index k
    std::vector<ratfun> rem_num;    // univariate remainder coefficients in var
    poly den;                       // denominator as a polynomial in var
};

inline infinity_split split_at_infinity(const ratfun& f, int var) {
    infinity_split out;
    out.den = f.den_poly();
    auto N = f.num().coeffs_in(var);
    auto D = out.den.coeffs_in(var);
    int m = (int)D.size() - 1;
    std::vector<ratfun> n(N.size());
    for (size_t i = 0; i < N.size(); ++i) n[i] = ratfun(N[i]);
    ratfun dl = ratfun(D[m]);
    while ((int)n.size() - 1 >= m) {
        int k = (int)n.size() - 1;
        ratfun q = n[k] / dl;
        if (!q.is_zero()) {
            if ((int)out.poly_part.size() < k - m + 1) out.poly_part.resize(k - m + 1);
            out.poly_part[k - m] = q;
            for (int j = 0; j <= m; ++j) n[k - m + j] -= q * ratfun(D[j]);
        }
        n.pop_back();
    }
    out.rem_num = std::move(n);
    return out;
}

inline ratfun poly_part_at_infinity(const ratfun& f, int var) {
    auto sp = split_at_infinity(f, var);
    ratfun out;
    for (size_t k = 0; k < sp.poly_part.size(); ++k)
        out += sp.poly_part[k] * ratfun::var(var, (int)k);
    return out;
}

// Res_{var=inf} f dvar with the convention Res_{z=inf} dz/z = -1
inline ratfun residue_at_infinity(const ratfun& f, int var) {
    auto sp = split_at_infinity(f, var);
    int m = sp.den.degree(var);
    if (m == 0 || (int)sp.rem_num.size() - 1 < m - 1) return ratfun();
    auto D = sp.den.coeffs_in(var);
    return -(sp.rem_num[m - 1] / ratfun(D[m]));
}

// Truncated Laurent series in a local parameter, with aseries coefficients.
class sseries {
public:
    sseries() = default;  // zero with infinite window
    explicit sseries(const aseries& c) : lo_(0), c_{c}, hi_(kWinInf) { trim(); }
    static sseries monomial(aseries c, int e) {
        sseries r;
        r.lo_ = e;
        r.c_ = {std::move(c)};
        r.trim();
        return r;
    }
    static sseries windowed(int lo, std::vector<aseries> cs, int hi) {
        sseries r;
        r.lo_ = lo;
        r.c_ = std::move(cs);
        r.hi_ = hi;
        r.trim();
        return r;
    }

    bool is_zero() const { return c_.empty(); }
    bool exact() const { return hi_ == kWinInf; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    const std::vector<aseries>& coeffs() const { return c_; }
    aseries coeff(int d) const {
        if (d > hi_) throw std::domain_error("sseries: read beyond truncation window");
        if (d < lo_ || d >= lo_ + (int)c_.size()) return aseries();
        return c_[d - lo_];
    }

    sseries truncated(int hi) const {
        if (hi >= hi_) return *this;
        sseries r = *this;
        r.hi_ = hi;
        if (lo_ + (int)r.c_.size() - 1 > hi) r.c_.resize(std::max(0, hi - lo_ + 1));
        r.trim();
        return r;
    }

    friend sseries operator-(const sseries& a) {
        sseries r = a;
        for (auto& c : r.c_) c = -c;
        return r;
    }
    friend sseries operator+(const sseries& a, const sseries& b) {
        sseries r;
        r.hi_ = std::min(a.hi_, b.hi_);
        if (a.is_zero() && b.is_zero()) return r;
        r.lo_ = a.is_zero() ? b.lo_ : b.is_zero() ? a.lo_ : std::min(a.lo_, b.lo_);
        int top = std::max(a.lo_ + (int)a.c_.size(), b.lo_ + (int)b.c_.size()) - 1;
        top = std::min(top, r.hi_);
        for (int d = r.lo_; d <= top; ++d) r.c_.push_back(a.coeff(d) + b.coeff(d));
        r.trim();
        return r;
    }
    friend sseries operator-(const sseries& a, const sseries& b) { return a + (-b); }
    friend sseries operator*(const sseries& a, const sseries& b) {
        sseries r;
        r.hi_ = std::min(a.exact() || b.is_zero() ? kWinInf : b.lo_ + a.hi_,
                         b.exact() || a.is_zero() ? kWinInf : a.lo_ + b.hi_);
        if (a.is_zero() || b.is_zero()) return r;
        r.lo_ = a.lo_ + b.lo_;
        int top = a.lo_ + b.lo_ + (int)(a.c_.size() + b.c_.size()) - 2;
        top = std::min(top, r.hi_);
        r.c_.assign(std::max(0, top - r.lo_ + 1), aseries());
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) {
                int d = a.lo_ + (int)i + b.lo_ + (int)j;
                if (d > top) break;
                r.c_[d - r.lo_] += a.c_[i] * b.c_[j];
            }
        }
        r.trim();
        return r;
    }
    friend sseries operator*(const sseries& a, const aseries& c) { return a * sseries(c); }
    sseries& operator+=(const sseries& b) { return *this = *this + b; }
    sseries& operator-=(const sseries& b) { return *this = *this - b; }
    sseries& operator*=(const sseries& b) { return *this = *this * b; }

    // inverse; a_hi is handed to the leading aseries coefficient when that
    // coefficient is exact and non-monomial
    sseries inverse(int a_hi = kWinInf) const {
        if (is_zero()) throw std::domain_error("sseries: inverting zero");
        int v = lo_;
        int out_hi = exact() ? kWinInf : hi_ - 2 * v;
        if (out_hi == kWinInf && c_.size() > 1)
            throw std::domain_error("sseries: inverse of exact multi-term series needs window");
        aseries lead_inv = c_[0].inverse(a_hi);
        sseries r;
        r.lo_ = -v;
        r.hi_ = out_hi;
        if (c_.size() == 1) {
            r.c_ = {lead_inv};
            return r;
        }
        for (int m = -v; m <= out_hi; ++m) {
            aseries acc;
            for (int j = -v; j < m; ++j) {
                const aseries& gj = r.c_[j + v];
                if (gj.is_zero()) continue;
                int fi = m - j;
                if (fi >= 1 && fi < (int)c_.size()) acc += gj * c_[fi];
            }
            r.c_.push_back(m == -v ? lead_inv : -(lead_inv * acc));
        }
        return r;
    }

    sseries pow(long k, int a_hi = kWinInf) const {
        if (k < 0) return inverse(a_hi).pow(-k);
        sseries r(aseries(1)), b = *this;
        while (k) {
            if (k & 1) r *= b;
            if (k >>= 1) b *= b;
        }
        return r;
    }

    sseries derivative() const {  // d/ds
        sseries r;
        r.hi_ = hi_ == kWinInf ? kWinInf : hi_ - 1;
        if (is_zero()) return r;
        r.lo_ = lo_ - 1;
        for (int d = lo_; d < lo_ + (int)c_.size(); ++d)
            r.c_.push_back(d == 0 ? aseries() : c_[d - lo_] * ratfun(d));
        r.trim();
        return r;
    }

    friend bool operator==(const sseries& a, const sseries& b) {
        int top = std::min(a.hi_, b.hi_);
        if (top >= kWinInf)
            top = std::max(a.lo_ + (int)a.c_.size(), b.lo_ + (int)b.c_.size()) - 1;
        int bot = std::min(a.is_zero() ? 0 : a.lo_, b.is_zero() ? 0 : b.lo_);
        for (int d = bot; d <= top; ++d)
            if (a.coeff(d) != b.coeff(d)) return false;
        return true;
    }
    friend bool operator!=(const sseries& a, const sseries& b) { return !(a == b); }

    std::string str() const {
        std::string out;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "s^" + std::to_string(lo_ + (int)i) + "*(" + c_[i].str() + ")";
        }
        if (out.empty()) out = "0";
        if (!exact()) out += " + O(s^" + std::to_string(hi_ + 1) + ")";
        return out;
    }

private:
    int lo_ = 0;
    std::vector<aseries> c_;
    int hi_ = kWinInf;

    void trim() {
        size_t k = 0;
        while (k < c_.size() && c_[k].is_zero()) ++k;
        if (k) {
            c_.erase(c_.begin(), c_.begin() + k);
            lo_ += (int)k;
        }
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
        if (c_.empty()) lo_ = 0;
    }
};

// Evaluate a polynomial / rational function at local-series points. Symbols
// not listed in sub stay symbolic inside the coefficients.
inline sseries eval_poly_at(const poly& p, const std::map<int, sseries>& sub, int s_hi) {
    std::map<int, std::vector<sseries>> pow_cache;
    auto power = [&](int s, int k) -> const sseries& {
        auto& v = pow_cache[s];
        if (v.empty()) v.push_back(sseries(aseries(1)).truncated(s_hi));
        while ((int)v.size() <= k) {
            const sseries& base = sub.at(s);
            v.push_back((v.back() * base).truncated(s_hi));
        }
        return v[k];
    };
    sseries out;
    out = out.truncated(s_hi);
    for (auto& tr : p.terms()) {
        mono rest;  // the symbolic part that is not substituted
        sseries term(aseries(1));
        bool have_series = false;
        for (auto& [v, k] : tr.m.e) {
            if (sub.count(v)) {
                term = (term * power(v, k)).truncated(s_hi);
                have_series = true;
            } else {
                rest.e.push_back({v, k});
            }
        }
        ratfun coef(poly::from_terms({{rest, tr.c}}));
        out += have_series ? term * aseries(coef) : sseries(aseries(coef)).truncated(s_hi);
    }
    return out;
}

struct window_error : std::domain_error {
    using std::domain_error::domain_error;
};

inline sseries eval_at(const ratfun& f, const std::map<int, sseries>& sub, int s_hi,
                       int a_hi = kWinInf) {
    sseries out = eval_poly_at(f.num(), sub, s_hi);
    for (auto& [fac, e] : f.den()) {
        sseries fs = eval_poly_at(fac, sub, s_hi);
        if (fs.is_zero()) {
            if (fs.exact())
                throw std::domain_error("eval_at: denominator vanishes identically");
            throw window_error("eval_at: window too small to resolve denominator valuation");
        }
        out = (out * fs.inverse(a_hi).pow(e)).truncated(s_hi);
    }
    return out;
}

}  // namespace gk
