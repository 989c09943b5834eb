#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "scalar.hpp"

namespace gk {

// Global symbol registry. Ids define the monomial order, so registration
// order must be deterministic across runs; a fixed pantheon is registered
// up front and everything else appends in first-use order.
class symtab {
public:
    static symtab& instance() {
        static symtab t;
        return t;
    }
    int id(const std::string& name) {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = index_.find(name);
        if (it != index_.end()) return it->second;
        int v = (int)names_.size();
        names_.push_back(name);
        index_[name] = v;
        return v;
    }
    std::string name(int id) const {
        std::lock_guard<std::mutex> lk(mu_);
        return names_.at(id);
    }

private:
    symtab() {
        static const char* boot[] = {"u",  "z1", "z2",  "z3",  "z4",  "z5",  "z6",
                                     "l1", "l2", "l3",  "l4",  "l5",  "l6",  "xi1",
                                     "xi2", "xi3", "xi4", "eps", "s",  "t",  "X"};
        for (const char* n : boot) {
            index_[n] = (int)names_.size();
            names_.push_back(n);
        }
    }
    mutable std::mutex mu_;
    std::vector<std::string> names_;
    std::map<std::string, int> index_;
};

inline int sym(const std::string& name) { return symtab::instance().id(name); }
inline std::string sym_name(int id) { return symtab::instance().name(id); }

// Sparse exponent vector, sorted by symbol id, nonzero exponents only.
// Inline fixed-capacity storage: monomials in this domain touch at most a
// handful of symbols, and avoiding heap traffic here dominates performance.
struct mono {
    static constexpr int kCap = 10;
    struct entry {
        int16_t first, second;
        bool operator==(const entry& o) const { return first == o.first && second == o.second; }
    };

    struct elist {
        uint8_t n = 0;
        std::array<entry, kCap> v;
        const entry* begin() const { return v.data(); }
        const entry* end() const { return v.data() + n; }
        size_t size() const { return n; }
        const entry& operator[](size_t i) const { return v[i]; }
        void push_back(entry x) {
            if (n >= kCap) throw std::length_error("mono: too many symbols in one monomial");
            v[n++] = x;
        }
        void clear() { n = 0; }
        bool operator==(const elist& o) const {
            if (n != o.n) return false;
            for (uint8_t i = 0; i < n; ++i)
                if (!(v[i] == o.v[i])) return false;
            return true;
        }
    } e;

    int deg(int s) const {
        for (auto& [v, k] : e)
            if (v == s) return k;
        return 0;
    }
    int total_degree() const {
        int d = 0;
        for (auto& [v, k] : e) d += k;
        return d;
    }
    bool empty() const { return e.size() == 0; }

    friend mono operator*(const mono& a, const mono& b) {
        mono r;
        size_t i = 0, j = 0;
        while (i < a.e.size() || j < b.e.size()) {
            if (j == b.e.size() || (i < a.e.size() && a.e[i].first < b.e[j].first))
                r.e.push_back(a.e[i++]);
            else if (i == a.e.size() || b.e[j].first < a.e[i].first)
                r.e.push_back(b.e[j++]);
            else {
                r.e.push_back({a.e[i].first, int16_t(a.e[i].second + b.e[j].second)});
                ++i, ++j;
            }
        }
        return r;
    }
    // a / b, with failure flag
    static bool try_div(const mono& a, const mono& b, mono& out) {
        out.e.clear();
        size_t i = 0;
        for (auto& [v, k] : b.e) {
            while (i < a.e.size() && a.e[i].first < v) out.e.push_back(a.e[i++]);
            if (i == a.e.size() || a.e[i].first != v || a.e[i].second < k) return false;
            if (a.e[i].second > k) out.e.push_back({v, int16_t(a.e[i].second - k)});
            ++i;
        }
        while (i < a.e.size()) out.e.push_back(a.e[i++]);
        return true;
    }
    // pure lexicographic order on the (id, exponent) expansion: higher symbol
    // ids are *less* significant than lower ones, mirroring the boot order
    friend bool operator<(const mono& a, const mono& b) {
        size_t i = 0, j = 0;
        while (i < a.e.size() && j < b.e.size()) {
            if (a.e[i].first != b.e[j].first)
                // the one carrying the smaller symbol id is larger in lex
                return a.e[i].first > b.e[j].first;
            if (a.e[i].second != b.e[j].second) return a.e[i].second < b.e[j].second;
            ++i, ++j;
        }
        return i == a.e.size() && j != b.e.size();
    }
    friend bool operator==(const mono& a, const mono& b) { return a.e == b.e; }
    friend bool operator!=(const mono& a, const mono& b) { return !(a.e == b.e); }
};

inline mono mono_of(int s, int k = 1) {
    mono m;
    if (k != 0) m.e.push_back({(int16_t)s, (int16_t)k});
    return m;
}

// Sparse multivariate polynomial over scalar. Terms are kept sorted with the
// leading (largest) monomial first.
class poly {
public:
    struct term {
        mono m;
        scalar c;
    };

    poly() = default;
    poly(const scalar& c) {
        if (!c.is_zero()) t_.push_back({mono{}, c});
    }
    poly(long v) : poly(scalar(v)) {}
    static poly var(int s, int k = 1) {
        poly p;
        p.t_.push_back({mono_of(s, k), scalar(1)});
        return p;
    }
    static poly var(const std::string& s, int k = 1) { return var(sym(s), k); }
    static poly from_terms(std::vector<term> ts) {
        poly p;
        p.t_ = std::move(ts);
        p.normalize();
        return p;
    }

    const std::vector<term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m.empty()); }
    scalar constant_value() const {
        if (t_.empty()) return scalar(0);
        if (!is_constant()) throw std::domain_error("poly: not a constant");
        return t_[0].c;
    }
    const mono& leading_mono() const { return t_.at(0).m; }
    const scalar& leading_coeff() const { return t_.at(0).c; }
    int degree(int s) const {
        int d = 0;
        for (auto& tr : t_) d = std::max(d, tr.m.deg(s));
        return d;
    }
    int total_degree() const {
        int d = 0;
        for (auto& tr : t_) d = std::max(d, tr.m.total_degree());
        return d;
    }
    bool depends_on(int s) const {
        for (auto& tr : t_)
            if (tr.m.deg(s) > 0) return true;
        return false;
    }
    std::vector<int> symbols() const {
        std::vector<int> out;
        for (auto& tr : t_)
            for (auto& [v, k] : tr.m.e)
                if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
        std::sort(out.begin(), out.end());
        return out;
    }

    friend poly operator-(const poly& a) {
        poly r = a;
        for (auto& tr : r.t_) tr.c = -tr.c;
        return r;
    }
    friend poly operator+(const poly& a, const poly& b) {
        poly r;
        r.t_.reserve(a.t_.size() + b.t_.size());
        size_t i = 0, j = 0;
        while (i < a.t_.size() || j < b.t_.size()) {
            if (j == b.t_.size() || (i < a.t_.size() && b.t_[j].m < a.t_[i].m))
                r.t_.push_back(a.t_[i++]);
            else if (i == a.t_.size() || a.t_[i].m < b.t_[j].m)
                r.t_.push_back(b.t_[j++]);
            else {
                scalar c = a.t_[i].c + b.t_[j].c;
                if (!c.is_zero()) r.t_.push_back({a.t_[i].m, c});
                ++i, ++j;
            }
        }
        return r;
    }
    friend poly operator-(const poly& a, const poly& b) { return a + (-b); }
    friend poly operator*(const poly& a, const poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (b.t_.size() == 1) return mul_term(a, b.t_[0]);
        if (a.t_.size() == 1) return mul_term(b, a.t_[0]);
        // small second factor: merge term-scaled copies (no tree overhead)
        const poly& big = a.t_.size() >= b.t_.size() ? a : b;
        const poly& small = a.t_.size() >= b.t_.size() ? b : a;
        if (small.t_.size() <= 8) {
            poly r = mul_term(big, small.t_[0]);
            for (size_t i = 1; i < small.t_.size(); ++i) r = r + mul_term(big, small.t_[i]);
            return r;
        }
        std::map<mono, scalar> acc;
        for (auto& ta : a.t_)
            for (auto& tb : b.t_) {
                mono m = ta.m * tb.m;
                auto it = acc.find(m);
                if (it == acc.end())
                    acc.emplace(std::move(m), ta.c * tb.c);
                else
                    it->second += ta.c * tb.c;
            }
        poly r;
        r.t_.reserve(acc.size());
        for (auto it = acc.rbegin(); it != acc.rend(); ++it)
            if (!it->second.is_zero()) r.t_.push_back({it->first, it->second});
        return r;
    }
    friend poly operator*(const poly& a, const scalar& c) {
        if (c.is_zero()) return {};
        poly r = a;
        for (auto& tr : r.t_) tr.c *= c;
        return r;
    }
    poly& operator+=(const poly& b) { return *this = *this + b; }
    poly& operator-=(const poly& b) { return *this = *this - b; }
    poly& operator*=(const poly& b) { return *this = *this * b; }

    friend bool operator==(const poly& a, const poly& b) {
        if (a.t_.size() != b.t_.size()) return false;
        for (size_t i = 0; i < a.t_.size(); ++i)
            if (a.t_[i].m != b.t_[i].m || a.t_[i].c != b.t_[i].c) return false;
        return true;
    }
    friend bool operator!=(const poly& a, const poly& b) { return !(a == b); }
    // canonical order for factor maps
    friend bool operator<(const poly& a, const poly& b) {
        if (a.t_.size() != b.t_.size()) return a.t_.size() < b.t_.size();
        for (size_t i = 0; i < a.t_.size(); ++i) {
            if (a.t_[i].m != b.t_[i].m) return a.t_[i].m < b.t_[i].m;
            if (a.t_[i].c != b.t_[i].c) return a.t_[i].c < b.t_[i].c;
        }
        return false;
    }

    poly pow(long k) const {
        if (k < 0) throw std::domain_error("poly: negative power");
        poly r(1), b = *this;
        while (k) {
            if (k & 1) r *= b;
            if (k >>= 1) b *= b;
        }
        return r;
    }

    // exact division via synthetic division in the most significant symbol of
    // b; coefficient divisions recurse on polynomials with fewer symbols
    static bool try_exact_div(const poly& a, const poly& b, poly& q) {
        if (b.is_zero()) return false;
        if (a.is_zero()) {
            q = poly();
            return true;
        }
        if (b.is_constant()) {
            q = a * b.constant_value().inverse();
            return true;
        }
        // fast rejects on the leading monomials
        {
            mono probe;
            if (!mono::try_div(a.t_[0].m, b.t_[0].m, probe)) return false;
        }
        int x = b.t_[0].m.e[0].first;  // most significant symbol of b
        int db = b.degree(x), da = a.degree(x);
        if (da < db) return false;
        auto A = a.coeffs_in(x);
        auto B = b.coeffs_in(x);
        std::vector<poly> Q(da - db + 1);
        for (int k = da - db; k >= 0; --k) {
            poly cur = std::move(A[k + db]);
            if (cur.is_zero()) continue;
            poly qk;
            if (!try_exact_div(cur, B[db], qk)) return false;
            Q[k] = qk;
            for (int j = 0; j < db; ++j)
                if (!B[j].is_zero()) A[k + j] -= qk * B[j];
        }
        for (int j = 0; j < db; ++j)
            if (!A[j].is_zero()) return false;
        q = poly();
        for (int k = 0; k <= da - db; ++k)
            if (!Q[k].is_zero()) q += Q[k] * var(x, k);
        return true;
    }
    poly exact_div(const poly& b) const {
        poly q;
        if (!try_exact_div(*this, b, q)) throw std::domain_error("poly: inexact division");
        return q;
    }
    bool divides(const poly& a) const {
        poly q;
        return try_exact_div(a, *this, q);
    }

    poly derivative(int s) const {
        std::vector<term> out;
        for (auto& tr : t_) {
            int k = tr.m.deg(s);
            if (k == 0) continue;
            mono m;
            mono::try_div(tr.m, mono_of(s, 1), m);
            out.push_back({m, tr.c * scalar(k)});
        }
        return from_terms(std::move(out));
    }

    poly substitute(int s, const poly& val) const {
        // Horner over the coefficients of s
        int d = degree(s);
        if (d == 0) return *this;
        std::vector<poly> coef(d + 1);
        for (auto& tr : t_) {
            int k = tr.m.deg(s);
            mono m;
            mono::try_div(tr.m, mono_of(s, k), m);
            coef[k].t_.push_back({m, tr.c});
        }
        for (auto& c : coef) c.normalize();
        poly r = coef[d];
        for (int k = d - 1; k >= 0; --k) r = r * val + coef[k];
        return r;
    }
    poly substitute(int s, const scalar& val) const { return substitute(s, poly(val)); }

    // coefficients of *this viewed as a univariate polynomial in s
    std::vector<poly> coeffs_in(int s) const {
        std::vector<poly> coef(degree(s) + 1);
        for (auto& tr : t_) {
            int k = tr.m.deg(s);
            mono m;
            mono::try_div(tr.m, mono_of(s, k), m);
            coef[k].t_.push_back({m, tr.c});
        }
        for (auto& c : coef) c.normalize();
        return coef;
    }
    static poly from_coeffs_in(int s, const std::vector<poly>& coef) {
        poly r;
        for (size_t k = 0; k < coef.size(); ++k) r += coef[k] * var(s, (int)k);
        return r;
    }

    // divide by the leading coefficient (canonical monic form)
    poly monic() const {
        if (is_zero()) return *this;
        return *this * leading_coeff().inverse();
    }

    std::string str() const {
        if (t_.empty()) return "0";
        std::string out;
        for (auto& tr : t_) {
            if (!out.empty()) out += " + ";
            out += tr.c.str();
            for (auto& [v, k] : tr.m.e) {
                out += "*" + sym_name(v);
                if (k > 1) out += "^" + std::to_string(k);
            }
        }
        return out;
    }

private:
    std::vector<term> t_;

    static poly mul_term(const poly& a, const term& t) {
        poly r;
        r.t_.reserve(a.t_.size());
        for (auto& tr : a.t_) r.t_.push_back({tr.m * t.m, tr.c * t.c});
        // multiplying by a single term preserves the ordering
        return r;
    }
    void normalize() {
        std::sort(t_.begin(), t_.end(), [](const term& x, const term& y) { return y.m < x.m; });
        std::vector<term> out;
        for (auto& tr : t_) {
            if (!out.empty() && out.back().m == tr.m)
                out.back().c += tr.c;
            else
                out.push_back(tr);
        }
        out.erase(std::remove_if(out.begin(), out.end(),
                                 [](const term& x) { return x.c.is_zero(); }),
                  out.end());
        t_ = std::move(out);
    }
};

// ---- multivariate gcd (primitive PRS), used as a fallback when factored
// denominators cannot be cancelled by trial division ----

namespace detail {

inline poly gcd_many(const std::vector<poly>& ps);

inline poly poly_gcd(poly a, poly b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return poly(1);
    // pick the main variable with smallest combined degree
    auto sa = a.symbols();
    int var = -1, best = 1 << 30;
    for (int s : sa) {
        if (!b.depends_on(s)) continue;
        int d = a.degree(s) + b.degree(s);
        if (d < best) best = d, var = s;
    }
    if (var < 0) return poly(1);  // disjoint supports
    auto ca = a.coeffs_in(var), cb = b.coeffs_in(var);
    poly cont_a = gcd_many(ca), cont_b = gcd_many(cb);
    poly pa = a.exact_div(cont_a), pb = b.exact_div(cont_b);
    poly cont = poly_gcd(cont_a, cont_b);
    // primitive Euclid via pseudo-remainders
    if (pa.degree(var) < pb.degree(var)) std::swap(pa, pb);
    while (!pb.is_zero()) {
        int db = pb.degree(var);
        poly lead_b = pb.coeffs_in(var).back();
        poly rem = pa;
        while (!rem.is_zero() && rem.degree(var) >= db) {
            int dr = rem.degree(var);
            poly lead_r = rem.coeffs_in(var).back();
            rem = rem * lead_b - pb * lead_r * poly::var(var, dr - db);
        }
        pa = std::move(pb);
        if (rem.is_zero()) break;
        auto cr = rem.coeffs_in(var);
        pb = rem.exact_div(gcd_many(cr));
    }
    // pa now holds the gcd of the primitive parts, up to content
    if (pa.depends_on(var)) {
        auto cp = pa.coeffs_in(var);
        pa = pa.exact_div(gcd_many(cp));
        return (cont * pa).monic();
    }
    return cont.monic();
}

inline poly gcd_many(const std::vector<poly>& ps) {
    poly g;
    for (const auto& p : ps) {
        if (p.is_zero()) continue;
        g = g.is_zero() ? p : poly_gcd(g, p);
        if (g.is_constant()) return poly(1);
    }
    return g.is_zero() ? poly(1) : g.monic();
}

}  // namespace detail

inline poly poly_gcd(const poly& a, const poly& b) { return detail::poly_gcd(a, b); }

}  // namespace gk
