#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace gk {

using rat = mpq_class;

inline rat rat_of(long p, long q = 1) {
    rat r(p, q);
    r.canonicalize();
    return r;
}

inline rat rat_parse(const std::string& s) {
    rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

inline std::string rat_str(const rat& r) { return r.get_str(); }

// Exact field element: Q, Q(sqrt(d)) with d a squarefree integer, or the
// cyclotomic field Q[w]/Phi_n(w). Elements are coefficient vectors over the
// power basis of the extension; plain rationals have a single coefficient.
// Mixing sqrt(d) with a root of unity (or two different extensions) is
// rejected: the declared tower is Q plus at most one extension.
class scalar {
public:
    enum class ext : uint8_t { none, sqrt, cyclo };

    scalar() : c_{rat(0)} {}
    scalar(long v) : c_{rat_of(v)} {}
    scalar(const rat& v) : c_{v} {}
    scalar(rat&& v) : c_{std::move(v)} {}

    static scalar sqrt_of(long d) {  // the element sqrt(d)
        check_squarefree(d);
        scalar s;
        s.e_ = ext::sqrt;
        s.par_ = d;
        s.c_ = {rat(0), rat(1)};
        return s;
    }
    static scalar quad(const rat& a, const rat& b, long d) {  // a + b sqrt(d)
        check_squarefree(d);
        scalar s;
        s.e_ = ext::sqrt;
        s.par_ = d;
        s.c_ = {a, b};
        s.trim();
        return s;
    }
    // primitive n-th root of unity in Q[w]/Phi_n
    static scalar root_of_unity(long n) {
        if (n < 1) throw std::invalid_argument("root_of_unity: n >= 1 required");
        if (n == 1) return scalar(1);
        if (n == 2) return scalar(-1);
        scalar s;
        s.e_ = ext::cyclo;
        s.par_ = n;
        s.c_.assign(cyclo_degree(n), rat(0));
        s.c_[1] = 1;
        s.reduce_cyclo();
        return s;
    }
    static scalar cyclo(std::vector<rat> coeffs, long n) {
        scalar s;
        s.e_ = ext::cyclo;
        s.par_ = n;
        s.c_ = std::move(coeffs);
        s.c_.resize(cyclo_degree(n), rat(0));
        s.reduce_cyclo();
        s.trim();
        return s;
    }

    ext extension() const { return e_; }
    long ext_param() const { return par_; }
    bool is_rational() const { return e_ == ext::none; }
    const rat& rational_value() const {
        if (!is_rational()) throw std::domain_error("scalar: not a rational");
        return c_[0];
    }
    const std::vector<rat>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }
    bool is_one() const { return is_rational() && c_[0] == 1; }

    friend scalar operator-(const scalar& a) {
        scalar r = a;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend scalar operator+(const scalar& a, const scalar& b) {
        if (a.e_ == ext::none && b.e_ == ext::none) return scalar(rat(a.c_[0] + b.c_[0]));
        auto [x, y] = promote(a, b);
        for (size_t i = 0; i < y.c_.size(); ++i) x.c_[i] += y.c_[i];
        x.trim();
        return x;
    }
    friend scalar operator-(const scalar& a, const scalar& b) { return a + (-b); }
    friend scalar operator*(const scalar& a, const scalar& b) {
        if (a.e_ == ext::none && b.e_ == ext::none) return scalar(rat(a.c_[0] * b.c_[0]));
        auto [x, y] = promote(a, b);
        scalar r;
        r.e_ = x.e_;
        r.par_ = x.par_;
        r.c_.assign(x.c_.size() + y.c_.size() - 1, rat(0));
        for (size_t i = 0; i < x.c_.size(); ++i) {
            if (x.c_[i] == 0) continue;
            for (size_t j = 0; j < y.c_.size(); ++j) {
                if (y.c_[j] == 0) continue;
                r.c_[i + j] += x.c_[i] * y.c_[j];
            }
        }
        if (r.e_ == ext::sqrt) {
            // basis 1, sqrt(d): fold the sqrt(d)^2 coefficient
            if (r.c_.size() > 2) {
                r.c_[0] += r.c_[2] * r.par_;
                r.c_.resize(2);
            }
        } else if (r.e_ == ext::cyclo) {
            r.reduce_cyclo();
        }
        r.trim();
        return r;
    }
    scalar inverse() const {
        if (is_zero()) throw std::domain_error("scalar: division by zero");
        switch (e_) {
            case ext::none:
                return scalar(rat(1 / c_[0]));
            case ext::sqrt: {
                // 1/(a+b sqrt d) = (a-b sqrt d)/(a^2-d b^2)
                rat nrm = c_[0] * c_[0] - rat(par_) * c_[1] * c_[1];
                if (nrm == 0) throw std::domain_error("scalar: d is a perfect square?");
                return quad(c_[0] / nrm, -c_[1] / nrm, par_);
            }
            case ext::cyclo: {
                auto inv = poly_invert_mod(c_, cyclotomic_poly(par_));
                return cyclo(std::move(inv), par_);
            }
        }
        throw std::logic_error("unreachable");
    }
    friend scalar operator/(const scalar& a, const scalar& b) { return a * b.inverse(); }

    scalar& operator+=(const scalar& b) { return *this = *this + b; }
    scalar& operator-=(const scalar& b) { return *this = *this - b; }
    scalar& operator*=(const scalar& b) { return *this = *this * b; }
    scalar& operator/=(const scalar& b) { return *this = *this / b; }

    friend bool operator==(const scalar& a, const scalar& b) {
        if (a.e_ == b.e_ && a.par_ == b.par_) return a.c_ == b.c_;
        return (a - b).is_zero();
    }
    friend bool operator!=(const scalar& a, const scalar& b) { return !(a == b); }

    scalar pow(long k) const {
        if (k < 0) return inverse().pow(-k);
        scalar r(1), b = *this;
        while (k) {
            if (k & 1) r = r * b;
            b = b * b;
            k >>= 1;
        }
        return r;
    }

    // total order for canonical container keys; not a numeric order
    friend bool operator<(const scalar& a, const scalar& b) {
        if (a.e_ != b.e_) return a.e_ < b.e_;
        if (a.par_ != b.par_) return a.par_ < b.par_;
        if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
        for (size_t i = 0; i < a.c_.size(); ++i)
            if (a.c_[i] != b.c_[i]) return cmp(a.c_[i], b.c_[i]) < 0;
        return false;
    }

    std::string str() const {
        if (is_rational()) return rat_str(c_[0]);
        std::string base = e_ == ext::sqrt ? "sqrt(" + std::to_string(par_) + ")"
                                           : "w" + std::to_string(par_);
        std::string out;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            if (!out.empty()) out += " + ";
            out += rat_str(c_[i]);
            if (i == 1) out += "*" + base;
            if (i > 1) out += "*" + base + "^" + std::to_string(i);
        }
        return out.empty() ? "0" : out;
    }

    // Phi_n as a monic coefficient vector (constant term first).
    static const std::vector<rat>& cyclotomic_poly(long n) {
        static std::vector<std::vector<rat>> cache;  // cache[n]
        if (n >= (long)cache.size()) cache.resize(n + 1);
        if (!cache[n].empty()) return cache[n];
        // x^n - 1 divided by the product of Phi_d over proper divisors d of n
        std::vector<rat> num(n + 1, rat(0));
        num[0] = -1;
        num[n] = 1;
        for (long d = 1; d < n; ++d) {
            if (n % d != 0) continue;
            num = poly_exact_div(num, cyclotomic_poly(d));
        }
        cache[n] = num;
        return cache[n];
    }
    static size_t cyclo_degree(long n) { return cyclotomic_poly(n).size() - 1; }

private:
    std::vector<rat> c_;
    ext e_ = ext::none;
    long par_ = 0;

    void trim() {
        if (e_ == ext::none) return;
        bool flat = true;
        for (size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) flat = false;
        if (flat) {
            c_.resize(1);
            e_ = ext::none;
            par_ = 0;
        }
    }

    void reduce_cyclo() {
        const auto& phi = cyclotomic_poly(par_);
        size_t deg = phi.size() - 1;
        while (c_.size() > deg) {
            rat lead = c_.back();
            size_t off = c_.size() - 1 - deg;
            c_.pop_back();
            if (lead != 0)
                for (size_t i = 0; i < deg; ++i) c_[off + i] -= lead * phi[i];
        }
        c_.resize(deg, rat(0));
    }

    static void check_squarefree(long d) {
        if (d == 0 || d == 1) throw std::invalid_argument("sqrt extension: d must be != 0, 1");
        long ad = d < 0 ? -d : d;
        for (long p = 2; p * p <= ad; ++p)
            if (ad % (p * p) == 0) throw std::invalid_argument("sqrt extension: d not squarefree");
    }

    static std::pair<scalar, scalar> promote(const scalar& a, const scalar& b) {
        if (a.e_ == b.e_ && a.par_ == b.par_) return {a, b};
        if (a.e_ == ext::none) {
            scalar x = b;
            for (auto& v : x.c_) v = 0;
            x.c_[0] = a.c_[0];
            return {x, b};
        }
        if (b.e_ == ext::none) {
            auto [y, x] = promote(b, a);
            return {x, y};
        }
        throw std::domain_error("scalar: mixing distinct field extensions is not supported");
    }

    // exact division of univariate rational-coefficient polynomials
    static std::vector<rat> poly_exact_div(std::vector<rat> num, const std::vector<rat>& den) {
        if (num.size() < den.size()) throw std::logic_error("cyclo division underflow");
        std::vector<rat> q(num.size() - den.size() + 1, rat(0));
        for (size_t i = q.size(); i-- > 0;) {
            rat f = num[i + den.size() - 1] / den.back();
            q[i] = f;
            if (f != 0)
                for (size_t j = 0; j < den.size(); ++j) num[i + j] -= f * den[j];
        }
        for (const auto& v : num)
            if (v != 0) throw std::logic_error("cyclo division not exact");
        return q;
    }

    // inverse of a mod m over Q[x] via extended Euclid
    static std::vector<rat> poly_invert_mod(std::vector<rat> a, std::vector<rat> m) {
        auto deg = [](const std::vector<rat>& p) {
            for (size_t i = p.size(); i-- > 0;)
                if (p[i] != 0) return (long)i;
            return -1L;
        };
        std::vector<rat> r0 = m, r1 = a, s0 = {rat(0)}, s1 = {rat(1)};
        while (deg(r1) > 0) {
            long dr0 = deg(r0), dr1 = deg(r1);
            std::vector<rat> q(dr0 - dr1 + 1, rat(0));
            std::vector<rat> rem = r0;
            for (long i = dr0 - dr1; i >= 0; --i) {
                rat f = rem[i + dr1] / r1[dr1];
                q[i] = f;
                if (f != 0)
                    for (long j = 0; j <= dr1; ++j) rem[i + j] -= f * r1[j];
            }
            // s_{k+1} = s_{k-1} - q s_k
            std::vector<rat> s2 = s0;
            s2.resize(std::max(s0.size(), q.size() + s1.size()), rat(0));
            for (size_t i = 0; i < q.size(); ++i) {
                if (q[i] == 0) continue;
                for (size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
            }
            r0 = std::move(r1);
            r1 = std::move(rem);
            r1.resize(r0.size() + 1);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        if (deg(r1) != 0) throw std::domain_error("scalar: element not invertible mod Phi_n");
        rat lead = r1[0];
        for (auto& v : s1) v /= lead;
        return s1;
    }
};

// sum_{k=0}^{r-1} w^{jk} over the r-th roots of unity; r if r | j, else 0
inline scalar cyclotomic_sum_powers(long r, long j) {
    scalar w = scalar::root_of_unity(r);
    scalar acc(0);
    for (long k = 0; k < r; ++k) acc += w.pow(j * k);
    return acc;
}

}  // namespace gk
