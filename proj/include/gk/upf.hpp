#pragma once

#include "residue.hpp"

namespace gk {

// Rational function of u with poles only at finite points u = p (p a symbol)
// and no polynomial part, stored in partial fractions: sum of
// coeff / (u - p)^k. Keeping u out of the polynomial ring this way makes the
// square-ciliated recursion cheap.
class upf {
public:
    using key = std::pair<int, int>;  // (pole symbol, order k >= 1)

    upf() = default;

    static upf simple(int pole, ratfun c, int k = 1) {
        upf r;
        if (!c.is_zero()) r.t_[{pole, k}] = std::move(c);
        return r;
    }

    const std::map<key, ratfun>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    friend upf operator-(const upf& a) {
        upf r = a;
        for (auto& [k, c] : r.t_) c = -c;
        return r;
    }
    friend upf operator+(const upf& a, const upf& b) {
        upf r = a;
        for (auto& [k, c] : b.t_) {
            auto it = r.t_.find(k);
            if (it == r.t_.end())
                r.t_[k] = c;
            else {
                it->second += c;
                if (it->second.is_zero()) r.t_.erase(it);
            }
        }
        return r;
    }
    friend upf operator-(const upf& a, const upf& b) { return a + (-b); }
    friend upf operator*(const upf& a, const ratfun& c) {  // u-free scale
        if (c.is_zero()) return {};
        upf r = a;
        for (auto& [k, cc] : r.t_) cc *= c;
        return r;
    }
    upf& operator+=(const upf& b) { return *this = *this + b; }
    upf& operator-=(const upf& b) { return *this = *this - b; }

    friend bool operator==(const upf& a, const upf& b) {
        if (a.t_.size() != b.t_.size()) return false;
        for (auto ia = a.t_.begin(), ib = b.t_.begin(); ia != a.t_.end(); ++ia, ++ib) {
            if (ia->first != ib->first) return false;
            if (ia->second != ib->second) return false;
        }
        return true;
    }
    friend bool operator!=(const upf& a, const upf& b) { return !(a == b); }

    // multiply by 1/(u - a):
    //   1/((u-p)^k (u-a)) = sum_{j=1..k} -(a-p)^{j-k-1}/(u-p)^j + (a-p)^{-k}/(u-a)
    upf div_simple(int a) const {
        upf r;
        poly ap = poly::var(a);
        for (auto& [k, c] : t_) {
            auto [p, kk] = k;
            if (p == a) {
                r.add({p, kk + 1}, c);
                continue;
            }
            ratfun amp = ratfun(ap - poly::var(p));  // (a - p)
            ratfun inv = amp.inverse();
            ratfun powj = inv;  // (a-p)^{j-k-1} built from j = k downward
            for (int j = kk; j >= 1; --j) {
                r.add({p, j}, -(c * powj));
                powj *= inv;
            }
            r.add({a, 1}, c * inv.pow(kk));
        }
        return r;
    }

    // Rename coefficient symbols and pole symbols simultaneously. When the
    // rename makes two pole locations coincide (a -> b with b already a
    // pole), the coefficients are individually singular at a = b; the merged
    // coefficients are obtained as the finite epsilon -> 0 limit along
    // a = b + epsilon.
    upf rename(const std::vector<std::pair<int, int>>& subs) const {
        auto tgt = [&](int p) {
            for (auto& s : subs)
                if (s.first == p) return s.second;
            return p;
        };
        // group the poles present by their rename target
        std::map<int, std::vector<int>> groups;
        for (auto& [k, c] : t_) {
            auto& v = groups[tgt(k.first)];
            if (std::find(v.begin(), v.end(), k.first) == v.end()) v.push_back(k.first);
        }
        int conf_a = -1, conf_b = -1;
        for (auto& [target, sources] : groups) {
            if (sources.size() <= 1) continue;
            if (sources.size() > 2 || conf_a >= 0)
                throw std::domain_error("upf::rename: more than two poles merging");
            conf_b = target;
            conf_a = sources[0] == target ? sources[1] : sources[0];
        }
        if (conf_a < 0) {  // injective on the poles present
            upf r;
            for (auto& [k, c] : t_) r.add({tgt(k.first), k.second}, rename_symbols(c, subs));
            return r;
        }
        // stage the confluent source through a fresh coordinate
        int tau = sym("_cfl");
        std::vector<std::pair<int, int>> pre;
        for (auto& s : subs) pre.push_back(s.first == conf_a ? std::pair{conf_a, tau} : s);
        upf staged;
        for (auto& [k, c] : t_) {
            int p = k.first == conf_a ? tau : tgt(k.first);
            staged.add({p, k.second}, rename_symbols(c, pre));
        }
        // merge the tau-pole into conf_b
        upf r;
        std::map<int, ratfun> A, B;
        int K = 0, E = 0;
        auto scan_depth = [&](const ratfun& c) {
            poly bp = poly::var(conf_b);
            int e = 0;
            for (auto& [f, ex] : c.den())
                if (f.depends_on(tau) && f.substitute(tau, bp).is_zero()) e += ex;
            E = std::max(E, e);
        };
        for (auto& [k, c] : staged.t_) {
            if (k.first == tau) {
                A[k.second] = c;
                K = std::max(K, k.second);
                scan_depth(c);
            } else if (k.first == conf_b) {
                B[k.second] = c;
                K = std::max(K, k.second);
                scan_depth(c);
            } else {
                // spectator poles are regular at the confluence point
                r.add(k, c.substitute(tau, ratfun::var(conf_b)));
            }
        }
        int w = K + E + 2;
        aseries bpt(ratfun::var(conf_b));
        auto expand = [&](const ratfun& c) { return expand_at(c, tau, bpt, w); };
        std::map<int, sseries> Ax;
        for (auto& [k, c] : A) Ax[k] = expand(c);
        // coefficients with epsilon-poles push the merged pole order past K
        for (int j = 1; j <= K + E; ++j) {
            sseries bracket;
            auto itB = B.find(j);
            if (itB != B.end()) bracket += expand(itB->second);
            for (auto& [k, Ae] : Ax) {
                if (k > j) continue;
                rat bin(1);  // C(j-1, j-k)
                for (int t = 0; t < j - k; ++t) bin = bin * rat(j - 1 - t) / rat(t + 1);
                bracket += Ae * sseries::monomial(aseries(ratfun(poly(scalar(bin)))), j - k);
            }
            if (bracket.is_zero()) continue;
            for (int i = bracket.lo(); i < 0; ++i)
                if (!bracket.coeff(i).is_zero())
                    throw std::logic_error(
                        "upf::rename: pole confluence limit does not exist (j=" +
                        std::to_string(j) + ", eps^" + std::to_string(i) + ": " +
                        bracket.coeff(i).coeff(0).str() + ")");
            aseries c0 = bracket.coeff(0);
            if (!c0.is_zero()) r.add({conf_b, j}, c0.coeff(0));
        }
        return r;
    }

    // derivative in a symbol that may also be a pole location
    upf derivative(int s) const {
        upf r;
        for (auto& [k, c] : t_) {
            auto [p, kk] = k;
            r.add(k, c.derivative(s));
            if (p == s) r.add({p, kk + 1}, c * scalar(kk));
        }
        return r;
    }

    // substitute a symbol by another symbol (pole keys included)
    upf substitute_sym(int from, int to) const { return rename({{from, to}}); }

    ratfun assembled(int usym) const {
        ratfun out;
        for (auto& [k, c] : t_)
            out += c / ratfun(poly::var(usym) - poly::var(k.first)).pow(k.second);
        return out;
    }

    // -Res_{u=inf} V'(u) q(u) U du for polynomial q; finite residues summed
    // with a sign flip. Res_{u=p} f(u)/(u-p)^k du = f^{(k-1)}(p)/(k-1)!.
    ratfun neg_residue_infinity(const poly& f_of_u, int usym) const {
        ratfun out;
        for (auto& [k, c] : t_) {
            auto [p, kk] = k;
            poly d = f_of_u;
            rat fact(1);
            for (int i = 1; i < kk; ++i) {
                d = d.derivative(usym);
                fact *= i;
            }
            poly dp = d.substitute(usym, poly::var(p));
            out += c * ratfun(dp) * scalar(rat(1) / fact);
        }
        return out;
    }

    // coefficient of u^{-m} in the expansion at u = infinity:
    // 1/(u-p)^k = sum_{i>=0} C(k-1+i, i) p^i u^{-k-i}
    ratfun coeff_at_infinity(int m) const {
        ratfun out;
        for (auto& [k, c] : t_) {
            auto [p, kk] = k;
            int i = m - kk;
            if (i < 0) continue;
            rat binom(1);
            for (int t = 1; t <= i; ++t) binom *= rat(kk - 1 + t) / t;
            out += c * ratfun(poly::var(p).pow(i)) * scalar(binom);
        }
        return out;
    }

    void add(const key& k, const ratfun& c) {
        if (c.is_zero()) return;
        auto it = t_.find(k);
        if (it == t_.end())
            t_[k] = c;
        else {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

private:
    std::map<key, ratfun> t_;
};

}  // namespace gk
