#pragma once

#include <tuple>

#include "maps.hpp"
#include "model.hpp"
#include "residue.hpp"
#include "series.hpp"
#include "upf.hpp"

namespace gk {

// u-polynomial as a coefficient vector over the z-rational functions
using uvec = std::vector<ratfun>;

namespace detail_tutte {

inline void uvec_trim(uvec& v) {
    while (!v.empty() && v.back().is_zero()) v.pop_back();
}
inline uvec uvec_scale(const uvec& v, const ratfun& c) {
    if (c.is_zero()) return {};
    uvec r = v;
    for (auto& x : r) x *= c;
    return r;
}
inline uvec uvec_rename(const uvec& v, const std::vector<std::pair<int, int>>& subs) {
    uvec r = v;
    for (auto& x : r) x = rename_symbols(x, subs);
    return r;
}
inline ratfun uvec_eval(const uvec& v, const ratfun& x) {  // Horner
    ratfun out;
    for (size_t k = v.size(); k-- > 0;) out = out * x + v[k];
    return out;
}
inline poly uvec_to_poly_num_check(const uvec& v) { return poly(); }

}  // namespace detail_tutte

// Order-by-order solver for the disc and generic Tutte equations. W_{g,n} is
// a rational function of z_1..z_n per ahat order; H_{g,n} is carried as a
// u-coefficient vector and U_{g,n} in partial fractions over its u-poles, so
// the bookkeeping symbol u never enters the polynomial ring.
class tutte_table {
public:
    tutte_table(int r, potential V, int N, int D)
        : r_(r), V_(std::move(V)), N_(N), D_(D) {
        for (int j = 0; j < N_; ++j) lambda_.push_back(sym("l" + std::to_string(j + 1)));
        u_ = sym("u");
        for (int i = 0; i < 8; ++i) z_.push_back(sym("z" + std::to_string(i + 1)));
    }

    int truncation() const { return D_; }
    int spins() const { return r_; }
    const potential& V() const { return V_; }
    int nlambda() const { return N_; }
    int zsym(int i) const { return z_.at(i); }
    int usym() const { return u_; }
    int lsym(int j) const { return lambda_.at(j); }

    // structured access (preferred)
    int W_lo(int g, int n) {
        fill(g, n);
        return wlo_.at({g, n});
    }
    const ratfun& W_coeff(int g, int n, int d) {
        fill(g, n);
        return at(Wst_.at({g, n}), wlo_.at({g, n}), d);
    }
    const uvec& H_coeff(int g, int n, int d) {
        fill(g, n);
        return at(Hst_.at({g, n}), hlo_.at({g, n}), d);
    }
    const upf& U_coeff(int g, int n, int d) {
        fill(g, n);
        return at(Ust_.at({g, n}), hlo_.at({g, n}), d);
    }

    // assembled series (for reports, tests and serialization)
    aseries W(int g, int n) {
        fill(g, n);
        std::vector<ratfun> c = Wst_.at({g, n});
        return aseries::windowed(wlo_.at({g, n}), std::move(c), D_);
    }
    aseries H(int g, int n) {
        fill(g, n);
        std::vector<ratfun> c;
        for (auto& v : Hst_.at({g, n})) c.push_back(detail_tutte::uvec_eval(v, ratfun::var(u_)));
        return aseries::windowed(hlo_.at({g, n}), std::move(c), D_);
    }
    aseries U(int g, int n) {
        fill(g, n);
        std::vector<ratfun> c;
        for (auto& v : Ust_.at({g, n})) c.push_back(v.assembled(u_));
        return aseries::windowed(hlo_.at({g, n}), std::move(c), D_);
    }

    static ratfun rename(const ratfun& f, const std::vector<std::pair<int, int>>& subs) {
        return rename_symbols(f, subs);
    }
    static aseries rename(const aseries& f, const std::vector<std::pair<int, int>>& subs) {
        return f.map_coeffs([&](const ratfun& c) { return rename_symbols(c, subs); });
    }

    aseries W_at(int g, int n, const std::vector<int>& args) {
        std::vector<std::pair<int, int>> subs;
        for (int i = 0; i < n; ++i)
            if (z_[i] != args[i]) subs.push_back({z_[i], args[i]});
        return rename(W(g, n), subs);
    }

    ratfun dVint(int a, int b) const {  // 1/(V'(a) - V'(b)), factored
        poly pa = poly::var(a), pb = poly::var(b);
        return ratfun::with_den(poly(1), {{pa - pb, 1}, {V_.dd(pa, pb), 1}});
    }
    ratfun vpp_inv(int a) const { return ratfun(1) / ratfun(V_.vpp(poly::var(a))); }

private:
    int r_, N_, D_;
    potential V_;
    std::vector<int> lambda_, z_;
    int u_ = -1;

    std::map<std::pair<int, int>, std::vector<ratfun>> Wst_;
    std::map<std::pair<int, int>, std::vector<uvec>> Hst_;
    std::map<std::pair<int, int>, std::vector<upf>> Ust_;
    std::map<std::pair<int, int>, int> wlo_, hlo_;

    template <class T>
    static const T& at(const std::vector<T>& v, int lo, int d) {
        static const T zero{};
        if (d < lo || d - lo >= (int)v.size()) return zero;
        return v[d - lo];
    }

    bool have(int g, int n) const { return Wst_.count({g, n}) > 0; }

    void fill(int g, int n) {
        if (have(g, n)) return;
        for (int gg = 0; 2 * gg <= 2 * g + n; ++gg)
            for (int nn = 1; 2 * gg + nn < 2 * g + n; ++nn)
                if (!have(gg, nn)) fill(gg, nn);
        if (g == 0 && n == 1)
            fill_disc();
        else
            fill_generic(g, n);
    }

    // rhs accumulated per u-power; returns (W^d, H^d vector) for one order
    std::pair<ratfun, uvec> solve_order(std::vector<ratfun_sum>& rhs_acc, const uvec& h_init,
                                        const ratfun& vpp1) {
        uvec rhs(rhs_acc.size());
        for (size_t k = 0; k < rhs_acc.size(); ++k) rhs[k] = rhs_acc[k].value();
        ratfun z1r = ratfun::var(z_[0]);
        ratfun Wd = -detail_tutte::uvec_eval(rhs, z1r) / vpp1;
        if (!Wd.is_zero())
            for (size_t k = 0; k < h_init.size(); ++k) {
                if (k >= rhs.size()) rhs.resize(k + 1);
                rhs[k] += Wd * h_init[k];
            }
        detail_tutte::uvec_trim(rhs);
        // synthetic division by (u - z1): H_{t-1} = RHS_t + z1 H_t downward
        uvec Hd(rhs.size() ? rhs.size() - 1 : 0);
        ratfun carry;
        for (size_t t = rhs.size(); t-- > 1;) {
            carry = rhs[t] + z1r * carry;
            Hd[t - 1] = carry;
        }
        if (!rhs.empty() && !(rhs[0] + z1r * Hd[0]).is_zero())
            throw std::logic_error("tutte: disc/generic rhs not divisible by (u - z1)");
        detail_tutte::uvec_trim(Hd);
        return {std::move(Wd), std::move(Hd)};
    }

    void fill_disc() {
        using namespace detail_tutte;
        poly z1p = poly::var(z_[0]);
        ratfun vpp1 = ratfun(V_.vpp(z1p));
        // H^{-1} = (V'(u)-V'(z1))/(u-z1) as u-coefficients
        uvec h_init;
        {
            poly ddp = V_.dd(poly::var(u_), z1p);
            for (auto& c : ddp.coeffs_in(u_)) h_init.push_back(ratfun(c));
        }
        std::vector<uvec> Hc{h_init};
        std::vector<ratfun> Wc;
        std::vector<upf> Uc{upf::simple(z_[0], vpp1.inverse())};
        std::vector<ratfun> lam_dV;
        for (int j = 0; j < N_; ++j) lam_dV.push_back(dVint(z_[0], lambda_[j]));
        for (int d = 0; d <= D_; ++d) {
            std::vector<ratfun_sum> rhs(r_ + 1);
            for (int a = 0; a <= d - 1; ++a) {
                const uvec& Hb = Hc[d - a];  // H^{d-1-a}
                for (size_t k = 0; k < Hb.size(); ++k) rhs[k] += Wc[a] * Hb[k];
            }
            const uvec& Hd1 = Hc[d];  // H^{d-1}
            for (int j = 0; j < N_; ++j) {
                for (size_t k = 0; k < Hd1.size(); ++k) {
                    ratfun Hlam = Hd1[k].substitute(z_[0], ratfun::var(lambda_[j]));
                    rhs[k] += (Hd1[k] - Hlam) * lam_dV[j];
                }
            }
            auto [Wd, Hd] = solve_order(rhs, h_init, vpp1);
            Wc.push_back(std::move(Wd));
            Hc.push_back(std::move(Hd));
        }
        // U recursion
        for (int d = 0; d <= D_; ++d) {
            upf rhs;
            for (int a = 0; a <= d; ++a) rhs += Uc[d - a] * Wc[a];  // W^a U^{d-1-a}
            const upf& Ud1 = Uc[d];
            for (int j = 0; j < N_; ++j) {
                upf Ulam = Ud1.substitute_sym(z_[0], lambda_[j]);
                ratfun vppl = ratfun(V_.vpp(poly::var(lambda_[j])));
                rhs += Ud1 * lam_dV[j];
                rhs -= Ulam * (vppl * lam_dV[j] / vpp1);
            }
            Uc.push_back(rhs.div_simple(z_[0]));
        }
        Wst_[{0, 1}] = std::move(Wc);
        Hst_[{0, 1}] = std::move(Hc);
        Ust_[{0, 1}] = std::move(Uc);
        wlo_[{0, 1}] = 0;
        hlo_[{0, 1}] = -1;
    }

    void fill_generic(int g, int n) {
        using namespace detail_tutte;
        poly z1p = poly::var(z_[0]);
        ratfun vpp1 = ratfun(V_.vpp(z1p));
        uvec h_init;
        {
            poly ddp = V_.dd(poly::var(u_), z1p);
            for (auto& c : ddp.coeffs_in(u_)) h_init.push_back(ratfun(c));
        }
        const auto& W01 = Wst_.at({0, 1});
        const auto& H01 = Hst_.at({0, 1});
        const auto& U01 = Ust_.at({0, 1});

        std::vector<int> I(z_.begin() + 1, z_.begin() + n);
        int dmin = 2 * g + n - 2;
        int m = n - 1;

        std::vector<ratfun> Wc;
        std::vector<uvec> Hc;
        std::vector<upf> Uc;
        auto Hord = [&](int d) -> const uvec& {
            static const uvec zero{};
            return d < dmin || d - dmin >= (int)Hc.size() ? zero : Hc[d - dmin];
        };
        auto Word = [&](int d) -> ratfun {
            return d < dmin || d - dmin >= (int)Wc.size() ? ratfun() : Wc[d - dmin];
        };
        auto Uord = [&](int d) -> const upf& {
            static const upf zero{};
            return d < dmin || d - dmin >= (int)Uc.size() ? zero : Uc[d - dmin];
        };

        struct lower_sub {
            int zm;
            std::vector<std::pair<int, int>> at_z1, at_zm;
            ratfun dV, vppm;
        };
        std::vector<lower_sub> lowers;
        for (int mi = 0; mi < m; ++mi) {
            lower_sub L;
            L.zm = I[mi];
            L.at_zm.push_back({z_[0], L.zm});
            std::vector<int> Im;
            for (int t = 0; t < m; ++t)
                if (t != mi) Im.push_back(I[t]);
            for (size_t t = 0; t < Im.size(); ++t)
                if (z_[t + 1] != Im[t]) {
                    L.at_z1.push_back({z_[(int)t + 1], Im[t]});
                    L.at_zm.push_back({z_[(int)t + 1], Im[t]});
                }
            L.dV = dVint(z_[0], L.zm);
            L.vppm = ratfun(V_.vpp(poly::var(L.zm)));
            lowers.push_back(std::move(L));
        }

        struct part {
            int dmin1, dmin2;
            bool is_wgn_u01, u01_side;  // u01_side: (h2,n2) == (0,1)
            std::vector<ratfun> Wa;     // from order dmin1
            std::vector<uvec> Hb;       // from order dmin2 (or -1 for (0,1))
            std::vector<upf> Ub;
            int hb_lo;
        };
        std::vector<part> parts;
        for (int h = 0; h <= g; ++h)
            for (int mask = 0; mask < (1 << m); ++mask) {
                std::vector<int> J, Jc;
                for (int i = 0; i < m; ++i) (mask >> i & 1 ? J : Jc).push_back(I[i]);
                if (h == 0 && J.empty()) continue;
                part p;
                int n1 = 1 + (int)J.size(), n2 = 1 + (int)Jc.size(), h2 = g - h;
                p.dmin1 = 2 * h + n1 - 2;
                p.dmin2 = 2 * h2 + n2 - 2;
                p.is_wgn_u01 = (h == g && (int)J.size() == m);
                p.u01_side = (h2 == 0 && n2 == 1);
                if (!p.is_wgn_u01) {
                    std::vector<std::pair<int, int>> sub1, sub2;
                    for (size_t t = 0; t < J.size(); ++t)
                        if (z_[t + 1] != J[t]) sub1.push_back({z_[(int)t + 1], J[t]});
                    for (size_t t = 0; t < Jc.size(); ++t)
                        if (z_[t + 1] != Jc[t]) sub2.push_back({z_[(int)t + 1], Jc[t]});
                    for (auto& w : Wst_.at({h, n1})) p.Wa.push_back(rename_symbols(w, sub1));
                    for (auto& hv : Hst_.at({h2, n2})) p.Hb.push_back(uvec_rename(hv, sub2));
                    for (auto& uv : Ust_.at({h2, n2})) p.Ub.push_back(uv.rename(sub2));
                    p.hb_lo = hlo_.at({h2, n2});
                }
                parts.push_back(std::move(p));
            }

        std::vector<std::pair<int, int>> diag_sub;
        if (g >= 1) {
            diag_sub.push_back({z_[1], z_[0]});
            for (int t = 0; t < m; ++t) diag_sub.push_back({z_[t + 2], I[t]});
        }

        std::vector<ratfun> lam_dV;
        for (int j = 0; j < N_; ++j) lam_dV.push_back(dVint(z_[0], lambda_[j]));

        for (int d = dmin; d <= D_; ++d) {
            std::vector<ratfun_sum> rhs(r_ + 1);
            for (int a = 0; a <= d - 1 - dmin; ++a) {
                const uvec& Hb = Hord(d - 1 - a);
                for (size_t k = 0; k < Hb.size(); ++k) rhs[k] += W01[a] * Hb[k];
            }
            for (int a = -1; d - 1 - a >= dmin; ++a) {
                if (a == -1) continue;  // unknown W^d handled in solve_order
                ratfun wb = Word(d - 1 - a);
                if (wb.is_zero()) continue;
                const uvec& Ha = H01[a + 1];
                for (size_t k = 0; k < Ha.size(); ++k) rhs[k] += Ha[k] * wb;
            }
            const uvec& Hd1 = Hord(d - 1);
            for (int j = 0; j < N_; ++j)
                for (size_t k = 0; k < Hd1.size(); ++k) {
                    ratfun Hlam = Hd1[k].substitute(z_[0], ratfun::var(lambda_[j]));
                    rhs[k] += (Hd1[k] - Hlam) * lam_dV[j];
                }
            if (n >= 2) {
                int lo_low = hlo_.at({g, n - 1});
                const auto& Hlow = Hst_.at({g, n - 1});
                if (d - 1 >= lo_low && d - 1 - lo_low < (int)Hlow.size()) {
                    const uvec& c = Hlow[d - 1 - lo_low];
                    for (auto& L : lowers)
                        for (size_t k = 0; k < c.size(); ++k) {
                            if (c[k].is_zero()) continue;
                            ratfun expr = (rename_symbols(c[k], L.at_z1) -
                                           rename_symbols(c[k], L.at_zm)) *
                                          L.dV;
                            rhs[k] += expr.derivative(L.zm) / L.vppm;
                        }
                }
            }
            for (auto& p : parts) {
                if (p.is_wgn_u01 || p.u01_side) continue;
                for (int a = p.dmin1; a <= d - 1 - p.dmin2; ++a) {
                    const ratfun& wa = p.Wa[a - p.dmin1];
                    if (wa.is_zero()) continue;
                    const uvec& hb = p.Hb[d - 1 - a - p.hb_lo];
                    for (size_t k = 0; k < hb.size(); ++k) rhs[k] += wa * hb[k];
                }
            }
            if (g >= 1) {
                int lo_up = hlo_.at({g - 1, n + 1});
                const auto& Hup = Hst_.at({g - 1, n + 1});
                if (d - 1 >= lo_up && d - 1 - lo_up < (int)Hup.size()) {
                    const uvec& c = Hup[d - 1 - lo_up];
                    for (size_t k = 0; k < c.size(); ++k)
                        if (!c[k].is_zero()) rhs[k] += rename_symbols(c[k], diag_sub);
                }
            }
            auto [Wd, Hd] = solve_order(rhs, h_init, vpp1);
            Wc.push_back(std::move(Wd));
            Hc.push_back(std::move(Hd));
        }

        // ---- U recursion ----
        for (int d = dmin; d <= D_; ++d) {
            upf rhs;
            for (int a = 0; a <= d - 1 - dmin; ++a) {
                if (W01[a].is_zero()) continue;
                rhs += Uord(d - 1 - a) * W01[a];
            }
            const upf& Ud1 = Uord(d - 1);
            for (int j = 0; j < N_; ++j) {
                if (Ud1.is_zero()) break;
                upf Ulam = Ud1.substitute_sym(z_[0], lambda_[j]);
                ratfun vppl = ratfun(V_.vpp(poly::var(lambda_[j])));
                rhs += Ud1 * lam_dV[j];
                rhs -= Ulam * (vppl * lam_dV[j] / vpp1);
            }
            if (n >= 2) {
                int lo_low = hlo_.at({g, n - 1});
                const auto& Ulow = Ust_.at({g, n - 1});
                if (d - 1 >= lo_low && d - 1 - lo_low < (int)Ulow.size()) {
                    const upf& c = Ulow[d - 1 - lo_low];
                    for (auto& L : lowers) {
                        if (c.is_zero()) break;
                        upf Ua = c.rename(L.at_z1);
                        upf Ub = c.rename(L.at_zm);
                        upf expr = (Ua * vpp1 - Ub * L.vppm) * L.dV;
                        rhs += expr.derivative(L.zm) * (vpp1 * L.vppm).inverse();
                    }
                }
            }
            for (auto& p : parts) {
                if (p.is_wgn_u01) continue;
                int top = p.u01_side ? d : d - 1 - p.dmin2;
                for (int a = p.dmin1; a <= top; ++a) {
                    const ratfun& wa = a - p.dmin1 < (int)p.Wa.size() ? p.Wa[a - p.dmin1]
                                                                      : ratfun();
                    if (wa.is_zero()) continue;
                    const upf& ub = p.Ub[d - 1 - a - p.hb_lo];
                    rhs += ub * wa;
                }
            }
            // W_{g,n}(z1, I) U_{0,1}(u; z1): U_{0,1} reaches order -1
            for (int a = dmin; a <= d && a - dmin < (int)Wc.size(); ++a) {
                if (Wc[a - dmin].is_zero()) continue;
                rhs += U01[d - 1 - a + 1] * Wc[a - dmin];
            }
            if (g >= 1) {
                int lo_up = hlo_.at({g - 1, n + 1});
                const auto& Uup = Ust_.at({g - 1, n + 1});
                if (d - 1 >= lo_up && d - 1 - lo_up < (int)Uup.size())
                    rhs += Uup[d - 1 - lo_up].rename(diag_sub);
            }
            Uc.push_back(rhs.div_simple(z_[0]));
        }

        Wst_[{g, n}] = std::move(Wc);
        Hst_[{g, n}] = std::move(Hc);
        Ust_[{g, n}] = std::move(Uc);
        wlo_[{g, n}] = dmin;
        hlo_[{g, n}] = dmin;
    }
};

// W_{g,n} from the unciliated series by the cilium-insertion operator
// (1/V'' d/dz_1) ... (1/V'' d/dz_n) F plus the (0,1)/(0,2) corrections.
inline aseries relation_W_from_F(const potential& V, int g, int n, int N, const aseries& F) {
    aseries out = F;
    for (int i = 0; i < n; ++i) {
        int zi = sym("z" + std::to_string(i + 1));
        ratfun inv = ratfun(1) / ratfun(V.vpp(poly::var(zi)));
        out = out.map_coeffs([&](const ratfun& c) { return c.derivative(zi) * inv; });
    }
    if (g == 0 && n == 2) {
        poly z1 = poly::var("z1"), z2 = poly::var("z2");
        ratfun corr = ratfun(1) / (ratfun(V.vpp(z1)) * ratfun(V.vpp(z2)) * ratfun(z1 - z2).pow(2)) -
                      (ratfun(1) / (ratfun(z1 - z2) * ratfun(V.dd(z1, z2)))).pow(2);
        out += aseries(corr);
    }
    if (g == 0 && n == 1) {
        poly z1 = poly::var("z1");
        ratfun corr;
        for (int j = 0; j < N; ++j) {
            poly lj = poly::var("l" + std::to_string(j + 1));
            corr += ratfun(1) / (ratfun(V.vpp(z1)) * ratfun(z1 - lj)) -
                    ratfun(1) / (ratfun(z1 - lj) * ratfun(V.dd(z1, lj)));
        }
        out += aseries(corr);
    }
    return out;
}

// S_{g;k}(S_1,...,S_n) from W_{g,n} by the divided-difference relation; the
// (0,1) case uses the one-step recursion with its lone-edge correction.
inline aseries relation_S_from_W(tutte_table& T, int g, const std::vector<int>& kk) {
    int n = (int)kk.size();
    auto zs = [&](int i, int j) {
        return sym("z" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
    };
    const potential& V = T.V();
    if (g == 0 && n == 1) {
        if (kk[0] == 1) return T.W_at(0, 1, {zs(0, 0)});
        if (kk[0] != 2) throw std::domain_error("relation_S_from_W: (0,1) beyond k=2 not needed");
        poly a = poly::var(zs(0, 0)), b = poly::var(zs(0, 1));
        aseries diff = T.W_at(0, 1, {zs(0, 0)}) - T.W_at(0, 1, {zs(0, 1)});
        ratfun inv = ratfun::with_den(poly(1), {{a - b, 1}, {V.dd(a, b), 1}});
        return (diff * inv).shifted(1) + aseries(V.prop(a, b));
    }
    int shift = 0;
    for (int i = 0; i < n; ++i) shift += kk[i] - 1;
    std::vector<int> j(n, 0);
    aseries out;
    for (;;) {
        std::vector<int> args;
        for (int i = 0; i < n; ++i) args.push_back(zs(i, j[i]));
        aseries term = T.W_at(g, n, args);
        ratfun den(1);
        for (int i = 0; i < n; ++i)
            for (int t = 0; t < kk[i]; ++t) {
                if (t == j[i]) continue;
                poly a = poly::var(zs(i, j[i])), b = poly::var(zs(i, t));
                den *= ratfun::with_den(poly(1), {{a - b, 1}, {V.dd(a, b), 1}});
            }
        out += term * den;
        int i = 0;
        while (i < n && ++j[i] >= kk[i]) j[i++] = 0;
        if (i >= n) break;
    }
    return out.shifted(shift);
}

// f = (u - p) q + rem by synthetic division in u (p free of u)
inline std::pair<uvec, ratfun> divmod_linear_u(const uvec& f, const ratfun& p) {
    if (f.empty()) return {{}, ratfun()};
    uvec q(f.size() - 1);
    ratfun carry;
    for (size_t t = f.size(); t-- > 1;) {
        carry = f[t] + p * carry;
        q[t - 1] = carry;
    }
    ratfun rem = f[0] + p * (q.empty() ? ratfun() : q[0]);
    return {std::move(q), std::move(rem)};
}

// the three square-to-ciliated identities, per order
inline bool relation_residues_U(tutte_table& T, int g, int n) {
    int D = T.truncation();
    const potential& V = T.V();
    poly up = poly::var(T.usym()), z1 = poly::var(T.zsym(0));
    poly Vpu = V.vprime(up);
    ratfun Vp1 = ratfun(V.vprime(z1)), Vpp1 = ratfun(V.vpp(z1));
    bool disc = g == 0 && n == 1;
    int lo = disc ? -1 : 2 * g + n - 2;
    for (int d = lo; d <= D; ++d) {
        const upf& Ud = T.U_coeff(g, n, d);
        ratfun Wd = T.W_coeff(g, n, d);
        ratfun lhs1 = Ud.neg_residue_infinity(Vpu, T.usym());
        ratfun rhs1 = disc && d == -1 ? Vp1 / Vpp1 : ratfun();
        if (lhs1 != rhs1) return false;
        ratfun lhs2 = Ud.neg_residue_infinity(Vpu * (up - z1), T.usym());
        ratfun rhs2 = Vp1 / Vpp1 * Wd;
        if (disc && d == 0) rhs2 += ratfun((long)T.nlambda()) / Vpp1;
        if (lhs2 != rhs2) return false;
        upf T3 = Ud;
        if (disc && d == -1) T3 -= upf::simple(T.zsym(0), Vpp1.inverse());
        if (T3.coeff_at_infinity(2) != Wd / Vpp1) return false;
    }
    return true;
}

// degree/top-coefficient structure of H and the multiply-by-u identity
inline bool check_H_structure(tutte_table& T, int g, int n) {
    int D = T.truncation(), r = T.spins();
    const potential& V = T.V();
    poly up = poly::var(T.usym()), z1 = poly::var(T.zsym(0));
    ratfun vr1 = ratfun(V.v[r + 1]), vr = ratfun(V.v[r]);
    ratfun Vp1 = ratfun(V.vprime(z1)), Vpp1 = ratfun(V.vpp(z1));
    bool disc = g == 0 && n == 1;
    int lo = disc ? -1 : 2 * g + n - 2;
    // u V'(u) as a u-coefficient vector
    uvec uVp;
    {
        poly q = up * V.vprime(up);
        for (auto& c : q.coeffs_in(T.usym())) uVp.push_back(ratfun(c));
    }
    for (int d = lo; d <= D; ++d) {
        const uvec& Hd = T.H_coeff(g, n, d);
        if (disc && d == -1) {
            if ((int)Hd.size() != r) return false;
            if (Hd[r - 1] != vr1) return false;
        } else if ((int)Hd.size() > r - 1) {
            return false;
        }
        ratfun cu = (int)Hd.size() > r - 2 ? Hd[r - 2] : ratfun();
        ratfun expect = vr1 * T.W_coeff(g, n, d);
        if (disc && d == -1) expect += vr1 * ratfun(z1) + vr;
        if (r >= 2 && cu != expect) return false;
        // V''(z1) [u V'(u) U]_+ = u H + delta[d=-1] V'(z1)
        const upf& Ud = T.U_coeff(g, n, d);
        uvec lhs;
        for (auto& [k, c] : Ud.terms()) {
            // polynomial part of u V'(u)/(u-p)^k: divide k times by (u - p)
            uvec q = uVp;
            ratfun p = ratfun::var(k.first);
            for (int i = 0; i < k.second && !q.empty(); ++i) q = divmod_linear_u(q, p).first;
            if (lhs.size() < q.size()) lhs.resize(q.size());
            for (size_t t = 0; t < q.size(); ++t) lhs[t] += q[t] * c;
        }
        for (auto& x : lhs) x *= Vpp1;
        uvec rhs(Hd.size() + 1);
        for (size_t t = 0; t < Hd.size(); ++t) rhs[t + 1] = Hd[t];
        if (disc && d == -1) rhs[0] += Vp1;
        size_t tops = std::max(lhs.size(), rhs.size());
        lhs.resize(tops);
        rhs.resize(tops);
        for (size_t t = 0; t < tops; ++t)
            if (lhs[t] != rhs[t]) return false;
    }
    return true;
}

struct pole_report {
    bool no_pole_at_lambda = true;       // z1 = lambda_j
    bool no_pole_at_lambda_deck = true;  // z1 = lambda_j^{(k)}, k >= 1
    bool no_pole_at_z = true;            // z1 = z_m
    bool no_pole_at_z_deck = true;       // z1 = z_m^{(k)}
    bool leading_ok = true;              // (0,1)/(0,2) exceptional leading parts
};

inline pole_report pole_structure_check(tutte_table& T, int g, int n, int d) {
    pole_report rep;
    const potential& V = T.V();
    poly z1 = poly::var(T.zsym(0));
    ratfun Wd = T.W_coeff(g, n, d);
    if (Wd.is_zero()) return rep;
    Wd = Wd.normalized();
    poly den = Wd.den_poly();
    for (int j = 0; j < T.nlambda(); ++j) {
        poly lj = poly::var(T.lsym(j));
        if ((z1 - lj).divides(den)) rep.no_pole_at_lambda = false;
        poly ddp = V.dd(z1, lj);
        bool deck_pole = !poly_gcd(den, ddp).is_constant();
        if (g == 0 && n == 1 && d == 0) {
            // exceptional: simple pole with leading part -1/(V'(z1)-V'(lambda))
            ratfun E = ratfun(z1 - lj) * ratfun(ddp) * Wd + ratfun(1);
            ratfun Q = E / ratfun(ddp);
            if (!poly_gcd(Q.normalized().den_poly(), ddp).is_constant()) rep.leading_ok = false;
        } else if (deck_pole) {
            rep.no_pole_at_lambda_deck = false;
        }
    }
    for (int mzi = 1; mzi < n; ++mzi) {
        poly zm = poly::var(T.zsym(mzi));
        if ((z1 - zm).divides(den)) rep.no_pole_at_z = false;
        poly ddp = V.dd(z1, zm);
        bool deck_pole = !poly_gcd(den, ddp).is_constant();
        if (g == 0 && n == 2 && d == 0) {
            // exceptional: double pole with leading part -1/(V'(z1)-V'(z2))^2
            ratfun E = (ratfun(z1 - zm) * ratfun(ddp)).pow(2) * Wd + ratfun(1);
            ratfun Q = E / ratfun(ddp);
            if (!poly_gcd(Q.normalized().den_poly(), ddp).is_constant()) rep.leading_ok = false;
        } else if (deck_pole) {
            rep.no_pole_at_z_deck = false;
        }
    }
    return rep;
}

}  // namespace gk
