#pragma once

#include <algorithm>
#include <cstdlib>
#include <future>
#include <set>
#include <string>
#include <thread>

#include "model.hpp"
#include "series.hpp"
#include "upf.hpp"

namespace gk {

enum class vcolor : uint8_t { black, white, square };
enum class family : uint8_t { F, W, U, S };

inline std::string family_name(family f) {
    switch (f) {
        case family::F: return "F";
        case family::W: return "W";
        case family::U: return "U";
        default: return "S";
    }
}

struct family_spec {
    family fam = family::W;
    int r = 2, g = 0, n = 1;
    int N = 0;                    // number of unmarked-face symbols
    bool lambda_infinity = false; // drop every map with an unmarked face
    std::vector<int> k;           // cilia degrees (family S); all ones otherwise
    potential V;

    std::vector<std::vector<int>> z;  // z[i][j]: decoration symbol of white i, slot j
    std::vector<int> lambda;          // unmarked-face symbols
    int u = -1;                       // square-vertex symbol

    static family_spec make(family fam, int r, int g, int n, int N, potential V,
                            std::vector<int> kk = {}, bool lambda_inf = false) {
        family_spec s;
        s.fam = fam;
        s.r = r;
        s.g = g;
        s.n = n;
        s.N = lambda_inf ? 0 : N;
        s.lambda_infinity = lambda_inf;
        s.V = std::move(V);
        s.k = kk.empty() ? std::vector<int>(n, 1) : std::move(kk);
        for (int i = 0; i < n; ++i) {
            std::vector<int> zi;
            for (int j = 0; j < s.k[i]; ++j)
                zi.push_back(s.fam == family::S
                                 ? sym("z" + std::to_string(i + 1) + "_" + std::to_string(j + 1))
                                 : sym("z" + std::to_string(i + 1)));
            s.z.push_back(std::move(zi));
        }
        for (int j = 0; j < s.N; ++j) s.lambda.push_back(sym("l" + std::to_string(j + 1)));
        s.u = sym("u");
        return s;
    }
};

struct ribbon_map {
    std::vector<vcolor> vcol;
    std::vector<int> vdeg, vlab, vstart;
    std::vector<int> dvert, partner;
    std::vector<int> face_of;     // dart -> face index
    int nfaces = 0;
    int genus = 0;
    std::vector<int> decor;       // face -> decoration symbol id
    int delta = 0;
    int aut = 1;
    std::vector<int> code;

    int darts() const { return (int)partner.size(); }
    int sigma(int d) const {
        int v = dvert[d];
        return vstart[v] + (d - vstart[v] + 1) % vdeg[v];
    }
    void compute_faces() {
        int D = darts();
        face_of.assign(D, -1);
        nfaces = 0;
        for (int d = 0; d < D; ++d) {
            if (face_of[d] >= 0) continue;
            int e = d;
            do {
                face_of[e] = nfaces;
                e = sigma(partner[e]);
            } while (e != d);
            ++nfaces;
        }
        int V = (int)vdeg.size(), E = D / 2;
        genus = (2 - (V - E + nfaces)) / 2;
    }
};

namespace detail_maps {

struct vheader {
    vcolor c;
    int deg, lab;
};

// canonical rooted code; reconstructing the map from the code is possible, so
// equal codes mean isomorphic decorated rooted maps
inline std::vector<int> code_from_root(const ribbon_map& m, int root) {
    int D = m.darts();
    std::vector<int> newid(D, -1), order;
    order.reserve(D);
    std::vector<int> code;
    code.reserve(2 * D);
    auto header = [&](int v) {
        return -(1 + (int)m.vcol[v] + 4 * m.vdeg[v] + 512 * (m.vlab[v] + 1));
    };
    auto open_vertex = [&](int entry) {
        int d = entry;
        do {
            newid[d] = (int)order.size();
            order.push_back(d);
            d = m.sigma(d);
        } while (d != entry);
    };
    code.push_back(header(m.dvert[root]));
    open_vertex(root);
    for (size_t i = 0; i < order.size(); ++i) {
        int e = m.partner[order[i]];
        if (newid[e] < 0) {
            code.push_back(header(m.dvert[e]));
            open_vertex(e);
        } else {
            code.push_back(newid[e]);
        }
    }
    // face decorations in canonical face order (faces keyed by min new dart id)
    std::vector<int> face_min(m.nfaces, 1 << 30);
    for (int d = 0; d < D; ++d)
        face_min[m.face_of[d]] = std::min(face_min[m.face_of[d]], newid[d]);
    std::vector<std::pair<int, int>> faces;  // (min id, decor)
    for (int f = 0; f < m.nfaces; ++f) faces.push_back({face_min[f], m.decor[f]});
    std::sort(faces.begin(), faces.end());
    for (auto& [mn, dc] : faces) code.push_back(-100000 - dc);
    return code;
}

// canonical code over the allowed root set; aut = number of minimizing roots
inline void canonicalize(ribbon_map& m, const std::vector<int>& roots) {
    std::vector<int> best;
    int aut = 0;
    for (int rdart : roots) {
        auto c = code_from_root(m, rdart);
        if (best.empty() || c < best) {
            best = std::move(c);
            aut = 1;
        } else if (c == best) {
            ++aut;
        }
    }
    m.code = std::move(best);
    m.aut = aut;
}

struct weight_cache {
    const potential* V;
    std::map<std::pair<int, int>, ratfun> prop;
    std::map<std::vector<int>, ratfun> vert;

    const ratfun& propagator(int a, int b) {
        auto key = std::minmax(a, b);
        auto it = prop.find(key);
        if (it == prop.end())
            it = prop.emplace(key, V->prop(poly::var(key.first), poly::var(key.second))).first;
        return it->second;
    }
    const ratfun& vertex(std::vector<int> syms) {
        std::sort(syms.begin(), syms.end());
        auto it = vert.find(syms);
        if (it == vert.end()) {
            std::vector<poly> args;
            for (int s : syms) args.push_back(poly::var(s));
            it = vert.emplace(syms, ratfun(V->vertex(args))).first;
        }
        return it->second;
    }
};

inline ratfun map_weight(const ribbon_map& m, const family_spec& spec, weight_cache& wc) {
    ratfun w(1);
    for (int d = 0; d < m.darts(); ++d) {
        int e = m.partner[d];
        if (e < d) continue;
        w *= wc.propagator(m.decor[m.face_of[d]], m.decor[m.face_of[e]]);
    }
    for (size_t v = 0; v < m.vcol.size(); ++v) {
        if (m.vcol[v] == vcolor::black) {
            std::vector<int> syms;
            for (int d = m.vstart[v]; d < m.vstart[v] + m.vdeg[v]; ++d)
                syms.push_back(m.decor[m.face_of[d]]);
            w *= wc.vertex(std::move(syms));
        } else if (m.vcol[v] == vcolor::square) {
            for (int d = m.vstart[v]; d < m.vstart[v] + m.vdeg[v]; ++d) {
                poly den = poly::var(spec.u) - poly::var(m.decor[m.face_of[d]]);
                w /= ratfun(den);
            }
        }
    }
    return w;
}

struct builder {
    const family_spec& spec;
    int delta;
    std::vector<int> black_budget;  // per degree, index d
    int square_deg = 0;             // family U
    long guard;
    long visited = 0;

    ribbon_map m;
    std::vector<char> white_placed;
    bool square_placed = false;
    int scan_from = 0;

    std::vector<ribbon_map> out;

    builder(const family_spec& s, int d, long g) : spec(s), delta(d), guard(g) {
        white_placed.assign(spec.n + 1, 0);
    }

    int add_vertex(vcolor c, int deg, int lab) {
        int v = (int)m.vcol.size();
        m.vcol.push_back(c);
        m.vdeg.push_back(deg);
        m.vlab.push_back(lab);
        m.vstart.push_back(m.darts());
        for (int i = 0; i < deg; ++i) {
            m.dvert.push_back(v);
            m.partner.push_back(-1);
        }
        return v;
    }
    void pop_vertex() {
        int deg = m.vdeg.back();
        for (int i = 0; i < deg; ++i) {
            m.dvert.pop_back();
            m.partner.pop_back();
        }
        m.vcol.pop_back();
        m.vdeg.pop_back();
        m.vlab.pop_back();
        m.vstart.pop_back();
    }
    bool budget_empty() const {
        for (int b : black_budget)
            if (b) return false;
        if (spec.fam != family::F)
            for (int i = 1; i <= spec.n; ++i)
                if (!white_placed[i]) return false;
        if (spec.fam == family::U && !square_placed) return false;
        return true;
    }

    void dfs() {
        if (++visited > guard) throw std::runtime_error("enumerate: resource guard exceeded");
        int d = -1;
        for (int i = scan_from; i < m.darts(); ++i)
            if (m.partner[i] < 0) {
                d = i;
                break;
            }
        if (d < 0) {
            if (budget_empty()) finalize();
            return;
        }
        int saved_scan = scan_from;
        scan_from = d;
        bool root_to_square = spec.fam == family::U && d == 0;
        // pair with an existing unpaired dart
        if (!root_to_square) {
            for (int e = d + 1; e < m.darts(); ++e) {
                if (m.partner[e] >= 0) continue;
                m.partner[d] = e;
                m.partner[e] = d;
                dfs();
                m.partner[d] = m.partner[e] = -1;
            }
        }
        // pair with slot 0 of a fresh vertex
        auto attach_new = [&](vcolor c, int deg, int lab) {
            int v = add_vertex(c, deg, lab);
            int e = m.vstart[v];
            m.partner[d] = e;
            m.partner[e] = d;
            dfs();
            m.partner[d] = -1;
            pop_vertex();
        };
        for (int deg = 3; deg < (int)black_budget.size(); ++deg) {
            if (!black_budget[deg] || root_to_square) continue;
            --black_budget[deg];
            attach_new(vcolor::black, deg, 0);
            ++black_budget[deg];
        }
        if (!root_to_square && spec.fam != family::F)
            for (int i = 2; i <= spec.n; ++i) {
                if (white_placed[i]) continue;
                white_placed[i] = 1;
                attach_new(vcolor::white, spec.k[i - 1], i);
                white_placed[i] = 0;
            }
        if (spec.fam == family::U && !square_placed) {
            square_placed = true;
            attach_new(vcolor::square, square_deg, 0);
            square_placed = false;
        }
        scan_from = saved_scan;
    }

    void finalize() {
        m.compute_faces();
        if (m.genus != spec.g) return;
        m.delta = delta;
        // whites must sit in pairwise distinct faces, one white per face
        std::vector<int> white_of_face(m.nfaces, -1);
        for (size_t v = 0; v < m.vcol.size(); ++v) {
            if (m.vcol[v] != vcolor::white) continue;
            std::set<int> corner_faces;
            for (int d = m.vstart[v]; d < m.vstart[v] + m.vdeg[v]; ++d) {
                int f = m.face_of[d];
                if (!corner_faces.insert(f).second) return;  // star constraint
                if (white_of_face[f] >= 0 && white_of_face[f] != (int)v) return;
                white_of_face[f] = (int)v;
            }
        }
        int marked = 0;
        for (int f = 0; f < m.nfaces; ++f)
            if (white_of_face[f] >= 0) ++marked;
        if (spec.fam == family::F) {
            decorate_unciliated();
            return;
        }
        int unmarked = m.nfaces - marked;
        if (unmarked > 0 && spec.N == 0) return;
        // base marked decorations (slot j of white i -> its j-th symbol)
        std::vector<int> base(m.nfaces, -1);
        for (size_t v = 0; v < m.vcol.size(); ++v) {
            if (m.vcol[v] != vcolor::white) continue;
            int lab = m.vlab[v];
            for (int j = 0; j < m.vdeg[v]; ++j)
                base[m.face_of[m.vstart[v] + j]] = spec.z[lab - 1][j];
        }
        // rotation offsets for cilia of degree > 1 (family S)
        std::vector<int> offs(spec.n, 0);
        for (;;) {
            std::vector<int> dec = base;
            if (spec.fam == family::S) {
                for (size_t v = 0; v < m.vcol.size(); ++v) {
                    if (m.vcol[v] != vcolor::white) continue;
                    int lab = m.vlab[v], kk = m.vdeg[v];
                    for (int j = 0; j < kk; ++j)
                        dec[m.face_of[m.vstart[v] + j]] = spec.z[lab - 1][(j + offs[lab - 1]) % kk];
                }
            }
            assign_unmarked(dec, 0);
            if (spec.fam != family::S) break;
            int i = 0;
            while (i < spec.n && ++offs[i] >= spec.k[i]) offs[i++] = 0;
            if (i >= spec.n) break;
        }
    }

    void decorate_unciliated() {
        // choose an injective assignment of marked labels 1..n to faces
        std::vector<int> faces(m.nfaces);
        for (int f = 0; f < m.nfaces; ++f) faces[f] = f;
        std::vector<int> choice(spec.n, -1);
        std::vector<char> used(m.nfaces, 0);
        std::function<void(int)> rec = [&](int i) {
            if (i == spec.n) {
                if (m.nfaces - spec.n > 0 && spec.N == 0) return;
                std::vector<int> dec(m.nfaces, -1);
                for (int j = 0; j < spec.n; ++j) dec[choice[j]] = spec.z[j][0];
                assign_unmarked(dec, 0);
                return;
            }
            for (int f = 0; f < m.nfaces; ++f) {
                if (used[f]) continue;
                used[f] = 1;
                choice[i] = f;
                rec(i + 1);
                used[f] = 0;
            }
        };
        rec(0);
    }

    void assign_unmarked(std::vector<int>& dec, int from) {
        int f = -1;
        for (int i = from; i < m.nfaces; ++i)
            if (dec[i] < 0) {
                f = i;
                break;
            }
        if (f < 0) {
            emit(dec);
            return;
        }
        for (int j = 0; j < spec.N; ++j) {
            dec[f] = spec.lambda[j];
            assign_unmarked(dec, f + 1);
        }
        dec[f] = -1;
    }

    void emit(const std::vector<int>& dec) {
        ribbon_map r = m;
        r.decor = dec;
        std::vector<int> roots;
        if (spec.fam == family::F) {
            roots.resize(r.darts());
            for (int i = 0; i < r.darts(); ++i) roots[i] = i;
        } else {
            // automorphisms fix the labeled whites, so roots live on white 1
            for (size_t v = 0; v < r.vcol.size(); ++v)
                if (r.vcol[v] == vcolor::white && r.vlab[v] == 1)
                    for (int d = r.vstart[v]; d < r.vstart[v] + r.vdeg[v]; ++d)
                        roots.push_back(d);
        }
        detail_maps::canonicalize(r, roots);
        out.push_back(std::move(r));
    }
};

inline void black_profiles(int B, int dmax, int d, std::vector<int>& cur,
                           std::vector<std::vector<int>>& out) {
    if (B == 0) {
        out.push_back(cur);
        return;
    }
    if (d > dmax) return;
    for (int c = 0; c * (d - 2) <= B; ++c) {
        cur[d] = c;
        black_profiles(B - c * (d - 2), dmax, d + 1, cur, out);
    }
    cur[d] = 0;
}

}  // namespace detail_maps

// Exhaustive census of the family at fixed degree delta (one canonical
// representative per isomorphism class of decorated maps).
inline std::vector<ribbon_map> enumerate_maps(const family_spec& spec, int delta,
                                              long guard = 200000000L) {
    using namespace detail_maps;
    std::vector<ribbon_map> all;
    int kmax = 1;
    for (int kk : spec.k) kmax = std::max(kmax, kk);
    long vertex_bound = (long)(2 * std::max(delta, 0) + spec.n) * std::max(spec.r + 1, kmax) + 2;

    int white_sum = 0;
    for (int i = 0; i < spec.n; ++i) white_sum += spec.k[i] - 2;
    auto run_profiles = [&](int B, int square_deg) {
        if (B < 0) return;
        std::vector<std::vector<int>> profiles;
        std::vector<int> cur(spec.r + 2, 0);
        black_profiles(B, spec.r + 1, 3, cur, profiles);
        for (auto& prof : profiles) {
            long nv = spec.n + (spec.fam == family::U ? 1 : 0);
            for (int d = 3; d <= spec.r + 1; ++d) nv += prof[d];
            if (nv > vertex_bound) continue;
            builder b(spec, delta, guard);
            b.black_budget = prof;
            b.square_deg = square_deg;
            if (spec.fam == family::F) {
                // root vertex: one run per distinct black degree present
                for (int d0 = 3; d0 <= spec.r + 1; ++d0) {
                    if (!prof[d0]) continue;
                    --b.black_budget[d0];
                    b.add_vertex(vcolor::black, d0, 0);
                    b.dfs();
                    b.pop_vertex();
                    ++b.black_budget[d0];
                }
            } else {
                b.white_placed[1] = 1;
                b.add_vertex(vcolor::white, spec.k[0], 1);
                b.dfs();
            }
            for (auto& r : b.out) all.push_back(std::move(r));
        }
    };

    if (spec.fam == family::U) {
        for (int ds = 1; 2 * delta + spec.n - (ds - 2) >= 0; ++ds)
            run_profiles(2 * delta + spec.n - (ds - 2), ds);
    } else if (spec.fam == family::F) {
        run_profiles(2 * delta, 0);
    } else {
        run_profiles(2 * delta - white_sum, 0);
    }

    std::sort(all.begin(), all.end(),
              [](const ribbon_map& a, const ribbon_map& b) { return a.code < b.code; });
    all.erase(std::unique(all.begin(), all.end(),
                          [](const ribbon_map& a, const ribbon_map& b) { return a.code == b.code; }),
              all.end());
    return all;
}

// weighted census of a square-ciliated family in u-partial-fraction form
inline upf census_weight_upf(const family_spec& spec, const std::vector<ribbon_map>& maps) {
    detail_maps::weight_cache wc{&spec.V, {}, {}};
    upf total;
    for (auto& m : maps) {
        ratfun w(1);
        std::vector<int> poles;
        for (int d = 0; d < m.darts(); ++d) {
            int e = m.partner[d];
            if (e < d) continue;
            w *= wc.propagator(m.decor[m.face_of[d]], m.decor[m.face_of[e]]);
        }
        for (size_t v = 0; v < m.vcol.size(); ++v) {
            if (m.vcol[v] == vcolor::black) {
                std::vector<int> syms;
                for (int d = m.vstart[v]; d < m.vstart[v] + m.vdeg[v]; ++d)
                    syms.push_back(m.decor[m.face_of[d]]);
                w *= wc.vertex(std::move(syms));
            } else if (m.vcol[v] == vcolor::square) {
                for (int d = m.vstart[v]; d < m.vstart[v] + m.vdeg[v]; ++d)
                    poles.push_back(m.decor[m.face_of[d]]);
            }
        }
        if (m.aut != 1) w = w * scalar(rat_of(1, m.aut));
        if (poles.empty()) throw std::logic_error("census_weight_upf: map without square corners");
        upf part = upf::simple(poles[0], ratfun(1));
        for (size_t i = 1; i < poles.size(); ++i) part = part.div_simple(poles[i]);
        total += part * w;
    }
    return total;
}

// sum of w(G)/#Aut(G) over the census at fixed delta
inline ratfun census_weight(const family_spec& spec, const std::vector<ribbon_map>& maps) {
    detail_maps::weight_cache wc{&spec.V, {}, {}};
    ratfun total;
    for (auto& m : maps) {
        ratfun w = detail_maps::map_weight(m, spec, wc);
        if (m.aut != 1) w = w * scalar(rat_of(1, m.aut));
        total += w;
    }
    return total;
}

// generating series by brute enumeration: coefficient of ahat^delta is the
// weighted census sum, computed for delta <= delta_max
inline aseries brute_series(const family_spec& spec, int delta_max, long guard = 200000000L) {
    int lo = spec.fam == family::U ? -1 : 0;
    std::vector<ratfun> coeffs;
    for (int d = lo; d <= delta_max; ++d) {
        auto maps = enumerate_maps(spec, d, guard);
        coeffs.push_back(census_weight(spec, maps));
    }
    return aseries::windowed(lo, std::move(coeffs), delta_max);
}

}  // namespace gk
