#include "detail/engine.hpp"

#include <algorithm>

#include "qb/errors.hpp"

namespace qb::detail {

BaseCtx::BaseCtx(const FinCategory& base) {
    if (base.morphisms.size() > 64)
        throw data_error("base category has " + std::to_string(base.morphisms.size()) +
                         " morphisms; the enumeration engine supports at most 64");
    objs = base.objects;
    for (std::size_t i = 0; i < objs.size(); ++i) obj_idx[objs[i]] = static_cast<int>(i);
    mors.reserve(base.morphisms.size());
    for (const auto& m : base.morphisms) {
        mor_idx[m.id] = static_cast<int>(mors.size());
        mors.push_back(m.id);
        mor_src.push_back(obj_idx.at(m.src));
        mor_dst.push_back(obj_idx.at(m.dst));
    }
    comp.assign(nmor(), std::vector<int>(nmor(), -1));
    for (const auto& [pair, gf] : base.composition)
        comp[mor_idx.at(pair.first)][mor_idx.at(pair.second)] = mor_idx.at(gf);
    ident.assign(nobj(), -1);
    for (const auto& [x, m] : base.identities) ident[obj_idx.at(x)] = mor_idx.at(m);
    homm.assign(static_cast<std::size_t>(nobj()) * nobj(), 0);
    for (std::size_t m = 0; m < nmor(); ++m)
        homm[mor_src[m] * nobj() + mor_dst[m]] |= bit(static_cast<int>(m));
}

Bits BaseCtx::mask(const QHom& h) const {
    Bits out = 0;
    for (const auto& e : h.elems) {
        auto it = mor_idx.find(e);
        if (it == mor_idx.end()) throw data_error("unknown morphism '" + e + "'");
        out |= bit(it->second);
    }
    return out;
}

QHom BaseCtx::unmask(int src, int dst, Bits bits) const {
    QHom out{objs[src], objs[dst], {}};
    for_each_bit(bits, [&](int m) { out.elems.push_back(mors[m]); });
    std::sort(out.elems.begin(), out.elems.end());
    return out;
}

Bits BaseCtx::compose(Bits v, Bits u) const {
    Bits out = 0;
    for_each_bit(v, [&](int ve) {
        for_each_bit(u, [&](int ue) {
            int c = comp[ve][ue];
            if (c < 0) throw type_error("composing non-composable morphisms");
            out |= bit(c);
        });
    });
    return out;
}

Bits BaseCtx::left_residual(int y, int z, Bits u, Bits w) const {
    Bits out = 0;
    for_each_bit(hom_mask(y, z), [&](int v) {
        bool all = true;
        for_each_bit(u, [&](int ue) {
            if (all && !bit_test(w, comp[v][ue])) all = false;
        });
        if (all) out |= bit(v);
    });
    return out;
}

Bits BaseCtx::right_residual(int x, int y, Bits v, Bits w) const {
    Bits out = 0;
    for_each_bit(hom_mask(x, y), [&](int u) {
        bool all = true;
        for_each_bit(v, [&](int ve) {
            if (all && !bit_test(w, comp[ve][u])) all = false;
        });
        if (all) out |= bit(u);
    });
    return out;
}

QCatCtx::QCatCtx(const QCategory& cat) : Cat(BaseCtx(cat.base)) {
    xs.reserve(cat.objects.size());
    for (const auto& o : cat.objects) {
        xidx[o.id] = static_cast<int>(xs.size());
        xs.push_back(o.id);
        ext.push_back(bc.obj_idx.at(o.extent));
    }
    homv.assign(xs.size() * xs.size(), 0);
    for (const auto& [key, h] : cat.homs) {
        auto xi = xidx.find(key.first), yi = xidx.find(key.second);
        if (xi == xidx.end() || yi == xidx.end())
            throw data_error("hom entry mentions unknown object");
        homv[static_cast<std::size_t>(xi->second) * n() + yi->second] = bc.mask(h);
    }
}

int QCatCtx::index_of(const std::string& id) const {
    auto it = xidx.find(id);
    if (it == xidx.end()) throw data_error("unknown object '" + id + "'");
    return it->second;
}

namespace {
int extent_index(const QCatCtx& cx, const std::string& z) {
    auto it = cx.bc.obj_idx.find(z);
    if (it == cx.bc.obj_idx.end()) throw data_error("unknown extent '" + z + "'");
    return it->second;
}
}  // namespace

MaskFam sieve_to_mask(const QCatCtx& cx, const Presheaf& p) {
    MaskFam m;
    m.z = extent_index(cx, p.extent);
    m.comp.assign(cx.n(), 0);
    for (const auto& [x, h] : p.components) m.comp[cx.index_of(x)] = cx.bc.mask(h);
    return m;
}

Presheaf sieve_from_mask(const QCatCtx& cx, const MaskFam& m) {
    Presheaf p;
    p.extent = cx.bc.objs[m.z];
    for (int i = 0; i < cx.n(); ++i)
        p.components[cx.xs[i]] = cx.bc.unmask(cx.ext[i], m.z, m.comp[i]);
    return p;
}

MaskFam cosieve_to_mask(const QCatCtx& cx, const Copresheaf& p) {
    MaskFam m;
    m.z = extent_index(cx, p.extent);
    m.comp.assign(cx.n(), 0);
    for (const auto& [x, h] : p.components) m.comp[cx.index_of(x)] = cx.bc.mask(h);
    return m;
}

Copresheaf cosieve_from_mask(const QCatCtx& cx, const MaskFam& m) {
    Copresheaf p;
    p.extent = cx.bc.objs[m.z];
    for (int i = 0; i < cx.n(); ++i)
        p.components[cx.xs[i]] = cx.bc.unmask(m.z, cx.ext[i], m.comp[i]);
    return p;
}

bool sieve_closed(const Cat& cx, const MaskFam& m) {
    for (int x = 0; x < cx.n(); ++x)
        for (int y = 0; y < cx.n(); ++y)
            if (!subset_of(cx.bc.compose(m.comp[y], cx.hom(x, y)), m.comp[x]))
                return false;
    return true;
}

bool cosieve_closed(const Cat& cx, const MaskFam& m) {
    for (int x = 0; x < cx.n(); ++x)
        for (int y = 0; y < cx.n(); ++y)
            if (!subset_of(cx.bc.compose(cx.hom(x, y), m.comp[x]), m.comp[y]))
                return false;
    return true;
}

void close_sieve(const Cat& cx, MaskFam& m) {
    bool grew = true;
    while (grew) {
        grew = false;
        for (int x = 0; x < cx.n(); ++x)
            for (int y = 0; y < cx.n(); ++y) {
                Bits add = cx.bc.compose(m.comp[y], cx.hom(x, y));
                if (!subset_of(add, m.comp[x])) {
                    m.comp[x] |= add;
                    grew = true;
                }
            }
    }
}

void close_cosieve(const Cat& cx, MaskFam& m) {
    bool grew = true;
    while (grew) {
        grew = false;
        for (int x = 0; x < cx.n(); ++x)
            for (int y = 0; y < cx.n(); ++y) {
                Bits add = cx.bc.compose(cx.hom(x, y), m.comp[x]);
                if (!subset_of(add, m.comp[y])) {
                    m.comp[y] |= add;
                    grew = true;
                }
            }
    }
}

namespace {

// Enumeration state: per depth, inclusive lower and upper windows for every
// still-unfixed component. Fixing component k = S propagates
//   lw[j] |= S ∘ C(j, k)                (φ(k) ∘ C(j,k) ≤ φ(j))
//   up[j] &= [C(k, j), φ(j)]-candidates (φ(j) must keep S-composites legal)
// onto each unfixed j, so a choice within the window never violates a
// constraint against the fixed prefix.
struct SieveEnum {
    const Cat& cx;
    int z;
    std::size_t budget;
    std::vector<MaskFam>& out;
    MaskFam current;
    std::vector<std::vector<Bits>> lw, up;  // [depth][object]

    SieveEnum(const Cat& cx_, int z_, std::size_t budget_, std::vector<MaskFam>& out_)
        : cx(cx_), z(z_), budget(budget_), out(out_) {
        const int n = cx.n();
        current.z = z;
        current.comp.assign(n, 0);
        lw.assign(n + 1, std::vector<Bits>(n, 0));
        up.assign(n + 1, std::vector<Bits>(n, 0));
        for (int j = 0; j < n; ++j) up[0][j] = cx.bc.hom_mask(cx.ext[j], z);
    }

    void rec(int k) {
        const int n = cx.n();
        if (k == n) {
            if (out.size() >= budget)
                throw cap_exceeded(budget, "presheaf enumeration exceeded cap of " +
                                               std::to_string(budget));
            out.push_back(current);
            return;
        }
        Bits lo = lw[k][k], hi = up[k][k];
        if (!subset_of(lo, hi)) return;
        Bits free = hi & ~lo;
        std::vector<int> opts;
        for_each_bit(free, [&](int m) { opts.push_back(m); });
        if (opts.size() > 24)
            throw cap_exceeded(budget, "hom-set too large to enumerate over (" +
                                           std::to_string(opts.size()) + " free morphisms)");
        const Bits endo = cx.hom(k, k);
        const std::uint64_t limit = std::uint64_t(1) << opts.size();
        for (std::uint64_t pick = 0; pick < limit; ++pick) {
            Bits s = lo;
            for (std::size_t j = 0; j < opts.size(); ++j)
                if ((pick >> j) & 1) s |= bit(opts[j]);
            if (!subset_of(cx.bc.compose(s, endo), s)) continue;
            current.comp[k] = s;
            for (int j = k + 1; j < n; ++j) {
                lw[k + 1][j] = lw[k][j] | cx.bc.compose(s, cx.hom(j, k));
                up[k + 1][j] =
                    up[k][j] & cx.bc.left_residual(cx.ext[j], z, cx.hom(k, j), s);
            }
            rec(k + 1);
        }
        current.comp[k] = 0;
    }
};

}  // namespace

std::vector<MaskFam> enumerate_sieves(const Cat& cx, int z, std::size_t budget) {
    std::vector<MaskFam> out;
    SieveEnum e(cx, z, budget, out);
    e.rec(0);
    return out;
}

Bits sieve_hom(const Cat& cx, const MaskFam& a, const MaskFam& b) {
    Bits acc = cx.bc.hom_mask(a.z, b.z);
    for (int x = 0; x < cx.n() && acc; ++x)
        acc &= cx.bc.left_residual(a.z, b.z, a.comp[x], b.comp[x]);
    return acc;
}

Bits cosieve_hom(const Cat& cx, const MaskFam& a, const MaskFam& b) {
    Bits acc = cx.bc.hom_mask(a.z, b.z);
    for (int x = 0; x < cx.n() && acc; ++x)
        acc &= cx.bc.right_residual(a.z, b.z, b.comp[x], a.comp[x]);
    return acc;
}

MaskFam yoneda_mask(const Cat& cx, int x) {
    MaskFam m;
    m.z = cx.ext[x];
    m.comp.reserve(cx.n());
    for (int y = 0; y < cx.n(); ++y) m.comp.push_back(cx.hom(y, x));
    return m;
}

MaskFam coyoneda_mask(const Cat& cx, int x) {
    MaskFam m;
    m.z = cx.ext[x];
    m.comp.reserve(cx.n());
    for (int y = 0; y < cx.n(); ++y) m.comp.push_back(cx.hom(x, y));
    return m;
}

std::vector<Bits> colimit_targets(const Cat& cx, const MaskFam& sieve) {
    std::vector<Bits> t;
    t.reserve(cx.n());
    for (int e = 0; e < cx.n(); ++e) {
        Bits acc = cx.bc.hom_mask(sieve.z, cx.ext[e]);
        for (int x = 0; x < cx.n() && acc; ++x)
            acc &= cx.bc.left_residual(sieve.z, cx.ext[e], sieve.comp[x], cx.hom(x, e));
        t.push_back(acc);
    }
    return t;
}

std::vector<Bits> limit_targets(const Cat& cx, const MaskFam& cosieve) {
    std::vector<Bits> t;
    t.reserve(cx.n());
    for (int e = 0; e < cx.n(); ++e) {
        Bits acc = cx.bc.hom_mask(cx.ext[e], cosieve.z);
        for (int x = 0; x < cx.n() && acc; ++x)
            acc &= cx.bc.right_residual(cx.ext[e], cosieve.z, cosieve.comp[x], cx.hom(e, x));
        t.push_back(acc);
    }
    return t;
}

std::vector<int> colimit_witnesses(const Cat& cx, int z,
                                   const std::vector<Bits>& targets) {
    std::vector<int> ws;
    for (int v = 0; v < cx.n(); ++v) {
        if (cx.ext[v] != z) continue;
        bool all = true;
        for (int e = 0; e < cx.n() && all; ++e)
            if (cx.hom(v, e) != targets[e]) all = false;
        if (all) ws.push_back(v);
    }
    return ws;
}

std::vector<int> limit_witnesses(const Cat& cx, int z,
                                 const std::vector<Bits>& targets) {
    std::vector<int> ws;
    for (int v = 0; v < cx.n(); ++v) {
        if (cx.ext[v] != z) continue;
        bool all = true;
        for (int e = 0; e < cx.n() && all; ++e)
            if (cx.hom(e, v) != targets[e]) all = false;
        if (all) ws.push_back(v);
    }
    return ws;
}

MaskFam isbell_up_mask(const Cat& cx, const MaskFam& sieve) {
    // ↑φ(x) = {g : z → |x| | g∘h ∈ C(y,x) for all y and h ∈ φ(y)}
    MaskFam upm;
    upm.z = sieve.z;
    upm.comp.reserve(cx.n());
    for (int x = 0; x < cx.n(); ++x) {
        Bits acc = 0;
        for_each_bit(cx.bc.hom_mask(sieve.z, cx.ext[x]), [&](int g) {
            for (int y = 0; y < cx.n(); ++y) {
                bool all = true;
                for_each_bit(sieve.comp[y], [&](int h) {
                    if (all && !bit_test(cx.hom(y, x), cx.bc.comp[g][h])) all = false;
                });
                if (!all) return;
            }
            acc |= bit(g);
        });
        upm.comp.push_back(acc);
    }
    return upm;
}

MaskFam isbell_down_mask(const Cat& cx, const MaskFam& cosieve) {
    // ↓ψ(y) = {h : |y| → z | g∘h ∈ C(y,x) for all x and g ∈ ψ(x)}
    MaskFam down;
    down.z = cosieve.z;
    down.comp.reserve(cx.n());
    for (int y = 0; y < cx.n(); ++y) {
        Bits acc = 0;
        for_each_bit(cx.bc.hom_mask(cx.ext[y], cosieve.z), [&](int h) {
            for (int x = 0; x < cx.n(); ++x) {
                bool all = true;
                for_each_bit(cosieve.comp[x], [&](int g) {
                    if (all && !bit_test(cx.hom(y, x), cx.bc.comp[g][h])) all = false;
                });
                if (!all) return;
            }
            acc |= bit(h);
        });
        down.comp.push_back(acc);
    }
    return down;
}

Cat sieve_cat(const Cat& cx, const std::vector<MaskFam>& sieves) {
    Cat out(cx.bc);
    out.ext.reserve(sieves.size());
    for (const auto& s : sieves) out.ext.push_back(s.z);
    const std::size_t n = sieves.size();
    out.homv.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.homv[i * n + j] = sieve_hom(cx, sieves[i], sieves[j]);
    return out;
}

SieveList sorted_sieves(const QCatCtx& cx, std::size_t cap) {
    std::vector<MaskFam> raw;
    for (int z = 0; z < cx.bc.nobj(); ++z) {
        auto more = enumerate_sieves(cx, z, cap - raw.size());
        raw.insert(raw.end(), more.begin(), more.end());
    }
    std::vector<std::pair<Presheaf, MaskFam>> paired;
    paired.reserve(raw.size());
    for (auto& m : raw) paired.emplace_back(sieve_from_mask(cx, m), std::move(m));
    std::sort(paired.begin(), paired.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SieveList out;
    out.masks.reserve(paired.size());
    out.sheaves.reserve(paired.size());
    for (auto& [p, m] : paired) {
        out.sheaves.push_back(std::move(p));
        out.masks.push_back(std::move(m));
    }
    return out;
}

std::string canonical_witness(const std::vector<std::string>& names,
                              const std::vector<int>& ws) {
    std::string best;
    for (int w : ws)
        if (best.empty() || names[w] < best) best = names[w];
    return best;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace qb::detail
