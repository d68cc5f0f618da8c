#include "qb/qhom.hpp"

#include <algorithm>
#include <set>

namespace qb {

namespace {

void require_type(const QHom& h, const std::string& src, const std::string& dst,
                  const char* what) {
    if (h.src != src || h.dst != dst)
        throw type_error(std::string(what) + ": expected hom " + src + " ⇸ " + dst +
                         ", got " + h.src + " ⇸ " + h.dst);
}

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

bool QHom::contains(const std::string& m) const {
    return std::binary_search(elems.begin(), elems.end(), m);
}

QHom make_qhom(const FinCategory& base, std::string src, std::string dst,
               std::vector<std::string> elems) {
    if (!base.has_object(src)) throw data_error("unknown object '" + src + "'");
    if (!base.has_object(dst)) throw data_error("unknown object '" + dst + "'");
    elems = sorted_unique(std::move(elems));
    for (const auto& e : elems) {
        const Morphism* m = base.morphism(e);
        if (!m) throw data_error("unknown morphism '" + e + "'");
        if (m->src != src || m->dst != dst)
            throw data_error("morphism '" + e + "' is not in B(" + src + ", " + dst + ")");
    }
    return QHom{std::move(src), std::move(dst), std::move(elems)};
}

QHom q_empty(std::string src, std::string dst) {
    return QHom{std::move(src), std::move(dst), {}};
}

QHom q_id(const FinCategory& base, const std::string& x) {
    return QHom{x, x, {base.identity_of(x)}};
}

QHom q_full(const FinCategory& base, const std::string& x, const std::string& y) {
    return QHom{x, y, base.hom(x, y)};
}

QHom q_compose(const FinCategory& base, const QHom& v, const QHom& u) {
    if (u.dst != v.src)
        throw type_error("q_compose: dst(" + u.src + " ⇸ " + u.dst +
                         ") ≠ src(" + v.src + " ⇸ " + v.dst + ")");
    std::set<std::string> out;
    for (const auto& ve : v.elems)
        for (const auto& ue : u.elems) out.insert(base.compose(ve, ue));
    return QHom{u.src, v.dst, {out.begin(), out.end()}};
}

QHom q_join(const std::string& src, const std::string& dst,
            std::span<const QHom> hs) {
    std::set<std::string> out;
    for (const auto& h : hs) {
        require_type(h, src, dst, "q_join");
        out.insert(h.elems.begin(), h.elems.end());
    }
    return QHom{src, dst, {out.begin(), out.end()}};
}

QHom q_meet(const FinCategory& base, const std::string& src,
            const std::string& dst, std::span<const QHom> hs) {
    if (hs.empty()) return q_full(base, src, dst);
    require_type(hs.front(), src, dst, "q_meet");
    std::vector<std::string> acc = hs.front().elems;
    for (std::size_t i = 1; i < hs.size(); ++i) {
        require_type(hs[i], src, dst, "q_meet");
        std::vector<std::string> next;
        std::set_intersection(acc.begin(), acc.end(), hs[i].elems.begin(),
                              hs[i].elems.end(), std::back_inserter(next));
        acc = std::move(next);
    }
    return QHom{src, dst, std::move(acc)};
}

QHom left_residual(const FinCategory& base, const QHom& u, const QHom& w) {
    if (u.src != w.src)
        throw type_error("left_residual: src(U) = " + u.src + " ≠ src(W) = " + w.src);
    QHom out = q_empty(u.dst, w.dst);
    for (const auto& v : base.hom(u.dst, w.dst)) {
        bool all = true;
        for (const auto& ue : u.elems)
            if (!w.contains(base.compose(v, ue))) {
                all = false;
                break;
            }
        if (all) out.elems.push_back(v);
    }
    return out;  // base.hom is sorted, so elems is too
}

QHom right_residual(const FinCategory& base, const QHom& v, const QHom& w) {
    if (v.dst != w.dst)
        throw type_error("right_residual: dst(V) = " + v.dst + " ≠ dst(W) = " + w.dst);
    QHom out = q_empty(w.src, v.src);
    for (const auto& u : base.hom(w.src, v.src)) {
        bool all = true;
        for (const auto& ve : v.elems)
            if (!w.contains(base.compose(ve, u))) {
                all = false;
                break;
            }
        if (all) out.elems.push_back(u);
    }
    return out;
}

bool qhom_leq(const QHom& a, const QHom& b) {
    if (a.src != b.src || a.dst != b.dst)
        throw type_error("qhom_leq: comparing homs of different types");
    return std::includes(b.elems.begin(), b.elems.end(), a.elems.begin(),
                         a.elems.end());
}

}  // namespace qb
