#include "qb/presheaf.hpp"

#include <algorithm>
#include <sstream>

#include "detail/engine.hpp"

namespace qb {

namespace {

std::string canonical_content(const std::string& tag, const std::string& extent,
                              const std::map<std::string, QHom>& components) {
    std::ostringstream os;
    os << tag << extent;
    for (const auto& [x, h] : components) {
        if (h.empty()) continue;
        os << ";" << x << ":";
        for (const auto& m : h.elems) os << m << ",";
    }
    return os.str();
}

std::string hex16(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) s[i] = digits[v & 0xf];
    return s;
}

}  // namespace

ValidationReport validate_presheaf(const QCategory& e, const Presheaf& p) {
    ValidationReport report;
    if (!e.base.has_object(p.extent)) {
        report.add("unknown-extent", "presheaf extent '" + p.extent + "' not in base");
        return report;
    }
    for (const auto& [x, h] : p.components) {
        if (!e.has_object(x)) {
            report.add("unknown-object", "component for unknown object '" + x + "'");
            continue;
        }
        if (h.src != e.extent_of(x) || h.dst != p.extent)
            report.add("component-type", "component at '" + x + "' is typed " + h.src +
                                             " ⇸ " + h.dst + ", expected " +
                                             e.extent_of(x) + " ⇸ " + p.extent);
    }
    if (!report.ok()) return report;

    Presheaf q = dense_presheaf(e, p);
    for (const auto& x : e.objects)
        for (const auto& y : e.objects) {
            QHom lhs = q_compose(e.base, q.components.at(y.id), e.hom(x.id, y.id));
            for (const auto& m : lhs.elems)
                if (!q.components.at(x.id).contains(m))
                    report.add("sieve-closure", "φ(" + y.id + ") ∘ E(" + x.id + ", " +
                                                    y.id + ") escapes φ(" + x.id +
                                                    ") at '" + m + "'");
        }
    return report;
}

ValidationReport validate_copresheaf(const QCategory& e, const Copresheaf& p) {
    ValidationReport report;
    if (!e.base.has_object(p.extent)) {
        report.add("unknown-extent", "copresheaf extent '" + p.extent + "' not in base");
        return report;
    }
    for (const auto& [x, h] : p.components) {
        if (!e.has_object(x)) {
            report.add("unknown-object", "component for unknown object '" + x + "'");
            continue;
        }
        if (h.src != p.extent || h.dst != e.extent_of(x))
            report.add("component-type", "component at '" + x + "' is typed " + h.src +
                                             " ⇸ " + h.dst + ", expected " + p.extent +
                                             " ⇸ " + e.extent_of(x));
    }
    if (!report.ok()) return report;

    Copresheaf q = dense_copresheaf(e, p);
    for (const auto& x : e.objects)
        for (const auto& y : e.objects) {
            QHom lhs = q_compose(e.base, e.hom(x.id, y.id), q.components.at(x.id));
            for (const auto& m : lhs.elems)
                if (!q.components.at(y.id).contains(m))
                    report.add("cosieve-closure", "E(" + x.id + ", " + y.id + ") ∘ ψ(" +
                                                      x.id + ") escapes ψ(" + y.id +
                                                      ") at '" + m + "'");
        }
    return report;
}

Presheaf dense_presheaf(const QCategory& e, Presheaf p) {
    for (const auto& o : e.objects)
        if (!p.components.count(o.id))
            p.components.emplace(o.id, q_empty(o.extent, p.extent));
    return p;
}

Copresheaf dense_copresheaf(const QCategory& e, Copresheaf p) {
    for (const auto& o : e.objects)
        if (!p.components.count(o.id))
            p.components.emplace(o.id, q_empty(p.extent, o.extent));
    return p;
}

Presheaf yoneda_at(const QCategory& e, const std::string& x) {
    Presheaf p;
    p.extent = e.extent_of(x);
    for (const auto& o : e.objects) p.components[o.id] = e.hom(o.id, x);
    return p;
}

Copresheaf coyoneda_at(const QCategory& e, const std::string& x) {
    Copresheaf p;
    p.extent = e.extent_of(x);
    for (const auto& o : e.objects) p.components[o.id] = e.hom(x, o.id);
    return p;
}

Presheaf as_presheaf_over_op(const Copresheaf& p) {
    Presheaf out;
    out.extent = p.extent;
    for (const auto& [x, h] : p.components)
        out.components[x] = QHom{h.dst, h.src, h.elems};
    return out;
}

Copresheaf as_copresheaf_from_op(const Presheaf& p) {
    Copresheaf out;
    out.extent = p.extent;
    for (const auto& [x, h] : p.components)
        out.components[x] = QHom{h.dst, h.src, h.elems};
    return out;
}

std::string presheaf_id(const Presheaf& p) {
    return "p" + hex16(detail::fnv1a(canonical_content("P", p.extent, p.components)));
}

std::string copresheaf_id(const Copresheaf& p) {
    return "c" + hex16(detail::fnv1a(canonical_content("C", p.extent, p.components)));
}

std::vector<Presheaf> enumerate_presheaves(const QCategory& e, const std::string& z,
                                           std::size_t cap) {
    detail::QCatCtx cx(e);
    auto it = cx.bc.obj_idx.find(z);
    if (it == cx.bc.obj_idx.end()) throw data_error("unknown extent '" + z + "'");
    auto masks = detail::enumerate_sieves(cx, it->second, cap);
    std::vector<Presheaf> out;
    out.reserve(masks.size());
    for (const auto& m : masks) out.push_back(detail::sieve_from_mask(cx, m));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Presheaf> all_presheaves(const QCategory& e, std::size_t cap) {
    detail::QCatCtx cx(e);
    std::vector<Presheaf> out;
    for (int z = 0; z < cx.bc.nobj(); ++z) {
        auto masks = detail::enumerate_sieves(cx, z, cap - out.size());
        for (const auto& m : masks) out.push_back(detail::sieve_from_mask(cx, m));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Copresheaf> all_copresheaves(const QCategory& e, std::size_t cap) {
    QCategory op = opposite_qcategory(e);
    std::vector<Copresheaf> out;
    for (const auto& p : all_presheaves(op, cap))
        out.push_back(as_copresheaf_from_op(p));
    std::sort(out.begin(), out.end());
    return out;
}

QHom presheaf_hom(const QCategory& e, const Presheaf& a, const Presheaf& b) {
    detail::QCatCtx cx(e);
    detail::Bits r = detail::sieve_hom(cx, detail::sieve_to_mask(cx, dense_presheaf(e, a)),
                                       detail::sieve_to_mask(cx, dense_presheaf(e, b)));
    return cx.bc.unmask(cx.bc.obj_idx.at(a.extent), cx.bc.obj_idx.at(b.extent), r);
}

QHom copresheaf_hom(const QCategory& e, const Copresheaf& a, const Copresheaf& b) {
    detail::QCatCtx cx(e);
    detail::Bits r =
        detail::cosieve_hom(cx, detail::cosieve_to_mask(cx, dense_copresheaf(e, a)),
                            detail::cosieve_to_mask(cx, dense_copresheaf(e, b)));
    return cx.bc.unmask(cx.bc.obj_idx.at(a.extent), cx.bc.obj_idx.at(b.extent), r);
}

const Presheaf& PresheafCat::at(const std::string& id) const {
    auto it = index.find(id);
    if (it == index.end()) throw data_error("no presheaf with id '" + id + "'");
    return objects[it->second];
}

std::string PresheafCat::id_of(const Presheaf& p) const {
    std::string id = presheaf_id(p);
    if (!index.count(id)) throw data_error("presheaf not an object of this category");
    return id;
}

const Copresheaf& CopresheafCat::at(const std::string& id) const {
    auto it = index.find(id);
    if (it == index.end()) throw data_error("no copresheaf with id '" + id + "'");
    return objects[it->second];
}

std::string CopresheafCat::id_of(const Copresheaf& p) const {
    std::string id = copresheaf_id(p);
    if (!index.count(id)) throw data_error("copresheaf not an object of this category");
    return id;
}

PresheafCat presheaf_category(const QCategory& e, std::size_t cap) {
    detail::QCatCtx cx(e);
    std::vector<detail::MaskFam> masks;
    for (int z = 0; z < cx.bc.nobj(); ++z) {
        auto more = detail::enumerate_sieves(cx, z, cap - masks.size());
        masks.insert(masks.end(), more.begin(), more.end());
    }

    PresheafCat pc;
    pc.objects.reserve(masks.size());
    for (const auto& m : masks) pc.objects.push_back(detail::sieve_from_mask(cx, m));
    std::sort(pc.objects.begin(), pc.objects.end());

    pc.cat.base = e.base;
    for (std::size_t i = 0; i < pc.objects.size(); ++i) {
        std::string id = presheaf_id(pc.objects[i]);
        if (!pc.index.emplace(id, i).second)
            throw std::logic_error("presheaf id collision for '" + id + "'");
        pc.cat.objects.push_back({id, pc.objects[i].extent});
    }

    // Hom table; masks resorted to match the canonical object order.
    std::vector<detail::MaskFam> sorted_masks;
    sorted_masks.reserve(pc.objects.size());
    for (const auto& p : pc.objects)
        sorted_masks.push_back(detail::sieve_to_mask(cx, p));
    const std::size_t n = sorted_masks.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            detail::Bits h = detail::sieve_hom(cx, sorted_masks[i], sorted_masks[j]);
            if (h)
                pc.cat.homs[{pc.cat.objects[i].id, pc.cat.objects[j].id}] = cx.bc.unmask(
                    sorted_masks[i].z, sorted_masks[j].z, h);
        }
    }

    pc.yoneda.dom = e;
    pc.yoneda.cod = pc.cat;
    for (const auto& o : e.objects)
        pc.yoneda.object_map[o.id] = presheaf_id(yoneda_at(e, o.id));
    return pc;
}

CopresheafCat copresheaf_category(const QCategory& e, std::size_t cap) {
    QCategory op = opposite_qcategory(e);
    PresheafCat pop = presheaf_category(op, cap);

    CopresheafCat cc;
    cc.objects.reserve(pop.objects.size());
    for (const auto& p : pop.objects) cc.objects.push_back(as_copresheaf_from_op(p));
    std::sort(cc.objects.begin(), cc.objects.end());

    cc.cat.base = e.base;
    std::vector<std::string> op_ids(cc.objects.size());
    for (std::size_t i = 0; i < cc.objects.size(); ++i) {
        std::string id = copresheaf_id(cc.objects[i]);
        if (!cc.index.emplace(id, i).second)
            throw std::logic_error("copresheaf id collision for '" + id + "'");
        cc.cat.objects.push_back({id, cc.objects[i].extent});
        op_ids[i] = presheaf_id(as_presheaf_over_op(cc.objects[i]));
    }
    // (P(E^op))^op: hom(a, b) here is P(E^op)(b_op, a_op) with endpoints
    // swapped back.
    for (std::size_t i = 0; i < cc.objects.size(); ++i)
        for (std::size_t j = 0; j < cc.objects.size(); ++j) {
            QHom h = pop.cat.hom(op_ids[j], op_ids[i]);
            cc.cat.set_hom(cc.cat.objects[i].id, cc.cat.objects[j].id,
                           QHom{h.dst, h.src, h.elems});
        }

    // Cross-check against the direct formula P†E(a,b) = ⋀_x {b(x), a(x)}.
    detail::QCatCtx cx(e);
    for (std::size_t i = 0; i < cc.objects.size(); ++i) {
        auto mi = detail::cosieve_to_mask(cx, cc.objects[i]);
        for (std::size_t j = 0; j < cc.objects.size(); ++j) {
            auto mj = detail::cosieve_to_mask(cx, cc.objects[j]);
            QHom direct = cx.bc.unmask(mi.z, mj.z, detail::cosieve_hom(cx, mi, mj));
            if (direct != cc.cat.hom(cc.cat.objects[i].id, cc.cat.objects[j].id))
                throw std::logic_error(
                    "copresheaf category: opposite-of-presheaves construction "
                    "disagrees with the direct hom formula");
        }
    }

    cc.coyoneda.dom = e;
    cc.coyoneda.cod = cc.cat;
    for (const auto& o : e.objects)
        cc.coyoneda.object_map[o.id] = copresheaf_id(coyoneda_at(e, o.id));
    return cc;
}

Presheaf mu(const QCategory& e, const PresheafCat& pe, const Presheaf& big) {
    Presheaf weight = dense_presheaf(pe.cat, big);
    Presheaf out;
    out.extent = weight.extent;
    for (const auto& o : e.objects) {
        std::vector<QHom> parts;
        for (std::size_t i = 0; i < pe.objects.size(); ++i)
            parts.push_back(q_compose(e.base, weight.components.at(pe.cat.objects[i].id),
                                      pe.objects[i].components.at(o.id)));
        out.components[o.id] =
            q_join(o.extent, weight.extent, std::span<const QHom>(parts));
    }
    return out;
}

Presheaf restrict_presheaf(const QFunctor& f, const Presheaf& phi) {
    Presheaf densified = dense_presheaf(f.cod, phi);
    Presheaf out;
    out.extent = phi.extent;
    for (const auto& o : f.dom.objects)
        out.components[o.id] = densified.components.at(f.apply(o.id));
    // Sieve closure holds automatically; assert it rather than trust it.
    ValidationReport r = validate_presheaf(f.dom, out);
    if (!r.ok())
        throw std::logic_error("restricted presheaf is not a sieve:\n" + r.to_string());
    return out;
}

Presheaf left_extend(const QFunctor& f, const Presheaf& psi) {
    Presheaf densified = dense_presheaf(f.dom, psi);
    Presheaf out;
    out.extent = psi.extent;
    for (const auto& c : f.cod.objects) {
        std::vector<QHom> parts;
        for (const auto& x : f.dom.objects)
            parts.push_back(q_compose(f.cod.base, densified.components.at(x.id),
                                      f.cod.hom(c.id, f.apply(x.id))));
        out.components[c.id] =
            q_join(c.extent, psi.extent, std::span<const QHom>(parts));
    }
    ValidationReport r = validate_presheaf(f.cod, out);
    if (!r.ok())
        throw std::logic_error("left extension is not a sieve:\n" + r.to_string());
    return out;
}

}  // namespace qb
