#include "qb/qcat.hpp"

#include <algorithm>
#include <set>

namespace qb {

bool QCategory::has_object(const std::string& id) const {
    for (const auto& o : objects)
        if (o.id == id) return true;
    return false;
}

const std::string& QCategory::extent_of(const std::string& id) const {
    for (const auto& o : objects)
        if (o.id == id) return o.extent;
    throw data_error("unknown object '" + id + "'");
}

QHom QCategory::hom(const std::string& x, const std::string& y) const {
    auto it = homs.find({x, y});
    if (it != homs.end()) return it->second;
    return q_empty(extent_of(x), extent_of(y));
}

void QCategory::set_hom(const std::string& x, const std::string& y, QHom h) {
    if (h.empty())
        homs.erase({x, y});
    else
        homs[{x, y}] = std::move(h);
}

const std::string& QFunctor::apply(const std::string& x) const {
    auto it = object_map.find(x);
    if (it == object_map.end())
        throw data_error("functor undefined on object '" + x + "'");
    return it->second;
}

ValidationReport validate_qcategory(const QCategory& e) {
    ValidationReport report = validate_category(e.base);
    if (!report.ok()) return report;

    std::set<std::string> seen;
    for (const auto& o : e.objects) {
        if (!seen.insert(o.id).second)
            report.add("duplicate-object", "object id '" + o.id + "' occurs twice");
        if (o.id.find('|') != std::string::npos)
            report.add("object-id", "object id '" + o.id + "' contains '|'");
        if (!e.base.has_object(o.extent))
            report.add("unknown-extent",
                       "object '" + o.id + "' has unknown extent '" + o.extent + "'");
    }
    if (!report.ok()) return report;

    for (const auto& [key, h] : e.homs) {
        const auto& [x, y] = key;
        if (!seen.count(x) || !seen.count(y)) {
            report.add("unknown-object",
                       "hom entry (" + x + ", " + y + ") mentions unknown objects");
            continue;
        }
        if (h.src != e.extent_of(x) || h.dst != e.extent_of(y)) {
            report.add("hom-type", "hom (" + x + ", " + y + ") is typed " + h.src +
                                       " ⇸ " + h.dst + ", expected " + e.extent_of(x) +
                                       " ⇸ " + e.extent_of(y));
            continue;
        }
        for (const auto& m : h.elems) {
            const Morphism* bm = e.base.morphism(m);
            if (!bm || bm->src != h.src || bm->dst != h.dst)
                report.add("hom-element", "hom (" + x + ", " + y +
                                              ") contains '" + m + "' outside B(" +
                                              h.src + ", " + h.dst + ")");
        }
    }
    if (!report.ok()) return report;

    // Identity law: 1_{|x|} ∈ E(x,x).
    for (const auto& o : e.objects)
        if (!e.hom(o.id, o.id).contains(e.base.identity_of(o.extent)))
            report.add("identity-law",
                       "identity of '" + o.extent + "' missing from hom (" + o.id +
                           ", " + o.id + ")");

    // Composition law: E(y,z) ∘ E(x,y) ≤ E(x,z).
    for (const auto& x : e.objects)
        for (const auto& y : e.objects)
            for (const auto& z : e.objects) {
                QHom lhs = q_compose(e.base, e.hom(y.id, z.id), e.hom(x.id, y.id));
                QHom rhs = e.hom(x.id, z.id);
                for (const auto& m : lhs.elems)
                    if (!rhs.contains(m))
                        report.add("composition-law",
                                   "at (" + x.id + ", " + y.id + ", " + z.id +
                                       "): composite '" + m + "' escapes hom (" +
                                       x.id + ", " + z.id + ")");
            }
    return report;
}

ValidationReport validate_presentation(const FunctorPresentation& p) {
    ValidationReport report;
    {
        ValidationReport t = validate_category(p.total);
        for (auto& i : t.issues) report.add("total:" + i.rule, i.detail);
        ValidationReport b = validate_category(p.base);
        for (auto& i : b.issues) report.add("base:" + i.rule, i.detail);
    }
    if (!report.ok()) return report;

    for (const auto& x : p.total.objects) {
        auto it = p.object_map.find(x);
        if (it == p.object_map.end())
            report.add("object-map", "no image for object '" + x + "'");
        else if (!p.base.has_object(it->second))
            report.add("object-map", "object '" + x + "' maps to unknown '" + it->second + "'");
    }
    for (const auto& m : p.total.morphisms) {
        auto it = p.morphism_map.find(m.id);
        if (it == p.morphism_map.end()) {
            report.add("morphism-map", "no image for morphism '" + m.id + "'");
            continue;
        }
        const Morphism* bm = p.base.morphism(it->second);
        if (!bm) {
            report.add("morphism-map",
                       "morphism '" + m.id + "' maps to unknown '" + it->second + "'");
            continue;
        }
        auto sx = p.object_map.find(m.src), dx = p.object_map.find(m.dst);
        if (sx != p.object_map.end() && dx != p.object_map.end() &&
            (bm->src != sx->second || bm->dst != dx->second))
            report.add("functoriality",
                       "image of '" + m.id + "' has wrong endpoints");
    }
    if (!report.ok()) return report;

    // Identities and composites must be preserved.
    for (const auto& x : p.total.objects) {
        const std::string& idE = p.total.identity_of(x);
        const std::string& idB = p.base.identity_of(p.object_map.at(x));
        if (p.morphism_map.at(idE) != idB)
            report.add("functoriality", "identity of '" + x + "' not sent to identity");
    }
    for (const auto& [pair, gf] : p.total.composition) {
        const std::string& img =
            p.base.compose(p.morphism_map.at(pair.first), p.morphism_map.at(pair.second));
        if (p.morphism_map.at(gf) != img)
            report.add("functoriality", "composite (" + pair.first + ", " + pair.second +
                                            ") not preserved");
    }

    // Faithfulness: injective on each hom-set.
    for (const auto& m : p.total.morphisms)
        for (const auto& n : p.total.morphisms) {
            if (m.id >= n.id || m.src != n.src || m.dst != n.dst) continue;
            if (p.morphism_map.at(m.id) == p.morphism_map.at(n.id))
                report.add("faithfulness", "parallel morphisms '" + m.id + "' and '" +
                                               n.id + "' have equal image '" +
                                               p.morphism_map.at(m.id) + "'");
        }
    return report;
}

QCategory from_presentation(const FunctorPresentation& p) {
    ValidationReport report = validate_presentation(p);
    if (!report.ok())
        throw data_error("invalid presentation:\n" + report.to_string());

    QCategory e;
    e.base = p.base;
    for (const auto& x : p.total.objects) e.objects.push_back({x, p.object_map.at(x)});
    for (const auto& x : p.total.objects)
        for (const auto& y : p.total.objects) {
            std::vector<std::string> image;
            for (const auto& m : p.total.hom(x, y)) image.push_back(p.morphism_map.at(m));
            e.set_hom(x, y, make_qhom(e.base, p.object_map.at(x), p.object_map.at(y),
                                      std::move(image)));
        }
    return e;
}

FunctorPresentation to_presentation(const QCategory& e) {
    FunctorPresentation p;
    p.base = e.base;
    p.total.objects.reserve(e.objects.size());
    for (const auto& o : e.objects) {
        p.total.objects.push_back(o.id);
        p.object_map[o.id] = o.extent;
    }
    auto name = [](const std::string& x, const std::string& y, const std::string& m) {
        return x + "|" + y + "|" + m;
    };
    for (const auto& x : e.objects)
        for (const auto& y : e.objects)
            for (const auto& m : e.hom(x.id, y.id).elems) {
                p.total.morphisms.push_back({name(x.id, y.id, m), x.id, y.id});
                p.morphism_map[name(x.id, y.id, m)] = m;
            }
    for (const auto& o : e.objects)
        p.total.identities[o.id] = name(o.id, o.id, e.base.identity_of(o.extent));
    for (const auto& g : p.total.morphisms)
        for (const auto& f : p.total.morphisms) {
            if (f.dst != g.src) continue;
            const std::string& m = e.base.compose(p.morphism_map.at(g.id),
                                                  p.morphism_map.at(f.id));
            p.total.composition[{g.id, f.id}] = name(f.src, g.dst, m);
        }
    return p;
}

QCategory opposite_qcategory(const QCategory& e) {
    QCategory op;
    op.base = opposite_category(e.base);
    op.objects = e.objects;
    for (const auto& [key, h] : e.homs)
        op.homs[{key.second, key.first}] = QHom{h.dst, h.src, h.elems};
    return op;
}

ValidationReport validate_qfunctor(const QFunctor& f) {
    ValidationReport report;
    if (f.dom.base != f.cod.base) {
        report.add("base-mismatch", "dom and cod live over different bases");
        return report;
    }
    for (const auto& o : f.dom.objects) {
        auto it = f.object_map.find(o.id);
        if (it == f.object_map.end()) {
            report.add("object-map", "no image for object '" + o.id + "'");
            continue;
        }
        if (!f.cod.has_object(it->second)) {
            report.add("object-map",
                       "object '" + o.id + "' maps to unknown '" + it->second + "'");
            continue;
        }
        if (f.cod.extent_of(it->second) != o.extent)
            report.add("extent", "object '" + o.id + "' of extent '" + o.extent +
                                     "' maps to '" + it->second + "' of extent '" +
                                     f.cod.extent_of(it->second) + "'");
    }
    if (!report.ok()) return report;

    for (const auto& x : f.dom.objects)
        for (const auto& y : f.dom.objects) {
            QHom lhs = f.dom.hom(x.id, y.id);
            QHom rhs = f.cod.hom(f.apply(x.id), f.apply(y.id));
            for (const auto& m : lhs.elems)
                if (!rhs.contains(m))
                    report.add("hom-inclusion",
                               "hom (" + x.id + ", " + y.id + ") element '" + m +
                                   "' not in hom of images");
        }
    return report;
}

bool qtransformation_leq(const QFunctor& f, const QFunctor& g) {
    if (f.dom != g.dom || f.cod != g.cod)
        throw type_error("qtransformation_leq: functors are not parallel");
    for (const auto& o : f.dom.objects) {
        const std::string& id = f.dom.base.identity_of(o.extent);
        if (!f.cod.hom(f.apply(o.id), g.apply(o.id)).contains(id)) return false;
    }
    return true;
}

QFunctor identity_qfunctor(const QCategory& e) {
    QFunctor f;
    f.dom = e;
    f.cod = e;
    for (const auto& o : e.objects) f.object_map[o.id] = o.id;
    return f;
}

QFunctor opposite_qfunctor(const QFunctor& f) {
    QFunctor op;
    op.dom = opposite_qcategory(f.dom);
    op.cod = opposite_qcategory(f.cod);
    op.object_map = f.object_map;
    return op;
}

QFunctor compose_qfunctors(const QFunctor& g, const QFunctor& f) {
    if (g.dom != f.cod) throw type_error("compose_qfunctors: cod(F) ≠ dom(G)");
    QFunctor gf;
    gf.dom = f.dom;
    gf.cod = g.cod;
    for (const auto& [x, fx] : f.object_map) gf.object_map[x] = g.apply(fx);
    return gf;
}

QCategory full_subcategory(const QCategory& e, const std::vector<std::string>& ids) {
    QCategory sub;
    sub.base = e.base;
    for (const auto& id : ids) sub.objects.push_back({id, e.extent_of(id)});
    for (const auto& x : ids)
        for (const auto& y : ids) sub.set_hom(x, y, e.hom(x, y));
    return sub;
}

bool objects_isomorphic(const QCategory& e, const std::string& x, const std::string& y) {
    if (e.extent_of(x) != e.extent_of(y)) return false;
    const std::string& id = e.base.identity_of(e.extent_of(x));
    return e.hom(x, y).contains(id) && e.hom(y, x).contains(id);
}

bool fully_faithful(const QFunctor& f) {
    for (const auto& x : f.dom.objects)
        for (const auto& y : f.dom.objects)
            if (f.dom.hom(x.id, y.id) != f.cod.hom(f.apply(x.id), f.apply(y.id)))
                return false;
    return true;
}

bool essentially_surjective(const QFunctor& f) {
    for (const auto& d : f.cod.objects) {
        bool hit = false;
        for (const auto& x : f.dom.objects)
            if (objects_isomorphic(f.cod, d.id, f.apply(x.id))) {
                hit = true;
                break;
            }
        if (!hit) return false;
    }
    return true;
}

bool is_equivalence(const QFunctor& f) {
    return validate_qfunctor(f).ok() && fully_faithful(f) && essentially_surjective(f);
}

}  // namespace qb
