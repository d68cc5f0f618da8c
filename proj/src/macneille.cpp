#include "qb/macneille.hpp"

#include <algorithm>
#include <sstream>

#include "detail/engine.hpp"

namespace qb {

namespace {

bool is_cut_mask(const detail::QCatCtx& cx, const detail::MaskFam& m) {
    return detail::isbell_down_mask(cx, detail::isbell_up_mask(cx, m)) == m;
}

}  // namespace

bool is_cut(const QCategory& e, const Presheaf& phi) {
    detail::QCatCtx cx(e);
    return is_cut_mask(cx, detail::sieve_to_mask(cx, dense_presheaf(e, phi)));
}

MacNeilleResult macneille(const QCategory& e, std::size_t cap) {
    detail::QCatCtx cx(e);
    auto list = detail::sorted_sieves(cx, cap);

    MacNeilleResult r;
    std::vector<detail::MaskFam> cut_masks;
    for (std::size_t i = 0; i < list.masks.size(); ++i)
        if (is_cut_mask(cx, list.masks[i])) {
            r.index.emplace(presheaf_id(list.sheaves[i]), r.cuts.size());
            r.cuts.push_back(list.sheaves[i]);
            cut_masks.push_back(list.masks[i]);
        }

    r.completion.base = e.base;
    for (const auto& c : r.cuts) r.completion.objects.push_back({presheaf_id(c), c.extent});
    for (std::size_t i = 0; i < cut_masks.size(); ++i)
        for (std::size_t j = 0; j < cut_masks.size(); ++j) {
            detail::Bits h = detail::sieve_hom(cx, cut_masks[i], cut_masks[j]);
            r.completion.set_hom(r.completion.objects[i].id, r.completion.objects[j].id,
                                 cx.bc.unmask(cut_masks[i].z, cut_masks[j].z, h));
        }

    r.embedding.dom = e;
    r.embedding.cod = r.completion;
    for (const auto& o : e.objects) {
        Presheaf y = yoneda_at(e, o.id);
        std::string id = presheaf_id(y);
        if (!r.index.count(id))
            throw std::logic_error("representable at '" + o.id + "' is not a cut");
        r.embedding.object_map[o.id] = id;
    }
    return r;
}

DensityResult is_dense(const QFunctor& f, std::size_t cap) {
    if (f.dom.base != f.cod.base)
        throw type_error("functor endpoints live over different bases");
    detail::QCatCtx cxc(f.dom);
    detail::QCatCtx cxd(f.cod);
    std::vector<int> fmap(cxc.n());
    for (int i = 0; i < cxc.n(); ++i) fmap[i] = cxd.index_of(f.apply(cxc.xs[i]));

    // Singular presheaves cod(F, d) in mask form, one per object of cod.
    std::vector<detail::MaskFam> sing(cxd.n());
    for (int d = 0; d < cxd.n(); ++d) {
        sing[d].z = cxd.ext[d];
        sing[d].comp.resize(cxc.n());
        for (int x = 0; x < cxc.n(); ++x) sing[d].comp[x] = cxd.hom(fmap[x], d);
    }

    DensityResult r;

    // (a) the singular functor is fully faithful.
    r.singular_fully_faithful = true;
    for (int d = 0; d < cxd.n() && r.singular_fully_faithful; ++d)
        for (int d2 = 0; d2 < cxd.n(); ++d2)
            if (detail::sieve_hom(cxc, sing[d], sing[d2]) != cxd.hom(d, d2)) {
                r.singular_fully_faithful = false;
                break;
            }

    // (b) every d realizes the colimit of F weighted by its own singular
    // presheaf. Evaluated per object so (c) can reuse the verdicts.
    std::vector<bool> canonical(cxd.n());
    r.canonical_weights = true;
    for (int d = 0; d < cxd.n(); ++d) {
        bool good = true;
        for (int c = 0; c < cxd.n() && good; ++c)
            if (detail::sieve_hom(cxc, sing[d], sing[c]) != cxd.hom(d, c)) good = false;
        canonical[d] = good;
        if (!good) {
            r.canonical_weights = false;
            if (r.counterexample.empty()) r.counterexample = cxd.xs[d];
        }
    }

    // (c) every d is a colimit for some weight; the canonical weight is
    // tried first, then all enumerated presheaves.
    r.some_weight = true;
    std::optional<detail::SieveList> lazy;
    for (int d = 0; d < cxd.n(); ++d) {
        bool good = canonical[d];
        if (!good) {
            if (!lazy) lazy = detail::sorted_sieves(cxc, cap);
            for (const auto& phi : lazy->masks) {
                if (phi.z != cxd.ext[d]) continue;
                bool witness = true;
                for (int c = 0; c < cxd.n() && witness; ++c) {
                    detail::Bits target = cxd.bc.hom_mask(phi.z, cxd.ext[c]);
                    for (int x = 0; x < cxc.n() && target; ++x)
                        target &= cxd.bc.left_residual(phi.z, cxd.ext[c], phi.comp[x],
                                                       cxd.hom(fmap[x], c));
                    if (cxd.hom(d, c) != target) witness = false;
                }
                if (witness) {
                    good = true;
                    break;
                }
            }
        }
        if (!good) {
            r.some_weight = false;
            if (r.counterexample.empty()) r.counterexample = cxd.xs[d];
        }
        if (canonical[d] != good)
            throw std::logic_error(
                "density characterizations disagree at '" + cxd.xs[d] +
                "': canonical weight fails but some weight succeeds");
    }

    if (r.singular_fully_faithful != r.canonical_weights ||
        r.canonical_weights != r.some_weight)
        throw std::logic_error("density characterizations disagree");
    r.value = r.singular_fully_faithful;
    return r;
}

DensityResult is_codense(const QFunctor& f, std::size_t cap) {
    return is_dense(opposite_qfunctor(f), cap);
}

CutCocontinuityResult is_cut_cocontinuous(const QFunctor& f, std::size_t cap) {
    if (f.dom.base != f.cod.base)
        throw type_error("functor endpoints live over different bases");

    CutCocontinuityResult r;

    // Route 1: F* maps cuts of cod to cuts of dom.
    bool restriction_ok = true;
    {
        detail::QCatCtx cxd(f.cod);
        auto list = detail::sorted_sieves(cxd, cap);
        for (std::size_t i = 0; i < list.masks.size(); ++i) {
            if (!is_cut_mask(cxd, list.masks[i])) continue;
            Presheaf restricted = restrict_presheaf(f, list.sheaves[i]);
            if (!is_cut(f.dom, restricted)) {
                restriction_ok = false;
                r.counterexample_cut = list.sheaves[i];
                break;
            }
        }
    }

    // Route 2: every singular presheaf cod(F, d) is a cut of dom.
    bool singular_ok = true;
    {
        std::vector<std::string> ids;
        for (const auto& d : f.cod.objects) ids.push_back(d.id);
        std::sort(ids.begin(), ids.end());
        for (const auto& d : ids)
            if (!is_cut(f.dom, singular(f, d))) {
                singular_ok = false;
                r.counterexample_object = d;
                break;
            }
    }

    if (restriction_ok != singular_ok)
        throw std::logic_error("cut-cocontinuity characterizations disagree");
    r.value = restriction_ok;
    return r;
}

SharpResult sharp(const QFunctor& f, std::size_t cap) {
    MacNeilleResult rc = macneille(f.dom, cap);

    SharpResult out;
    out.functor.dom = rc.completion;
    out.functor.cod = f.cod;
    for (std::size_t i = 0; i < rc.cuts.size(); ++i) {
        auto ws = weighted_colimit(rc.cuts[i], f);
        if (ws.empty())
            throw data_error("no colimit for cut '" + rc.completion.objects[i].id +
                             "': codomain not total or functor not cut-cocontinuous");
        out.functor.object_map[rc.completion.objects[i].id] = ws.front().object;
    }
    ValidationReport vr = validate_qfunctor(out.functor);
    if (!vr.ok())
        throw std::logic_error("extension is not a functor:\n" + vr.to_string());

    out.restricts_to_f = true;
    for (const auto& o : f.dom.objects)
        if (!objects_isomorphic(f.cod, out.functor.apply(rc.embedding.apply(o.id)),
                                f.apply(o.id)))
            out.restricts_to_f = false;

    out.left_adjoint_certified = right_adjoint(out.functor).functor.has_value();
    return out;
}

FixResult fix_category(const Adjunction& adj) {
    ValidationReport cert = verify_adjunction(adj.left, adj.right);
    if (!cert.ok())
        throw data_error("invalid adjunction certificate:\n" + cert.to_string());

    const QCategory& c = adj.left.dom;
    const QCategory& d = adj.left.cod;
    FixResult r;

    // Representation (b): objects with X ≅ GFX.
    for (const auto& x : c.objects)
        if (objects_isomorphic(c, x.id, adj.right.apply(adj.left.apply(x.id))))
            r.objects.push_back(x.id);
    r.fixed = full_subcategory(c, r.objects);

    // Representation (a): the full replete image of G.
    std::vector<std::string> image;
    for (const auto& x : c.objects) {
        bool hit = false;
        for (const auto& dd : d.objects)
            if (objects_isomorphic(c, x.id, adj.right.apply(dd.id))) {
                hit = true;
                break;
            }
        if (hit) image.push_back(x.id);
    }
    if (image != r.objects)
        r.checks.add("image-representation",
                     "replete image of G differs from the X ≅ GFX objects");

    // Representation (g): pairs (c, d) with Fc ≅ d and c ≅ Gd, with
    // hom-objects required to agree on both sides.
    for (const auto& x : c.objects)
        for (const auto& dd : d.objects) {
            if (!objects_isomorphic(d, adj.left.apply(x.id), dd.id) ||
                !objects_isomorphic(c, x.id, adj.right.apply(dd.id)))
                continue;
            for (const auto& x2 : c.objects)
                for (const auto& dd2 : d.objects) {
                    if (!objects_isomorphic(d, adj.left.apply(x2.id), dd2.id) ||
                        !objects_isomorphic(c, x2.id, adj.right.apply(dd2.id)))
                        continue;
                    if (c.hom(x.id, x2.id) != d.hom(dd.id, dd2.id)) {
                        r.checks.add("pair-representation",
                                     "hom mismatch between (" + x.id + ", " + dd.id +
                                         ") and (" + x2.id + ", " + dd2.id + ")");
                    }
                }
            if (std::find(r.objects.begin(), r.objects.end(), x.id) == r.objects.end())
                r.checks.add("pair-representation",
                             "pair object '" + x.id + "' is not a fixpoint");
        }
    for (const auto& id : r.objects)
        if (!objects_isomorphic(d, adj.left.apply(adj.right.apply(adj.left.apply(id))),
                                adj.left.apply(id)))
            r.checks.add("pair-representation",
                         "fixpoint '" + id + "' does not pair with its image");

    // Reflectivity: GF reflects C onto the fixpoints.
    for (const auto& x : c.objects) {
        const std::string gfx = adj.right.apply(adj.left.apply(x.id));
        if (std::find(r.objects.begin(), r.objects.end(), gfx) == r.objects.end())
            r.checks.add("reflectivity", "GF value '" + gfx + "' is not a fixpoint");
        for (const auto& s : r.objects)
            if (c.hom(gfx, s) != c.hom(x.id, s))
                r.checks.add("reflectivity", "reflection fails: C(GF " + x.id + ", " +
                                                 s + ") ≠ C(" + x.id + ", " + s + ")");
    }
    return r;
}

Adjunction isbell_adjunction(const QCategory& e, std::size_t cap) {
    PresheafCat pe = presheaf_category(e, cap);
    CopresheafCat ce = copresheaf_category(e, cap);

    Adjunction adj;
    adj.left.dom = pe.cat;
    adj.left.cod = ce.cat;
    for (std::size_t i = 0; i < pe.objects.size(); ++i)
        adj.left.object_map[pe.cat.objects[i].id] =
            ce.id_of(isbell_up(e, pe.objects[i]));
    adj.right.dom = ce.cat;
    adj.right.cod = pe.cat;
    for (std::size_t i = 0; i < ce.objects.size(); ++i)
        adj.right.object_map[ce.cat.objects[i].id] =
            pe.id_of(isbell_down(e, ce.objects[i]));
    return adj;
}

std::string CompletionPropertiesReport::to_string() const {
    std::ostringstream os;
    os << "cuts: " << cut_count << "\n"
       << "completion total:        " << (total ? "yes" : "no") << "\n"
       << "embedding fully faithful: " << (fully_faithful ? "yes" : "no") << "\n"
       << "embedding dense:         " << (dense ? "yes" : "no") << "\n"
       << "embedding codense:       " << (codense ? "yes" : "no") << "\n"
       << "preserves colimits:      " << (preserves_colimits ? "yes" : "no") << "\n"
       << "preserves limits:        " << (preserves_limits ? "yes" : "no") << "\n"
       << "idempotent:              " << (idempotent ? "yes" : "no");
    return os.str();
}

CompletionPropertiesReport completion_properties(const QCategory& e, std::size_t cap) {
    MacNeilleResult rc = macneille(e, cap);
    CompletionPropertiesReport report;
    report.cut_count = rc.cuts.size();

    report.total = is_total(rc.completion, cap).value;
    report.fully_faithful = fully_faithful(rc.embedding);
    report.dense = is_dense(rc.embedding, cap).value;
    report.codense = is_codense(rc.embedding, cap).value;
    report.preserves_colimits = preserves_colimits(rc.embedding, cap).value;
    report.preserves_limits =
        preserves_colimits(opposite_qfunctor(rc.embedding), cap).value;

    report.e_total = is_total(e, cap).value;
    report.idempotent = !report.e_total || is_equivalence(rc.embedding);
    return report;
}

}  // namespace qb
