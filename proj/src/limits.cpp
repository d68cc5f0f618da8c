#include "qb/limits.hpp"

#include <algorithm>
#include <sstream>

#include "detail/engine.hpp"

namespace qb {

namespace {

void require_same_base(const QFunctor& f) {
    if (f.dom.base != f.cod.base)
        throw type_error("functor endpoints live over different bases");
}

}  // namespace

Presheaf singular(const QFunctor& f, const std::string& c) {
    Presheaf p;
    p.extent = f.cod.extent_of(c);
    for (const auto& x : f.dom.objects) p.components[x.id] = f.cod.hom(f.apply(x.id), c);
    return p;
}

Copresheaf cosingular(const QFunctor& f, const std::string& c) {
    Copresheaf p;
    p.extent = f.cod.extent_of(c);
    for (const auto& x : f.dom.objects) p.components[x.id] = f.cod.hom(c, f.apply(x.id));
    return p;
}

std::vector<ColimitWitness> weighted_colimit(const Presheaf& phi, const QFunctor& f) {
    require_same_base(f);
    detail::QCatCtx cxi(f.dom);
    detail::QCatCtx cxc(f.cod);
    detail::MaskFam w = detail::sieve_to_mask(cxi, dense_presheaf(f.dom, phi));

    // fmap[i] = index in cod of the image of dom object i.
    std::vector<int> fmap(cxi.n());
    for (int i = 0; i < cxi.n(); ++i) fmap[i] = cxc.index_of(f.apply(cxi.xs[i]));

    // T(c) = ⋀_x [φ(x), cod(Fx, c)]
    std::vector<detail::Bits> targets(cxc.n());
    for (int c = 0; c < cxc.n(); ++c) {
        detail::Bits acc = cxc.bc.hom_mask(w.z, cxc.ext[c]);
        for (int x = 0; x < cxi.n() && acc; ++x)
            acc &= cxc.bc.left_residual(w.z, cxc.ext[c], w.comp[x], cxc.hom(fmap[x], c));
        targets[c] = acc;
    }

    std::vector<ColimitWitness> out;
    for (int v = 0; v < cxc.n(); ++v) {
        if (cxc.ext[v] != w.z) continue;
        bool all = true;
        for (int c = 0; c < cxc.n() && all; ++c)
            if (cxc.hom(v, c) != targets[c]) all = false;
        if (!all) continue;
        ColimitWitness cw;
        cw.object = cxc.xs[v];
        for (int c = 0; c < cxc.n(); ++c)
            cw.certificate.emplace_back(cxc.xs[c],
                                        cxc.bc.unmask(w.z, cxc.ext[c], targets[c]));
        out.push_back(std::move(cw));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.object < b.object; });
    return out;
}

std::vector<ColimitWitness> weighted_limit(const Copresheaf& psi, const QFunctor& f) {
    require_same_base(f);
    detail::QCatCtx cxi(f.dom);
    detail::QCatCtx cxc(f.cod);
    detail::MaskFam w = detail::cosieve_to_mask(cxi, dense_copresheaf(f.dom, psi));

    std::vector<int> fmap(cxi.n());
    for (int i = 0; i < cxi.n(); ++i) fmap[i] = cxc.index_of(f.apply(cxi.xs[i]));

    // T(c) = ⋀_x {ψ(x), cod(c, Fx)}
    std::vector<detail::Bits> targets(cxc.n());
    for (int c = 0; c < cxc.n(); ++c) {
        detail::Bits acc = cxc.bc.hom_mask(cxc.ext[c], w.z);
        for (int x = 0; x < cxi.n() && acc; ++x)
            acc &= cxc.bc.right_residual(cxc.ext[c], w.z, w.comp[x], cxc.hom(c, fmap[x]));
        targets[c] = acc;
    }

    std::vector<ColimitWitness> out;
    for (int v = 0; v < cxc.n(); ++v) {
        if (cxc.ext[v] != w.z) continue;
        bool all = true;
        for (int c = 0; c < cxc.n() && all; ++c)
            if (cxc.hom(c, v) != targets[c]) all = false;
        if (!all) continue;
        ColimitWitness cw;
        cw.object = cxc.xs[v];
        for (int c = 0; c < cxc.n(); ++c)
            cw.certificate.emplace_back(cxc.xs[c],
                                        cxc.bc.unmask(cxc.ext[c], w.z, targets[c]));
        out.push_back(std::move(cw));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.object < b.object; });
    return out;
}

TotalityResult is_total(const QCategory& e, std::size_t cap) {
    detail::QCatCtx cx(e);
    auto list = detail::sorted_sieves(cx, cap);
    TotalityResult r;
    r.presheaf_count = list.masks.size();
    for (std::size_t i = 0; i < list.masks.size(); ++i) {
        auto targets = detail::colimit_targets(cx, list.masks[i]);
        auto ws = detail::colimit_witnesses(cx, list.masks[i].z, targets);
        if (ws.empty()) {
            r.value = false;
            r.counterexample = list.sheaves[i];
            return r;
        }
        r.witnesses.emplace_back(presheaf_id(list.sheaves[i]),
                                 detail::canonical_witness(cx.xs, ws));
    }
    r.value = true;
    return r;
}

CototalityResult is_cototal(const QCategory& e, std::size_t cap) {
    // Cototality of E is totality of E^op over the opposite base; run the
    // same search there and translate the families back to cosieves.
    QCategory op = opposite_qcategory(e);
    detail::QCatCtx cx(op);
    auto list = detail::sorted_sieves(cx, cap);
    CototalityResult r;
    r.copresheaf_count = list.masks.size();
    for (std::size_t i = 0; i < list.masks.size(); ++i) {
        auto targets = detail::colimit_targets(cx, list.masks[i]);
        auto ws = detail::colimit_witnesses(cx, list.masks[i].z, targets);
        if (ws.empty()) {
            r.value = false;
            r.counterexample = as_copresheaf_from_op(list.sheaves[i]);
            return r;
        }
        r.witnesses.emplace_back(copresheaf_id(as_copresheaf_from_op(list.sheaves[i])),
                                 detail::canonical_witness(cx.xs, ws));
    }
    r.value = true;
    return r;
}

ValidationReport verify_adjunction(const QFunctor& f, const QFunctor& g) {
    ValidationReport report;
    if (f.dom.base != f.cod.base || g.dom.base != g.cod.base ||
        f.dom.base != g.dom.base) {
        report.add("base", "adjunction endpoints live over different bases");
        return report;
    }
    if (f.cod != g.dom || g.cod != f.dom) {
        report.add("endpoints", "left and right adjoint endpoints do not match");
        return report;
    }
    {
        ValidationReport fr = validate_qfunctor(f);
        for (auto& i : fr.issues) report.add("left:" + i.rule, i.detail);
        ValidationReport gr = validate_qfunctor(g);
        for (auto& i : gr.issues) report.add("right:" + i.rule, i.detail);
    }
    if (!report.ok()) return report;

    for (const auto& c : f.dom.objects)
        for (const auto& d : g.dom.objects)
            if (f.cod.hom(f.apply(c.id), d.id) != f.dom.hom(c.id, g.apply(d.id)))
                report.add("hom-equality", "cod(F " + c.id + ", " + d.id +
                                               ") ≠ dom(" + c.id + ", G " + d.id + ")");
    for (const auto& c : f.dom.objects) {
        const std::string& id = f.dom.base.identity_of(c.extent);
        if (!f.dom.hom(c.id, g.apply(f.apply(c.id))).contains(id))
            report.add("unit", "unit fails at '" + c.id + "'");
    }
    for (const auto& d : g.dom.objects) {
        const std::string& id = g.dom.base.identity_of(d.extent);
        if (!g.dom.hom(f.apply(g.apply(d.id)), d.id).contains(id))
            report.add("counit", "counit fails at '" + d.id + "'");
    }
    return report;
}

AdjointResult right_adjoint(const QFunctor& f) {
    require_same_base(f);
    detail::QCatCtx cxc(f.dom);
    detail::QCatCtx cxd(f.cod);
    std::vector<int> fmap(cxc.n());
    for (int i = 0; i < cxc.n(); ++i) fmap[i] = cxd.index_of(f.apply(cxc.xs[i]));

    AdjointResult result;

    std::vector<int> cod_order(cxd.n());
    for (int d = 0; d < cxd.n(); ++d) cod_order[d] = d;
    std::sort(cod_order.begin(), cod_order.end(),
              [&](int a, int b) { return cxd.xs[a] < cxd.xs[b]; });

    auto full_certificate = [&](const std::vector<int>& g) {
        for (int c = 0; c < cxc.n(); ++c)
            for (int d = 0; d < cxd.n(); ++d)
                if (cxd.hom(fmap[c], d) != cxc.hom(c, g[d])) return false;
        return true;
    };

    // Formula route: Gd = cod(F, d) ⋆ 1_dom with the canonical witness.
    {
        std::vector<int> g(cxd.n(), -1);
        bool complete = true;
        for (int d = 0; d < cxd.n() && complete; ++d) {
            detail::MaskFam sing;
            sing.z = cxd.ext[d];
            sing.comp.resize(cxc.n());
            for (int x = 0; x < cxc.n(); ++x) sing.comp[x] = cxd.hom(fmap[x], d);
            auto ws = detail::colimit_witnesses(cxc, sing.z,
                                                detail::colimit_targets(cxc, sing));
            if (ws.empty())
                complete = false;
            else
                g[d] = *std::min_element(ws.begin(), ws.end(), [&](int a, int b) {
                    return cxc.xs[a] < cxc.xs[b];
                });
        }
        if (complete && full_certificate(g)) {
            QFunctor gf;
            gf.dom = f.cod;
            gf.cod = f.dom;
            for (int d = 0; d < cxd.n(); ++d) gf.object_map[cxd.xs[d]] = cxc.xs[g[d]];
            ValidationReport cert = verify_adjunction(f, gf);
            if (!cert.ok())
                throw std::logic_error("formula adjoint failed certification:\n" +
                                       cert.to_string());
            result.functor = std::move(gf);
            result.source = AdjointSource::formula;
            return result;
        }
    }

    // Search route: per object of the codomain, an adjoint value must
    // represent the singular presheaf on the nose.
    std::vector<int> g(cxd.n(), -1);
    for (int d : cod_order) {
        int found = -1;
        for (int v = 0; v < cxc.n(); ++v) {
            if (cxc.ext[v] != cxd.ext[d]) continue;
            bool all = true;
            for (int c = 0; c < cxc.n() && all; ++c)
                if (cxd.hom(fmap[c], d) != cxc.hom(c, v)) all = false;
            if (all && (found < 0 || cxc.xs[v] < cxc.xs[found])) found = v;
        }
        if (found < 0) {
            result.counterexample = cxd.xs[d];
            return result;
        }
        g[d] = found;
    }
    QFunctor gf;
    gf.dom = f.cod;
    gf.cod = f.dom;
    for (int d = 0; d < cxd.n(); ++d) gf.object_map[cxd.xs[d]] = cxc.xs[g[d]];
    ValidationReport cert = verify_adjunction(f, gf);
    if (!cert.ok())
        throw std::logic_error("searched adjoint failed certification:\n" +
                               cert.to_string());
    result.functor = std::move(gf);
    result.source = AdjointSource::search;
    return result;
}

AdjointResult left_adjoint(const QFunctor& f) {
    AdjointResult r = right_adjoint(opposite_qfunctor(f));
    if (!r.functor) return r;
    QFunctor l;
    l.dom = f.cod;
    l.cod = f.dom;
    l.object_map = r.functor->object_map;
    ValidationReport cert = verify_adjunction(l, f);
    if (!cert.ok())
        throw std::logic_error("left adjoint failed certification:\n" + cert.to_string());
    AdjointResult out;
    out.functor = std::move(l);
    out.source = r.source;
    return out;
}

PreservationResult preserves_colimits(const QFunctor& f, std::size_t cap) {
    require_same_base(f);
    detail::QCatCtx cxc(f.dom);
    detail::QCatCtx cxd(f.cod);
    std::vector<int> fmap(cxc.n());
    for (int i = 0; i < cxc.n(); ++i) fmap[i] = cxd.index_of(f.apply(cxc.xs[i]));

    auto list = detail::sorted_sieves(cxc, cap);
    PreservationResult r;
    for (std::size_t s = 0; s < list.masks.size(); ++s) {
        const auto& phi = list.masks[s];
        auto targets = detail::colimit_targets(cxc, phi);
        auto ws = detail::colimit_witnesses(cxc, phi.z, targets);
        if (ws.empty()) continue;

        // Targets of φ ⋆ F in the codomain.
        std::vector<detail::Bits> dtargets(cxd.n());
        for (int d = 0; d < cxd.n(); ++d) {
            detail::Bits acc = cxd.bc.hom_mask(phi.z, cxd.ext[d]);
            for (int x = 0; x < cxc.n() && acc; ++x)
                acc &= cxd.bc.left_residual(phi.z, cxd.ext[d], phi.comp[x],
                                            cxd.hom(fmap[x], d));
            dtargets[d] = acc;
        }
        for (int v : ws) {
            bool witness = true;
            for (int d = 0; d < cxd.n() && witness; ++d)
                if (cxd.hom(fmap[v], d) != dtargets[d]) witness = false;
            ++r.checked;
            if (!witness) {
                r.value = false;
                r.weight = list.sheaves[s];
                r.witness = cxc.xs[v];
                return r;
            }
        }
    }
    r.value = true;
    return r;
}

TotalityResult presheaf_category_is_total(const QCategory& e, std::size_t cap) {
    detail::QCatCtx cx(e);
    auto list = detail::sorted_sieves(cx, cap);
    detail::Cat pe = detail::sieve_cat(cx, list.masks);

    std::vector<std::string> ids(list.sheaves.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = presheaf_id(list.sheaves[i]);

    std::vector<detail::MaskFam> outer;
    for (int z = 0; z < pe.bc.nobj(); ++z) {
        auto more = detail::enumerate_sieves(pe, z, cap - outer.size());
        outer.insert(outer.end(), more.begin(), more.end());
    }

    auto publish = [&](const detail::MaskFam& m) {
        Presheaf p;
        p.extent = pe.bc.objs[m.z];
        for (std::size_t i = 0; i < ids.size(); ++i)
            p.components[ids[i]] =
                pe.bc.unmask(pe.ext[i], m.z, m.comp[i]);
        return p;
    };

    TotalityResult r;
    r.presheaf_count = outer.size();
    for (const auto& big : outer) {
        auto targets = detail::colimit_targets(pe, big);
        auto ws = detail::colimit_witnesses(pe, big.z, targets);
        if (ws.empty()) {
            r.value = false;
            r.counterexample = publish(big);
            return r;
        }
        r.witnesses.emplace_back(presheaf_id(publish(big)),
                                 detail::canonical_witness(ids, ws));
    }
    r.value = true;
    return r;
}

MuCertificate certify_mu_adjunction(const QCategory& e, std::size_t cap) {
    detail::QCatCtx cx(e);
    auto list = detail::sorted_sieves(cx, cap);
    detail::Cat pe = detail::sieve_cat(cx, list.masks);
    const std::size_t n = list.masks.size();

    // Index of each sieve by its mask content, for locating mu values.
    auto key = [&](const detail::MaskFam& m) {
        std::string k = std::to_string(m.z);
        for (auto b : m.comp) k += ":" + std::to_string(b);
        return k;
    };
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index[key(list.masks[i])] = i;

    std::vector<detail::MaskFam> outer;
    for (int z = 0; z < pe.bc.nobj(); ++z) {
        auto more = detail::enumerate_sieves(pe, z, cap - outer.size());
        outer.insert(outer.end(), more.begin(), more.end());
    }

    MuCertificate cert;
    cert.outer_count = outer.size();
    for (const auto& big : outer) {
        // mu(Φ)(x) = ⋁_φ Φ(φ) ∘ φ(x), computed in mask form.
        detail::MaskFam muv;
        muv.z = big.z;
        muv.comp.assign(cx.n(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (!big.comp[i]) continue;
            for (int x = 0; x < cx.n(); ++x)
                muv.comp[x] |= cx.bc.compose(big.comp[i], list.masks[i].comp[x]);
        }
        auto it = index.find(key(muv));
        if (it == index.end()) {
            cert.ok = false;
            cert.detail = "mu value is not a presheaf of P E";
            return cert;
        }
        const std::size_t m = it->second;
        // P E(mu Φ, φ) must equal P P E(Φ, Y φ) for every φ.
        for (std::size_t j = 0; j < n; ++j) {
            detail::Bits lhs = pe.hom(static_cast<int>(m), static_cast<int>(j));
            detail::Bits rhs =
                detail::sieve_hom(pe, big, detail::yoneda_mask(pe, static_cast<int>(j)));
            if (lhs != rhs) {
                cert.ok = false;
                std::ostringstream os;
                os << "adjunction equality fails at Φ over extent "
                   << pe.bc.objs[big.z] << " and φ = " << presheaf_id(list.sheaves[j]);
                cert.detail = os.str();
                return cert;
            }
        }
    }
    cert.ok = true;
    return cert;
}

}  // namespace qb
