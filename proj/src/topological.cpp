#include "qb/topological.hpp"

#include <algorithm>
#include <sstream>

#include "detail/engine.hpp"

namespace qb {

namespace {

struct LegIx {
    int object;
    int morphism;
};

std::vector<LegIx> intern_legs(const detail::QCatCtx& cx, const LiftingProblem& p) {
    std::vector<LegIx> out;
    out.reserve(p.legs.size());
    for (const auto& leg : p.legs) {
        auto mi = cx.bc.mor_idx.find(leg.morphism);
        if (mi == cx.bc.mor_idx.end())
            throw data_error("unknown morphism '" + leg.morphism + "'");
        out.push_back({cx.index_of(leg.object), mi->second});
    }
    return out;
}

// R(e) = {θ ∈ B(z, |e|) | θ∘g_i ∈ E(x_i, e) for every leg}: the hom a final
// lifting must realize against e, computed by direct quantifier filtering.
std::vector<detail::Bits> final_requirements(const detail::QCatCtx& cx, int z,
                                             const std::vector<LegIx>& legs) {
    std::vector<detail::Bits> req(cx.n(), 0);
    for (int e = 0; e < cx.n(); ++e) {
        detail::Bits acc = 0;
        detail::for_each_bit(cx.bc.hom_mask(z, cx.ext[e]), [&](int theta) {
            for (const auto& leg : legs)
                if (!detail::bit_test(cx.hom(leg.object, e),
                                      cx.bc.comp[theta][leg.morphism]))
                    return;
            acc |= detail::bit(theta);
        });
        req[e] = acc;
    }
    return req;
}

std::vector<int> final_witnesses(const detail::QCatCtx& cx, int z,
                                 const std::vector<detail::Bits>& req) {
    std::vector<int> out;
    for (int v = 0; v < cx.n(); ++v) {
        if (cx.ext[v] != z) continue;
        bool all = true;
        for (int e = 0; e < cx.n() && all; ++e)
            if (cx.hom(v, e) != req[e]) all = false;
        if (all) out.push_back(v);
    }
    return out;
}

std::vector<std::string> name_sorted(const detail::QCatCtx& cx, std::vector<int> ws) {
    std::vector<std::string> out;
    out.reserve(ws.size());
    for (int w : ws) out.push_back(cx.xs[w]);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<LegIx> sieve_as_legs(const detail::MaskFam& m) {
    std::vector<LegIx> legs;
    for (std::size_t x = 0; x < m.comp.size(); ++x)
        detail::for_each_bit(m.comp[x], [&](int g) {
            legs.push_back({static_cast<int>(x), g});
        });
    return legs;
}

// Greedy minimal generating subfamily of a sieve: drop every element that
// the remaining ones regenerate.
std::vector<LegIx> minimal_generators(const detail::QCatCtx& cx, const detail::MaskFam& m) {
    std::vector<LegIx> legs = sieve_as_legs(m);
    auto generates = [&](const std::vector<LegIx>& ls, const LegIx& target) {
        detail::Bits acc = 0;
        for (const auto& l : ls)
            if (l.object != target.object || l.morphism != target.morphism)
                acc |= cx.bc.compose(detail::bit(l.morphism),
                                     cx.hom(target.object, l.object));
        return detail::bit_test(acc, target.morphism);
    };
    for (std::size_t i = 0; i < legs.size();) {
        if (generates(legs, legs[i]))
            legs.erase(legs.begin() + static_cast<std::ptrdiff_t>(i));
        else
            ++i;
    }
    return legs;
}

}  // namespace

ValidationReport validate_problem(const QCategory& e, const LiftingProblem& p) {
    ValidationReport report;
    if (!e.base.has_object(p.apex)) {
        report.add("unknown-apex", "apex '" + p.apex + "' not in base");
        return report;
    }
    for (const auto& leg : p.legs) {
        if (!e.has_object(leg.object)) {
            report.add("unknown-object", "leg object '" + leg.object + "' not in E");
            continue;
        }
        const Morphism* m = e.base.morphism(leg.morphism);
        if (!m) {
            report.add("unknown-morphism", "leg morphism '" + leg.morphism + "' not in base");
            continue;
        }
        const std::string& ext = e.extent_of(leg.object);
        if (p.kind == LiftKind::Final && (m->src != ext || m->dst != p.apex))
            report.add("leg-type", "leg (" + leg.object + ", " + leg.morphism +
                                       ") is not typed |x| → apex");
        if (p.kind == LiftKind::Initial && (m->src != p.apex || m->dst != ext))
            report.add("leg-type", "leg (" + leg.object + ", " + leg.morphism +
                                       ") is not typed apex → |x|");
    }
    return report;
}

Presheaf generated_sieve(const QCategory& e, const LiftingProblem& p) {
    if (p.kind != LiftKind::Final)
        throw type_error("generated_sieve expects a final problem");
    ValidationReport vr = validate_problem(e, p);
    if (!vr.ok()) throw data_error("invalid lifting problem:\n" + vr.to_string());

    detail::QCatCtx cx(e);
    int z = cx.bc.obj_idx.at(p.apex);
    auto legs = intern_legs(cx, p);
    detail::MaskFam m;
    m.z = z;
    m.comp.assign(cx.n(), 0);
    for (int x = 0; x < cx.n(); ++x)
        for (const auto& leg : legs)
            m.comp[x] |= cx.bc.compose(detail::bit(leg.morphism), cx.hom(x, leg.object));
    if (!detail::sieve_closed(cx, m))
        throw std::logic_error("generated sieve is not closed");
    return detail::sieve_from_mask(cx, m);
}

Copresheaf generated_cosieve(const QCategory& e, const LiftingProblem& p) {
    if (p.kind != LiftKind::Initial)
        throw type_error("generated_cosieve expects an initial problem");
    ValidationReport vr = validate_problem(e, p);
    if (!vr.ok()) throw data_error("invalid lifting problem:\n" + vr.to_string());

    detail::QCatCtx cx(e);
    int z = cx.bc.obj_idx.at(p.apex);
    auto legs = intern_legs(cx, p);
    detail::MaskFam m;
    m.z = z;
    m.comp.assign(cx.n(), 0);
    for (int x = 0; x < cx.n(); ++x)
        for (const auto& leg : legs)
            m.comp[x] |= cx.bc.compose(cx.hom(leg.object, x), detail::bit(leg.morphism));
    if (!detail::cosieve_closed(cx, m))
        throw std::logic_error("generated cosieve is not closed");
    return detail::cosieve_from_mask(cx, m);
}

std::vector<std::string> final_lifting(const QCategory& e, const LiftingProblem& p) {
    if (p.kind != LiftKind::Final)
        throw type_error("final_lifting expects a final problem");
    ValidationReport vr = validate_problem(e, p);
    if (!vr.ok()) throw data_error("invalid lifting problem:\n" + vr.to_string());

    detail::QCatCtx cx(e);
    int z = cx.bc.obj_idx.at(p.apex);
    auto req = final_requirements(cx, z, intern_legs(cx, p));
    return name_sorted(cx, final_witnesses(cx, z, req));
}

std::vector<std::string> initial_lifting(const QCategory& e, const LiftingProblem& p) {
    if (p.kind != LiftKind::Initial)
        throw type_error("initial_lifting expects an initial problem");
    LiftingProblem transported{LiftKind::Final, p.apex, p.legs};
    return final_lifting(opposite_qcategory(e), transported);
}

TopologicalResult is_topological(const QCategory& e, std::size_t cap) {
    detail::QCatCtx cx(e);
    auto list = detail::sorted_sieves(cx, cap);
    TopologicalResult r;
    r.sieve_count = list.masks.size();
    for (std::size_t i = 0; i < list.masks.size(); ++i) {
        auto req = final_requirements(cx, list.masks[i].z, sieve_as_legs(list.masks[i]));
        auto ws = final_witnesses(cx, list.masks[i].z, req);
        if (ws.empty()) {
            r.value = false;
            r.counterexample = list.sheaves[i];
            return r;
        }
        r.witnesses.emplace_back(presheaf_id(list.sheaves[i]),
                                 name_sorted(cx, ws).front());
    }
    r.value = true;
    return r;
}

Copresheaf isbell_up(const QCategory& e, const Presheaf& phi) {
    detail::QCatCtx cx(e);
    detail::MaskFam m = detail::sieve_to_mask(cx, dense_presheaf(e, phi));
    detail::MaskFam up = detail::isbell_up_mask(cx, m);
    for (int x = 0; x < cx.n(); ++x) {
        detail::Bits abstract = detail::sieve_hom(cx, m, detail::yoneda_mask(cx, x));
        if (abstract != up.comp[x])
            throw std::logic_error(
                "isbell_up: elementwise formula disagrees with P E(φ, Y−) at '" +
                cx.xs[x] + "'");
    }
    return detail::cosieve_from_mask(cx, up);
}

Presheaf isbell_down(const QCategory& e, const Copresheaf& psi) {
    detail::QCatCtx cx(e);
    detail::MaskFam m = detail::cosieve_to_mask(cx, dense_copresheaf(e, psi));
    detail::MaskFam down = detail::isbell_down_mask(cx, m);
    for (int x = 0; x < cx.n(); ++x) {
        detail::Bits abstract = detail::cosieve_hom(cx, detail::coyoneda_mask(cx, x), m);
        if (abstract != down.comp[x])
            throw std::logic_error(
                "isbell_down: elementwise formula disagrees with P†E(Y†−, ψ) at '" +
                cx.xs[x] + "'");
    }
    return detail::sieve_from_mask(cx, down);
}

std::vector<std::string> lifting_by_duality(const QCategory& e, const LiftingProblem& p) {
    std::vector<std::string> direct, dual;
    if (p.kind == LiftKind::Final) {
        direct = final_lifting(e, p);
        Copresheaf up = isbell_up(e, generated_sieve(e, p));
        LiftingProblem conj{LiftKind::Initial, up.extent, {}};
        for (const auto& [x, h] : up.components)
            for (const auto& g : h.elems) conj.legs.push_back({x, g});
        dual = initial_lifting(e, conj);
    } else {
        direct = initial_lifting(e, p);
        Presheaf down = isbell_down(e, generated_cosieve(e, p));
        LiftingProblem conj{LiftKind::Final, down.extent, {}};
        for (const auto& [x, h] : down.components)
            for (const auto& g : h.elems) conj.legs.push_back({x, g});
        dual = final_lifting(e, conj);
    }
    if (direct != dual)
        throw std::logic_error("lifting_by_duality: dual route disagrees with the "
                               "direct computation");
    return dual;
}

std::string MainTheoremReport::to_string() const {
    std::ostringstream os;
    os << "(i) leg families lift:    " << (families_lift ? "yes" : "no") << "\n"
       << "(ii) topological:         " << (topological ? "yes" : "no") << "\n"
       << "(iii) Yoneda left adjoint: " << (yoneda_left_adjoint ? "yes" : "no") << "\n"
       << "(iv) total:               " << (total ? "yes" : "no") << "\n"
       << "sieves checked: " << sieve_count << "; "
       << (agree() ? std::string("predicates agree") : std::string("DISAGREEMENT"));
    return os.str();
}

MainTheoremReport main_theorem_check(const QCategory& e, std::size_t cap) {
    detail::QCatCtx cx(e);
    auto list = detail::sorted_sieves(cx, cap);
    MainTheoremReport report;
    report.sieve_count = list.masks.size();

    // (i) final liftings of the minimal generating family of every sieve.
    report.families_lift = true;
    for (std::size_t i = 0; i < list.masks.size() && report.families_lift; ++i) {
        auto legs = minimal_generators(cx, list.masks[i]);
        auto ws = final_witnesses(
            cx, list.masks[i].z, final_requirements(cx, list.masks[i].z, legs));
        if (ws.empty()) {
            report.families_lift = false;
            report.counterexample = list.sheaves[i];
        }
    }

    // (ii) final liftings of the sieves themselves.
    report.topological = true;
    for (std::size_t i = 0; i < list.masks.size() && report.topological; ++i) {
        auto ws = final_witnesses(
            cx, list.masks[i].z,
            final_requirements(cx, list.masks[i].z, sieve_as_legs(list.masks[i])));
        if (ws.empty()) {
            report.topological = false;
            if (!report.counterexample) report.counterexample = list.sheaves[i];
        }
    }

    // (iii) a left adjoint to the Yoneda embedding: every sieve must be
    // realized by an object through the presheaf homs to representables,
    // with unit and counit memberships certified.
    report.yoneda_left_adjoint = true;
    std::vector<int> adjoint_value(list.masks.size(), -1);
    for (std::size_t i = 0; i < list.masks.size() && report.yoneda_left_adjoint; ++i) {
        const auto& m = list.masks[i];
        std::vector<detail::Bits> targets(cx.n());
        for (int x = 0; x < cx.n(); ++x)
            targets[x] = detail::sieve_hom(cx, m, detail::yoneda_mask(cx, x));
        int found = -1;
        for (int v = 0; v < cx.n(); ++v) {
            if (cx.ext[v] != m.z) continue;
            bool all = true;
            for (int x = 0; x < cx.n() && all; ++x)
                if (cx.hom(v, x) != targets[x]) all = false;
            if (all && (found < 0 || cx.xs[v] < cx.xs[found])) found = v;
        }
        if (found < 0) {
            report.yoneda_left_adjoint = false;
            if (!report.counterexample) report.counterexample = list.sheaves[i];
            break;
        }
        adjoint_value[i] = found;
        // unit at φ: φ(x) ⊆ E(x, Lφ)
        for (int x = 0; x < cx.n(); ++x)
            if (!detail::subset_of(m.comp[x], cx.hom(x, found)))
                throw std::logic_error("main theorem (iii): unit fails");
    }
    if (report.yoneda_left_adjoint) {
        // counit at e: L(Y e) ≅ e
        for (int v = 0; v < cx.n(); ++v) {
            detail::MaskFam ym = detail::yoneda_mask(cx, v);
            Presheaf yp = detail::sieve_from_mask(cx, ym);
            auto it = std::lower_bound(list.sheaves.begin(), list.sheaves.end(), yp);
            if (it == list.sheaves.end() || *it != yp)
                throw std::logic_error("main theorem (iii): representable not enumerated");
            int lv = adjoint_value[static_cast<std::size_t>(it - list.sheaves.begin())];
            int id = cx.bc.ident[cx.ext[v]];
            if (!detail::bit_test(cx.hom(lv, v), id) || !detail::bit_test(cx.hom(v, lv), id))
                throw std::logic_error("main theorem (iii): counit fails");
        }
    }

    // (iv) totality by colimit witness search.
    report.total = true;
    for (std::size_t i = 0; i < list.masks.size() && report.total; ++i) {
        auto targets = detail::colimit_targets(cx, list.masks[i]);
        if (detail::colimit_witnesses(cx, list.masks[i].z, targets).empty()) {
            report.total = false;
            if (!report.counterexample) report.counterexample = list.sheaves[i];
        }
    }
    return report;
}

}  // namespace qb
