#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "qb/fixtures.hpp"
#include "qb/harness.hpp"

using namespace qb;

namespace {

Presheaf downset(const QCategory& e, const std::set<std::string>& members) {
    Presheaf p;
    p.extent = e.base.objects.front();
    for (const auto& o : e.objects)
        p.components[o.id] = members.count(o.id) ? q_id(e.base, p.extent)
                                                 : q_empty(o.extent, p.extent);
    return p;
}

// Compare a completion over the one-object base with the classical (L, U)
// brute force: same carriers, same order, matching upper sets.
void check_against_classical(const QCategory& e) {
    MacNeilleResult mn = macneille(e);
    auto pairs = oracles::naive_macneille_preorder(e);
    REQUIRE(mn.cuts.size() == pairs.size());

    std::set<std::set<std::string>> got, want;
    for (const auto& c : mn.cuts) got.insert(oracles::carrier(c));
    for (const auto& p : pairs) want.insert(p.lower);
    CHECK(got == want);

    for (const auto& c : mn.cuts) {
        std::set<std::string> lower = oracles::carrier(c);
        std::set<std::string> upper = oracles::carrier(isbell_up(e, c));
        bool matched = false;
        for (const auto& p : pairs)
            if (p.lower == lower && p.upper == upper) matched = true;
        CHECK(matched);
    }

    // order agreement: cut inclusion is completion hom membership
    const std::string id = e.base.identity_of(e.base.objects.front());
    for (std::size_t i = 0; i < mn.cuts.size(); ++i)
        for (std::size_t j = 0; j < mn.cuts.size(); ++j) {
            bool leq = mn.completion
                           .hom(mn.completion.objects[i].id, mn.completion.objects[j].id)
                           .contains(id);
            std::set<std::string> small = oracles::carrier(mn.cuts[i]);
            std::set<std::string> large = oracles::carrier(mn.cuts[j]);
            bool incl = std::includes(large.begin(), large.end(), small.begin(),
                                      small.end());
            CHECK(leq == incl);
        }
}

}  // namespace

TEST_CASE("cut recognition") {
    QCategory ac = fixtures::two_antichain();
    for (const auto& x : ac.objects) CHECK(is_cut(ac, yoneda_at(ac, x.id)));
    CHECK(is_cut(ac, downset(ac, {"a", "b"})));  // it is ↓ of the empty cosieve
    CHECK(is_cut(ac, downset(ac, {})));

    QCategory ch = fixtures::two_chain();
    CHECK(is_cut(ch, downset(ch, {"0"})));
    CHECK(is_cut(ch, downset(ch, {"0", "1"})));
    // the empty downset is no cut: lower bounds of everything include the
    // bottom, so ↓↑∅ = {0}
    CHECK_FALSE(is_cut(ch, downset(ch, {})));
}

TEST_CASE("representables are cuts everywhere") {
    std::vector<QCategory> cases{fixtures::two_antichain(), fixtures::two_chain(),
                                 fixtures::one_object_over_arrow()};
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        GenConfig cfg;
        cfg.seed = seed + 50;
        cases.push_back(gen_qcategory(cfg, gen_fin_category(cfg)));
    }
    for (const auto& e : cases)
        for (const auto& x : e.objects) CHECK(is_cut(e, yoneda_at(e, x.id)));
}

TEST_CASE("completion of the antichain is the four-element diamond") {
    QCategory ac = fixtures::two_antichain();
    MacNeilleResult mn = macneille(ac);
    REQUIRE(mn.cuts.size() == 4);
    std::set<std::set<std::string>> carriers;
    for (const auto& c : mn.cuts) carriers.insert(oracles::carrier(c));
    CHECK(carriers == std::set<std::set<std::string>>{
                          {}, {"a"}, {"b"}, {"a", "b"}});
    CHECK(validate_qcategory(mn.completion).ok());
    CHECK(validate_qfunctor(mn.embedding).ok());
    check_against_classical(ac);
}

TEST_CASE("completion of the chain is the chain itself") {
    QCategory ch = fixtures::two_chain();
    MacNeilleResult mn = macneille(ch);
    REQUIRE(mn.cuts.size() == 2);
    std::set<std::set<std::string>> carriers;
    for (const auto& c : mn.cuts) carriers.insert(oracles::carrier(c));
    CHECK(carriers == std::set<std::set<std::string>>{{"0"}, {"0", "1"}});
    CHECK(is_equivalence(mn.embedding));
    check_against_classical(ch);
}

TEST_CASE("completion over the arrow base gains exactly the one missing cut") {
    QCategory ex = fixtures::one_object_over_arrow();
    MacNeilleResult mn = macneille(ex);
    REQUIRE(mn.cuts.size() == 2);
    CHECK(mn.cuts[0] == dense_presheaf(ex, yoneda_at(ex, "e")));
    CHECK(mn.cuts[1].extent == "Y");
    CHECK(mn.cuts[1].components.at("e").elems == std::vector<std::string>{"f"});
    // the new object makes the completion topological
    CHECK(is_topological(mn.completion).value);
    CHECK(is_total(mn.completion).value);
}

TEST_CASE("classical oracle on random preorders") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        GenConfig cfg;
        cfg.seed = seed + 900;
        cfg.max_fiber_objects = 4;
        QCategory e = gen_qcategory(cfg, fixtures::terminal_category());
        check_against_classical(e);
    }
}

TEST_CASE("completion properties on the fixtures") {
    CompletionPropertiesReport ac = completion_properties(fixtures::two_antichain());
    CHECK(ac.ok());
    CHECK(ac.cut_count == 4);
    CHECK_FALSE(ac.e_total);

    CompletionPropertiesReport ch = completion_properties(fixtures::two_chain());
    CHECK(ch.ok());
    CHECK(ch.e_total);  // and therefore J is an equivalence (idempotence)

    CompletionPropertiesReport ex =
        completion_properties(fixtures::one_object_over_arrow());
    CHECK(ex.ok());

    // a total instance beyond the preorder case
    CompletionPropertiesReport pac =
        completion_properties(presheaf_category(fixtures::two_antichain()).cat);
    CHECK(pac.ok());
    CHECK(pac.e_total);
}

TEST_CASE("the embedding preserves existing colimits and limits") {
    MacNeilleResult mn = macneille(fixtures::two_antichain());
    CHECK(preserves_colimits(mn.embedding).value);
    CHECK(preserves_colimits(opposite_qfunctor(mn.embedding)).value);
}

TEST_CASE("density of functors") {
    QCategory ac = fixtures::two_antichain();
    CHECK(is_dense(identity_qfunctor(ac)).value);
    CHECK(is_codense(identity_qfunctor(ac)).value);

    MacNeilleResult mn = macneille(ac);
    CHECK(is_dense(mn.embedding).value);
    CHECK(is_codense(mn.embedding).value);

    // constant functor misses the other object
    QCategory point = fixtures::chain(1);
    QFunctor constant;
    constant.dom = point;
    constant.cod = ac;
    constant.object_map = {{"0", "a"}};
    REQUIRE(validate_qfunctor(constant).ok());
    DensityResult d = is_dense(constant);
    CHECK_FALSE(d.value);
    CHECK(d.counterexample == "b");
}

TEST_CASE("cut-cocontinuity") {
    QCategory ch = fixtures::two_chain();
    CHECK(is_cut_cocontinuous(identity_qfunctor(ch)).value);

    // a left adjoint between fixtures: the sup functor P(E_CH) → E_CH
    PresheafCat pe = presheaf_category(ch);
    QFunctor sup = *left_adjoint(pe.yoneda).functor;
    CHECK(is_cut_cocontinuous(sup).value);

    // on a total domain: left adjoint ⇔ cut-cocontinuous ⇔ preserves colimits
    for (const auto& map :
         std::vector<std::map<std::string, std::string>>{{{"0", "0"}, {"1", "1"}},
                                                         {{"0", "0"}, {"1", "0"}},
                                                         {{"0", "1"}, {"1", "1"}}}) {
        QFunctor f;
        f.dom = ch;
        f.cod = ch;
        f.object_map = map;
        REQUIRE(validate_qfunctor(f).ok());
        bool adj = right_adjoint(f).functor.has_value();
        bool ccc = is_cut_cocontinuous(f).value;
        bool pres = preserves_colimits(f).value;
        CHECK(adj == ccc);
        CHECK(ccc == pres);
    }
}

TEST_CASE("left adjoints are cut-cocontinuous on random instances") {
    std::size_t found = 0;
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        GenConfig cfg;
        cfg.seed = seed + 1500;
        cfg.max_fiber_objects = 3;
        QCategory e = gen_qcategory(cfg, gen_fin_category(cfg));
        if (all_presheaves(e).size() > 64) continue;  // keep P E materializable
        PresheafCat pe = presheaf_category(e);
        AdjointResult l = left_adjoint(pe.yoneda);
        if (!l.functor) continue;
        CHECK(is_cut_cocontinuous(*l.functor).value);
        ++found;
    }
    CHECK(found > 0);
}

TEST_CASE("extension along the completion") {
    QCategory ac = fixtures::two_antichain();
    MacNeilleResult mn = macneille(ac);

    // J itself extends to the identity
    SharpResult js = sharp(mn.embedding);
    CHECK(js.restricts_to_f);
    CHECK(js.left_adjoint_certified);
    for (const auto& o : mn.completion.objects)
        CHECK(objects_isomorphic(mn.completion, js.functor.apply(o.id), o.id));

    // Yoneda extends to the inclusion of the cuts into the presheaves
    PresheafCat pe = presheaf_category(ac);
    SharpResult ys = sharp(pe.yoneda);
    CHECK(ys.restricts_to_f);
    CHECK(ys.left_adjoint_certified);
    for (std::size_t i = 0; i < mn.cuts.size(); ++i)
        CHECK(ys.functor.apply(mn.completion.objects[i].id) ==
              pe.id_of(mn.cuts[i]));

    // embedding the chain into a longer chain computes sups of cut images
    QFunctor f;
    f.dom = fixtures::two_chain();
    f.cod = fixtures::chain(3);
    f.object_map = {{"0", "0"}, {"1", "2"}};
    REQUIRE(validate_qfunctor(f).ok());
    REQUIRE(is_cut_cocontinuous(f).value);
    SharpResult fs = sharp(f);
    CHECK(fs.restricts_to_f);
    CHECK(fs.left_adjoint_certified);
    MacNeilleResult rch = macneille(fixtures::two_chain());
    CHECK(fs.functor.apply(presheaf_id(rch.cuts[0])) == "0");
    CHECK(fs.functor.apply(presheaf_id(rch.cuts[1])) == "2");
}

TEST_CASE("the completion is a bireflection onto the total instances") {
    // cut-cocontinuous functors into a total codomain extend along J, the
    // extension restricts back to the original, extending a restriction
    // recovers the original, and restriction respects the transformation
    // order in both directions
    QCategory ch = fixtures::two_chain();
    QCategory three = fixtures::chain(3);
    MacNeilleResult rc = macneille(ch);

    std::vector<QFunctor> ccc;
    std::vector<std::vector<std::string>> maps{{"0", "0"}, {"0", "1"}, {"0", "2"},
                                               {"1", "1"}, {"1", "2"}, {"2", "2"}};
    for (const auto& m : maps) {
        QFunctor f;
        f.dom = ch;
        f.cod = three;
        f.object_map = {{"0", m[0]}, {"1", m[1]}};
        if (validate_qfunctor(f).ok() && is_cut_cocontinuous(f).value)
            ccc.push_back(f);
    }
    REQUIRE(ccc.size() >= 3);

    std::vector<QFunctor> sharps;
    for (const auto& f : ccc) {
        SharpResult s = sharp(f);
        CHECK(s.restricts_to_f);  // F♯ ∘ J ≅ F
        CHECK(s.left_adjoint_certified);
        sharps.push_back(s.functor);
    }

    // (G ∘ J)♯ ≅ G for cocontinuous G out of the completion
    for (const auto& g : sharps) {
        QFunctor gj = compose_qfunctors(g, rc.embedding);
        SharpResult again = sharp(gj);
        for (const auto& o : rc.completion.objects)
            CHECK(objects_isomorphic(three, again.functor.apply(o.id), g.apply(o.id)));
    }

    // restriction along J is an equivalence of transformation preorders
    for (std::size_t i = 0; i < ccc.size(); ++i)
        for (std::size_t j = 0; j < ccc.size(); ++j)
            CHECK(qtransformation_leq(sharps[i], sharps[j]) ==
                  qtransformation_leq(ccc[i], ccc[j]));
}

TEST_CASE("fixpoints of the identity adjunction are everything") {
    QCategory ac = fixtures::two_antichain();
    Adjunction ident{identity_qfunctor(ac), identity_qfunctor(ac)};
    FixResult r = fix_category(ident);
    CHECK(r.checks.ok());
    CHECK(r.objects.size() == ac.objects.size());
    CHECK(r.fixed == ac);
}

TEST_CASE("fixpoints of the Isbell adjunction are the MacNeille completion") {
    for (const QCategory& e : {fixtures::two_antichain(), fixtures::two_chain(),
                               fixtures::one_object_over_arrow()}) {
        Adjunction isbell = isbell_adjunction(e);
        FixResult r = fix_category(isbell);
        CHECK(r.checks.ok());
        MacNeilleResult mn = macneille(e);
        std::vector<std::string> cut_ids;
        for (const auto& o : mn.completion.objects) cut_ids.push_back(o.id);
        CHECK(r.objects == cut_ids);
        CHECK(r.fixed == mn.completion);
    }
}

TEST_CASE("an uncertified adjunction is rejected") {
    QCategory ch = fixtures::two_chain();
    QFunctor top;
    top.dom = ch;
    top.cod = ch;
    top.object_map = {{"0", "1"}, {"1", "1"}};
    Adjunction bad{top, identity_qfunctor(ch)};
    CHECK_THROWS_AS(fix_category(bad), data_error);
}

TEST_CASE("the completion is the limit-closure of the representables") {
    for (const QCategory& e : {fixtures::two_antichain(), fixtures::two_chain(),
                               fixtures::one_object_over_arrow()}) {
        PresheafCat pe = presheaf_category(e);
        std::set<std::string> closure;
        for (const auto& x : e.objects)
            closure.insert(pe.yoneda.object_map.at(x.id));
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<std::string> cur(closure.begin(), closure.end());
            QFunctor incl;
            incl.dom = full_subcategory(pe.cat, cur);
            incl.cod = pe.cat;
            for (const auto& id : cur) incl.object_map[id] = id;
            for (const auto& psi : all_copresheaves(incl.dom))
                for (const auto& w : weighted_limit(psi, incl))
                    if (closure.insert(w.object).second) grew = true;
        }
        std::set<std::string> cuts;
        for (const auto& o : macneille(e).completion.objects) cuts.insert(o.id);
        CHECK(closure == cuts);
    }
}

TEST_CASE("the completion is self-dual") {
    std::vector<QCategory> cases{fixtures::two_antichain(), fixtures::two_chain(),
                                 fixtures::one_object_over_arrow()};
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        GenConfig cfg;
        cfg.seed = seed + 2600;
        cfg.max_fiber_objects = 3;
        QCategory e = gen_qcategory(cfg, gen_fin_category(cfg));
        if (all_presheaves(e).size() <= 400) cases.push_back(e);
    }
    for (const auto& e : cases) {
        MacNeilleResult mn = macneille(e);
        MacNeilleResult mnop = macneille(opposite_qcategory(e));

        // ↑ maps the cuts of E bijectively onto the cuts of E^op, reversing
        // the homs
        std::set<Presheaf> op_cuts(mnop.cuts.begin(), mnop.cuts.end());
        std::set<Presheaf> image;
        for (const auto& c : mn.cuts)
            image.insert(dense_presheaf(opposite_qcategory(e),
                                        as_presheaf_over_op(isbell_up(e, c))));
        CHECK(image == op_cuts);
        for (std::size_t i = 0; i < mn.cuts.size(); ++i)
            for (std::size_t j = 0; j < mn.cuts.size(); ++j) {
                QHom fwd = presheaf_hom(e, mn.cuts[i], mn.cuts[j]);
                QHom rev = presheaf_hom(
                    opposite_qcategory(e),
                    dense_presheaf(opposite_qcategory(e),
                                   as_presheaf_over_op(isbell_up(e, mn.cuts[j]))),
                    dense_presheaf(opposite_qcategory(e),
                                   as_presheaf_over_op(isbell_up(e, mn.cuts[i]))));
                CHECK(fwd.elems == rev.elems);
            }
    }
}
