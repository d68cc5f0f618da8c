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

Copresheaf upset(const QCategory& e, const std::set<std::string>& members) {
    Copresheaf p;
    p.extent = e.base.objects.front();
    for (const auto& o : e.objects)
        p.components[o.id] = members.count(o.id) ? q_id(e.base, p.extent)
                                                 : q_empty(p.extent, o.extent);
    return p;
}

LiftingProblem final_problem(const std::string& apex, std::vector<Leg> legs) {
    return LiftingProblem{LiftKind::Final, apex, std::move(legs)};
}

LiftingProblem initial_problem(const std::string& apex, std::vector<Leg> legs) {
    return LiftingProblem{LiftKind::Initial, apex, std::move(legs)};
}

}  // namespace

TEST_CASE("generated sieves") {
    QCategory ac = fixtures::two_antichain();
    Presheaf none = generated_sieve(ac, final_problem("*", {}));
    CHECK(oracles::carrier(none).empty());

    Presheaf both = generated_sieve(ac, final_problem("*", {{"a", "id"}, {"b", "id"}}));
    CHECK(oracles::carrier(both) == std::set<std::string>{"a", "b"});

    // the legs of a representable regenerate it
    for (const QCategory& e : {fixtures::two_chain(), fixtures::one_object_over_arrow()})
        for (const auto& x : e.objects) {
            Presheaf y = yoneda_at(e, x.id);
            LiftingProblem p = final_problem(y.extent, {});
            for (const auto& [obj, h] : y.components)
                for (const auto& g : h.elems) p.legs.push_back({obj, g});
            CHECK(generated_sieve(e, p) == y);
        }
}

TEST_CASE("final liftings compute joins in the chain") {
    QCategory ch = fixtures::two_chain();
    CHECK(final_lifting(ch, final_problem("*", {{"0", "id"}, {"1", "id"}})) ==
          std::vector<std::string>{"1"});
    CHECK(final_lifting(ch, final_problem("*", {})) == std::vector<std::string>{"0"});

    QCategory ac = fixtures::two_antichain();
    CHECK(final_lifting(ac, final_problem("*", {{"a", "id"}, {"b", "id"}})).empty());
}

TEST_CASE("initial liftings compute meets through the opposite") {
    QCategory ch = fixtures::two_chain();
    CHECK(initial_lifting(ch, initial_problem("*", {{"0", "id"}, {"1", "id"}})) ==
          std::vector<std::string>{"0"});
    CHECK(initial_lifting(ch, initial_problem("*", {})) == std::vector<std::string>{"1"});

    QCategory ac = fixtures::two_antichain();
    CHECK(initial_lifting(ac, initial_problem("*", {{"a", "id"}})) ==
          std::vector<std::string>{"a"});
}

TEST_CASE("problem validation") {
    QCategory ex = fixtures::one_object_over_arrow();
    CHECK(validate_problem(ex, final_problem("Y", {{"e", "f"}})).ok());
    CHECK_FALSE(validate_problem(ex, final_problem("X", {{"e", "f"}})).ok());
    CHECK_FALSE(validate_problem(ex, initial_problem("Y", {{"e", "f"}})).ok());
    CHECK_FALSE(validate_problem(ex, final_problem("Z", {})).ok());
}

TEST_CASE("topologicity of the fixtures") {
    CHECK(is_topological(fixtures::two_chain()).value);

    TopologicalResult ex = is_topological(fixtures::one_object_over_arrow());
    CHECK_FALSE(ex.value);
    REQUIRE(ex.counterexample.has_value());
    // every sieve at extent Y fails (no object over Y); the least is the
    // empty one, and the sieve (e:{f}) fails as well
    CHECK(ex.counterexample->extent == "Y");
    QCategory exq = fixtures::one_object_over_arrow();
    Presheaf named;
    named.extent = "Y";
    named.components["e"] = make_qhom(exq.base, "X", "Y", {"f"});
    LiftingProblem p = final_problem("Y", {{"e", "f"}});
    CHECK(final_lifting(exq, p).empty());

    // the presheaf category of a non-topological instance is topological
    CHECK(is_topological(presheaf_category(fixtures::one_object_over_arrow()).cat).value);
}

TEST_CASE("Isbell adjunction on the antichain") {
    QCategory ac = fixtures::two_antichain();
    Copresheaf up_a = isbell_up(ac, downset(ac, {"a"}));
    CHECK(oracles::carrier(up_a) == std::set<std::string>{"a"});
    CHECK(oracles::carrier(isbell_down(ac, up_a)) == std::set<std::string>{"a"});

    Copresheaf up_ab = isbell_up(ac, downset(ac, {"a", "b"}));
    CHECK(oracles::carrier(up_ab).empty());
    CHECK(oracles::carrier(isbell_down(ac, upset(ac, {}))) ==
          std::set<std::string>{"a", "b"});
}

TEST_CASE("Isbell adjunction on the chain: bounds of the empty family") {
    QCategory ch = fixtures::two_chain();
    Copresheaf up_none = isbell_up(ch, downset(ch, {}));
    CHECK(oracles::carrier(up_none) == std::set<std::string>{"0", "1"});
    // lower bounds of everything form the principal downset of the bottom
    Presheaf down_up_none = isbell_down(ch, up_none);
    CHECK(oracles::carrier(down_up_none) == std::set<std::string>{"0"});
}

TEST_CASE("Isbell formulas match the order-theoretic bounds on preorders") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        GenConfig cfg;
        cfg.seed = seed;
        cfg.max_base_objects = 1;
        QCategory e = gen_qcategory(cfg, fixtures::terminal_category());
        for (int rep = 0; rep < 5; ++rep) {
            Presheaf phi = gen_presheaf(seed * 17 + rep, e);
            CHECK(oracles::carrier(isbell_up(e, phi)) ==
                  oracles::naive_upper(e, oracles::carrier(phi)));
            Copresheaf psi = gen_copresheaf(seed * 17 + rep, e);
            CHECK(oracles::carrier(isbell_down(e, psi)) ==
                  oracles::naive_lower(e, oracles::carrier(psi)));
        }
    }
}

TEST_CASE("Galois laws of the Isbell adjunction") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        GenConfig cfg;
        cfg.seed = seed + 300;
        QCategory e = gen_qcategory(cfg, gen_fin_category(cfg));
        for (int rep = 0; rep < 4; ++rep) {
            Presheaf phi = gen_presheaf(seed * 13 + rep, e);
            Copresheaf psi = gen_copresheaf(seed * 29 + rep, e);

            Copresheaf up = isbell_up(e, phi);
            Presheaf down = isbell_down(e, psi);
            CHECK(isbell_up(e, isbell_down(e, up)) == up);
            CHECK(isbell_down(e, isbell_up(e, down)) == down);

            if (phi.extent != psi.extent) continue;
            bool phi_le = true;
            for (const auto& [x, h] : phi.components)
                if (!qhom_leq(h, down.components.at(x))) phi_le = false;
            bool psi_le = true;
            for (const auto& [x, h] : psi.components)
                if (!qhom_leq(h, up.components.at(x))) psi_le = false;
            CHECK(phi_le == psi_le);

            // hom-level adjunction: P†E(↑φ, ψ) = P E(φ, ↓ψ)
            CHECK(copresheaf_hom(e, up, psi) == presheaf_hom(e, phi, down));
        }
    }
}

TEST_CASE("dual-route lifting on the fixtures") {
    QCategory ch = fixtures::two_chain();
    CHECK(lifting_by_duality(ch, final_problem("*", {{"0", "id"}})) ==
          std::vector<std::string>{"0"});
    CHECK(lifting_by_duality(ch, initial_problem("*", {{"1", "id"}})) ==
          std::vector<std::string>{"1"});

    QCategory ac = fixtures::two_antichain();
    CHECK(lifting_by_duality(ac, final_problem("*", {{"a", "id"}, {"b", "id"}})).empty());
}

TEST_CASE("dual-route lifting agrees with the direct routes on random problems") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        GenConfig cfg;
        cfg.seed = seed + 2200;
        QCategory e = gen_qcategory(cfg, gen_fin_category(cfg));
        LiftingProblem fp = gen_lifting_problem(seed, e, LiftKind::Final);
        CHECK(lifting_by_duality(e, fp) == final_lifting(e, fp));
        LiftingProblem ip = gen_lifting_problem(seed + 1, e, LiftKind::Initial);
        CHECK(lifting_by_duality(e, ip) == initial_lifting(e, ip));
    }
}

TEST_CASE("lifting a family equals lifting its generated sieve") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        GenConfig cfg;
        cfg.seed = seed + 3300;
        QCategory e = gen_qcategory(cfg, gen_fin_category(cfg));
        LiftingProblem fp = gen_lifting_problem(seed, e, LiftKind::Final);
        Presheaf sieve = generated_sieve(e, fp);
        LiftingProblem sp = final_problem(fp.apex, {});
        for (const auto& [x, h] : sieve.components)
            for (const auto& g : h.elems) sp.legs.push_back({x, g});
        CHECK(final_lifting(e, fp) == final_lifting(e, sp));
    }
}

TEST_CASE("topologicity is self-dual") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        GenConfig cfg;
        cfg.seed = seed + 4400;
        QCategory e = gen_qcategory(cfg, gen_fin_category(cfg));
        CHECK(is_topological(e).value == is_topological(opposite_qcategory(e)).value);
    }
}

TEST_CASE("main theorem on the fixtures") {
    MainTheoremReport ch = main_theorem_check(fixtures::two_chain());
    CHECK(ch.agree());
    CHECK(ch.verdict());

    MainTheoremReport ac = main_theorem_check(fixtures::two_antichain());
    CHECK(ac.agree());
    CHECK_FALSE(ac.verdict());
    CHECK(ac.counterexample.has_value());

    MainTheoremReport ex = main_theorem_check(fixtures::one_object_over_arrow());
    CHECK(ex.agree());
    CHECK_FALSE(ex.verdict());
}
