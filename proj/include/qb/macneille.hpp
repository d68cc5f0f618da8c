#pragma once

// MacNeille completion as Isbell-adjunction fixpoints, its characterizing
// properties, density, cut-cocontinuity, extension along the completion,
// and fixpoint categories of certified adjunctions.

#include "qb/topological.hpp"

namespace qb {

// φ = ↓↑φ, by exact data equality: presheaf fibers are posets, so equality
// and isomorphism coincide here.
bool is_cut(const QCategory& e, const Presheaf& phi);

struct MacNeilleResult {
    QCategory completion;  // full subcategory of P E on the cuts
    QFunctor embedding;    // J : E → completion, Jx = Yx
    std::vector<Presheaf> cuts;  // aligned with completion.objects
    std::map<std::string, std::size_t> index;
};

// Object ids reuse the canonical presheaf ids. That representables are cuts
// is asserted, not assumed.
MacNeilleResult macneille(const QCategory& e, std::size_t cap = kDefaultPresheafCap);

struct DensityResult {
    bool value = false;
    std::string counterexample;        // object violating the verdict
    bool singular_fully_faithful = false;  // cod(F,1) : cod → P dom fully faithful
    bool canonical_weights = false;        // each d is cod(F,d) ⋆ F
    bool some_weight = false;              // each d is φ ⋆ F for some φ
};

// Evaluates the three density characterizations independently and asserts
// their agreement (logic_error otherwise).
DensityResult is_dense(const QFunctor& f, std::size_t cap = kDefaultPresheafCap);
DensityResult is_codense(const QFunctor& f, std::size_t cap = kDefaultPresheafCap);

struct CutCocontinuityResult {
    bool value = false;
    std::optional<Presheaf> counterexample_cut;  // cut whose restriction is no cut
    std::string counterexample_object;  // object whose singular presheaf is no cut
};

// Both characterizations — F* mapping cuts to cuts, and the singular
// functor landing in the cuts — evaluated and asserted equal.
CutCocontinuityResult is_cut_cocontinuous(const QFunctor& f,
                                          std::size_t cap = kDefaultPresheafCap);

struct SharpResult {
    QFunctor functor;             // R dom → cod, φ ↦ φ ⋆ F
    bool restricts_to_f = false;  // functor ∘ J isomorphic to F objectwise
    bool left_adjoint_certified = false;
};

// Extension of a cut-cocontinuous F with total codomain along the
// completion; throws data_error when a required colimit is missing.
SharpResult sharp(const QFunctor& f, std::size_t cap = kDefaultPresheafCap);

struct Adjunction {
    QFunctor left;   // F : C → D
    QFunctor right;  // G : D → C
};

struct FixResult {
    QCategory fixed;  // full subcategory of C on objects X ≅ GFX
    std::vector<std::string> objects;
    ValidationReport checks;  // agreement with the image and pair forms,
                              // hom equalities, reflectivity certificate
};

// Fixpoint category of a certified adjunction (invalid certificates raise
// data_error), in the X ≅ GFX representation, cross-checked against the
// replete-image and pair representations.
FixResult fix_category(const Adjunction& adj);

// The Isbell adjunction ↑ ⊣ ↓ between the materialized presheaf and
// copresheaf categories.
Adjunction isbell_adjunction(const QCategory& e, std::size_t cap = kDefaultPresheafCap);

struct CompletionPropertiesReport {
    bool total = false;
    bool fully_faithful = false;
    bool dense = false;
    bool codense = false;
    bool preserves_colimits = false;
    bool preserves_limits = false;
    bool e_total = false;
    bool idempotent = true;  // J an equivalence whenever E is total
    std::size_t cut_count = 0;

    bool ok() const {
        return total && fully_faithful && dense && codense && preserves_colimits &&
               preserves_limits && idempotent;
    }
    std::string to_string() const;
};

CompletionPropertiesReport completion_properties(const QCategory& e,
                                                 std::size_t cap = kDefaultPresheafCap);

}  // namespace qb
