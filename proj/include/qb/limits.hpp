#pragma once

// Weighted colimits and limits by exhaustive witness search, totality and
// cototality decisions, adjoints with certificates, and colimit
// preservation.

#include <optional>
#include <utility>

#include "qb/presheaf.hpp"

namespace qb {

// Singular presheaf D(F, c): components x ↦ cod(Fx, c), extent |c|.
Presheaf singular(const QFunctor& f, const std::string& c);
// Dual singular copresheaf D(c, F): components x ↦ cod(c, Fx).
Copresheaf cosingular(const QFunctor& f, const std::string& c);

// A colimit (or limit) witness together with the verified hom equality per
// test object; the certificate makes results self-validating.
struct ColimitWitness {
    std::string object;
    std::vector<std::pair<std::string, QHom>> certificate;
};

// All objects v with extent |φ| such that cod(v, c) = P I(φ, cod(F, c)) for
// every c; empty means the colimit does not exist. Witnesses are ordered by
// object id; the canonical witness is the first.
std::vector<ColimitWitness> weighted_colimit(const Presheaf& phi, const QFunctor& f);
// Dual: cod(c, v) = P†I(cod(c, F), ψ) for every c.
std::vector<ColimitWitness> weighted_limit(const Copresheaf& psi, const QFunctor& f);

struct TotalityResult {
    bool value = false;
    std::optional<Presheaf> counterexample;  // least presheaf lacking a colimit
    // (presheaf id, canonical witness object) per presheaf, canonical order.
    std::vector<std::pair<std::string, std::string>> witnesses;
    std::size_t presheaf_count = 0;
};

// Every presheaf admits a weighted colimit along the identity.
TotalityResult is_total(const QCategory& e, std::size_t cap = kDefaultPresheafCap);

struct CototalityResult {
    bool value = false;
    std::optional<Copresheaf> counterexample;
    std::vector<std::pair<std::string, std::string>> witnesses;
    std::size_t copresheaf_count = 0;
};

// Decided through the opposite category: E is cototal exactly when E^op is
// total over the opposite base.
CototalityResult is_cototal(const QCategory& e, std::size_t cap = kDefaultPresheafCap);

enum class AdjointSource { formula, search };

struct AdjointResult {
    std::optional<QFunctor> functor;
    AdjointSource source = AdjointSource::formula;
    // When no adjoint exists: an object at which every candidate fails.
    std::string counterexample;
};

// Right adjoint of F, tried first through Gd = cod(F, d) ⋆ 1_dom and, when
// that candidate fails certification, through exhaustive per-object
// representability search. Returned adjoints are always certified.
AdjointResult right_adjoint(const QFunctor& f);
AdjointResult left_adjoint(const QFunctor& f);

// Full adjunction certificate for F ⊣ G: hom equality cod(Fc, d) =
// dom(c, Gd) everywhere plus unit and counit memberships.
ValidationReport verify_adjunction(const QFunctor& f, const QFunctor& g);

struct PreservationResult {
    bool value = false;
    std::optional<Presheaf> weight;  // a colimit F fails to preserve
    std::string witness;             // its witness in dom
    std::size_t checked = 0;         // (weight, witness) pairs verified
};

// For every presheaf on dom and every witness of its colimit along the
// identity, the image is a witness of the corresponding colimit along F.
PreservationResult preserves_colimits(const QFunctor& f,
                                      std::size_t cap = kDefaultPresheafCap);

// Totality of P E, decided without materializing P E's hom table as a
// value (the table is still computed internally).
TotalityResult presheaf_category_is_total(const QCategory& e,
                                          std::size_t cap = kDefaultPresheafCap);

struct MuCertificate {
    bool ok = false;
    std::size_t outer_count = 0;  // presheaves on P E checked
    std::string detail;
};

// Certifies that mu is left adjoint to the Yoneda embedding of P E:
// P E(mu Φ, φ) = P P E(Φ, Y φ) for every Φ ∈ P P E and φ ∈ P E.
MuCertificate certify_mu_adjunction(const QCategory& e,
                                    std::size_t cap = kDefaultPresheafCap);

}  // namespace qb
