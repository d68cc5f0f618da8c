#pragma once

// Presheaves (sieves) and copresheaves (cosieves) on an enriched category;
// the presheaf and copresheaf categories with their Yoneda embeddings; the
// multiplication mu; and restriction/extension along functors.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qb/qcat.hpp"

namespace qb {

// Hard cap on enumerated presheaves per category. Enumerations never
// silently truncate: exceeding the cap raises cap_exceeded.
inline constexpr std::size_t kDefaultPresheafCap = 20000;

// A family φ(x) : |x| ⇸ extent closed under precomposition:
// φ(y) ∘ E(x,y) ≤ φ(x). Components are kept dense (one entry per object,
// possibly empty); serialization omits the empty ones. Canonical order on
// presheaves is the field order below: (extent, components), both
// lexicographic.
struct Presheaf {
    std::string extent;
    std::map<std::string, QHom> components;
    auto operator<=>(const Presheaf&) const = default;
};

// The dual family ψ(x) : extent ⇸ |x| with E(x,y) ∘ ψ(x) ≤ ψ(y).
struct Copresheaf {
    std::string extent;
    std::map<std::string, QHom> components;
    auto operator<=>(const Copresheaf&) const = default;
};

ValidationReport validate_presheaf(const QCategory& e, const Presheaf& p);
ValidationReport validate_copresheaf(const QCategory& e, const Copresheaf& p);

// Fill in missing components as typed empty homs.
Presheaf dense_presheaf(const QCategory& e, Presheaf p);
Copresheaf dense_copresheaf(const QCategory& e, Copresheaf p);

// Representables: Y x = E(-, x) and Y† x = E(x, -).
Presheaf yoneda_at(const QCategory& e, const std::string& x);
Copresheaf coyoneda_at(const QCategory& e, const std::string& x);

// A cosieve on E is exactly a sieve on E^op and vice versa.
Presheaf as_presheaf_over_op(const Copresheaf& p);
Copresheaf as_copresheaf_from_op(const Presheaf& p);

// Stable content-derived ids used for the objects of presheaf categories
// ("p" + 16 hex digits; "c" + 16 for cosieves), so re-runs agree.
std::string presheaf_id(const Presheaf& p);
std::string copresheaf_id(const Copresheaf& p);

// All presheaves at extent z, each exactly once, in canonical order.
std::vector<Presheaf> enumerate_presheaves(const QCategory& e, const std::string& z,
                                           std::size_t cap = kDefaultPresheafCap);
// All presheaves over all extents, canonical order, cap counted jointly.
std::vector<Presheaf> all_presheaves(const QCategory& e,
                                     std::size_t cap = kDefaultPresheafCap);
std::vector<Copresheaf> all_copresheaves(const QCategory& e,
                                         std::size_t cap = kDefaultPresheafCap);

// P E(a, b) = ⋀_x [a(x), b(x)]; the empty meet is the full base hom.
QHom presheaf_hom(const QCategory& e, const Presheaf& a, const Presheaf& b);
// P†E(a, b) = ⋀_x {b(x), a(x)} (note the reversal).
QHom copresheaf_hom(const QCategory& e, const Copresheaf& a, const Copresheaf& b);

// P E materialized as an enriched category over the same base, together
// with its Yoneda embedding and the presheaf list aligned with cat.objects.
struct PresheafCat {
    QCategory cat;
    QFunctor yoneda;  // E → cat
    std::vector<Presheaf> objects;
    std::map<std::string, std::size_t> index;  // object id → position

    const Presheaf& at(const std::string& id) const;
    // Canonical id of a presheaf known to be in this category.
    std::string id_of(const Presheaf& p) const;
};

struct CopresheafCat {
    QCategory cat;
    QFunctor coyoneda;  // E → cat
    std::vector<Copresheaf> objects;
    std::map<std::string, std::size_t> index;

    const Copresheaf& at(const std::string& id) const;
    std::string id_of(const Copresheaf& p) const;
};

PresheafCat presheaf_category(const QCategory& e,
                              std::size_t cap = kDefaultPresheafCap);

// Constructed as (P(E^op))^op and verified against the direct hom formula;
// a mismatch is a bug and raises logic_error.
CopresheafCat copresheaf_category(const QCategory& e,
                                  std::size_t cap = kDefaultPresheafCap);

// mu(Φ)(x) = ⋁_{φ ∈ P E} Φ(φ) ∘ φ(x), the left adjoint of P E's Yoneda
// embedding evaluated at Φ ∈ P P E.
Presheaf mu(const QCategory& e, const PresheafCat& pe, const Presheaf& big);

// (F* φ)(x) = φ(Fx) for φ over cod(F).
Presheaf restrict_presheaf(const QFunctor& f, const Presheaf& phi);
// (F_! ψ)(c) = ⋁_x ψ(x) ∘ cod(c, Fx) for ψ over dom(F).
Presheaf left_extend(const QFunctor& f, const Presheaf& psi);

}  // namespace qb
