#pragma once

// Categories enriched in the free quantaloid on a base category, their
// functors, and the translation to and from faithful-functor presentations.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qb/qhom.hpp"

namespace qb {

struct QObject {
    std::string id;
    std::string extent;  // object of the base
    auto operator<=>(const QObject&) const = default;
};

// An enriched category over `base`: extent-typed objects with hom-subsets
// homs(x,y) ⊆ B(|x|, |y|). The homs map stores only nonempty entries; the
// accessor synthesizes correctly-typed empty homs for the rest. Values are
// immutable after validation and safe to share across threads.
struct QCategory {
    FinCategory base;
    std::vector<QObject> objects;
    std::map<std::pair<std::string, std::string>, QHom> homs;

    bool has_object(const std::string& id) const;
    const std::string& extent_of(const std::string& id) const;  // throws data_error
    QHom hom(const std::string& x, const std::string& y) const;
    // Drops empty homs so equality and serialization stay canonical.
    void set_hom(const std::string& x, const std::string& y, QHom h);

    auto operator<=>(const QCategory&) const = default;
};

// Extent-preserving object map with hom inclusion, carrying copies of its
// endpoints so values are self-contained.
struct QFunctor {
    QCategory dom;
    QCategory cod;
    std::map<std::string, std::string> object_map;

    const std::string& apply(const std::string& x) const;  // throws data_error
    auto operator<=>(const QFunctor&) const = default;
};

// An ordinary category E with a functor into B, given by object and
// morphism maps. Exists for ingestion and export; the QCategory form is
// the canonical internal representation.
struct FunctorPresentation {
    FinCategory total;  // E
    FinCategory base;   // B
    std::map<std::string, std::string> object_map;    // ob E -> ob B
    std::map<std::string, std::string> morphism_map;  // mor E -> mor B
};

// Identity and composition law violations, with witnesses.
ValidationReport validate_qcategory(const QCategory& e);

// Functoriality and faithfulness, with witnesses.
ValidationReport validate_presentation(const FunctorPresentation& p);

// Image form of a faithful functor; throws data_error (with the witness
// pair) when p is not faithful or otherwise invalid.
QCategory from_presentation(const FunctorPresentation& p);

// Inverse direction: total-category morphisms x→y are named "x|y|m" for the
// base morphism m, so the output is deterministic and
// from_presentation(to_presentation(e)) == e.
FunctorPresentation to_presentation(const QCategory& e);

// Base replaced by its opposite; homs(x,y) becomes original homs(y,x) with
// src/dst swapped.
QCategory opposite_qcategory(const QCategory& e);

ValidationReport validate_qfunctor(const QFunctor& f);

// There is at most one transformation F → G; it exists exactly when the
// identity of |x| lies in cod(Fx, Gx) for every x. Throws type_error when
// F and G do not share dom and cod.
bool qtransformation_leq(const QFunctor& f, const QFunctor& g);

QFunctor identity_qfunctor(const QCategory& e);
// Same object map between the opposite categories.
QFunctor opposite_qfunctor(const QFunctor& f);
// F then G; requires cod(F) == dom(G).
QFunctor compose_qfunctors(const QFunctor& g, const QFunctor& f);

// Full subcategory on the given object ids (order preserved).
QCategory full_subcategory(const QCategory& e, const std::vector<std::string>& ids);

// id ∈ E(x,y) and id ∈ E(y,x).
bool objects_isomorphic(const QCategory& e, const std::string& x, const std::string& y);

// E(x,y) == cod(Fx,Fy) for all x,y (not just inclusion).
bool fully_faithful(const QFunctor& f);
// Every object of cod is isomorphic to some value of F.
bool essentially_surjective(const QFunctor& f);
bool is_equivalence(const QFunctor& f);

}  // namespace qb
