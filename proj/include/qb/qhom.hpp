#pragma once

// Hom-lattice algebra of the free quantaloid on a finite base category:
// typed sets of base morphisms with union-joins, elementwise composition
// and both residuals.

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "qb/fincat.hpp"

namespace qb {

// A hom X ⇸ Y: a subset of the base hom-set B(X,Y). The type (src, dst) is
// carried explicitly even when elems is empty, since the empty hom at one
// type differs from the empty hom at another. elems is kept sorted and
// duplicate-free; equality compares type and elements.
struct QHom {
    std::string src;
    std::string dst;
    std::vector<std::string> elems;

    bool contains(const std::string& m) const;
    bool empty() const { return elems.empty(); }
    auto operator<=>(const QHom&) const = default;
};

// Validating constructor: every element must lie in B(src, dst).
QHom make_qhom(const FinCategory& base, std::string src, std::string dst,
               std::vector<std::string> elems);

QHom q_empty(std::string src, std::string dst);
QHom q_id(const FinCategory& base, const std::string& x);
// The full hom-set B(x, y), i.e. the top of the hom-lattice.
QHom q_full(const FinCategory& base, const std::string& x, const std::string& y);

// Elementwise composition {v ∘ u | v ∈ V, u ∈ U}; requires dst(U) = src(V).
QHom q_compose(const FinCategory& base, const QHom& v, const QHom& u);

// Union and intersection of same-typed homs. The type is passed explicitly
// so the empty join (bottom) and empty meet (top) are well-defined.
QHom q_join(const std::string& src, const std::string& dst,
            std::span<const QHom> hs);
QHom q_meet(const FinCategory& base, const std::string& src,
            const std::string& dst, std::span<const QHom> hs);

// [U, W] = { v ∈ B(Y,Z) | vu ∈ W for all u ∈ U }   (U : X⇸Y, W : X⇸Z)
QHom left_residual(const FinCategory& base, const QHom& u, const QHom& w);
// {V, W} = { u ∈ B(X,Y) | vu ∈ W for all v ∈ V }   (V : Y⇸Z, W : X⇸Z)
QHom right_residual(const FinCategory& base, const QHom& v, const QHom& w);

// Subset inclusion; throws type_error when the types differ.
bool qhom_leq(const QHom& a, const QHom& b);

}  // namespace qb
