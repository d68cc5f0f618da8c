#pragma once

// Internal computation engine. Public API types keep string ids and sorted
// vectors; enumeration and search loops intern everything into dense
// indices and single-word bitsets over the base's morphism universe (at
// most 64 base morphisms — far beyond what the enumerations can digest
// anyway). Not installed.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "qb/presheaf.hpp"

namespace qb::detail {

using Bits = std::uint64_t;

inline bool bit_test(Bits w, int i) { return (w >> i) & 1u; }
inline Bits bit(int i) { return Bits(1) << i; }
inline bool subset_of(Bits a, Bits b) { return (a & ~b) == 0; }

template <class F>
inline void for_each_bit(Bits w, F f) {
    while (w) {
        f(static_cast<int>(__builtin_ctzll(w)));
        w &= w - 1;
    }
}

// Interned view of a finite base category.
struct BaseCtx {
    std::vector<std::string> mors;
    std::unordered_map<std::string, int> mor_idx;
    std::vector<std::string> objs;
    std::unordered_map<std::string, int> obj_idx;
    std::vector<int> mor_src, mor_dst;
    std::vector<std::vector<int>> comp;  // comp[g][f] = g∘f, -1 if undefined
    std::vector<int> ident;              // identity morphism per object
    std::vector<Bits> homm;              // homm[src * nobj + dst]

    explicit BaseCtx(const FinCategory& base);

    std::size_t nmor() const { return mors.size(); }
    int nobj() const { return static_cast<int>(objs.size()); }
    Bits hom_mask(int x, int y) const { return homm[x * nobj() + y]; }

    Bits mask(const QHom& h) const;
    QHom unmask(int src, int dst, Bits bits) const;

    Bits compose(Bits v, Bits u) const;
    // [U, W] with U : x⇸y, W : x⇸z; candidates drawn from B(y, z).
    Bits left_residual(int y, int z, Bits u, Bits w) const;
    // {V, W} with V : y⇸z, W : x⇸z; candidates drawn from B(x, y).
    Bits right_residual(int x, int y, Bits v, Bits w) const;
};

// Engine-level enriched category: extents and hom masks only. Also used
// for presheaf categories built virtually (without materializing a
// QCategory value).
struct Cat {
    BaseCtx bc;
    std::vector<int> ext;
    std::vector<Bits> homv;  // homv[x * n + y]

    explicit Cat(BaseCtx base) : bc(std::move(base)) {}
    int n() const { return static_cast<int>(ext.size()); }
    Bits hom(int x, int y) const { return homv[x * ext.size() + y]; }
};

// Cat plus the id maps needed to convert to and from public values.
struct QCatCtx : Cat {
    std::vector<std::string> xs;
    std::unordered_map<std::string, int> xidx;

    explicit QCatCtx(const QCategory& cat);
    int index_of(const std::string& id) const;
};

// A presheaf or copresheaf in mask form: comp[i] ⊆ B(ext[i], z) for
// sieves, comp[i] ⊆ B(z, ext[i]) for cosieves.
struct MaskFam {
    int z = -1;
    std::vector<Bits> comp;
    bool operator==(const MaskFam&) const = default;
};

MaskFam sieve_to_mask(const QCatCtx& cx, const Presheaf& p);
Presheaf sieve_from_mask(const QCatCtx& cx, const MaskFam& m);
MaskFam cosieve_to_mask(const QCatCtx& cx, const Copresheaf& p);
Copresheaf cosieve_from_mask(const QCatCtx& cx, const MaskFam& m);

bool sieve_closed(const Cat& cx, const MaskFam& m);
bool cosieve_closed(const Cat& cx, const MaskFam& m);
// Least sieve/cosieve containing the family (fixpoint saturation).
void close_sieve(const Cat& cx, MaskFam& m);
void close_cosieve(const Cat& cx, MaskFam& m);

// All sieves at extent z. Order unspecified; callers sort the public
// values. `budget` bounds the number produced; throws cap_exceeded beyond
// it. Enumerates object-major with eagerly maintained lower/upper windows,
// so every partial choice explored extends to at least one sieve.
std::vector<MaskFam> enumerate_sieves(const Cat& cx, int z, std::size_t budget);

// P C(a, b) = ⋀_x [a(x), b(x)] as a mask over B(z_a, z_b).
Bits sieve_hom(const Cat& cx, const MaskFam& a, const MaskFam& b);
// P†C(a, b) = ⋀_x {b(x), a(x)} as a mask over B(z_a, z_b).
Bits cosieve_hom(const Cat& cx, const MaskFam& a, const MaskFam& b);

// Representables: Yx = C(-, x) and Y†x = C(x, -).
MaskFam yoneda_mask(const Cat& cx, int x);
MaskFam coyoneda_mask(const Cat& cx, int x);

// T(e) = ⋀_x [φ(x), C(x, e)]: the hom every colimit witness of φ along the
// identity must realize against e. One mask per object of C.
std::vector<Bits> colimit_targets(const Cat& cx, const MaskFam& sieve);
// Dual: T(e) = ⋀_x {ψ(x), C(e, x)}.
std::vector<Bits> limit_targets(const Cat& cx, const MaskFam& cosieve);

// Witnesses v (object indices, ascending) with extent z realizing the
// targets: C(v, e) == T(e) for all e (colimit form) or C(e, v) == T(e)
// (limit form).
std::vector<int> colimit_witnesses(const Cat& cx, int z,
                                   const std::vector<Bits>& targets);
std::vector<int> limit_witnesses(const Cat& cx, int z,
                                 const std::vector<Bits>& targets);

MaskFam isbell_up_mask(const Cat& cx, const MaskFam& sieve);
MaskFam isbell_down_mask(const Cat& cx, const MaskFam& cosieve);

// The presheaf category of cx as an engine-level Cat: objects are the
// given sieves (extents taken from them), homs by sieve_hom.
Cat sieve_cat(const Cat& cx, const std::vector<MaskFam>& sieves);

// Sieves at every extent, masks and public forms aligned, sorted in the
// canonical (extent, components) order.
struct SieveList {
    std::vector<MaskFam> masks;
    std::vector<Presheaf> sheaves;
};
SieveList sorted_sieves(const QCatCtx& cx, std::size_t cap);

// Least object id among witness indices.
std::string canonical_witness(const std::vector<std::string>& names,
                              const std::vector<int>& ws);

// Stable content hash used for canonical presheaf ids.
std::uint64_t fnv1a(const std::string& s);

}  // namespace qb::detail
