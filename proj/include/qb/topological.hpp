#pragma once

// Final and initial liftings, topologicity via sieves, generated sieves,
// the Isbell adjunction in elementwise form, dual-route lifting, and the
// four-way main-theorem cross-check.

#include "qb/limits.hpp"

namespace qb {

enum class LiftKind { Final, Initial };

struct Leg {
    std::string object;    // x in E
    std::string morphism;  // g in B; g : |x| → apex (final), apex → |x| (initial)
    auto operator<=>(const Leg&) const = default;
};

struct LiftingProblem {
    LiftKind kind = LiftKind::Final;
    std::string apex;  // z in B
    std::vector<Leg> legs;
};

ValidationReport validate_problem(const QCategory& e, const LiftingProblem& p);

// φ(x) = { f : |x| → z | f = g_i ∘ k for some leg i and k ∈ E(x, x_i) }.
// Closure is asserted, not assumed.
Presheaf generated_sieve(const QCategory& e, const LiftingProblem& p);
// Dual family for initial problems.
Copresheaf generated_cosieve(const QCategory& e, const LiftingProblem& p);

// All objects v with extent z such that for every e and θ ∈ B(z, |e|):
// θ ∈ E(v, e) iff θ∘g_i ∈ E(x_i, e) for every leg. Ordered by object id;
// empty means no final lifting exists.
std::vector<std::string> final_lifting(const QCategory& e, const LiftingProblem& p);
// Computed as a final lifting in the opposite category.
std::vector<std::string> initial_lifting(const QCategory& e, const LiftingProblem& p);

struct TopologicalResult {
    bool value = false;
    std::optional<Presheaf> counterexample;  // least sieve without a lifting
    std::vector<std::pair<std::string, std::string>> witnesses;
    std::size_t sieve_count = 0;
};

// Final liftings of all sieves; the generated-sieve reduction makes this
// equivalent to lifting arbitrary leg families.
TopologicalResult is_topological(const QCategory& e,
                                 std::size_t cap = kDefaultPresheafCap);

// ↑φ = {g : z → |x| | g∘h lifts for every h ∈ φ(y)}; cross-checked against
// the singular-functor formula P E(φ, Y−). A mismatch raises logic_error.
Copresheaf isbell_up(const QCategory& e, const Presheaf& phi);
// ↓ψ = {h : |y| → z | g∘h lifts for every g ∈ ψ(x)}; cross-checked against
// P†E(Y†−, ψ).
Presheaf isbell_down(const QCategory& e, const Copresheaf& psi);

// Final problems solved as the initial lifting of ↑(generated sieve);
// initial problems as the final lifting of ↓(generated cosieve). The result
// is asserted equal to the direct computation.
std::vector<std::string> lifting_by_duality(const QCategory& e,
                                            const LiftingProblem& p);

struct MainTheoremReport {
    bool families_lift = false;       // (i) minimal generating leg families
    bool topological = false;         // (ii) sieve liftings
    bool yoneda_left_adjoint = false; // (iii) adjoint to E → P E
    bool total = false;               // (iv) colimit witnesses
    std::size_t sieve_count = 0;
    std::optional<Presheaf> counterexample;  // first failing sieve, if any

    bool agree() const {
        return families_lift == topological && topological == yoneda_left_adjoint &&
               yoneda_left_adjoint == total;
    }
    bool verdict() const { return families_lift; }
    std::string to_string() const;
};

// Evaluates the four predicates by distinct routes and reports them; a
// disagreement is an implementation bug, never a result.
MainTheoremReport main_theorem_check(const QCategory& e,
                                     std::size_t cap = kDefaultPresheafCap);

}  // namespace qb
