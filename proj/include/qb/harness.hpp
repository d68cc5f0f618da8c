#pragma once

// Seeded random instance generation and the conformance suite that replays
// the library's theorems against generated data, persisting any
// counterexample instance.

#include <cstdint>

#include "qb/macneille.hpp"

namespace qb {

struct GenConfig {
    std::uint64_t seed = 0;
    std::size_t max_base_objects = 3;
    std::size_t max_base_morphisms = 8;
    std::size_t max_fiber_objects = 4;
    std::size_t presheaf_cap = kDefaultPresheafCap;
};

// splitmix64; value sequences are stable across platforms.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next();
    std::size_t below(std::size_t n);  // uniform in [0, n); n must be > 0
    bool percent(unsigned p);          // true with probability p/100
};

// A valid finite category within the bounds, deterministic in the seed.
// Generated as the free category on a random graph, quotiented by labelling
// every edge with a function between small carriers and identifying
// morphisms with equal action; the result is re-validated and regenerated
// until it fits the bounds. Biased to the one-object base 30% of the time.
FinCategory gen_fin_category(const GenConfig& cfg);

// Random extents and hom-subsets, saturated to a least fixed point of the
// composition law, then validated.
QCategory gen_qcategory(const GenConfig& cfg, const FinCategory& base);

// Closure of a random family; always valid.
Presheaf gen_presheaf(std::uint64_t seed, const QCategory& e);
Copresheaf gen_copresheaf(std::uint64_t seed, const QCategory& e);
LiftingProblem gen_lifting_problem(std::uint64_t seed, const QCategory& e, LiftKind kind);

struct CaseReport {
    enum class Status { ok, skipped_cap, failed };
    std::size_t index = 0;
    Status status = Status::ok;
    std::string detail;
};

struct SuiteReport {
    std::vector<CaseReport> cases;
    std::size_t passed = 0, failures = 0, skipped = 0;
    bool ok() const { return failures == 0; }
    std::string summary() const;
};

// Runs the main-theorem check, the duality checks, the completion
// properties and the Isbell laws on the pinned fixtures (cases 0-2) and
// generated instances. Failing instances are serialized to
// counterexample_dir (when nonempty) as QCategory JSON; cap-exceeded
// instances are counted as skipped, never dropped silently.
SuiteReport conformance(const GenConfig& cfg, std::size_t n_cases,
                        const std::string& counterexample_dir = "");

}  // namespace qb
