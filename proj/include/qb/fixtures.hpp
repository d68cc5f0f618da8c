#pragma once

// Small named categories used as pinned regression cases throughout the
// test suites and the conformance harness.

#include "qb/qcat.hpp"

namespace qb::fixtures {

// One object "*" with its identity "id".
FinCategory terminal_category();

// Objects X, Y; morphisms 1X, 1Y and f : X → Y.
FinCategory arrow_category();

// Discrete two-object enriched category {a, b} over the terminal base.
QCategory two_antichain();

// Two-chain 0 ≤ 1 over the terminal base.
QCategory two_chain();

// Chain 0 ≤ 1 ≤ ... ≤ n-1 over the terminal base.
QCategory chain(std::size_t n);

// One object "e" of extent X over the arrow category, hom {1X}.
QCategory one_object_over_arrow();

}  // namespace qb::fixtures
