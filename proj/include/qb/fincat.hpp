#pragma once

// Finite categories as explicit combinatorial data: object list, morphism
// list, identity assignment and a composition table. Everything downstream
// enriches over one of these.

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qb/errors.hpp"

namespace qb {

struct Morphism {
    std::string id;
    std::string src;
    std::string dst;
    auto operator<=>(const Morphism&) const = default;
};

struct ValidationIssue {
    std::string rule;    // short machine-readable tag, e.g. "unit-law"
    std::string detail;  // human-readable description naming the offending ids
    auto operator<=>(const ValidationIssue&) const = default;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    void add(std::string rule, std::string detail) {
        issues.push_back({std::move(rule), std::move(detail)});
    }
    std::string to_string() const;
};

// A finite category. The composition table is the single source of truth:
// it is stored, not computed, and must be defined exactly on composable
// pairs. All maps are keyed by id so files are order-insensitive.
struct FinCategory {
    std::vector<std::string> objects;
    std::vector<Morphism> morphisms;
    std::map<std::string, std::string> identities;  // object id -> morphism id
    std::map<std::pair<std::string, std::string>, std::string>
        composition;  // (g, f) -> g∘f

    bool has_object(const std::string& x) const;
    const Morphism* morphism(const std::string& id) const;  // nullptr if unknown

    // Identity morphism id of an object; throws data_error on unknown object.
    const std::string& identity_of(const std::string& x) const;

    std::optional<std::string> compose_opt(const std::string& g,
                                           const std::string& f) const;
    // Composite g∘f; throws data_error when the pair has no table entry.
    const std::string& compose(const std::string& g, const std::string& f) const;

    // Morphisms X -> Y, sorted by id. Throws data_error on unknown objects.
    std::vector<std::string> hom(const std::string& x, const std::string& y) const;

    auto operator<=>(const FinCategory&) const = default;
};

// Checks every category axiom and reports each violation with the offending
// ids. Violations are data, not exceptions: an empty report means the data
// is a category.
ValidationReport validate_category(const FinCategory& c);

// Same objects and morphism ids, src/dst swapped, composition transposed.
FinCategory opposite_category(const FinCategory& c);

}  // namespace qb
