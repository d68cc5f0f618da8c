#include "qb/fincat.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qb {

std::string ValidationReport::to_string() const {
    if (issues.empty()) return "ok";
    std::ostringstream os;
    for (const auto& issue : issues)
        os << "[" << issue.rule << "] " << issue.detail << "\n";
    return os.str();
}

bool FinCategory::has_object(const std::string& x) const {
    return std::find(objects.begin(), objects.end(), x) != objects.end();
}

const Morphism* FinCategory::morphism(const std::string& id) const {
    for (const auto& m : morphisms)
        if (m.id == id) return &m;
    return nullptr;
}

const std::string& FinCategory::identity_of(const std::string& x) const {
    auto it = identities.find(x);
    if (it == identities.end())
        throw data_error("no identity recorded for object '" + x + "'");
    return it->second;
}

std::optional<std::string> FinCategory::compose_opt(const std::string& g,
                                                    const std::string& f) const {
    auto it = composition.find({g, f});
    if (it == composition.end()) return std::nullopt;
    return it->second;
}

const std::string& FinCategory::compose(const std::string& g,
                                        const std::string& f) const {
    auto it = composition.find({g, f});
    if (it == composition.end())
        throw data_error("composite " + g + " ∘ " + f + " is not defined");
    return it->second;
}

std::vector<std::string> FinCategory::hom(const std::string& x,
                                          const std::string& y) const {
    if (!has_object(x)) throw data_error("unknown object '" + x + "'");
    if (!has_object(y)) throw data_error("unknown object '" + y + "'");
    std::vector<std::string> out;
    for (const auto& m : morphisms)
        if (m.src == x && m.dst == y) out.push_back(m.id);
    std::sort(out.begin(), out.end());
    return out;
}

ValidationReport validate_category(const FinCategory& c) {
    ValidationReport report;

    std::set<std::string> obj_seen;
    for (const auto& x : c.objects)
        if (!obj_seen.insert(x).second)
            report.add("duplicate-object", "object id '" + x + "' occurs twice");

    std::set<std::string> mor_seen;
    for (const auto& m : c.morphisms) {
        if (!mor_seen.insert(m.id).second)
            report.add("duplicate-morphism", "morphism id '" + m.id + "' occurs twice");
        if (!obj_seen.count(m.src))
            report.add("unknown-object",
                       "morphism '" + m.id + "' has unknown src '" + m.src + "'");
        if (!obj_seen.count(m.dst))
            report.add("unknown-object",
                       "morphism '" + m.id + "' has unknown dst '" + m.dst + "'");
    }
    // Ids that fail uniqueness make the remaining checks ambiguous.
    if (!report.ok()) return report;

    for (const auto& x : c.objects) {
        auto it = c.identities.find(x);
        if (it == c.identities.end()) {
            report.add("identity-missing", "object '" + x + "' has no identity");
            continue;
        }
        const Morphism* m = c.morphism(it->second);
        if (!m) {
            report.add("identity-missing",
                       "identity '" + it->second + "' of '" + x + "' is not a morphism");
        } else if (m->src != x || m->dst != x) {
            report.add("identity-endpoints",
                       "identity '" + m->id + "' of '" + x + "' is not an endomorphism of it");
        }
    }
    for (const auto& [x, m] : c.identities)
        if (!obj_seen.count(x))
            report.add("unknown-object", "identity table mentions unknown object '" + x + "'");

    // Composition totality on composable pairs, and nothing beyond them.
    for (const auto& g : c.morphisms) {
        for (const auto& f : c.morphisms) {
            auto entry = c.compose_opt(g.id, f.id);
            const bool composable = (f.dst == g.src);
            if (composable && !entry) {
                report.add("composition-missing",
                           "no composite for (" + g.id + ", " + f.id + ")");
            } else if (!composable && entry) {
                report.add("composition-spurious",
                           "table defines (" + g.id + ", " + f.id +
                               ") although dst(" + f.id + ") ≠ src(" + g.id + ")");
            } else if (entry) {
                const Morphism* gf = c.morphism(*entry);
                if (!gf) {
                    report.add("composition-unknown",
                               "composite '" + *entry + "' of (" + g.id + ", " + f.id +
                                   ") is not a morphism");
                } else if (gf->src != f.src || gf->dst != g.dst) {
                    report.add("composition-endpoints",
                               "composite " + g.id + " ∘ " + f.id + " = " + *entry +
                                   " has wrong endpoints");
                }
            }
        }
    }
    for (const auto& [pair, _] : c.composition)
        if (!mor_seen.count(pair.first) || !mor_seen.count(pair.second))
            report.add("composition-unknown",
                       "table mentions unknown morphisms (" + pair.first + ", " +
                           pair.second + ")");

    // Unit laws and associativity, skipping over table entries that were
    // already reported missing, so one broken entry surfaces every law it
    // violates.
    for (const auto& f : c.morphisms) {
        auto id_src = c.identities.find(f.src);
        auto id_dst = c.identities.find(f.dst);
        if (id_src == c.identities.end() || id_dst == c.identities.end()) continue;
        auto right = c.compose_opt(f.id, id_src->second);
        if (right && *right != f.id)
            report.add("unit-law",
                       "compose(" + f.id + ", " + id_src->second + ") ≠ " + f.id);
        auto left = c.compose_opt(id_dst->second, f.id);
        if (left && *left != f.id)
            report.add("unit-law",
                       "compose(" + id_dst->second + ", " + f.id + ") ≠ " + f.id);
    }

    for (const auto& h : c.morphisms)
        for (const auto& g : c.morphisms) {
            if (g.dst != h.src) continue;
            for (const auto& f : c.morphisms) {
                if (f.dst != g.src) continue;
                auto hg = c.compose_opt(h.id, g.id);
                auto gf = c.compose_opt(g.id, f.id);
                if (!hg || !gf) continue;
                auto lhs = c.compose_opt(h.id, *gf);
                auto rhs = c.compose_opt(*hg, f.id);
                if (lhs && rhs && *lhs != *rhs)
                    report.add("associativity",
                               "(" + h.id + " ∘ " + g.id + ") ∘ " + f.id + " ≠ " +
                                   h.id + " ∘ (" + g.id + " ∘ " + f.id + ")");
            }
        }

    return report;
}

FinCategory opposite_category(const FinCategory& c) {
    FinCategory op;
    op.objects = c.objects;
    op.morphisms.reserve(c.morphisms.size());
    for (const auto& m : c.morphisms) op.morphisms.push_back({m.id, m.dst, m.src});
    op.identities = c.identities;
    for (const auto& [pair, gf] : c.composition)
        op.composition[{pair.second, pair.first}] = gf;
    return op;
}

}  // namespace qb
