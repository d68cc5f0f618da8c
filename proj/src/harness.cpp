#include "qb/harness.hpp"

#include <algorithm>
#include <set>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "detail/engine.hpp"
#include "qb/fixtures.hpp"
#include "qb/json_io.hpp"
#include "qb/parallel.hpp"

namespace qb {

std::uint64_t Rng::next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::size_t Rng::below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

bool Rng::percent(unsigned p) { return below(100) < p; }

namespace {

std::uint64_t substream(std::uint64_t seed, std::uint64_t salt) {
    Rng r(seed ^ (salt * 0x9e3779b97f4a7c15ull));
    return r.next();
}

// A morphism candidate during base generation: a function between the
// carriers of two objects, identified by its full action.
struct Fn {
    int src, dst;
    std::vector<int> table;
    auto operator<=>(const Fn&) const = default;
};

Fn compose_fn(const Fn& g, const Fn& f) {
    Fn out{f.src, g.dst, {}};
    out.table.reserve(f.table.size());
    for (int v : f.table) out.table.push_back(g.table[v]);
    return out;
}

std::optional<FinCategory> try_gen_base(Rng& rng, const GenConfig& cfg) {
    const std::size_t n = 1 + rng.below(cfg.max_base_objects);
    if (n > cfg.max_base_morphisms) return std::nullopt;

    // Single-object bases get a two-point carrier so their endomorphism
    // monoids are nontrivial; the terminal base is produced by the explicit
    // bias upstream, not by collapse here.
    std::vector<int> carrier(n);
    for (auto& c : carrier) c = n == 1 ? 2 : 1 + static_cast<int>(rng.below(2));

    std::set<Fn> fns;
    for (std::size_t i = 0; i < n; ++i) {
        Fn id{static_cast<int>(i), static_cast<int>(i), {}};
        for (int v = 0; v < carrier[i]; ++v) id.table.push_back(v);
        fns.insert(id);
    }
    const std::size_t extra =
        cfg.max_base_morphisms > n ? 1 + rng.below(cfg.max_base_morphisms - n + 1) : 0;
    for (std::size_t k = 0; k < extra; ++k) {
        Fn f{static_cast<int>(rng.below(n)), static_cast<int>(rng.below(n)), {}};
        for (int v = 0; v < carrier[f.src]; ++v)
            f.table.push_back(static_cast<int>(rng.below(carrier[f.dst])));
        fns.insert(f);
    }

    // Saturate under composition; the function label identifies morphisms,
    // so associativity and units come for free.
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Fn> snapshot(fns.begin(), fns.end());
        for (const auto& g : snapshot)
            for (const auto& f : snapshot) {
                if (f.dst != g.src) continue;
                if (fns.insert(compose_fn(g, f)).second) grew = true;
                if (fns.size() > cfg.max_base_morphisms) return std::nullopt;
            }
    }

    FinCategory c;
    for (std::size_t i = 0; i < n; ++i) c.objects.push_back("b" + std::to_string(i));
    std::map<Fn, std::string> names;
    std::size_t serial = 0;
    for (const auto& f : fns) {
        bool is_id = f.src == f.dst;
        if (is_id)
            for (std::size_t v = 0; v < f.table.size(); ++v)
                if (f.table[v] != static_cast<int>(v)) is_id = false;
        std::string name = is_id ? "id_b" + std::to_string(f.src)
                                 : "f" + std::to_string(serial++);
        names[f] = name;
        c.morphisms.push_back({name, c.objects[f.src], c.objects[f.dst]});
    }
    for (std::size_t i = 0; i < n; ++i) {
        Fn id{static_cast<int>(i), static_cast<int>(i), {}};
        for (int v = 0; v < carrier[i]; ++v) id.table.push_back(v);
        c.identities[c.objects[i]] = names.at(id);
    }
    for (const auto& g : fns)
        for (const auto& f : fns) {
            if (f.dst != g.src) continue;
            c.composition[{names.at(g), names.at(f)}] = names.at(compose_fn(g, f));
        }
    return c;
}

}  // namespace

FinCategory gen_fin_category(const GenConfig& cfg) {
    Rng pick(substream(cfg.seed, 0xb1a5));
    if (pick.percent(30)) {
        FinCategory one = fixtures::terminal_category();
        ValidationReport vr = validate_category(one);
        if (!vr.ok()) throw std::logic_error("terminal category invalid");
        return one;
    }
    for (std::uint64_t attempt = 0;; ++attempt) {
        Rng rng(substream(cfg.seed, 0xba5e + attempt));
        auto c = try_gen_base(rng, cfg);
        if (!c) continue;
        ValidationReport vr = validate_category(*c);
        if (!vr.ok())
            throw std::logic_error("generated base failed validation:\n" + vr.to_string());
        return *c;
    }
}

QCategory gen_qcategory(const GenConfig& cfg, const FinCategory& base) {
    Rng rng(substream(cfg.seed, 0xf1be));
    detail::BaseCtx bc(base);

    QCategory e;
    e.base = base;
    const std::size_t k = 1 + rng.below(cfg.max_fiber_objects);
    std::vector<int> ext(k);
    for (std::size_t i = 0; i < k; ++i) {
        ext[i] = static_cast<int>(rng.below(bc.nobj()));
        e.objects.push_back({"e" + std::to_string(i), bc.objs[ext[i]]});
    }

    // Random hom-subsets, then least-fixed-point closure under identities
    // and composition.
    std::vector<detail::Bits> hom(k * k, 0);
    for (std::size_t x = 0; x < k; ++x) hom[x * k + x] |= detail::bit(bc.ident[ext[x]]);
    for (std::size_t x = 0; x < k; ++x)
        for (std::size_t y = 0; y < k; ++y) {
            if (!rng.percent(45)) continue;
            detail::for_each_bit(bc.hom_mask(ext[x], ext[y]), [&](int m) {
                if (rng.percent(40)) hom[x * k + y] |= detail::bit(m);
            });
        }
    bool grew = true;
    while (grew) {
        grew = false;
        for (std::size_t x = 0; x < k; ++x)
            for (std::size_t y = 0; y < k; ++y)
                for (std::size_t z = 0; z < k; ++z) {
                    detail::Bits add = bc.compose(hom[y * k + z], hom[x * k + y]);
                    if (!detail::subset_of(add, hom[x * k + z])) {
                        hom[x * k + z] |= add;
                        grew = true;
                    }
                }
    }
    for (std::size_t x = 0; x < k; ++x)
        for (std::size_t y = 0; y < k; ++y)
            e.set_hom(e.objects[x].id, e.objects[y].id,
                      bc.unmask(ext[x], ext[y], hom[x * k + y]));

    ValidationReport vr = validate_qcategory(e);
    if (!vr.ok())
        throw std::logic_error("generated enriched category failed validation:\n" +
                               vr.to_string());
    return e;
}

Presheaf gen_presheaf(std::uint64_t seed, const QCategory& e) {
    Rng rng(substream(seed, 0x51e7));
    detail::QCatCtx cx(e);
    detail::MaskFam m;
    m.z = static_cast<int>(rng.below(cx.bc.nobj()));
    m.comp.assign(cx.n(), 0);
    for (int x = 0; x < cx.n(); ++x)
        detail::for_each_bit(cx.bc.hom_mask(cx.ext[x], m.z), [&](int g) {
            if (rng.percent(35)) m.comp[x] |= detail::bit(g);
        });
    detail::close_sieve(cx, m);
    return detail::sieve_from_mask(cx, m);
}

Copresheaf gen_copresheaf(std::uint64_t seed, const QCategory& e) {
    Rng rng(substream(seed, 0xc051));
    detail::QCatCtx cx(e);
    detail::MaskFam m;
    m.z = static_cast<int>(rng.below(cx.bc.nobj()));
    m.comp.assign(cx.n(), 0);
    for (int x = 0; x < cx.n(); ++x)
        detail::for_each_bit(cx.bc.hom_mask(m.z, cx.ext[x]), [&](int g) {
            if (rng.percent(35)) m.comp[x] |= detail::bit(g);
        });
    detail::close_cosieve(cx, m);
    return detail::cosieve_from_mask(cx, m);
}

LiftingProblem gen_lifting_problem(std::uint64_t seed, const QCategory& e, LiftKind kind) {
    Rng rng(substream(seed, 0x11f7));
    LiftingProblem p;
    p.kind = kind;
    p.apex = e.base.objects[rng.below(e.base.objects.size())];
    const std::size_t want = rng.below(4);
    for (std::size_t i = 0; i < want; ++i) {
        const QObject& x = e.objects[rng.below(e.objects.size())];
        std::vector<std::string> candidates = kind == LiftKind::Final
                                                  ? e.base.hom(x.extent, p.apex)
                                                  : e.base.hom(p.apex, x.extent);
        if (candidates.empty()) continue;
        p.legs.push_back({x.id, candidates[rng.below(candidates.size())]});
    }
    return p;
}

namespace {

// The per-case body of the conformance suite; throws on any law violation.
void run_case_checks(const QCategory& e, std::size_t cap) {
    MainTheoremReport mt = main_theorem_check(e, cap);
    if (!mt.agree())
        throw std::logic_error("main theorem predicates disagree:\n" + mt.to_string());

    if (is_topological(e, cap).value != is_topological(opposite_qcategory(e), cap).value)
        throw std::logic_error("topological duality violated");
    if (is_total(e, cap).value != is_cototal(e, cap).value)
        throw std::logic_error("total/cototal duality violated");

    CompletionPropertiesReport cp = completion_properties(e, cap);
    if (!cp.ok())
        throw std::logic_error("completion properties violated:\n" + cp.to_string());

    // Isbell laws on a deterministic sample of sieve/cosieve pairs.
    auto sieves = all_presheaves(e, cap);
    auto cosieves = all_copresheaves(e, cap);
    auto pick = [](std::size_t count, std::size_t want) {
        std::vector<std::size_t> ix;
        if (count == 0) return ix;
        const std::size_t step = std::max<std::size_t>(1, count / std::max<std::size_t>(want, 1));
        for (std::size_t i = 0; i < count; i += step) ix.push_back(i);
        return ix;
    };
    auto si = pick(sieves.size(), 8);
    auto ci = pick(cosieves.size(), 8);
    for (auto i : si) {
        Copresheaf up = isbell_up(e, sieves[i]);
        if (isbell_up(e, isbell_down(e, up)) != up)
            throw std::logic_error("Isbell idempotence ↑↓↑ = ↑ violated");
        for (auto j : ci) {
            const Copresheaf& psi = cosieves[j];
            Presheaf down = isbell_down(e, psi);
            if (isbell_down(e, isbell_up(e, down)) != down)
                throw std::logic_error("Isbell idempotence ↓↑↓ = ↓ violated");
            if (sieves[i].extent != psi.extent) continue;
            bool phi_below = true;
            for (const auto& [x, h] : sieves[i].components)
                if (!qhom_leq(h, down.components.at(x))) {
                    phi_below = false;
                    break;
                }
            bool psi_below = true;
            for (const auto& [x, h] : psi.components)
                if (!qhom_leq(h, up.components.at(x))) {
                    psi_below = false;
                    break;
                }
            if (phi_below != psi_below)
                throw std::logic_error("Isbell Galois law φ ≤ ↓ψ ⇔ ψ ≤ ↑φ violated");
        }
    }
}

}  // namespace

std::string SuiteReport::summary() const {
    std::ostringstream os;
    os << cases.size() << " cases: " << passed << " passed, " << failures
       << " failed, " << skipped << " skipped by cap";
    return os.str();
}

SuiteReport conformance(const GenConfig& cfg, std::size_t n_cases,
                        const std::string& counterexample_dir) {
    const std::size_t total = std::max<std::size_t>(n_cases, 3);
    std::vector<QCategory> instances(total);
    instances[0] = fixtures::two_antichain();
    instances[1] = fixtures::two_chain();
    instances[2] = fixtures::one_object_over_arrow();
    for (std::size_t i = 3; i < total; ++i) {
        GenConfig local = cfg;
        local.seed = substream(cfg.seed, 0xca5e0000 + i);
        FinCategory base = gen_fin_category(local);
        instances[i] = gen_qcategory(local, base);
    }

    SuiteReport report;
    report.cases.resize(total);
    parallel_for(total, [&](std::size_t i) {
        CaseReport& cr = report.cases[i];
        cr.index = i;
        try {
            run_case_checks(instances[i], cfg.presheaf_cap);
            cr.status = CaseReport::Status::ok;
        } catch (const cap_exceeded& ex) {
            cr.status = CaseReport::Status::skipped_cap;
            cr.detail = ex.what();
        } catch (const std::exception& ex) {
            cr.status = CaseReport::Status::failed;
            cr.detail = ex.what();
        }
    });

    for (const auto& cr : report.cases) {
        switch (cr.status) {
            case CaseReport::Status::ok: ++report.passed; break;
            case CaseReport::Status::skipped_cap: ++report.skipped; break;
            case CaseReport::Status::failed: {
                ++report.failures;
                if (!counterexample_dir.empty()) {
                    std::filesystem::create_directories(counterexample_dir);
                    std::filesystem::path file =
                        std::filesystem::path(counterexample_dir) /
                        ("case_" + std::to_string(cr.index) + ".json");
                    std::ofstream os(file);
                    os << canonical_dump(to_json(instances[cr.index]));
                }
                break;
            }
        }
    }
    return report;
}

}  // namespace qb
