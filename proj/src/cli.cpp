#include "qb/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <functional>
#include <iostream>

#include "qb/harness.hpp"
#include "qb/json_io.hpp"
#include "qb/parallel.hpp"

namespace qb::cli {

namespace {

using nlohmann::json;

struct Options {
    bool as_json = false;
    std::size_t cap = kDefaultPresheafCap;
    unsigned parallel = 1;
};

void print(std::ostream& out, const Options& opt, const json& report,
           const std::string& text) {
    if (opt.as_json)
        out << canonical_dump(report);
    else
        out << text << "\n";
}

std::string describe_presheaf(const Presheaf& p) {
    std::string s = presheaf_id(p) + "  extent=" + p.extent + "  {";
    bool first = true;
    for (const auto& [x, h] : p.components) {
        if (h.empty()) continue;
        if (!first) s += ", ";
        first = false;
        s += x + ": [";
        for (std::size_t i = 0; i < h.elems.size(); ++i)
            s += (i ? " " : "") + h.elems[i];
        s += "]";
    }
    return s + "}";
}

std::string describe_copresheaf(const Copresheaf& p) {
    std::string s = copresheaf_id(p) + "  extent=" + p.extent + "  {";
    bool first = true;
    for (const auto& [x, h] : p.components) {
        if (h.empty()) continue;
        if (!first) s += ", ";
        first = false;
        s += x + ": [";
        for (std::size_t i = 0; i < h.elems.size(); ++i)
            s += (i ? " " : "") + h.elems[i];
        s += "]";
    }
    return s + "}";
}

QCategory load_validated(const std::string& path) {
    QCategory e = load_qcategory(path);
    ValidationReport r = validate_qcategory(e);
    if (!r.ok()) throw data_error("'" + path + "' is not a valid category:\n" + r.to_string());
    return e;
}

int cmd_validate(const std::string& path, const Options& opt, std::ostream& out) {
    json j = load_json(path);
    ValidationReport report;
    std::string kind;
    if (j.is_object() && j.contains("base")) {
        kind = "enriched category";
        report = validate_qcategory(qcategory_from_json(j, path == "-" ? "" :
                          std::filesystem::path(path).parent_path().string()));
    } else {
        kind = "category";
        report = validate_category(fincategory_from_json(j));
    }
    json rep = to_json(report);
    rep["kind"] = kind;
    print(out, opt, rep,
          report.ok() ? kind + ": ok" : kind + ": invalid\n" + report.to_string());
    return report.ok() ? 0 : 1;
}

int cmd_presheaves(const std::string& path, const std::string& extent,
                   const Options& opt, std::ostream& out) {
    QCategory e = load_validated(path);
    std::vector<Presheaf> list = extent.empty() ? all_presheaves(e, opt.cap)
                                                : enumerate_presheaves(e, extent, opt.cap);
    if (opt.as_json) {
        json arr = json::array();
        for (const auto& p : list) {
            json pj = to_json(p);
            pj["id"] = presheaf_id(p);
            arr.push_back(pj);
        }
        out << canonical_dump(json{{"count", list.size()}, {"presheaves", arr}});
    } else {
        for (const auto& p : list) out << describe_presheaf(p) << "\n";
        out << list.size() << " presheaves\n";
    }
    return 0;
}

int cmd_lift(const std::string& mode, const std::string& path, const std::string& apex,
             const std::vector<std::string>& raw_legs, const Options& opt,
             std::ostream& out) {
    QCategory e = load_validated(path);
    LiftingProblem p;
    p.kind = mode == "final" ? LiftKind::Final : LiftKind::Initial;
    p.apex = apex;
    for (const auto& raw : raw_legs) {
        auto sep = raw.find(':');
        if (sep == std::string::npos)
            throw data_error("leg '" + raw + "' is not of the form object:morphism");
        p.legs.push_back({raw.substr(0, sep), raw.substr(sep + 1)});
    }
    ValidationReport vr = validate_problem(e, p);
    if (!vr.ok()) throw data_error("invalid problem:\n" + vr.to_string());
    std::vector<std::string> ws =
        p.kind == LiftKind::Final ? final_lifting(e, p) : initial_lifting(e, p);
    json rep{{"kind", mode}, {"apex", apex}, {"witnesses", ws}};
    std::string text = ws.empty() ? "no lifting" : "witnesses:";
    for (const auto& w : ws) text += " " + w;
    print(out, opt, rep, text);
    return ws.empty() ? 1 : 0;
}

int cmd_isbell(const std::string& mode, const std::string& qcat_path,
               const std::string& family_path, const Options& opt, std::ostream& out) {
    QCategory e = load_validated(qcat_path);
    if (mode == "up") {
        Presheaf phi = presheaf_from_json(load_json(family_path), e);
        ValidationReport vr = validate_presheaf(e, phi);
        if (!vr.ok()) throw data_error("invalid presheaf:\n" + vr.to_string());
        Copresheaf up = isbell_up(e, phi);
        print(out, opt, to_json(up), describe_copresheaf(up));
    } else {
        Copresheaf psi = copresheaf_from_json(load_json(family_path), e);
        ValidationReport vr = validate_copresheaf(e, psi);
        if (!vr.ok()) throw data_error("invalid copresheaf:\n" + vr.to_string());
        Presheaf down = isbell_down(e, psi);
        print(out, opt, to_json(down), describe_presheaf(down));
    }
    return 0;
}

int cmd_check(const std::string& what, const std::string& path, const Options& opt,
              std::ostream& out) {
    QCategory e = load_validated(path);
    if (what == "topological") {
        TopologicalResult r = is_topological(e, opt.cap);
        json rep{{"topological", r.value}, {"sieves", r.sieve_count}};
        std::string text = r.value ? "topological (" + std::to_string(r.sieve_count) +
                                         " sieves lift)"
                                   : "not topological; counterexample sieve:";
        if (!r.value) {
            rep["counterexample"] = to_json(*r.counterexample);
            text += "\n" + canonical_dump(to_json(*r.counterexample));
        }
        print(out, opt, rep, text);
        return r.value ? 0 : 1;
    }
    if (what == "total") {
        TotalityResult r = is_total(e, opt.cap);
        json rep{{"total", r.value}, {"presheaves", r.presheaf_count}};
        std::string text = r.value ? "total (" + std::to_string(r.presheaf_count) +
                                         " presheaves have colimits)"
                                   : "not total; counterexample presheaf:";
        if (!r.value) {
            rep["counterexample"] = to_json(*r.counterexample);
            text += "\n" + canonical_dump(to_json(*r.counterexample));
        }
        print(out, opt, rep, text);
        return r.value ? 0 : 1;
    }
    if (what == "cototal") {
        CototalityResult r = is_cototal(e, opt.cap);
        json rep{{"cototal", r.value}, {"copresheaves", r.copresheaf_count}};
        std::string text = r.value ? "cototal (" + std::to_string(r.copresheaf_count) +
                                         " copresheaves have limits)"
                                   : "not cototal; counterexample copresheaf:";
        if (!r.value) {
            rep["counterexample"] = to_json(*r.counterexample);
            text += "\n" + canonical_dump(to_json(*r.counterexample));
        }
        print(out, opt, rep, text);
        return r.value ? 0 : 1;
    }
    // cuts
    auto sieves = all_presheaves(e, opt.cap);
    std::vector<Presheaf> cuts;
    for (const auto& p : sieves)
        if (is_cut(e, p)) cuts.push_back(p);
    if (opt.as_json) {
        json arr = json::array();
        for (const auto& p : cuts) {
            json pj = to_json(p);
            pj["id"] = presheaf_id(p);
            arr.push_back(pj);
        }
        out << canonical_dump(json{{"count", cuts.size()}, {"cuts", arr}});
    } else {
        for (const auto& p : cuts) out << describe_presheaf(p) << "\n";
        out << cuts.size() << " cuts among " << sieves.size() << " presheaves\n";
    }
    return 0;
}

int cmd_complete(const std::string& path, const std::string& out_path,
                 const std::string& embedding_path, const Options& opt,
                 std::ostream& out) {
    QCategory e = load_validated(path);
    MacNeilleResult r = macneille(e, opt.cap);
    save_json(out_path, to_json(r.completion));
    if (!embedding_path.empty()) save_json(embedding_path, to_json(r.embedding));
    json rep{{"cuts", r.cuts.size()},
             {"objects", e.objects.size()},
             {"output", out_path}};
    print(out, opt, rep,
          "completion has " + std::to_string(r.cuts.size()) + " objects (from " +
              std::to_string(e.objects.size()) + "); written to " + out_path);
    return 0;
}

int cmd_dense(const std::string& path, bool codense, const Options& opt,
              std::ostream& out) {
    QFunctor f = load_qfunctor(path);
    ValidationReport vr = validate_qfunctor(f);
    if (!vr.ok()) throw data_error("invalid functor:\n" + vr.to_string());
    DensityResult r = codense ? is_codense(f, opt.cap) : is_dense(f, opt.cap);
    const char* what = codense ? "codense" : "dense";
    json rep{{what, r.value}};
    if (!r.value) rep["counterexample"] = r.counterexample;
    print(out, opt, rep,
          r.value ? std::string(what)
                  : std::string("not ") + what + " (object '" + r.counterexample + "')");
    return r.value ? 0 : 1;
}

int cmd_adjoint(const std::string& side, const std::string& path, const Options& opt,
                std::ostream& out) {
    QFunctor f = load_qfunctor(path);
    ValidationReport vr = validate_qfunctor(f);
    if (!vr.ok()) throw data_error("invalid functor:\n" + vr.to_string());
    AdjointResult r = side == "left" ? left_adjoint(f) : right_adjoint(f);
    if (!r.functor) {
        json rep{{"found", false}, {"counterexample", r.counterexample}};
        print(out, opt, rep,
              "no " + side + " adjoint (fails at '" + r.counterexample + "')");
        return 1;
    }
    json rep{{"found", true},
             {"source", r.source == AdjointSource::formula ? "formula" : "search"},
             {"object_map", r.functor->object_map}};
    std::string text = side + " adjoint found (" +
                       (r.source == AdjointSource::formula ? "formula" : "search") + "):";
    for (const auto& [x, gx] : r.functor->object_map) text += "\n  " + x + " -> " + gx;
    print(out, opt, rep, text);
    return 0;
}

int cmd_fuzz(const GenConfig& cfg, std::size_t cases, const std::string& dir,
             const Options& opt, std::ostream& out) {
    SuiteReport r = conformance(cfg, cases, dir);
    json arr = json::array();
    for (const auto& c : r.cases) {
        if (c.status == CaseReport::Status::ok) continue;
        arr.push_back({{"case", c.index},
                       {"status", c.status == CaseReport::Status::failed ? "failed"
                                                                         : "skipped"},
                       {"detail", c.detail}});
    }
    json rep{{"cases", r.cases.size()},
             {"passed", r.passed},
             {"failed", r.failures},
             {"skipped", r.skipped},
             {"events", arr}};
    std::string text = r.summary();
    for (const auto& c : r.cases)
        if (c.status == CaseReport::Status::failed)
            text += "\ncase " + std::to_string(c.index) + " FAILED: " + c.detail;
    print(out, opt, rep, text);
    return r.ok() ? 0 : 1;
}

int cmd_main_theorem(const std::string& path, const Options& opt, std::ostream& out) {
    QCategory e = load_validated(path);
    MainTheoremReport r = main_theorem_check(e, opt.cap);
    if (!r.agree())
        throw std::logic_error("main theorem predicates disagree:\n" + r.to_string());
    json rep{{"families_lift", r.families_lift},
             {"topological", r.topological},
             {"yoneda_left_adjoint", r.yoneda_left_adjoint},
             {"total", r.total},
             {"sieves", r.sieve_count},
             {"verdict", r.verdict()}};
    print(out, opt, rep, r.to_string());
    return r.verdict() ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"finite enriched-category toolkit: liftings, totality, completions"};
    app.name("qb");
    app.fallthrough(true);
    app.require_subcommand(1);

    Options opt;
    app.add_flag("--json", opt.as_json, "emit canonical JSON reports");
    app.add_option("--cap", opt.cap, "presheaf enumeration cap");
    app.add_option("--parallel", opt.parallel, "worker threads");

    std::function<int()> action;

    // validate
    {
        auto* sub = app.add_subcommand("validate", "check category axioms of a file");
        auto path = std::make_shared<std::string>();
        sub->add_option("file", *path, "category or enriched-category JSON")->required();
        sub->callback([&, path] {
            action = [&, path] { return cmd_validate(*path, opt, out); };
        });
    }
    // presheaves
    {
        auto* sub = app.add_subcommand("presheaves", "enumerate presheaves canonically");
        auto path = std::make_shared<std::string>();
        auto extent = std::make_shared<std::string>();
        sub->add_option("file", *path, "enriched-category JSON")->required();
        sub->add_option("--extent", *extent, "restrict to one extent");
        sub->callback([&, path, extent] {
            action = [&, path, extent] { return cmd_presheaves(*path, *extent, opt, out); };
        });
    }
    // lift final|initial
    {
        auto* sub = app.add_subcommand("lift", "solve a lifting problem");
        auto mode = std::make_shared<std::string>();
        auto path = std::make_shared<std::string>();
        auto apex = std::make_shared<std::string>();
        auto legs = std::make_shared<std::vector<std::string>>();
        sub->add_option("mode", *mode, "final or initial")
            ->required()
            ->check(CLI::IsMember({"final", "initial"}));
        sub->add_option("file", *path, "enriched-category JSON")->required();
        sub->add_option("--apex", *apex, "apex object of the base")->required();
        sub->add_option("--leg", *legs, "leg object:morphism (repeatable)");
        sub->callback([&, mode, path, apex, legs] {
            action = [&, mode, path, apex, legs] {
                return cmd_lift(*mode, *path, *apex, *legs, opt, out);
            };
        });
    }
    // isbell up|down
    {
        auto* sub = app.add_subcommand("isbell", "apply the Isbell adjunction");
        auto mode = std::make_shared<std::string>();
        auto qcat = std::make_shared<std::string>();
        auto family = std::make_shared<std::string>();
        sub->add_option("mode", *mode, "up or down")
            ->required()
            ->check(CLI::IsMember({"up", "down"}));
        sub->add_option("category", *qcat, "enriched-category JSON")->required();
        sub->add_option("family", *family, "presheaf (up) or copresheaf (down) JSON")
            ->required();
        sub->callback([&, mode, qcat, family] {
            action = [&, mode, qcat, family] {
                return cmd_isbell(*mode, *qcat, *family, opt, out);
            };
        });
    }
    // check topological|total|cototal|cuts
    {
        auto* sub = app.add_subcommand("check", "decide a property");
        auto what = std::make_shared<std::string>();
        auto path = std::make_shared<std::string>();
        sub->add_option("property", *what, "topological, total, cototal or cuts")
            ->required()
            ->check(CLI::IsMember({"topological", "total", "cototal", "cuts"}));
        sub->add_option("file", *path, "enriched-category JSON")->required();
        sub->callback([&, what, path] {
            action = [&, what, path] { return cmd_check(*what, *path, opt, out); };
        });
    }
    // complete
    {
        auto* sub = app.add_subcommand("complete", "write the MacNeille completion");
        auto path = std::make_shared<std::string>();
        auto out_path = std::make_shared<std::string>();
        auto emb_path = std::make_shared<std::string>();
        sub->add_option("file", *path, "enriched-category JSON")->required();
        sub->add_option("-o,--output", *out_path, "completion output file")->required();
        sub->add_option("--embedding-out", *emb_path, "embedding functor output file");
        sub->callback([&, path, out_path, emb_path] {
            action = [&, path, out_path, emb_path] {
                return cmd_complete(*path, *out_path, *emb_path, opt, out);
            };
        });
    }
    // dense
    {
        auto* sub = app.add_subcommand("dense", "decide density of a functor");
        auto path = std::make_shared<std::string>();
        auto codense = std::make_shared<bool>(false);
        sub->add_option("file", *path, "functor JSON")->required();
        sub->add_flag("--codense", *codense, "decide codensity instead");
        sub->callback([&, path, codense] {
            action = [&, path, codense] { return cmd_dense(*path, *codense, opt, out); };
        });
    }
    // adjoint left|right
    {
        auto* sub = app.add_subcommand("adjoint", "search for an adjoint");
        auto side = std::make_shared<std::string>();
        auto path = std::make_shared<std::string>();
        sub->add_option("side", *side, "left or right")
            ->required()
            ->check(CLI::IsMember({"left", "right"}));
        sub->add_option("file", *path, "functor JSON")->required();
        sub->callback([&, side, path] {
            action = [&, side, path] { return cmd_adjoint(*side, *path, opt, out); };
        });
    }
    // fuzz
    {
        auto* sub = app.add_subcommand("fuzz", "run the conformance suite");
        auto cfg = std::make_shared<GenConfig>();
        auto cases = std::make_shared<std::size_t>(20);
        auto dir = std::make_shared<std::string>("counterexamples");
        sub->add_option("--seed", cfg->seed, "generator seed");
        sub->add_option("--cases", *cases, "number of cases (fixtures included)");
        sub->add_option("--max-base-objects", cfg->max_base_objects, "");
        sub->add_option("--max-base-morphisms", cfg->max_base_morphisms, "");
        sub->add_option("--max-fiber-objects", cfg->max_fiber_objects, "");
        sub->add_option("--out-dir", *dir, "directory for counterexample files");
        sub->callback([&, cfg, cases, dir] {
            action = [&, cfg, cases, dir] {
                cfg->presheaf_cap = opt.cap;
                return cmd_fuzz(*cfg, *cases, *dir, opt, out);
            };
        });
    }
    // main-theorem
    {
        auto* sub = app.add_subcommand("main-theorem", "cross-check the four predicates");
        auto path = std::make_shared<std::string>();
        sub->add_option("file", *path, "enriched-category JSON")->required();
        sub->callback([&, path] {
            action = [&, path] { return cmd_main_theorem(*path, opt, out); };
        });
    }

    std::vector<std::string> argv_store;
    argv_store.push_back("qb");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& ex) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& ex) {
        err << "usage error: " << ex.what() << "\n";
        return 2;
    }

    try {
        set_parallelism(opt.parallel);
        return action ? action() : 2;
    } catch (const cap_exceeded& ex) {
        err << "cap exceeded: " << ex.what() << "\n";
        return 3;
    } catch (const std::logic_error& ex) {
        err << "internal discrepancy (bug): " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return 2;
    }
}

}  // namespace qb::cli
