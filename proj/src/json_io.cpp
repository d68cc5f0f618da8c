#include "qb/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace qb {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw data_error("missing field '" + std::string(key) + "'");
    return j.at(key);
}

std::string str(const json& j, const char* what) {
    if (!j.is_string()) throw data_error(std::string(what) + " must be a string");
    return j.get<std::string>();
}

std::vector<std::string> str_list(const json& j, const char* what) {
    if (!j.is_array()) throw data_error(std::string(what) + " must be an array");
    std::vector<std::string> out;
    for (const auto& v : j) out.push_back(str(v, what));
    return out;
}

std::filesystem::path resolve(const std::string& path, const std::string& base_dir) {
    std::filesystem::path p(path);
    if (p.is_relative() && !base_dir.empty()) return std::filesystem::path(base_dir) / p;
    return p;
}

}  // namespace

json to_json(const FinCategory& c) {
    json j;
    j["objects"] = c.objects;
    json mors = json::array();
    for (const auto& m : c.morphisms)
        mors.push_back({{"id", m.id}, {"src", m.src}, {"dst", m.dst}});
    j["morphisms"] = mors;
    j["identities"] = c.identities;
    json comp = json::array();
    for (const auto& [pair, gf] : c.composition)
        comp.push_back(json::array({pair.first, pair.second, gf}));
    j["composition"] = comp;
    return j;
}

json to_json(const QCategory& e) {
    json j;
    j["base"] = to_json(e.base);
    json objs = json::array();
    for (const auto& o : e.objects)
        objs.push_back({{"id", o.id}, {"extent", o.extent}});
    j["objects"] = objs;
    json homs = json::object();
    for (const auto& [key, h] : e.homs) {
        if (h.empty()) continue;
        homs[key.first + "|" + key.second] = h.elems;
    }
    j["homs"] = homs;
    return j;
}

json to_json(const Presheaf& p) {
    json j;
    j["extent"] = p.extent;
    json comps = json::object();
    for (const auto& [x, h] : p.components)
        if (!h.empty()) comps[x] = h.elems;
    j["components"] = comps;
    return j;
}

json to_json(const Copresheaf& p) {
    json j;
    j["extent"] = p.extent;
    json comps = json::object();
    for (const auto& [x, h] : p.components)
        if (!h.empty()) comps[x] = h.elems;
    j["components"] = comps;
    return j;
}

json to_json(const QFunctor& f) {
    json j;
    j["dom"] = to_json(f.dom);
    j["cod"] = to_json(f.cod);
    j["object_map"] = f.object_map;
    return j;
}

json to_json(const ValidationReport& r) {
    json issues = json::array();
    for (const auto& i : r.issues)
        issues.push_back({{"rule", i.rule}, {"detail", i.detail}});
    return json{{"ok", r.ok()}, {"issues", issues}};
}

FinCategory fincategory_from_json(const json& j) {
    FinCategory c;
    c.objects = str_list(field(j, "objects"), "objects");
    for (const auto& m : field(j, "morphisms")) {
        c.morphisms.push_back({str(field(m, "id"), "morphism id"),
                               str(field(m, "src"), "morphism src"),
                               str(field(m, "dst"), "morphism dst")});
    }
    for (const auto& [x, m] : field(j, "identities").items())
        c.identities[x] = str(m, "identity");
    for (const auto& entry : field(j, "composition")) {
        if (!entry.is_array() || entry.size() != 3)
            throw data_error("composition entries must be [g, f, gf] triples");
        c.composition[{str(entry[0], "composition g"), str(entry[1], "composition f")}] =
            str(entry[2], "composition gf");
    }
    return c;
}

QCategory qcategory_from_json(const json& j, const std::string& base_dir) {
    QCategory e;
    const json& base = field(j, "base");
    if (base.is_string())
        e.base = load_fincategory(resolve(base.get<std::string>(), base_dir).string());
    else
        e.base = fincategory_from_json(base);
    for (const auto& o : field(j, "objects"))
        e.objects.push_back(
            {str(field(o, "id"), "object id"), str(field(o, "extent"), "extent")});
    if (j.contains("homs")) {
        for (const auto& [key, elems] : j.at("homs").items()) {
            auto sep = key.find('|');
            if (sep == std::string::npos)
                throw data_error("hom key '" + key + "' is not of the form x|y");
            std::string x = key.substr(0, sep), y = key.substr(sep + 1);
            e.set_hom(x, y, make_qhom(e.base, e.extent_of(x), e.extent_of(y),
                                      str_list(elems, "hom elements")));
        }
    }
    return e;
}

Presheaf presheaf_from_json(const json& j, const QCategory& e) {
    Presheaf p;
    p.extent = str(field(j, "extent"), "extent");
    if (j.contains("components"))
        for (const auto& [x, elems] : j.at("components").items())
            p.components[x] = make_qhom(e.base, e.extent_of(x), p.extent,
                                        str_list(elems, "component elements"));
    return dense_presheaf(e, p);
}

Copresheaf copresheaf_from_json(const json& j, const QCategory& e) {
    Copresheaf p;
    p.extent = str(field(j, "extent"), "extent");
    if (j.contains("components"))
        for (const auto& [x, elems] : j.at("components").items())
            p.components[x] = make_qhom(e.base, p.extent, e.extent_of(x),
                                        str_list(elems, "component elements"));
    return dense_copresheaf(e, p);
}

QFunctor qfunctor_from_json(const json& j, const std::string& base_dir) {
    QFunctor f;
    const json& dom = field(j, "dom");
    f.dom = dom.is_string()
                ? load_qcategory(resolve(dom.get<std::string>(), base_dir).string())
                : qcategory_from_json(dom, base_dir);
    const json& cod = field(j, "cod");
    f.cod = cod.is_string()
                ? load_qcategory(resolve(cod.get<std::string>(), base_dir).string())
                : qcategory_from_json(cod, base_dir);
    for (const auto& [x, fx] : field(j, "object_map").items())
        f.object_map[x] = str(fx, "object image");
    return f;
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

json load_json(const std::string& path) {
    try {
        if (path == "-") return json::parse(std::cin);
        std::ifstream is(path);
        if (!is) throw data_error("cannot open '" + path + "'");
        return json::parse(is);
    } catch (const json::parse_error& ex) {
        throw data_error("invalid JSON in '" + path + "': " + ex.what());
    }
}

void save_json(const std::string& path, const json& j) {
    std::ofstream os(path);
    if (!os) throw data_error("cannot write '" + path + "'");
    os << canonical_dump(j);
}

namespace {
std::string parent_dir(const std::string& path) {
    if (path == "-") return "";
    return std::filesystem::path(path).parent_path().string();
}
}  // namespace

FinCategory load_fincategory(const std::string& path) {
    return fincategory_from_json(load_json(path));
}

QCategory load_qcategory(const std::string& path) {
    return qcategory_from_json(load_json(path), parent_dir(path));
}

QFunctor load_qfunctor(const std::string& path) {
    return qfunctor_from_json(load_json(path), parent_dir(path));
}

}  // namespace qb
