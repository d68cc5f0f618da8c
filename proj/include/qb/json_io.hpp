#pragma once

// Canonical JSON serialization for every file format the CLI reads and
// writes. Objects are emitted with sorted keys and arrays in stored order,
// so dumps round-trip bit-exactly.

#include <json.hpp>

#include "qb/presheaf.hpp"

namespace qb {

nlohmann::json to_json(const FinCategory& c);
nlohmann::json to_json(const QCategory& e);  // base inlined
nlohmann::json to_json(const Presheaf& p);   // empty components omitted
nlohmann::json to_json(const Copresheaf& p);
nlohmann::json to_json(const QFunctor& f);   // endpoints inlined
nlohmann::json to_json(const ValidationReport& r);

FinCategory fincategory_from_json(const nlohmann::json& j);
// base may be an inline object or a path string resolved against base_dir.
QCategory qcategory_from_json(const nlohmann::json& j, const std::string& base_dir = "");
Presheaf presheaf_from_json(const nlohmann::json& j, const QCategory& e);
Copresheaf copresheaf_from_json(const nlohmann::json& j, const QCategory& e);
QFunctor qfunctor_from_json(const nlohmann::json& j, const std::string& base_dir = "");

// Two-space indented dump with trailing newline; keys sorted by the json
// object representation itself.
std::string canonical_dump(const nlohmann::json& j);

// path "-" reads stdin. Parse errors raise data_error.
nlohmann::json load_json(const std::string& path);
void save_json(const std::string& path, const nlohmann::json& j);

FinCategory load_fincategory(const std::string& path);
QCategory load_qcategory(const std::string& path);
QFunctor load_qfunctor(const std::string& path);

}  // namespace qb
