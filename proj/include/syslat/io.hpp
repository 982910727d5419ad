#pragma once

#include <json.hpp>
#include <string>

#include "syslat/lattice.hpp"
#include "syslat/minima.hpp"
#include "syslat/search.hpp"
#include "syslat/torus.hpp"
#include "syslat/verify.hpp"

namespace syslat {

inline constexpr const char* kSchemaVersion = "systolattice/1";

// Lattice file format: {"dim": n, "basis": [[row], [row], ...]}.
Lattice lattice_from_json(const nlohmann::json& j);
nlohmann::json lattice_to_json(const Lattice& lattice);
Lattice load_lattice(const std::string& path);

// PVector format: {"n": n, "p": p, "coords": [...]}, lexicographic order.
PVector pvector_from_json(const nlohmann::json& j);
nlohmann::json pvector_to_json(const PVector& v);

nlohmann::json norm_spec_to_json(const NormSpec& norm);

nlohmann::json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const nlohmann::json& j);

nlohmann::json minima_profile_to_json(const MinimaProfile& profile);
nlohmann::json systole_report_to_json(const SystoleReport& report);
nlohmann::json search_result_to_json(const SearchResult& result);

/// Record schemas for every JSON-lines record type the CLI emits.
nlohmann::json record_schemas();

/// Structural validation of an emitted record against record_schemas().
bool validate_record(const nlohmann::json& record, std::string* error = nullptr);

}  // namespace syslat
