#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "hil/deddens.hpp"
#include "hil/disk_map.hpp"
#include "hil/inner.hpp"
#include "hil/subspaces.hpp"
#include "hil/verdict.hpp"

namespace hil {

using json = nlohmann::ordered_json;

/// Version tag written into every report.
inline constexpr const char* kSchemaVersion = "1.0";

/// Payload that does not match its schema; pointer is a JSON pointer to the offending field.
class SchemaError : public InvalidInput {
public:
    SchemaError(std::string pointer, const std::string& what)
        : InvalidInput(pointer + ": " + what), pointer_(std::move(pointer)) {}

    const std::string& pointer() const noexcept { return pointer_; }

private:
    std::string pointer_;
};

/// [re, im].
json complex_to_json(cplx z);
cplx complex_from_json(const json& j, const std::string& pointer);

/// {"identity": true} | {"rotation": [re, im]} | {"monomial": k} |
/// {"mobius": {"a": .., "b": .., "c": .., "d": ..}} | {"poly": [[re, im], ...]} |
/// {"constant": [re, im]} | {"compose": [map, ...]} (the last entry is applied first).
/// The bare string "identity" is accepted on input.
json map_to_json(const DiskSelfMap& phi);
DiskSelfMap map_from_json(const json& j, const std::string& pointer = "");

/// {"lambda": [re, im], "m0": n, "blaschke": [{"a": [re, im], "mult": m}, ...],
///  "atoms": [{"t": angle, "c": weight}, ...]}; every field is optional.
json inner_to_json(const InnerFunction& theta);
InnerFunction inner_from_json(const json& j, const std::string& pointer = "");

/// {"alpha": [re, im], "beta": [re, im]} with |α|² + |β|² = 1 (not rescaled).
json pair_to_json(const AdmissiblePair& pair);
AdmissiblePair pair_from_json(const json& j, const std::string& pointer = "");

/// Polynomial or truncated series as a coefficient list [[re, im], ...].
TaylorSeries series_from_json(const json& j, const std::string& pointer = "");

json settings_to_json(const Settings& s);
json verdict_to_json(const Verdict& v);
json probe_to_json(const DeddensProbeResult& r);
json lattice_to_json(const LatticeScanResult& r);

/// Truncation overrides applied on top of a base Settings: "order", "grid" (radii),
/// "angles", "tol_eq", "tol_sup", "seed".
Settings settings_from_json(const json& j, Settings base, const std::string& pointer = "/truncation");

/// Commands understood by run_job.
inline constexpr const char* kCommands[] = {"check", "schur-quotient", "orbit", "norms", "deddens", "lattice-scan"};

struct JobResult {
    json report;
    /// 0 when a verdict was computed, 2 for invalid input, 3 when inconclusive.
    int exit_code = 0;
};

/// Validates the job, dispatches to the named checker and assembles the report:
/// {"schema_version", "job", "result", "provenance"} or {"schema_version", "job",
/// "error", "provenance"}. Wall time is included only when timing is true, so
/// reports are byte-identical across runs by default.
JobResult run_job(const std::string& command, const json& job, const Settings& settings, bool timing = false);

/// "n,value" rows from the report's "series" block; throws InvalidInput when the
/// report carries no sequence.
std::string report_to_csv(const json& report);

}  // namespace hil
