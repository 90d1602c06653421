#ifndef LAB_CONFIG_HPP
#define LAB_CONFIG_HPP

#include <string>

#include <json.hpp>

#include "zetalab/diophantine.hpp"
#include "zetalab/experiments.hpp"
#include "zetalab/selfapprox.hpp"
#include "zetalab/types.hpp"

namespace lab {

enum class Kind { Eval, Zeros, BoundSweep, Kronecker, Density, Pipeline, RemarkDemo };

std::string kind_name(Kind kind);
Kind kind_from_name(const std::string& name);

/// One experiment description, schema "v1".  The JSON document carries a
/// "kind" discriminator plus a sub-object named after the kind; shared
/// evaluation parameters sit in an optional "params" object.
struct ExperimentConfig {
    Kind kind = Kind::Eval;
    zetalab::EvalParams params;

    // Kind-specific payloads; only the one matching `kind` is meaningful.
    zetalab::Complex eval_s{2.0, 0.0};
    zetalab::RectRegion zeros_region{0.0, 1.0, 0.0, 100.0};
    zetalab::SweepSpec sweep;
    zetalab::KroneckerQuery kronecker;
    zetalab::ShiftExperiment density;
    zetalab::PipelineSpec pipeline;
    zetalab::RemarkScanSpec remark;

    /// Revalidates every nested invariant; throws ConfigError.
    void validate() const;
};

/// Parses and validates.  Error messages carry "<filename>:<line>: ..." with
/// the line of the offending key where it can be located in the source text.
ExperimentConfig parse_config(const std::string& text, const std::string& filename);

ExperimentConfig load_config_file(const std::string& path);

/// Canonical JSON form; parse_config(serialize_config(c).dump(), "-") yields
/// a config that serializes identically (round-trip identity).
nlohmann::json serialize_config(const ExperimentConfig& config);

bool operator==(const ExperimentConfig& lhs, const ExperimentConfig& rhs);

}  // namespace lab

#endif
