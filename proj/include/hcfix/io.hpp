#pragma once

// Output records and deterministic serialization for the CLI.
//
// JSON: one object per invocation, schema_version "1".  CSV: header row,
// comma delimiter, "." decimal point.  All coordinates are serialized
// with 17 significant digits so re-parsing reproduces them bit-exactly.

#include <optional>
#include <string>
#include <vector>

#include "hcfix/regions.hpp"

namespace hcfix {

/// %.17g rendering; round-trips any finite double.
std::string format_double(double v);

/// One CSV row; no quoting (fields are numeric or simple tokens).
std::string csv_row(const std::vector<std::string>& fields);

struct FixedPointRecord {
    std::string kind;  // "diagonal" | "offdiag"
    double x = 0.0;
    double y = 0.0;
    double residual = 0.0;
};

struct LiftedRecord {
    double source_x = 0.0;  // the 2D fixed point this vector lifts
    double source_y = 0.0;
    std::vector<double> entries;
    double residual = 0.0;
};

struct RegionRecord {
    std::optional<std::string> formula;  // nullopt => "unassigned"
    std::string computed;
    int diag_count = 0;
    int offdiag_count = 0;
    std::vector<std::string> on_boundary;
    bool agreement = false;  // formula (when assigned) equals computed
};

struct OracleCheckRecord {
    bool match = false;
    int solver_points = 0;
    int oracle_points = 0;
    double max_mismatch = 0.0;
};

/// The single JSON object emitted by classify / fixpoints.
struct OutputRecord {
    std::string command;
    double theta = 0.0;
    double ell1 = 0.0;
    double ell2 = 0.0;
    std::optional<RegionRecord> region;
    std::vector<FixedPointRecord> fixed_points;
    std::vector<LiftedRecord> lifted;
    std::optional<OracleCheckRecord> oracle_check;
};

std::string to_json(const OutputRecord& rec);

}  // namespace hcfix
