#pragma once

#include <string>
#include <vector>

#include "llab/harness.hpp"
#include "llab/maps.hpp"
#include "llab/matrix.hpp"

namespace llab {

// JSON exchange formats.
//
//   Hermitian matrix   {"dim": n, "re": [[..]], "im": [[..]]}
//                      ("im" optional, defaults to zeros)
//   rectangular matrix {"rows": r, "cols": c, "re": [[..]], "im": [[..]]}
//   operator field     [{"weight": w, "matrix": <matrix>}, ...]
//   map                {"kind": "compression", "inDim": n, "indices": [..]}
//                      {"kind": "kraus", "factors": [<rect matrix>, ..]}
//                      {"kind": "dsavg", "blockDims": [..], "weights": [..]}
//                      {"kind": "pinching", "projections": [<rect matrix>, ..]}
//   campaign config    {"checks": [..], "dims": [..], "trials": n,
//                       "seed": u64, "tolerance": t, "function": "spec"}
//
// Every key of the campaign config is optional; omitted keys keep the
// defaults of CampaignConfig (checks defaulting to the full registry).
// Malformed syntax raises ParseError with the byte offset; structural
// problems (wrong type, unknown key, bad shape) raise ConfigError.

HermitianMatrix matrix_from_json(const std::string& text);
std::string matrix_to_json(const HermitianMatrix& a);

OperatorField field_from_json(const std::string& text);
PositiveLinearMap map_from_json(const std::string& text);
CampaignConfig campaign_config_from_json(const std::string& text);

HermitianMatrix load_matrix(const std::string& path);
OperatorField load_field(const std::string& path);
PositiveLinearMap load_map(const std::string& path);
CampaignConfig load_campaign_config(const std::string& path);

std::string read_text_file(const std::string& path);

// JSON-lines campaign report: one summary line per check
//   {"check": .., "seed": .., "dims": [..], "verdict": "pass"|"fail",
//    "minEig": worst slack, "tolerance": ..}
// followed by one line per recorded failure with verdict "violation",
// the reproduction seed, and the witness eigenvalue.
std::string report_lines(const std::vector<CheckResult>& results);

std::string classifier_verdict_to_json(const ClassifierVerdict& v);

// Aligned human-readable table, `precision` decimals. Imaginary parts are
// printed only when some entry has one beyond display precision.
std::string format_matrix(const HermitianMatrix& a, int precision = 4);

}  // namespace llab
