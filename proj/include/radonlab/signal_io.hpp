#pragma once

// CSV and JSON forms of signals. Values are written with 17 significant
// digits so that a round trip is exact.
//
//   CSV, one row per cell:   index,value            (1D)
//                            i1,...,id,value        (dD, sparse)
//   JSON:  {"offset": o, "values": [...]}                       (1D)
//          {"offsets": [...], "extents": [...], "values": [...]} (dD, row-major)
//          {"dims": d, "points": [[...], ...], "values": [...]}  (sparse)

#include <string>

#include <json.hpp>

#include "radonlab/signal.hpp"

namespace radonlab {

std::string format_double(double v);

std::string to_csv(const Signal1D& f);
std::string to_csv(const SignalD& f);
std::string to_csv(const SparseSignal& f);

/// Rows may come in any order; a header line (first field not an integer) is
/// skipped. Missing cells of the bounding window are zero.
Signal1D signal1d_from_csv(const std::string& text);
SignalD signald_from_csv(const std::string& text);
SparseSignal sparse_from_csv(const std::string& text);

nlohmann::json to_json(const Signal1D& f);
nlohmann::json to_json(const SignalD& f);
nlohmann::json to_json(const SparseSignal& f);

Signal1D signal1d_from_json(const nlohmann::json& j);
SignalD signald_from_json(const nlohmann::json& j);
SparseSignal sparse_from_json(const nlohmann::json& j);

}  // namespace radonlab
