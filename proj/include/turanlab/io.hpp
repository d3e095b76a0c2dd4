#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "turanlab/estimate.hpp"
#include "turanlab/geometry.hpp"
#include "turanlab/measure.hpp"
#include "turanlab/turan.hpp"

namespace turanlab {

/// Malformed or inconsistent user input (CLI exit code 2).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses a JSON document; syntax errors report line and column.
nlohmann::json parse_json(const std::string& text, const std::string& source = "<input>");
nlohmann::json load_json(const std::filesystem::path& path);

/// {"kind":"polygon","vertices":[[x,y],...]} or {"kind":"disk","center":[x,y],"radius":r}.
ConvexBody body_from_json(const nlohmann::json& j);
/// {"kind":"boundary_arclength"} | {"kind":"area"} | {"kind":"discrete","atoms":[[x,y,m],...]}
/// | {"kind":"weighted","base":"area"|"boundary_arclength","density":"const"|"gaussian"|"poly","params":{...}}.
///
/// Densities: const {"value"}; gaussian {"center":[x,y],"sigma","amplitude"=1};
/// poly {"terms":[[i,j,c],...]} for sum c x^i y^j.
MeasureModel measure_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ConvexBody& body);
nlohmann::json to_json(const DiameterPair& pair);
nlohmann::json to_json(const AffineNormalization& map);
nlohmann::json to_json(const WitnessSpec& spec);
nlohmann::json to_json(const TheoremReport& report);
nlohmann::json to_json(const EstimateResult& result);
nlohmann::json to_json(const OracleResult& result);
nlohmann::json complex_json(Complex z);

/// Numbers that JSON cannot carry (inf, nan) are written as strings.
nlohmann::json number_json(double x);

}  // namespace turanlab
