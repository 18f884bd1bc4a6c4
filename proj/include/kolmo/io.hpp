#pragma once

#include "kolmo/holder.hpp"
#include "kolmo/point.hpp"
#include "kolmo/structure.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace kolmo::io {

/// Parses {"block_sizes": [p0, ..., pr], "matrix": [[row], ...]} and validates it.
/// Malformed documents throw ValidationError; structural failures throw the
/// specific validate_structure() errors.
KolmogorovStructure structure_from_json(const nlohmann::json& doc);
KolmogorovStructure structure_from_text(std::string_view text);
/// Throws std::runtime_error if the file cannot be read.
KolmogorovStructure load_structure(const std::string& path);
nlohmann::json structure_to_json(const KolmogorovStructure& structure);

/// "a,b,c" -> {a, b, c}. Throws ValidationError on malformed entries.
std::vector<double> parse_list(std::string_view text);
Eigen::VectorXd parse_vector(std::string_view text);
/// "t,x1,...,xd"; throws DimensionError when the count is not d + 1.
GroupPoint parse_point(std::string_view text, int dimension);
/// "t,x1,...,xd:t,x1,...,xd" (lower corner, upper corner).
Box parse_box(std::string_view text, int dimension);

/// 15 significant digits, '.' as decimal separator, independent of the locale.
std::string format(double value);
std::string format(const GroupPoint& z);
/// The value rounded to 15 significant digits, so JSON output carries no more.
double round15(double value);

nlohmann::json to_json(const GroupPoint& z);
nlohmann::json to_json(const Eigen::VectorXd& v);
nlohmann::json to_json(const SeminormReport& report);

} // namespace kolmo::io
