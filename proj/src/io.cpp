#include "kolmo/io.hpp"

#include "kolmo/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace kolmo::io {

namespace {

double parse_double(std::string_view text)
{
    while (!text.empty() && text.front() == ' ') {
        text.remove_prefix(1);
    }
    while (!text.empty() && text.back() == ' ') {
        text.remove_suffix(1);
    }
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double v = 0.0;
    const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || p != text.data() + text.size() || !std::isfinite(v)) {
        throw ValidationError("malformed number '" + std::string(text) + "'");
    }
    return v;
}

} // namespace

KolmogorovStructure structure_from_json(const nlohmann::json& doc)
{
    if (!doc.is_object() || !doc.contains("block_sizes") || !doc.contains("matrix")) {
        throw ValidationError(R"(structure JSON needs "block_sizes" and "matrix")");
    }
    const auto& sizes = doc.at("block_sizes");
    const auto& rows = doc.at("matrix");
    if (!sizes.is_array() || !rows.is_array()) {
        throw ValidationError(R"("block_sizes" and "matrix" must be arrays)");
    }
    std::vector<int> blocks;
    for (const auto& p : sizes) {
        if (!p.is_number_integer()) {
            throw ValidationError("block sizes must be integers");
        }
        blocks.push_back(p.get<int>());
    }
    const auto d = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd b(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const auto& row = rows[i];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) {
            throw BlockShapeError("matrix must be square with " + std::to_string(d) + " entries per row");
        }
        for (Eigen::Index j = 0; j < d; ++j) {
            if (!row[j].is_number()) {
                throw ValidationError("matrix entries must be numbers");
            }
            b(i, j) = row[j].get<double>();
        }
    }
    return validate_structure(b, std::move(blocks));
}

KolmogorovStructure structure_from_text(std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("structure is not valid JSON: ") + e.what());
    }
    return structure_from_json(doc);
}

KolmogorovStructure load_structure(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open structure file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return structure_from_text(buffer.str());
}

nlohmann::json structure_to_json(const KolmogorovStructure& structure)
{
    nlohmann::json rows = nlohmann::json::array();
    const Eigen::MatrixXd& b = structure.matrix();
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < b.cols(); ++j) {
            row.push_back(b(i, j));
        }
        rows.push_back(std::move(row));
    }
    return {{"block_sizes", structure.block_sizes()}, {"matrix", std::move(rows)}};
}

std::vector<double> parse_list(std::string_view text)
{
    std::vector<double> out;
    if (text.empty()) {
        throw ValidationError("empty number list");
    }
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        out.push_back(parse_double(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

Eigen::VectorXd parse_vector(std::string_view text)
{
    const auto values = parse_list(text);
    return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

GroupPoint parse_point(std::string_view text, int dimension)
{
    const Eigen::VectorXd v = parse_vector(text);
    if (v.size() != dimension + 1) {
        throw DimensionError("point '" + std::string(text) + "' needs " + std::to_string(dimension + 1) +
                             " coordinates (t,x1,...,xd)");
    }
    return GroupPoint::from_stacked(v);
}

Box parse_box(std::string_view text, int dimension)
{
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw ValidationError("box must read lower:upper, each corner as t,x1,...,xd");
    }
    return {parse_point(text.substr(0, colon), dimension), parse_point(text.substr(colon + 1), dimension)};
}

std::string format(double value)
{
    if (value == 0.0) {
        return "0"; // no "-0"
    }
    char buf[32];
    // to_chars is locale independent
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 15);
    return std::string(buf, ec == std::errc() ? p : buf);
}

std::string format(const GroupPoint& z)
{
    std::string out = format(z.t);
    for (Eigen::Index i = 0; i < z.x.size(); ++i) {
        out += "," + format(z.x(i));
    }
    return out;
}

double round15(double value)
{
    if (!std::isfinite(value)) {
        return value;
    }
    return parse_double(format(value));
}

nlohmann::json to_json(const GroupPoint& z)
{
    nlohmann::json out = nlohmann::json::array();
    out.push_back(round15(z.t));
    for (Eigen::Index i = 0; i < z.x.size(); ++i) {
        out.push_back(round15(z.x(i)));
    }
    return out;
}

nlohmann::json to_json(const Eigen::VectorXd& v)
{
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(round15(v(i)));
    }
    return out;
}

nlohmann::json to_json(const SeminormReport& report)
{
    nlohmann::json out = {
        {"value", round15(report.value)},
        {"grid", report.grid},
        {"delta_omega0", round15(report.delta_omega0)},
    };
    if (report.argmax) {
        out["argmax"] = {
            {"z", to_json(report.argmax->z)},
            {"delta", round15(report.argmax->delta)},
            {"field", report.argmax->field},
        };
    } else {
        out["argmax"] = nullptr;
    }
    return out;
}

} // namespace kolmo::io
