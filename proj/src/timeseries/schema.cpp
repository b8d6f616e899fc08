#include "timeseries/schema.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace timeseries {

namespace {
std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(trim(tok));
    return out;
}
}  // namespace

Schema parse_schema(std::istream& in) {
    Schema schema;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string body = trim(line);
        if (body.empty() || body[0] == '#') continue;
        auto toks = split_commas(body);
        if (toks.size() < 3)
            throw std::invalid_argument("schema line " + std::to_string(line_no) +
                                        ": expected name,kind,role");
        SchemaColumn col;
        col.name = toks[0];
        if (toks[1] == "continuous") {
            col.categorical = false;
        } else if (toks[1] == "categorical") {
            col.categorical = true;
        } else {
            throw std::invalid_argument("schema line " + std::to_string(line_no) +
                                        ": kind must be continuous or categorical");
        }
        if (toks[2] == "sensor") {
            col.is_sensor = true;
        } else if (toks[2] == "command") {
            col.is_sensor = false;
        } else {
            throw std::invalid_argument("schema line " + std::to_string(line_no) +
                                        ": role must be sensor or command");
        }
        col.categories.assign(toks.begin() + 3, toks.end());
        if (col.categorical && col.categories.empty())
            throw std::invalid_argument("schema line " + std::to_string(line_no) +
                                        ": categorical column needs categories");
        if (!col.categorical && !col.categories.empty())
            throw std::invalid_argument("schema line " + std::to_string(line_no) +
                                        ": continuous column must not list categories");
        if (col.is_sensor && col.categorical)
            throw std::invalid_argument("schema line " + std::to_string(line_no) +
                                        ": sensor columns must be continuous");
        schema.push_back(std::move(col));
    }
    if (schema.empty()) throw std::invalid_argument("schema: no columns defined");
    return schema;
}

Schema load_schema(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open schema file: " + path);
    return parse_schema(in);
}

FeatureLayout layout_from_schema(const Schema& schema) {
    FeatureLayout layout;
    Eigen::Index offset = 0;
    for (const auto& col : schema) {
        if (col.is_sensor) {
            layout.sensor_names.push_back(col.name);
            continue;
        }
        CommandGroup g;
        g.name = col.name;
        g.categorical = col.categorical;
        g.categories = col.categories;
        g.offset = offset;
        g.width = col.categorical ? static_cast<Eigen::Index>(col.categories.size()) : 1;
        offset += g.width;
        layout.command_groups.push_back(std::move(g));
    }
    return layout;
}

} // namespace timeseries
