#pragma once

#include <istream>
#include <string>
#include <vector>

#include "timeseries/signal.hpp"

namespace timeseries {

// One line per column: name,kind(continuous|categorical),role(sensor|command)[,categories...]
// Blank lines and lines starting with '#' are skipped.
struct SchemaColumn {
    std::string name;
    bool categorical = false;
    bool is_sensor = false;
    std::vector<std::string> categories;
};

using Schema = std::vector<SchemaColumn>;

Schema parse_schema(std::istream& in);
Schema load_schema(const std::string& path);

FeatureLayout layout_from_schema(const Schema& schema);

} // namespace timeseries
