#pragma once

#include <istream>
#include <string>

#include "timeseries/schema.hpp"
#include "timeseries/signal.hpp"

namespace timeseries {

// Reads a comma-separated file with a header row into one Signal per data
// row. Columns are matched to the schema by header name; extra file columns
// are ignored. Bad cells are rejected with their 1-based file line number.
Dataset load_csv(std::istream& in, const Schema& schema);
Dataset load_csv_file(const std::string& path, const Schema& schema);

} // namespace timeseries
