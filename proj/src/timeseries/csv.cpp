#include "timeseries/csv.hpp"

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
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}
}  // namespace

Dataset load_csv(std::istream& in, const Schema& schema) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv: missing header row");
    auto header = split_commas(line);

    std::vector<std::size_t> column_of(schema.size());
    for (std::size_t i = 0; i < schema.size(); ++i) {
        bool found = false;
        for (std::size_t j = 0; j < header.size(); ++j) {
            if (header[j] == schema[i].name) {
                column_of[i] = j;
                found = true;
                break;
            }
        }
        if (!found)
            throw std::runtime_error("csv line 1: missing column '" + schema[i].name + "'");
    }

    Dataset ds;
    ds.layout = layout_from_schema(schema);
    const Eigen::Index m = ds.layout.sensor_count();
    const Eigen::Index n = ds.layout.command_width();

    int line_no = 1;
    std::size_t t = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto cells = split_commas(line);

        Signal sig;
        sig.t = t++;
        sig.y.resize(m);
        sig.u.resize(n);

        Eigen::Index yi = 0;
        std::size_t group = 0;
        for (std::size_t i = 0; i < schema.size(); ++i) {
            if (column_of[i] >= cells.size())
                throw std::runtime_error("csv line " + std::to_string(line_no) +
                                         ": missing cell for column '" + schema[i].name + "'");
            const std::string& cell = cells[column_of[i]];
            if (schema[i].is_sensor || !schema[i].categorical) {
                double value = 0.0;
                try {
                    std::size_t pos = 0;
                    value = std::stod(cell, &pos);
                    if (pos != cell.size()) throw std::invalid_argument("trailing junk");
                } catch (const std::exception&) {
                    throw std::runtime_error("csv line " + std::to_string(line_no) +
                                             ": non-numeric value '" + cell + "' in column '" +
                                             schema[i].name + "'");
                }
                if (schema[i].is_sensor) {
                    sig.y(yi++) = value;
                } else {
                    sig.u(ds.layout.command_groups[group].offset) = value;
                    ++group;
                }
            } else {
                const CommandGroup& g = ds.layout.command_groups[group];
                Vector enc;
                try {
                    enc = onehot_encode(cell, g.categories);
                } catch (const std::exception&) {
                    throw std::runtime_error("csv line " + std::to_string(line_no) +
                                             ": unknown category '" + cell + "' in column '" +
                                             schema[i].name + "'");
                }
                sig.u.segment(g.offset, g.width) = enc;
                ++group;
            }
        }
        ds.signals.push_back(std::move(sig));
    }
    return ds;
}

Dataset load_csv_file(const std::string& path, const Schema& schema) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open csv file: " + path);
    return load_csv(in, schema);
}

} // namespace timeseries
