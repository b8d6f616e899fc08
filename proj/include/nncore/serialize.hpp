#pragma once

#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "nncore/params.hpp"

namespace nncore {

// Flat named-tensor text format: per tensor a header line "name rows cols"
// followed by the values row by row. Snapshot files may prepend key=value
// lines; a '=' in the line tells the two apart.
struct Snapshot {
    std::map<std::string, std::string> fields;
    ParamSet params;
};

inline void write_tensor_block(std::ostream& os, const std::string& name, const Matrix& m) {
    os << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
    os << std::setprecision(17);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) os << ' ';
            os << m(r, c);
        }
        os << '\n';
    }
}

inline void write_snapshot(std::ostream& os, const Snapshot& snap) {
    for (const auto& [k, v] : snap.fields) os << k << '=' << v << '\n';
    for (const auto& [name, e] : snap.params) write_tensor_block(os, name, e.value);
}

inline Snapshot read_snapshot(std::istream& is) {
    Snapshot snap;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq != std::string::npos) {
            snap.fields[line.substr(0, eq)] = line.substr(eq + 1);
            continue;
        }
        std::istringstream header(line);
        std::string name;
        Eigen::Index rows = 0, cols = 0;
        if (!(header >> name >> rows >> cols) || rows < 0 || cols < 0)
            throw std::runtime_error("snapshot: bad tensor header: " + line);
        ParamEntry& e = snap.params.add(name, rows, cols);
        for (Eigen::Index r = 0; r < rows; ++r)
            for (Eigen::Index c = 0; c < cols; ++c)
                if (!(is >> e.value(r, c)))
                    throw std::runtime_error("snapshot: truncated tensor " + name);
        is.ignore();  // trailing newline
    }
    return snap;
}

} // namespace nncore
