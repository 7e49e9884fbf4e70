#include "emt/tsplib.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace emt {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Splits "KEY : value" / "KEY: value" / "KEY"-only lines.
bool split_header(const std::string& line, std::string& key, std::string& value) {
    auto pos = line.find(':');
    if (pos == std::string::npos) {
        key = trim(line);
        value.clear();
        return !key.empty();
    }
    key = trim(line.substr(0, pos));
    value = trim(line.substr(pos + 1));
    return !key.empty();
}

} // namespace

int TspInstance::compute_distance(int i, int j) const {
    const double dx = xs_[i - 1] - xs_[j - 1];
    const double dy = ys_[i - 1] - ys_[j - 1];
    return (int)std::floor(std::sqrt(dx * dx + dy * dy) + 0.5);
}

void TspInstance::check_id(int id) const {
    if (id < 1 || id > dimension_)
        throw std::out_of_range("TspInstance::distance: city id " + std::to_string(id) +
                                " out of range 1.." + std::to_string(dimension_));
}

int TspInstance::distance(int i, int j) const {
    check_id(i);
    check_id(j);
    if (!matrix_.empty()) return matrix_[(std::size_t)(i - 1) * dimension_ + (j - 1)];
    return compute_distance(i, j);
}

TspInstance parse_instance(const std::string& text) {
    TspInstance inst;
    std::istringstream in(text);
    std::string line;
    bool saw_dimension = false, saw_ewt = false, in_coords = false, saw_section = false;
    std::vector<char> seen;
    int coords_read = 0;

    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        if (!in_coords) {
            std::string key, value;
            if (!split_header(line, key, value))
                throw TsplibError(TsplibErrorCode::MalformedHeader, "unparseable header line: " + line);
            if (key == "NAME") {
                inst.name_ = value;
            } else if (key == "DIMENSION") {
                try {
                    inst.dimension_ = std::stoi(value);
                } catch (const std::exception&) {
                    throw TsplibError(TsplibErrorCode::MalformedHeader,
                                      "DIMENSION is not an integer: " + value);
                }
                if (inst.dimension_ < 3)
                    throw TsplibError(TsplibErrorCode::BadDimension,
                                      "DIMENSION must be >= 3, got " + value);
                saw_dimension = true;
            } else if (key == "EDGE_WEIGHT_TYPE") {
                if (value != "EUC_2D")
                    throw TsplibError(TsplibErrorCode::UnsupportedEdgeWeightType,
                                      "unsupported EDGE_WEIGHT_TYPE: " + value);
                saw_ewt = true;
            } else if (key == "NODE_COORD_SECTION") {
                if (!saw_dimension)
                    throw TsplibError(TsplibErrorCode::MalformedHeader,
                                      "NODE_COORD_SECTION before DIMENSION");
                if (!saw_ewt)
                    throw TsplibError(TsplibErrorCode::MalformedHeader,
                                      "NODE_COORD_SECTION before EDGE_WEIGHT_TYPE");
                in_coords = true;
                saw_section = true;
                inst.xs_.assign(inst.dimension_, 0.0);
                inst.ys_.assign(inst.dimension_, 0.0);
                seen.assign(inst.dimension_ + 1, 0);
            } else if (key == "TYPE" || key == "COMMENT" || key == "EOF" ||
                       key == "DISPLAY_DATA_TYPE") {
                // ignored
            } else {
                throw TsplibError(TsplibErrorCode::MalformedHeader, "unknown header keyword: " + key);
            }
        } else {
            if (line == "EOF") break;
            std::istringstream ls(line);
            int id;
            double x, y;
            if (!(ls >> id >> x >> y))
                throw TsplibError(TsplibErrorCode::MalformedHeader, "bad node line: " + line);
            if (id < 1 || id > inst.dimension_)
                throw TsplibError(TsplibErrorCode::MissingNodeId,
                                  "node id " + std::to_string(id) + " outside 1.." +
                                      std::to_string(inst.dimension_));
            if (seen[id])
                throw TsplibError(TsplibErrorCode::DuplicateNodeId,
                                  "duplicate node id " + std::to_string(id));
            seen[id] = 1;
            inst.xs_[id - 1] = x;
            inst.ys_[id - 1] = y;
            ++coords_read;
        }
    }
    if (!saw_section)
        throw TsplibError(TsplibErrorCode::MalformedHeader, "missing NODE_COORD_SECTION");
    if (coords_read != inst.dimension_)
        throw TsplibError(TsplibErrorCode::DimensionMismatch,
                          "read " + std::to_string(coords_read) + " coordinates, DIMENSION is " +
                              std::to_string(inst.dimension_));
    for (int id = 1; id <= inst.dimension_; ++id)
        if (!seen[id])
            throw TsplibError(TsplibErrorCode::MissingNodeId,
                              "missing node id " + std::to_string(id));

    if (inst.dimension_ <= TspInstance::kMatrixLimit) {
        inst.matrix_.resize((std::size_t)inst.dimension_ * inst.dimension_);
        for (int i = 1; i <= inst.dimension_; ++i)
            for (int j = 1; j <= inst.dimension_; ++j)
                inst.matrix_[(std::size_t)(i - 1) * inst.dimension_ + (j - 1)] =
                    inst.compute_distance(i, j);
    }
    return inst;
}

TspInstance load_instance_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw TsplibError(TsplibErrorCode::Io, "cannot open instance file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_instance(ss.str());
}

std::string serialize_instance(const TspInstance& inst) {
    std::ostringstream out;
    out << "NAME : " << inst.name() << "\n";
    out << "TYPE : TSP\n";
    out << "DIMENSION : " << inst.dimension() << "\n";
    out << "EDGE_WEIGHT_TYPE : EUC_2D\n";
    out << "NODE_COORD_SECTION\n";
    char buf[64];
    for (int id = 1; id <= inst.dimension(); ++id) {
        auto [x, y] = inst.coord(id);
        std::snprintf(buf, sizeof(buf), "%d %.10g %.10g\n", id, x, y);
        out << buf;
    }
    out << "EOF\n";
    return out.str();
}

long long tour_length(const TspInstance& inst, const Permutation& tour) {
    const int n = tour.dimension();
    if (n != inst.dimension())
        throw std::invalid_argument("tour_length: tour dimension " + std::to_string(n) +
                                    " does not match instance dimension " +
                                    std::to_string(inst.dimension()));
    long long total = 0;
    for (int i = 0; i + 1 < n; ++i) total += inst.distance(tour[i], tour[i + 1]);
    total += inst.distance(tour[n - 1], tour[0]);
    return total;
}

} // namespace emt
