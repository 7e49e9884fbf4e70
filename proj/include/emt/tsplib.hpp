#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "emt/permutation.hpp"

namespace emt {

enum class TsplibErrorCode {
    MalformedHeader,
    UnsupportedEdgeWeightType,
    BadDimension,
    MissingNodeId,
    DuplicateNodeId,
    DimensionMismatch,
    Io,
};

class TsplibError : public std::runtime_error {
  public:
    TsplibError(TsplibErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    TsplibErrorCode code() const { return code_; }

  private:
    TsplibErrorCode code_;
};

// A parsed EUC_2D TSPLIB instance. Immutable after parsing; safe to share
// across threads. Distances are the TSPLIB nearest-integer Euclidean values.
class TspInstance {
  public:
    const std::string& name() const { return name_; }
    int dimension() const { return dimension_; }

    // 1-based node id -> (x, y)
    std::pair<double, double> coord(int id) const {
        return {xs_[id - 1], ys_[id - 1]};
    }

    // TSPLIB EUC_2D distance: floor(euclidean + 0.5). Ids are 1-based.
    int distance(int i, int j) const;

    // No bounds checks; callers guarantee 1 <= i, j <= dimension. The hot
    // path for operator scans and tour sums.
    int distance_unchecked(int i, int j) const {
        if (!matrix_.empty()) return matrix_[(std::size_t)(i - 1) * dimension_ + (j - 1)];
        return compute_distance(i, j);
    }

    friend TspInstance parse_instance(const std::string& text);

  private:
    std::string name_;
    int dimension_ = 0;
    std::vector<double> xs_, ys_;
    std::vector<std::int32_t> matrix_; // empty when dimension > kMatrixLimit

    static constexpr int kMatrixLimit = 1000;
    int compute_distance(int i, int j) const;
    void check_id(int id) const;
};

TspInstance parse_instance(const std::string& text);
TspInstance load_instance_file(const std::string& path);

// Canonical TSPLIB text for a parsed instance (coordinate values preserved).
std::string serialize_instance(const TspInstance& inst);

// Closed-tour length: consecutive edges plus the edge from last back to
// first city. Pure; budget accounting happens in the evaluation layer.
long long tour_length(const TspInstance& inst, const Permutation& tour);

} // namespace emt
