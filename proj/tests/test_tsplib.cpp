#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "emt/rng.hpp"
#include "emt/tsplib.hpp"

using namespace emt;

namespace {

std::string instance_text(const std::string& name,
                          const std::vector<std::pair<double, double>>& coords) {
    std::string s;
    s += "NAME : " + name + "\n";
    s += "TYPE : TSP\n";
    s += "DIMENSION : " + std::to_string(coords.size()) + "\n";
    s += "EDGE_WEIGHT_TYPE : EUC_2D\n";
    s += "NODE_COORD_SECTION\n";
    for (std::size_t i = 0; i < coords.size(); ++i)
        s += std::to_string(i + 1) + " " + std::to_string(coords[i].first) + " " +
             std::to_string(coords[i].second) + "\n";
    s += "EOF\n";
    return s;
}

const std::vector<std::pair<double, double>> kUnitSquare = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};

TspInstance random_instance(int n, Rng& rng) {
    std::vector<std::pair<double, double>> coords;
    for (int i = 0; i < n; ++i)
        coords.push_back({rng.uniform_real(0, 1000), rng.uniform_real(0, 1000)});
    return parse_instance(instance_text("rand" + std::to_string(n), coords));
}

} // namespace

TEST_CASE("parse minimal 3-node instance") {
    TspInstance inst = parse_instance(instance_text("tri", {{0, 0}, {3, 4}, {0, 4}}));
    CHECK(inst.name() == "tri");
    CHECK(inst.dimension() == 3);
    CHECK(inst.coord(2) == std::pair<double, double>{3, 4});
}

TEST_CASE("parse accepts node lines in any order") {
    std::string text = "NAME : shuffled\nTYPE : TSP\nDIMENSION : 3\n"
                       "EDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n"
                       "2 3 4\n3 0 4\n1 0 0\nEOF\n";
    TspInstance inst = parse_instance(text);
    CHECK(inst.coord(1) == std::pair<double, double>{0, 0});
    CHECK(inst.coord(2) == std::pair<double, double>{3, 4});
}

TEST_CASE("parse errors are distinct") {
    const auto coords3 = std::vector<std::pair<double, double>>{{0, 0}, {3, 4}, {0, 4}};

    SUBCASE("malformed header") {
        std::string text = instance_text("x", coords3);
        text.insert(0, "WHATISTHIS : 1\n");
        CHECK_THROWS_WITH_AS(parse_instance(text), doctest::Contains("unknown header keyword"),
                             TsplibError);
        try {
            parse_instance(text);
        } catch (const TsplibError& e) {
            CHECK(e.code() == TsplibErrorCode::MalformedHeader);
        }
    }
    SUBCASE("unsupported edge weight type") {
        std::string text = instance_text("x", coords3);
        auto pos = text.find("EUC_2D");
        text.replace(pos, 6, "GEO");
        try {
            parse_instance(text);
            FAIL("expected TsplibError");
        } catch (const TsplibError& e) {
            CHECK(e.code() == TsplibErrorCode::UnsupportedEdgeWeightType);
        }
    }
    SUBCASE("missing node id") {
        std::string text = "NAME : x\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : EUC_2D\n"
                           "NODE_COORD_SECTION\n1 0 0\n3 1 1\n1 2 2\nEOF\n";
        // node 1 duplicated, node 2 missing: duplicate reported first
        try {
            parse_instance(text);
            FAIL("expected TsplibError");
        } catch (const TsplibError& e) {
            CHECK(e.code() == TsplibErrorCode::DuplicateNodeId);
        }
    }
    SUBCASE("missing id detected after section") {
        std::string text = "NAME : x\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : EUC_2D\n"
                           "NODE_COORD_SECTION\n1 0 0\n2 1 1\n4 2 2\nEOF\n";
        try {
            parse_instance(text);
            FAIL("expected TsplibError");
        } catch (const TsplibError& e) {
            CHECK(e.code() == TsplibErrorCode::MissingNodeId);
        }
    }
    SUBCASE("dimension mismatch") {
        std::string text = "NAME : x\nDIMENSION : 4\nEDGE_WEIGHT_TYPE : EUC_2D\n"
                           "NODE_COORD_SECTION\n1 0 0\n2 1 1\n3 2 2\nEOF\n";
        try {
            parse_instance(text);
            FAIL("expected TsplibError");
        } catch (const TsplibError& e) {
            CHECK(e.code() == TsplibErrorCode::DimensionMismatch);
        }
    }
    SUBCASE("dimension below 3") {
        std::string text = "NAME : x\nDIMENSION : 2\nEDGE_WEIGHT_TYPE : EUC_2D\n"
                           "NODE_COORD_SECTION\n1 0 0\n2 1 1\nEOF\n";
        try {
            parse_instance(text);
            FAIL("expected TsplibError");
        } catch (const TsplibError& e) {
            CHECK(e.code() == TsplibErrorCode::BadDimension);
        }
    }
}

TEST_CASE("distance follows the nearest-integer convention") {
    TspInstance inst =
        parse_instance(instance_text("d", {{0, 0}, {3, 4}, {1, 1}, {2, 7}, {2, 7}}));
    CHECK(inst.distance(1, 2) == 5); // 3-4-5 triangle
    CHECK(inst.distance(1, 3) == 1); // floor(sqrt(2) + 0.5)
    CHECK(inst.distance(4, 5) == 0); // identical points
    CHECK(inst.distance(2, 1) == 5);
    CHECK_THROWS_AS((void)inst.distance(0, 1), std::out_of_range);
    CHECK_THROWS_AS((void)inst.distance(1, 6), std::out_of_range);
}

TEST_CASE("distance is symmetric, integer, zero on the diagonal") {
    Rng rng(99);
    TspInstance inst = random_instance(30, rng);
    for (int i = 1; i <= 30; ++i) {
        CHECK(inst.distance(i, i) == 0);
        for (int j = i + 1; j <= 30; ++j) {
            CHECK(inst.distance(i, j) == inst.distance(j, i));
            CHECK(inst.distance(i, j) >= 0);
        }
    }
}

TEST_CASE("tour_length on the unit square") {
    TspInstance square = parse_instance(instance_text("sq", kUnitSquare));
    CHECK(tour_length(square, Permutation({1, 2, 3, 4})) == 4); // perimeter
    CHECK(tour_length(square, Permutation({1, 3, 2, 4})) == 4); // two rounded diagonals
    CHECK(tour_length(square, Permutation({4, 3, 2, 1})) == 4); // reversal
    CHECK_THROWS_AS(tour_length(square, Permutation({1, 2, 3})), std::invalid_argument);
}

TEST_CASE("tour_length is invariant under rotation and reversal") {
    Rng rng(7);
    TspInstance inst = random_instance(24, rng);
    for (int trial = 0; trial < 200; ++trial) {
        Permutation tour = Permutation::random(24, rng);
        const long long len = tour_length(inst, tour);

        std::vector<int> rotated = tour.order();
        std::rotate(rotated.begin(), rotated.begin() + (int)rng.bounded(24), rotated.end());
        CHECK(tour_length(inst, Permutation(std::move(rotated))) == len);

        std::vector<int> reversed(tour.order().rbegin(), tour.order().rend());
        CHECK(tour_length(inst, Permutation(std::move(reversed))) == len);
    }
}

TEST_CASE("vendored instances parse with their manifest dimensions") {
    const std::pair<const char*, int> expected[] = {
        {"pr76", 76},   {"pr107", 107}, {"pr124", 124}, {"pr136", 136},
        {"pr144", 144}, {"pr152", 152}, {"pr226", 226}, {"pr264", 264}};
    for (const auto& [name, dim] : expected) {
        TspInstance inst = load_instance_file(std::string(EMT_DATA_DIR) + "/" + name + ".tsp");
        CHECK(inst.name() == name);
        CHECK(inst.dimension() == dim);
    }
}

TEST_CASE("serialize then reparse preserves coordinates") {
    Rng rng(5);
    TspInstance inst = random_instance(12, rng);
    TspInstance again = parse_instance(serialize_instance(inst));
    REQUIRE(again.dimension() == inst.dimension());
    for (int id = 1; id <= inst.dimension(); ++id) CHECK(again.coord(id) == inst.coord(id));
    for (int i = 1; i <= inst.dimension(); ++i)
        for (int j = 1; j <= inst.dimension(); ++j) CHECK(again.distance(i, j) == inst.distance(i, j));
}
