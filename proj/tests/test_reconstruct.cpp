#include <doctest.h>

#include <cstdint>
#include <vector>

#include "stereotk/error.hpp"
#include "stereotk/reconstruct.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace stereotk;

namespace {

constexpr std::int16_t U = DisparityMap::kUnknown;

DisparityMap row_map(const std::vector<std::int16_t>& row) {
    DisparityMap map(static_cast<int>(row.size()), 1);
    map.values = row;
    return map;
}

DisparityMap column_map(const std::vector<std::int16_t>& column) {
    DisparityMap map(1, static_cast<int>(column.size()));
    map.values = column;
    return map;
}

} // namespace

TEST_CASE("equal flanking disparities fill the gap between them") {
    DisparityMap map = row_map({5, U, U, 5});
    CHECK(fill_scanlines(map).values == std::vector<std::int16_t>{5, 5, 5, 5});
}

TEST_CASE("unequal flanking disparities leave the gap alone") {
    DisparityMap map = row_map({5, U, U, 7});
    CHECK(fill_scanlines(map).values == map.values);
}

TEST_CASE("each consecutive pair is considered separately") {
    DisparityMap map = row_map({3, U, 3, U, 9});
    CHECK(fill_scanlines(map).values ==
          std::vector<std::int16_t>{3, 3, 3, U, 9});
}

TEST_CASE("pixels outside the first and last knowns stay unknown") {
    DisparityMap map = row_map({U, U, 2, U, 2, U});
    CHECK(fill_scanlines(map).values ==
          std::vector<std::int16_t>{U, U, 2, 2, 2, U});
}

TEST_CASE("row filling matches the simulation on random rows") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::int16_t> row(64, U);
        const int percent = 5 + static_cast<int>(rng() % 46);
        for (auto& v : row) {
            if (rng() % 100 < static_cast<std::uint32_t>(percent)) {
                v = static_cast<std::int16_t>(rng() % 16);
            }
        }
        DisparityMap filled = fill_scanlines(row_map(row));
        REQUIRE(filled.values == oracle::simulate_row_fill(row));
    }
}

TEST_CASE("a close vertical pair averages, a far pair peeks the smaller") {
    CHECK(peek_columns(column_map({4, U, 10}), 1).values ==
          std::vector<std::int16_t>{4, 4, 10});
    CHECK(peek_columns(column_map({6, U, 7}), 1).values ==
          std::vector<std::int16_t>{6, 6, 7});
    CHECK(peek_columns(column_map({6, U, 6}), 0).values ==
          std::vector<std::int16_t>{6, 6, 6});
}

TEST_CASE("rows above or below all knowns peek the two nearest that side") {
    // Above everything: nearest two downward are 3 then 7.
    CHECK(peek_columns(column_map({U, 3, 7}), 1).values ==
          std::vector<std::int16_t>{3, 3, 7});
    CHECK(peek_columns(column_map({U, 3, 7}), 4).values ==
          std::vector<std::int16_t>{5, 3, 7});
    // Below everything: nearest two upward are 7 (row 1) then 3 (row 0).
    CHECK(peek_columns(column_map({3, 7, U}), 4).values ==
          std::vector<std::int16_t>{3, 7, 5});
}

TEST_CASE("a column with one known copies it everywhere") {
    CHECK(peek_columns(column_map({U, 3, U, U}), 1).values ==
          std::vector<std::int16_t>{3, 3, 3, 3});
}

TEST_CASE("an empty column stays unknown") {
    CHECK(peek_columns(column_map({U, U, U}), 1).values ==
          std::vector<std::int16_t>{U, U, U});
}

TEST_CASE("column peeking matches the simulation on random columns") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::int16_t> column(48, U);
        const int percent = 5 + static_cast<int>(rng() % 46);
        for (auto& v : column) {
            if (rng() % 100 < static_cast<std::uint32_t>(percent)) {
                v = static_cast<std::int16_t>(rng() % 16);
            }
        }
        for (int threshold : {0, 1}) {
            DisparityMap peeked = peek_columns(column_map(column), threshold);
            auto forward = oracle::simulate_column_peek(column, threshold);
            auto backward =
                oracle::simulate_column_peek(column, threshold, true);
            REQUIRE(peeked.values == forward);
            // A snapshot pass cannot depend on the processing order.
            REQUIRE(peeked.values == backward);
        }
    }
}

TEST_CASE("both passes agree with per-line simulation on full maps") {
    for (std::uint32_t seed = 0; seed < 10; ++seed) {
        DisparityMap sparse = synthetic::random_sparse(32, 24, 600 + seed,
                                                       12, 15);
        DisparityMap filled = fill_scanlines(sparse);
        for (int y = 0; y < 24; ++y) {
            std::vector<std::int16_t> row(32);
            for (int x = 0; x < 32; ++x) row[x] = sparse.at(x, y);
            auto want = oracle::simulate_row_fill(row);
            for (int x = 0; x < 32; ++x) {
                REQUIRE(filled.at(x, y) == want[x]);
            }
        }
        for (int threshold : {0, 1}) {
            DisparityMap dense = peek_columns(filled, threshold);
            for (int x = 0; x < 32; ++x) {
                std::vector<std::int16_t> column(24);
                for (int y = 0; y < 24; ++y) column[y] = filled.at(x, y);
                auto want = oracle::simulate_column_peek(column, threshold);
                for (int y = 0; y < 24; ++y) {
                    REQUIRE(dense.at(x, y) == want[y]);
                }
            }
        }
    }
}

TEST_CASE("neither pass ever modifies a known pixel") {
    DisparityMap sparse = synthetic::random_sparse(40, 28, 21, 18, 12);
    DisparityMap filled = fill_scanlines(sparse);
    DisparityMap dense = peek_columns(filled, 1);
    for (int y = 0; y < 28; ++y) {
        for (int x = 0; x < 40; ++x) {
            if (sparse.known(x, y)) {
                REQUIRE(filled.at(x, y) == sparse.at(x, y));
            }
            if (filled.known(x, y)) {
                REQUIRE(dense.at(x, y) == filled.at(x, y));
            }
        }
    }
}

TEST_CASE("reconstruction is identical for every worker count") {
    DisparityMap sparse = synthetic::random_sparse(52, 36, 22, 15, 14);
    DisparityMap filled = fill_scanlines(sparse, 1);
    DisparityMap dense = peek_columns(filled, 1, 1);
    for (int workers : {2, 4, 8}) {
        CHECK(fill_scanlines(sparse, workers).values == filled.values);
        CHECK(peek_columns(filled, 1, workers).values == dense.values);
    }
}

TEST_CASE("negative peek thresholds are rejected") {
    DisparityMap map(4, 4);
    CHECK_THROWS_AS(peek_columns(map, -1), ParamError);
}
