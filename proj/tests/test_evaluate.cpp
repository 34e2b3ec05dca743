#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "stereotk/error.hpp"
#include "stereotk/evaluate.hpp"
#include "stereotk/image.hpp"
#include "support.hpp"
#include "synthetic.hpp"

using namespace stereotk;

namespace {

constexpr std::int16_t U = DisparityMap::kUnknown;

DisparityMap map_of(int width, int height,
                    const std::vector<std::int16_t>& values) {
    DisparityMap map(width, height);
    map.values = values;
    return map;
}

} // namespace

TEST_CASE("comparing a map against itself yields a zero rate") {
    DisparityMap map = synthetic::random_sparse(16, 12, 50, 60, 10);
    EvalResult result = bad_pixel_rate(map, map, 1.0);
    CHECK(result.bad_pixel_rate == 0.0);
    CHECK(result.compared == map.known_count());
    CHECK(result.compared + result.excluded == map.values.size());
}

TEST_CASE("one bad pixel in four gives a quarter") {
    DisparityMap computed = map_of(2, 2, {5, 5, 7, 2});
    DisparityMap truth = map_of(2, 2, {5, 6, 9, 2});
    EvalResult result = bad_pixel_rate(computed, truth, 1.0);
    CHECK(result.bad_pixel_rate == doctest::Approx(0.25));
    CHECK(result.compared == 4);
    CHECK(result.excluded == 0);
    CHECK(result.delta_d == 1.0);

    // delta 0 also flags the off-by-one pixel.
    CHECK(bad_pixel_rate(computed, truth, 0.0).bad_pixel_rate ==
          doctest::Approx(0.5));
}

TEST_CASE("unknown pixels on either side are excluded, not penalised") {
    DisparityMap computed = map_of(3, 1, {5, U, 7});
    DisparityMap truth = map_of(3, 1, {5, 3, U});
    EvalResult result = bad_pixel_rate(computed, truth, 1.0);
    CHECK(result.compared == 1);
    CHECK(result.excluded == 2);
    CHECK(result.bad_pixel_rate == 0.0);
}

TEST_CASE("the rate is symmetric and invariant under excluded padding") {
    DisparityMap a = synthetic::random_sparse(10, 10, 51, 100, 9);
    DisparityMap b = synthetic::random_sparse(10, 10, 52, 100, 9);
    EvalResult ab = bad_pixel_rate(a, b, 1.0);
    EvalResult ba = bad_pixel_rate(b, a, 1.0);
    CHECK(ab.bad_pixel_rate == ba.bad_pixel_rate);
    CHECK(ab.compared == ba.compared);

    // Embed both maps in a taller frame of unknowns: nothing changes but
    // the excluded count.
    DisparityMap a2(10, 12);
    DisparityMap b2(10, 12);
    for (int y = 0; y < 10; ++y) {
        for (int x = 0; x < 10; ++x) {
            a2.at(x, y) = a.at(x, y);
            b2.at(x, y) = b.at(x, y);
        }
    }
    EvalResult padded = bad_pixel_rate(a2, b2, 1.0);
    CHECK(padded.bad_pixel_rate == ab.bad_pixel_rate);
    CHECK(padded.compared == ab.compared);
    CHECK(padded.excluded == ab.excluded + 20);
}

TEST_CASE("an empty comparison reports a zero rate") {
    DisparityMap computed(4, 4);
    DisparityMap truth(4, 4);
    EvalResult result = bad_pixel_rate(computed, truth, 1.0);
    CHECK(result.compared == 0);
    CHECK(result.bad_pixel_rate == 0.0);
}

TEST_CASE("evaluation rejects bad parameters") {
    DisparityMap a(4, 4);
    DisparityMap b(4, 5);
    CHECK_THROWS_AS(bad_pixel_rate(a, b, 1.0), ParamError);
    CHECK_THROWS_AS(bad_pixel_rate(a, a, -0.5), ParamError);
}

TEST_CASE("evaluation is identical for every worker count") {
    DisparityMap a = synthetic::random_sparse(40, 30, 53, 70, 12);
    DisparityMap b = synthetic::random_sparse(40, 30, 54, 70, 12);
    EvalResult one = bad_pixel_rate(a, b, 1.0, 1);
    for (int workers : {2, 4, 8}) {
        EvalResult many = bad_pixel_rate(a, b, 1.0, workers);
        CHECK(many.bad_pixel_rate == one.bad_pixel_rate);
        CHECK(many.compared == one.compared);
        CHECK(many.excluded == one.excluded);
    }
}

TEST_CASE("ground truth divides by the scale and excludes zeros") {
    GrayImage img(4, 1);
    img.data = {80, 0, 81, 88};
    const std::string path = support::scratch_path("truth.pgm");
    save_gray(img, path);
    DisparityMap truth = load_ground_truth(path, 16.0);
    CHECK(truth.values ==
          std::vector<std::int16_t>{5, U, 5, 6}); // 5.0625 -> 5, 5.5 -> 6
    CHECK_THROWS_AS(load_ground_truth(path, 0.0), ParamError);
    CHECK_THROWS_AS(load_ground_truth(path, -2.0), ParamError);
}

TEST_CASE("the dense baseline matches the masked matcher on a full mask") {
    StereoPair pair = synthetic::translated_noise_pair(24, 20, 3, 55);
    GrayImage left = rgb_to_lightness(pair.left);
    GrayImage right = rgb_to_lightness(pair.right);
    MatchConfig config;
    config.window = 3;
    config.max_disparity = 6;
    BoundaryMask everything(24, 20);
    for (auto& v : everything.mask) v = 1;
    DisparityMap dense = dense_sad_baseline(left, right, config);
    DisparityMap masked =
        match_boundary_pixels(left, right, everything, config);
    CHECK(dense.values == masked.values);

    for (int workers : {2, 4}) {
        CHECK(dense_sad_baseline(left, right, config, workers).values ==
              dense.values);
    }
}

TEST_CASE("disparity files round trip exactly through the sibling mask") {
    DisparityMap map = synthetic::random_sparse(20, 14, 56, 60, 14);
    map.at(3, 3) = 0; // make sure a genuine zero disparity is present
    const std::string path = support::scratch_path("disp.pgm");
    save_disparity(map, path, 8.0);
    CHECK(std::filesystem::exists(disparity_mask_path(path)));

    DisparityMap back = load_disparity(path);
    REQUIRE(back.width == map.width);
    REQUIRE(back.height == map.height);
    CHECK(back.values == map.values);
}

TEST_CASE("without its mask a zero byte reads back as unknown") {
    DisparityMap map = synthetic::random_sparse(12, 9, 57, 60, 10);
    map.at(2, 2) = 0;
    map.at(5, 5) = 3;
    const std::string path = support::scratch_path("nomask.pgm");
    save_disparity(map, path, 8.0);
    std::filesystem::remove(disparity_mask_path(path));

    DisparityMap back = load_disparity(path);
    for (int y = 0; y < 9; ++y) {
        for (int x = 0; x < 12; ++x) {
            if (map.at(x, y) >= 1) {
                REQUIRE(back.at(x, y) == map.at(x, y));
            } else {
                // Both true zeros and unknowns were stored as byte 0.
                REQUIRE(back.at(x, y) == U);
            }
        }
    }
}

TEST_CASE("the scale comment wins over the fallback") {
    DisparityMap map = map_of(2, 1, {4, 10});
    const std::string path = support::scratch_path("scaled.pgm");
    save_disparity(map, path, 8.0);

    auto bytes = support::read_all(path);
    const std::string text(bytes.begin(), bytes.end());
    CHECK(text.find("# scale 8\n") != std::string::npos);

    DisparityMap back = load_disparity(path, 999.0);
    CHECK(back.values == map.values);
}

TEST_CASE("a plain pgm with no comment uses the fallback scale") {
    GrayImage img(3, 1);
    img.data = {0, 8, 16};
    const std::string path = support::scratch_path("plain.pgm");
    save_gray(img, path);
    DisparityMap back = load_disparity(path, 8.0);
    CHECK(back.values == std::vector<std::int16_t>{U, 1, 2});

    // No comment and no fallback: the raw byte is the disparity.
    DisparityMap raw = load_disparity(path);
    CHECK(raw.values == std::vector<std::int16_t>{U, 8, 16});
}

TEST_CASE("saving rejects scales that overflow a byte") {
    DisparityMap map = map_of(1, 1, {40});
    const std::string path = support::scratch_path("overflow.pgm");
    CHECK_THROWS_AS(save_disparity(map, path, 8.0), ParamError);
    CHECK_THROWS_AS(save_disparity(map, path, 0.0), ParamError);
    CHECK_NOTHROW(save_disparity(map, path, 6.0));
}

TEST_CASE("the json report is a single line with the four fields") {
    EvalResult result;
    result.bad_pixel_rate = 0.25;
    result.compared = 4;
    result.excluded = 0;
    result.delta_d = 1.0;
    const std::string line = eval_report_json(result);
    CHECK(line.find('\n') == std::string::npos);

    auto parsed = nlohmann::json::parse(line);
    CHECK(parsed.size() == 4);
    CHECK(parsed.at("bad_pixel_rate").get<double>() ==
          doctest::Approx(0.25));
    CHECK(parsed.at("compared").get<std::uint64_t>() == 4);
    CHECK(parsed.at("excluded").get<std::uint64_t>() == 0);
    CHECK(parsed.at("delta_d").get<double>() == doctest::Approx(1.0));
}
