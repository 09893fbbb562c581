#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "dctface/dct.hpp"
#include "dctface/error.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using dctface::CoeffMatrix;
using dctface::CoeffVector;
using dctface::GrayImage;
using dctface::ImageError;

namespace {

double energy(std::span<const double> v) {
    double e = 0.0;
    for (double x : v) e += x * x;
    return e;
}

}  // namespace

TEST_CASE("dct_1d matches hand-evaluated values") {
    SUBCASE("constant signal concentrates into the DC term") {
        const std::vector<double> f = {1, 1, 1, 1};
        const std::vector<double> F = dctface::dct_1d(f);
        CHECK(F[0] == doctest::Approx(2.0).epsilon(1e-12));
        for (int u = 1; u < 4; ++u) CHECK(std::abs(F[u]) < 1e-12);
    }
    SUBCASE("unit impulse") {
        const std::vector<double> F = dctface::dct_1d(std::vector<double>{1, 0, 0, 0});
        // Frozen from direct scalar evaluation of the transform definition.
        CHECK(F[0] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(F[1] == doctest::Approx(0.6532814824381883).epsilon(1e-12));
        CHECK(F[2] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(F[3] == doctest::Approx(0.2705980500730985).epsilon(1e-12));
    }
    SUBCASE("two-point signal, cross-checked by Parseval 24.5 + 0.5 = 25") {
        const std::vector<double> F = dctface::dct_1d(std::vector<double>{3, 4});
        CHECK(F[0] == doctest::Approx(4.949747468305833).epsilon(1e-12));
        CHECK(F[1] == doctest::Approx(-0.7071067811865476).epsilon(1e-12));
        CHECK(energy(F) == doctest::Approx(25.0).epsilon(1e-12));
    }
    SUBCASE("empty input") {
        CHECK_THROWS_AS(dctface::dct_1d(std::vector<double>{}), ImageError);
    }
}

TEST_CASE("dct_1d agrees with the direct-evaluation oracle") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> dist(-100.0, 100.0);
    for (int n : {1, 2, 3, 5, 8, 17, 128}) {
        std::vector<double> f(n);
        for (double& x : f) x = dist(rng);
        const auto got = dctface::dct_1d(f);
        const auto want = oracle::naive_dct_1d(f);
        CHECK(oracle::max_abs_diff(got, want) < 1e-9);
    }
}

TEST_CASE("idct_1d inverts dct_1d") {
    SUBCASE("constant case") {
        const std::vector<double> f = dctface::idct_1d(std::vector<double>{2, 0, 0, 0});
        for (double x : f) CHECK(x == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("single point is the identity") {
        CHECK(dctface::idct_1d(std::vector<double>{3.25})[0] == doctest::Approx(3.25));
        CHECK(dctface::dct_1d(std::vector<double>{3.25})[0] == doctest::Approx(3.25));
    }
    SUBCASE("round trip on a random 128-vector") {
        std::mt19937 rng(1);
        std::uniform_real_distribution<double> dist(0.0, 255.0);
        std::vector<double> f(128);
        for (double& x : f) x = dist(rng);
        const auto back = dctface::idct_1d(dctface::dct_1d(f));
        CHECK(oracle::max_abs_diff(back, f) < 1e-9);
    }
    SUBCASE("empty input") {
        CHECK_THROWS_AS(dctface::idct_1d(std::vector<double>{}), ImageError);
    }
}

TEST_CASE("dct_2d basics") {
    SUBCASE("constant 128x128 image has DC = sqrt(N*M) * mean and zero AC") {
        const CoeffMatrix F = dctface::dct_2d(GrayImage::filled(128, 128, 100.0));
        CHECK(F.at(0, 0) == doctest::Approx(12800.0).epsilon(1e-12));
        double worst = 0.0;
        for (int r = 0; r < 128; ++r) {
            for (int c = 0; c < 128; ++c) {
                if (r == 0 && c == 0) continue;
                worst = std::max(worst, std::abs(F.at(r, c)));
            }
        }
        CHECK(worst < 1e-9);
    }
    SUBCASE("2x2 delta image spreads evenly") {
        const CoeffMatrix F = dctface::dct_2d(GrayImage(2, 2, {1, 0, 0, 0}));
        for (double v : F.values) CHECK(v == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("random 8x8 matches the quadruple-sum oracle") {
        const GrayImage img = synthetic::noise_image(8, 8, 3);
        const CoeffMatrix got = dctface::dct_2d(img);
        const CoeffMatrix want = oracle::naive_dct_2d(img);
        CHECK(oracle::max_abs_diff(got.values, want.values) < 1e-9);
    }
    SUBCASE("empty grid") {
        CHECK_THROWS_AS(dctface::dct_2d(GrayImage()), ImageError);
    }
}

TEST_CASE("separable dct_2d equals the naive oracle on assorted shapes") {
    int seed = 100;
    for (auto [rows, cols] : {std::pair{1, 1}, {1, 7}, {5, 3}, {16, 16}}) {
        const GrayImage img = synthetic::noise_image(cols, rows, seed++);
        const CoeffMatrix got = dctface::dct_2d(img);
        const CoeffMatrix want = oracle::naive_dct_2d(img);
        CHECK(oracle::max_abs_diff(got.values, want.values) < 1e-9);
    }
}

TEST_CASE("idct_2d inverts dct_2d") {
    SUBCASE("DC-only matrix reconstructs the constant image") {
        CoeffMatrix dc(128, 128);
        dc.at(0, 0) = 12800.0;
        const GrayImage img = dctface::idct_2d(dc);
        for (double p : img.pixels()) CHECK(p == doctest::Approx(100.0).epsilon(1e-9));
    }
    SUBCASE("round trip on random 128x128") {
        const GrayImage img = synthetic::noise_image(128, 128, 4);
        const GrayImage back = dctface::idct_2d(dctface::dct_2d(img));
        CHECK(oracle::max_abs_diff(back.pixels(), img.pixels()) < 1e-9);
    }
    SUBCASE("zero matrix gives a zero image") {
        const GrayImage img = dctface::idct_2d(CoeffMatrix(4, 4));
        for (double p : img.pixels()) CHECK(p == 0.0);
    }
}

TEST_CASE("Parseval holds for 1D and 2D transforms") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(-50.0, 50.0);
    SUBCASE("1D") {
        for (int n : {1, 2, 4, 7, 128}) {
            std::vector<double> f(n);
            for (double& x : f) x = dist(rng);
            const double in = energy(f);
            const double out = energy(dctface::dct_1d(f));
            CHECK(out == doctest::Approx(in).epsilon(1e-9));
        }
    }
    SUBCASE("2D") {
        int seed = 50;
        for (auto [rows, cols] : {std::pair{2, 2}, {8, 8}, {16, 16}, {128, 128}}) {
            const GrayImage img = synthetic::noise_image(cols, rows, seed++);
            const double in = energy(img.pixels());
            const double out = energy(dctface::dct_2d(img).values);
            CHECK(out == doctest::Approx(in).epsilon(1e-9));
        }
    }
}

TEST_CASE("dct_2d is linear in the input") {
    const GrayImage img = synthetic::noise_image(16, 16, 6);
    const CoeffMatrix base = dctface::dct_2d(img);
    const double c = 2.7;
    const CoeffMatrix scaled = dctface::dct_2d(dctface::scale_image(img, c));
    for (std::size_t i = 0; i < base.values.size(); ++i) {
        CHECK(std::abs(scaled.values[i] - c * base.values[i]) < 1e-9);
    }
}

TEST_CASE("zigzag_scan ordering") {
    SUBCASE("2x2") {
        const CoeffMatrix m(2, 2, {1, 2, 3, 4});
        CHECK(dctface::zigzag_scan(m).values == std::vector<double>{1, 2, 3, 4});
    }
    SUBCASE("single row keeps its order") {
        const CoeffMatrix m(1, 5, {9, 8, 7, 6, 5});
        CHECK(dctface::zigzag_scan(m).values == std::vector<double>{9, 8, 7, 6, 5});
    }
    SUBCASE("4x4 visits the frozen cell order") {
        CoeffMatrix m(4, 4);
        std::iota(m.values.begin(), m.values.end(), 0.0);  // value = 4*row + col
        const std::vector<double> expected = {0, 1, 4, 8, 5, 2, 3, 6, 9, 12, 13, 10, 7, 11, 14, 15};
        CHECK(dctface::zigzag_scan(m).values == expected);
    }
    SUBCASE("matches the brute-force cell ordering oracle") {
        int seed = 60;
        for (auto [rows, cols] : {std::pair{4, 4}, {3, 5}, {25, 40}, {30, 50}}) {
            const GrayImage img = synthetic::noise_image(cols, rows, seed++);
            const CoeffMatrix m(rows, cols, img.pixels());
            const CoeffVector got = dctface::zigzag_scan(m);
            const auto order = oracle::zigzag_cell_order(rows, cols);
            REQUIRE(got.values.size() == order.size());
            for (std::size_t i = 0; i < order.size(); ++i) {
                CHECK(got.values[i] == m.at(order[i].first, order[i].second));
            }
        }
    }
    SUBCASE("empty matrix") {
        CHECK_THROWS_AS(dctface::zigzag_scan(CoeffMatrix()), ImageError);
    }
}

TEST_CASE("inverse_zigzag") {
    SUBCASE("2x2") {
        CoeffVector v;
        v.values = {1, 2, 3, 4};
        v.source_rows = 2;
        v.source_cols = 2;
        CHECK(dctface::inverse_zigzag(v, 2, 2).values == std::vector<double>{1, 2, 3, 4});
    }
    SUBCASE("length mismatch") {
        CoeffVector v;
        v.values = {1, 2, 3, 4, 5};
        CHECK_THROWS_AS(dctface::inverse_zigzag(v, 2, 2), ImageError);
    }
}

TEST_CASE("zigzag_scan and inverse_zigzag are a bijection") {
    int seed = 70;
    for (auto [rows, cols] :
         {std::pair{1, 1}, {1, 7}, {2, 2}, {4, 4}, {16, 16}, {25, 40}, {30, 50}}) {
        const GrayImage img = synthetic::noise_image(cols, rows, seed++);
        const CoeffMatrix m(rows, cols, img.pixels());
        const CoeffMatrix back = dctface::inverse_zigzag(dctface::zigzag_scan(m), rows, cols);
        CHECK(back == m);  // exact
    }
}

TEST_CASE("truncate keeps the leading coefficients") {
    CoeffMatrix m(128, 128);
    std::iota(m.values.begin(), m.values.end(), 0.0);
    const CoeffVector full = dctface::zigzag_scan(m);
    REQUIRE(full.kept() == 16384);

    const CoeffVector head = dctface::truncate(full, 64);
    CHECK(head.kept() == 64);
    CHECK(head.source_rows == 128);
    CHECK(head.source_cols == 128);
    for (int i = 0; i < 64; ++i) CHECK(head.values[i] == full.values[i]);

    CHECK(dctface::truncate(full, full.kept()) == full);
    CHECK_THROWS_AS(dctface::truncate(full, 0), ImageError);
    CHECK_THROWS_AS(dctface::truncate(full, full.kept() + 1), ImageError);
}

TEST_CASE("smoothed images concentrate energy in the leading zigzag coefficients") {
    const GrayImage img = synthetic::gaussian_smooth(synthetic::noise_image(128, 128, 8), 4.0);
    const CoeffVector zz = dctface::zigzag_scan(dctface::dct_2d(img));
    const double total = energy(zz.values);
    const double head = energy(std::span(zz.values).first(64));
    CHECK(head / total >= 0.9);
}
