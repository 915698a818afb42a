#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>
#include <random>
#include <stdexcept>

#include "doctest.h"

#include "plexp/csv.hpp"

using namespace plexp;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(std::string p) : path(std::move(p)) {}
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("doubles survive a write/read round trip bit for bit") {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-300, 300);
    csv::Table t;
    t.header = {"a", "b"};
    for (int i = 0; i < 200; ++i)
        t.rows.push_back({std::ldexp(mant(rng), expo(rng)), mant(rng)});
    t.rows.push_back({0.0, -0.0});
    t.rows.push_back({std::numeric_limits<double>::denorm_min(),
                      std::numeric_limits<double>::max()});
    t.rows.push_back({1.0 / 3.0, 0.1});

    TempFile f("test_csv_roundtrip.csv");
    csv::write_table(f.path, t);
    const auto back = csv::read_table(f.path);
    REQUIRE(back.header == t.header);
    REQUIRE(back.rows.size() == t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            const double a = t.rows[i][j], b = back.rows[i][j];
            CHECK(std::memcmp(&a, &b, sizeof a) == 0);
        }
}

TEST_CASE("formatting is shortest round-trip with a dot separator") {
    CHECK(csv::format_double(2.0) == "2");
    CHECK(csv::format_double(0.5) == "0.5");
    CHECK(csv::format_double(-0.0) == "-0");
    CHECK(csv::format_double(1e22) == "1e+22");
    CHECK(csv::format_double(0.1) == "0.1");
}

TEST_CASE("header fields with separators are quoted and recovered") {
    csv::Table t;
    t.header = {"plain", "with,comma", "with\"quote", "with\nbreak"};
    t.rows.push_back({1.0, 2.0, 3.0, 4.0});
    TempFile f("test_csv_quoting.csv");
    csv::write_table(f.path, t);
    const auto back = csv::read_table(f.path);
    CHECK(back.header == t.header);
    CHECK(back.rows[0][3] == 4.0);
}

TEST_CASE("files end lines with bare newlines") {
    csv::Table t;
    t.header = {"x"};
    t.rows.push_back({1.5});
    TempFile f("test_csv_endings.csv");
    csv::write_table(f.path, t);
    std::FILE* fp = std::fopen(f.path.c_str(), "rb");
    REQUIRE(fp);
    std::string raw;
    for (int c; (c = std::fgetc(fp)) != EOF;) raw.push_back(static_cast<char>(c));
    std::fclose(fp);
    CHECK(raw == "x\n1.5\n");
}

TEST_CASE("malformed input is rejected") {
    CHECK_THROWS_AS((void)csv::read_table("no_such_file.csv"), std::runtime_error);

    TempFile f("test_csv_bad.csv");
    std::FILE* fp = std::fopen(f.path.c_str(), "wb");
    std::fputs("a,b\n1,2\n3\n", fp);
    std::fclose(fp);
    CHECK_THROWS_WITH_AS((void)csv::read_table(f.path), doctest::Contains("ragged"),
                         std::runtime_error);

    fp = std::fopen(f.path.c_str(), "wb");
    std::fputs("a\nnot_a_number\n", fp);
    std::fclose(fp);
    CHECK_THROWS_WITH_AS((void)csv::read_table(f.path), doctest::Contains("non-numeric"),
                         std::runtime_error);

    csv::Table ragged;
    ragged.header = {"a", "b"};
    ragged.rows.push_back({1.0});
    CHECK_THROWS_AS(csv::write_table(f.path, ragged), std::invalid_argument);
}
