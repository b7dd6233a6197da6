#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cascade/csv_io.hpp"

using namespace cascade;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_sample(const std::string& path) {
    CsvWriter w(path);
    w.comment("sample output");
    w.kv("kappa1", 0.004);
    w.kv("shape", "gauss");
    w.header({"t", "n1", "n2"});
    w.row({0.0, 1.0 / 3.0, 2.5e-17});
    w.row({10.0, 0.25, -1.0});
}

}  // namespace

TEST_CASE("number formatting") {
    CHECK(CsvWriter::format(0.0) == "0");
    CHECK(CsvWriter::format(1.0) == "1");
    CHECK(CsvWriter::format(1.0 / 3.0) == "0.333333333333");
    CHECK(CsvWriter::format(-2.5e-17) == "-2.5e-17");
    CHECK(CsvWriter::format(12345.678) == "12345.678");
}

TEST_CASE("file layout and repeatability") {
    write_sample("csv_io_a.tmp");
    write_sample("csv_io_b.tmp");
    std::string a = slurp("csv_io_a.tmp");
    CHECK(a == slurp("csv_io_b.tmp"));
    CHECK(a.rfind("# cascade 0.1.0\n", 0) == 0);
    CHECK(a.find("# kappa1 = 0.004\n") != std::string::npos);
    CHECK(a.find("# shape = gauss\n") != std::string::npos);
    CHECK(a.find("t,n1,n2\n") != std::string::npos);
    CHECK(a.find("0,0.333333333333,2.5e-17\n") != std::string::npos);
    std::remove("csv_io_a.tmp");
    std::remove("csv_io_b.tmp");
}

TEST_CASE("raw rows pass through untouched") {
    {
        CsvWriter w("csv_io_raw.tmp");
        w.row_raw({"1.18", "ee00", "0.947"});
    }
    CHECK(slurp("csv_io_raw.tmp") == "# cascade 0.1.0\n1.18,ee00,0.947\n");
    std::remove("csv_io_raw.tmp");
}

TEST_CASE("unwritable path is an error") {
    CHECK_THROWS_AS(CsvWriter("/nonexistent_dir_zz/x.csv"), std::runtime_error);
}

TEST_CASE("fnv1a reference vectors") {
    CHECK(fnv1a("", 0) == 14695981039346656037ull);
    CHECK(fnv1a("a", 1) == 0xaf63dc4c8601ec8cull);
    CHECK(fnv1a("foobar", 6) == 0x85944171f73967e8ull);
}

TEST_CASE("grid hash is stable and injective enough") {
    std::vector<double> g1 = {0.0, 0.5, 1.0};
    std::vector<double> g2 = {0.0, 0.5, 1.0 + 1e-12};
    std::string h1 = grid_hash(g1);
    CHECK(h1.size() == 16);
    CHECK(h1 == grid_hash(g1));
    CHECK(h1 != grid_hash(g2));
    for (char c : h1) CHECK(std::isxdigit(static_cast<unsigned char>(c)));
}
