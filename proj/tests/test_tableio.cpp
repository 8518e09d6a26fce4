#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "ranlase/errors.hpp"
#include "ranlase/tableio.hpp"

using namespace ranlase;

namespace {

Table sample_table() {
    Table t;
    t.meta("ranlase", kLibraryVersion);
    t.meta("command", "stats");
    t.meta("gamma", 0.30000000000000004);
    t.columns = {"gamma", "nbar"};
    t.rows.push_back({Cell(0.1), Cell(1.0 / 3.0)});
    t.rows.push_back({Cell(1.5), std::nullopt});
    return t;
}

}  // namespace

TEST_CASE("doubles format to shortest round-trip form") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
    CHECK(format_double(0.30000000000000004) == "0.30000000000000004");
    double back = 0.0;
    std::sscanf(format_double(2.0 / 7.0).c_str(), "%lf", &back);
    CHECK(back == 2.0 / 7.0);
}

TEST_CASE("csv carries provenance header and divergent sentinel") {
    const std::string csv = to_csv(sample_table());
    CHECK(csv.find("# ranlase=1.0.0\n") != std::string::npos);
    CHECK(csv.find("# gamma=0.30000000000000004\n") != std::string::npos);
    CHECK(csv.find("gamma,nbar\n") != std::string::npos);
    CHECK(csv.find("1.5,divergent\n") != std::string::npos);
    // byte-stable across calls
    CHECK(csv == to_csv(sample_table()));
}

TEST_CASE("json mirrors the csv with null sentinels") {
    const std::string js = to_json(sample_table());
    CHECK(js.find("\"columns\": [\"gamma\", \"nbar\"]") != std::string::npos);
    CHECK(js.find("[1.5, null]") != std::string::npos);
    CHECK(js == to_json(sample_table()));
}

TEST_CASE("write_table reports io failures") {
    CHECK_THROWS_AS(write_table(sample_table(), "/nonexistent-dir/x.csv", "csv"), IoError);
    CHECK_THROWS_AS(write_table(sample_table(), "/tmp/x.tsv", "tsv"), DomainError);
    const std::string path = "/tmp/ranlase_tableio_test.csv";
    write_table(sample_table(), path, "csv");
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == to_csv(sample_table()));
    std::remove(path.c_str());
}
