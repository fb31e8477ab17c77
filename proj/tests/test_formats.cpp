#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "bbnet/enumeration.hpp"
#include "bbnet/errors.hpp"
#include "bbnet/keyval.hpp"
#include "bbnet/sweep.hpp"

using namespace bbnet;

TEST_CASE("keyval parsing") {
  auto kv = KeyValues::parse_string(
      "top = 1\n"
      "[graph]\n"
      "kind = ba   # generator\n"
      "n = 64\n"
      "\n"
      "[sis]\n"
      "nu = 0.25\n"
      "enabled = true\n");

  CHECK(kv.get_or("top", "") == "1");
  CHECK(kv.get_or("graph.kind", "") == "ba");
  CHECK(kv.get_uint("graph.n", 0) == 64);
  CHECK(kv.get_double("sis.nu", 0) == doctest::Approx(0.25));
  CHECK(kv.get_bool("sis.enabled", false));
  CHECK(kv.get_uint("graph.missing", 7) == 7);
  CHECK_FALSE(kv.has("graph.missing"));

  SUBCASE("overrides win") {
    kv.apply_override("graph.n=128");
    CHECK(kv.get_uint("graph.n", 0) == 128);
    CHECK_THROWS_AS(kv.apply_override("no-equals-sign"), config_error);
  }

  SUBCASE("canonical echo reparses to the same items") {
    auto again = KeyValues::parse_string(kv.to_string());
    CHECK(again.items() == kv.items());
  }

  SUBCASE("malformed lines are errors") {
    CHECK_THROWS_AS(KeyValues::parse_string("[unterminated\n"), config_error);
    CHECK_THROWS_AS(KeyValues::parse_string("no equals\n"), config_error);
    CHECK_THROWS_AS(KeyValues::parse_string("= value\n"), config_error);
  }

  SUBCASE("typed getters reject junk") {
    auto bad = KeyValues::parse_string("x = not-a-number\n");
    CHECK_THROWS_AS(bad.get_uint("x", 0), config_error);
    CHECK_THROWS_AS(bad.get_double("x", 0), config_error);
    CHECK_THROWS_AS(bad.get_bool("x", false), config_error);
  }
}

TEST_CASE("enumeration covers exactly the valid programs per length") {
  machine::EnumerationTable::Params p;
  p.max_len_bits = 16;
  p.step_limit = 1000;
  auto table = machine::EnumerationTable::build(p);
  std::map<std::uint32_t, std::size_t> by_len;
  for (const auto& e : table.entries()) ++by_len[e.program.bit_length()];
  // 4^(k-1) programs of k instructions: the body fields are free, the
  // terminator is forced.
  CHECK(by_len[3] == 1);
  CHECK(by_len[6] == 4);
  CHECK(by_len[9] == 16);
  CHECK(by_len[12] == 64);
  CHECK(by_len[15] == 256);
  CHECK(table.entries().size() == 341);
}

TEST_CASE("enumeration csv export") {
  machine::EnumerationTable::Params p;
  p.max_len_bits = 9;
  auto table = machine::EnumerationTable::build(p);
  const auto file = std::filesystem::temp_directory_path() / "bbnet_enum.csv";
  table.export_csv(file);
  std::ifstream in(file);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "program_bits,length,halted,value,steps");
  std::size_t rows = 0;
  std::string first;
  while (std::getline(in, line)) {
    if (rows == 0) first = line;
    ++rows;
  }
  CHECK(rows == table.entries().size());
  CHECK(first == "000,3,1,1,1");  // the emit-zero program
  std::filesystem::remove(file);
}

TEST_CASE("sweep records cell failures and keeps going") {
  analysis::SweepGrid grid;
  grid.lambdas = {0.2, 1.5};  // nu = 1.5 with delta 1 is out of range
  grid.ns = {64};
  grid.trials = 2;
  grid.instants = 60;
  auto result = analysis::run_sweep(grid, 999);
  REQUIRE(result.cells.size() == 2);
  CHECK(result.cells[0].status == "ok");
  CHECK(result.cells[1].status.rfind("error:", 0) == 0);
  CHECK(result.cells[1].detected == 0);
  // The fit uses the surviving cells only.
  CHECK(result.fits.front().points == 1);
}
