// Apache License, Version 2.0, refer to LICENSE.txt

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lss/io.hpp"
#include "lss/latent_slice.hpp"
#include "lss/rng.hpp"
#include "lss/targets.hpp"

using namespace lss;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("samples csv: schema and byte-identical reruns") {
  const auto dir = std::filesystem::temp_directory_path() / "lss_io_test";
  std::filesystem::create_directories(dir);
  const LogDensity target = targets::isotropic_gaussian(2);
  LatentSliceConfig cfg;

  Rng r1(77), r2(77);
  const auto a = run_chain(target, std::vector<double>{0.0, 0.0}, cfg, 50, 10, 2, r1);
  const auto b = run_chain(target, std::vector<double>{0.0, 0.0}, cfg, 50, 10, 2, r2);
  io::write_samples_csv(dir / "a.csv", a);
  io::write_samples_csv(dir / "b.csv", b);
  const std::string text = slurp(dir / "a.csv");
  CHECK(text == slurp(dir / "b.csv"));
  CHECK(text.rfind("iter,y1,y2\n", 0) == 0);
  CHECK(a.n_kept == 20);

  std::filesystem::remove_all(dir);
}

TEST_CASE("table csv round trip preserves full precision") {
  const auto dir = std::filesystem::temp_directory_path() / "lss_io_test2";
  std::filesystem::create_directories(dir);

  io::Table table;
  table.columns = {"x", "y"};
  Rng rng(5);
  table.rows = 40;
  for (std::size_t i = 0; i < table.rows; ++i) {
    table.data.push_back(rng.next_double() * 1e6 - 5e5);
    table.data.push_back(rng.next_double() * 1e-7);
  }
  io::write_table_csv(dir / "t.csv", table);
  const auto loaded = io::read_table_csv(dir / "t.csv");
  REQUIRE(loaded.columns == table.columns);
  REQUIRE(loaded.rows == table.rows);
  for (std::size_t i = 0; i < table.data.size(); ++i)
    CHECK(loaded.data[i] == table.data[i]);  // %.17g is lossless for doubles

  std::filesystem::remove_all(dir);
}

TEST_CASE("summary json carries the documented schema") {
  const auto dir = std::filesystem::temp_directory_path() / "lss_io_test3";
  std::filesystem::create_directories(dir);

  diag::ChainSummary s;
  s.mean = 0.5;
  s.sd = 1.0;
  s.ess = 900.0;
  s.act = 1.1;
  s.ks_stat = 0.02;
  io::write_summary_json(dir / "s.json", "demo", 42, 1000, 1.25, {s});
  const std::string text = slurp(dir / "s.json");
  CHECK(text.find("\"schema_version\": 1") != std::string::npos);
  CHECK(text.find("\"experiment\": \"demo\"") != std::string::npos);
  CHECK(text.find("\"seed\": 42") != std::string::npos);
  CHECK(text.find("\"ks_stat\"") != std::string::npos);
  CHECK(text.find("\"wall_time_s\"") != std::string::npos);

  std::filesystem::remove_all(dir);
}
