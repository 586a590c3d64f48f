#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>

#include "peb/config.hpp"
#include "peb/output.hpp"
#include "test_helpers.hpp"

using nlohmann::json;
using peb::domain_error;
using peb::io_error;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// 2x2 grid over [0,1]^2 with one value of every cell kind:
///   (0,0) -> 1.0, (1,0) -> 0.1, (0,1) -> inf, (1,1) -> excluded.
peb::HeatmapResult tiny_heatmap() {
  peb::HeatmapResult hm;
  hm.grid.x_min_m = 0.0;
  hm.grid.x_max_m = 1.0;
  hm.grid.y_min_m = 0.0;
  hm.grid.y_max_m = 1.0;
  hm.grid.nx = 2;
  hm.grid.ny = 2;
  hm.peb_m = {1.0, 0.1, kInf, std::numeric_limits<double>::quiet_NaN()};
  hm.excluded = {0, 0, 0, 1};
  hm.n_finite = 2;
  hm.n_infinite = 1;
  hm.n_excluded = 1;
  hm.max_finite_peb_m = 1.0;
  hm.mean_finite_peb_m = 0.55;
  return hm;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(bool(in));
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

json four_station_doc() {
  json doc = json{
      {"waveform",
       {{"num_subcarriers", 744},
        {"num_symbols", 112},
        {"subcarrier_spacing_khz", 120},
        {"cp_duration_us", 0.586}}},
      {"radio",
       {{"num_rx_antennas", 16},
        {"carrier_frequency_ghz", 28},
        {"eirp_dbm", 30},
        {"noise_psd_w_per_hz", 4e-20},
        {"sensing_power_fraction", 0.1}}},
  };
  doc["stations"] = json::array({
      {{"x_m", 0.0}, {"y_m", 0.0}, {"rotation_deg", 45.0}},
      {{"x_m", 100.0}, {"y_m", 0.0}, {"rotation_deg", 135.0}},
      {{"x_m", 100.0}, {"y_m", 100.0}, {"rotation_deg", 225.0}},
      {{"x_m", 0.0}, {"y_m", 100.0}, {"rotation_deg", -45.0}},
  });
  return doc;
}

}  // namespace

TEST_CASE("format_g9: shortest form with nine significant digits") {
  CHECK(peb::format_g9(0.0) == "0");
  CHECK(peb::format_g9(1.0) == "1");
  CHECK(peb::format_g9(-2.5) == "-2.5");
  CHECK(peb::format_g9(0.5) == "0.5");
  CHECK(peb::format_g9(100.0) == "100");
  CHECK(peb::format_g9(0.06923712328349675) == "0.0692371233");
  CHECK(peb::format_g9(123456789.0) == "123456789");
  CHECK(peb::format_g9(1234567891.0) == "1.23456789e+09");
  CHECK(peb::format_g9(1e20) == "1e+20");
  CHECK(peb::format_g9(8.919333333333335e-06) == "8.91933333e-06");
  CHECK(peb::format_g9(kInf) == "inf");
  CHECK(peb::format_g9(-kInf) == "-inf");
  CHECK(peb::format_g9(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("write_file_atomic: writes, overwrites, and leaves no temp behind") {
  const std::string path = "/tmp/peb_test_atomic.txt";
  peb::write_file_atomic(path, "first\n");
  CHECK(read_file(path) == "first\n");
  peb::write_file_atomic(path, "second\n");
  CHECK(read_file(path) == "second\n");
  CHECK(!std::ifstream(path + ".tmp"));  // temp file renamed away

  CHECK_THROWS_AS(peb::write_file_atomic("/nonexistent_dir_for_peb/out.txt", "x"), io_error);
  std::remove(path.c_str());
}

TEST_CASE("heatmap_csv: exact bytes for a hand-built grid") {
  const std::string csv = peb::heatmap_csv(tiny_heatmap());
  CHECK(csv ==
        "x_m,y_m,peb_m\n"
        "0,0,1\n"
        "1,0,0.1\n"
        "0,1,inf\n"
        "1,1,excluded\n");
}

TEST_CASE("heatmap_pgm: header, row order, scale anchors, sentinels") {
  const peb::HeatmapResult hm = tiny_heatmap();
  const std::string pgm = peb::heatmap_pgm(hm, 0.1, 10.0);

  const std::string header = "P5\n2 2\n65535\n";
  REQUIRE(pgm.size() == header.size() + 8);  // 4 pixels, 2 bytes each
  CHECK(pgm.substr(0, header.size()) == header);

  const auto pix = [&](int i) {
    const std::size_t off = header.size() + 2 * static_cast<std::size_t>(i);
    return (static_cast<unsigned>(static_cast<unsigned char>(pgm[off])) << 8) |
           static_cast<unsigned>(static_cast<unsigned char>(pgm[off + 1]));
  };
  // Top raster row is y_max: the inf and excluded cells, both white.
  CHECK(pix(0) == 65535u);
  CHECK(pix(1) == 65535u);
  // Bottom row is y=0: peb 1.0 sits exactly mid-scale on log10 in [0.1, 10],
  // peb 0.1 sits exactly at the black anchor.
  CHECK(pix(2) == 32768u);  // lround(0.5 * 65535)
  CHECK(pix(3) == 0u);

  // Out-of-range finite values clamp to the anchors rather than wrapping.
  peb::HeatmapResult clamp = hm;
  clamp.peb_m = {1e6, 1e-9, 1.0, 1.0};
  clamp.excluded = {0, 0, 0, 0};
  const std::string cp = peb::heatmap_pgm(clamp, 0.1, 10.0);
  const auto cpix = [&](int i) {
    const std::size_t off = header.size() + 2 * static_cast<std::size_t>(i);
    return (static_cast<unsigned>(static_cast<unsigned char>(cp[off])) << 8) |
           static_cast<unsigned>(static_cast<unsigned char>(cp[off + 1]));
  };
  CHECK(cpix(2) == 65535u);  // 1e6 clamps white
  CHECK(cpix(3) == 0u);      // 1e-9 clamps black

  CHECK_THROWS_WITH_AS(peb::heatmap_pgm(hm, 0.0, 1.0),
                       "heatmap_pgm: scale bounds must satisfy 0 < lo < hi", domain_error);
  CHECK_THROWS_WITH_AS(peb::heatmap_pgm(hm, 1.0, 1.0),
                       "heatmap_pgm: scale bounds must satisfy 0 < lo < hi", domain_error);
}

TEST_CASE("pgm_scale_note: documents anchors and orientation") {
  const std::string note = peb::pgm_scale_note(tiny_heatmap(), 0.001, 1.0);
  CHECK(note.find("lo_m=0.001") != std::string::npos);
  CHECK(note.find("hi_m=1 ") != std::string::npos);
  CHECK(note.find("row 0 corresponds to y_max=1") != std::string::npos);
  CHECK(note.find("excluded and no-information cells render as white") != std::string::npos);
}

TEST_CASE("sweep_csv: sentinels for singular and invalid points") {
  peb::SweepPoint ok;
  ok.value = 16.0;
  ok.peb_m = 0.5;
  ok.valid = true;
  peb::SweepPoint bad;
  bad.value = 1.0;
  bad.valid = false;
  bad.error = "receive antenna count must be an integer >= 2";
  peb::SweepPoint singular;
  singular.value = 64.0;
  singular.peb_m = kInf;
  singular.valid = true;

  CHECK(peb::sweep_csv({ok, bad, singular}) ==
        "value,peb_m\n"
        "16,0.5\n"
        "1,invalid\n"
        "64,inf\n");
}

TEST_CASE("heatmap_summary: echoes the scenario and reports the probe") {
  json doc = four_station_doc();
  doc["target"] = {{"x_m", 50.0}, {"y_m", 50.0}};
  doc["grid"] = {{"nx", 21}, {"ny", 21}};
  const peb::LoadedConfig cfg = peb::parse_scenario(doc);
  const peb::HeatmapResult hm = peb::heatmap(cfg.scenario, cfg.grid);

  const json s = peb::heatmap_summary(cfg, hm, {0.1, 0.25});

  CHECK(s.at("scenario") == doc);
  CHECK(s.at("grid").at("nx") == 21);
  CHECK(s.at("grid").at("x_max_m") == 100.0);
  CHECK(s.at("n_cells") == 441);
  CHECK(s.at("n_excluded") == hm.n_excluded);
  CHECK(s.at("n_finite") == hm.n_finite);
  CHECK(s.at("n_infinite") == hm.n_infinite);
  CHECK(s.at("max_peb_m").get<double>() == hm.max_finite_peb_m);
  CHECK(s.at("mean_peb_m").get<double>() == hm.mean_finite_peb_m);

  REQUIRE(s.at("coverage").size() == 2);
  CHECK(s.at("coverage").at(0).at("threshold_m") == 0.1);
  CHECK(s.at("coverage").at(0).at("fraction").get<double>() ==
        peb::coverage_fraction(hm, 0.1));
  CHECK(s.at("coverage").at(1).at("fraction").get<double>() ==
        peb::coverage_fraction(hm, 0.25));

  const json& probe = s.at("probe");
  CHECK(probe.at("x_m") == 50.0);
  CHECK(probe.at("y_m") == 50.0);
  CHECK(probe.at("peb_m").get<double>() ==
        doctest::Approx(0.06923712328349675).epsilon(1e-12));
  CHECK(probe.at("n_contributing") == 4);
  CHECK(probe.at("no_information") == false);
  REQUIRE(probe.at("stations").size() == 4);
  for (const json& st : probe.at("stations")) {
    CHECK(st.at("status") == "contributing");
    CHECK(st.at("range_m").get<double>() ==
          doctest::Approx(70.71067811865476).epsilon(1e-14));
    CHECK(std::abs(st.at("local_doa_deg").get<double>()) < 1e-12);
    CHECK(st.at("snr_db").get<double>() ==
          doctest::Approx(-41.89058430488376).epsilon(1e-12));
  }
}

TEST_CASE("heatmap_summary: probe falls back to the grid center without a target") {
  json doc = four_station_doc();
  doc["grid"] = {{"nx", 11}, {"ny", 11}, {"x_max_m", 60.0}, {"y_max_m", 80.0}};
  const peb::LoadedConfig cfg = peb::parse_scenario(doc);
  const peb::HeatmapResult hm = peb::heatmap(cfg.scenario, cfg.grid);
  const json s = peb::heatmap_summary(cfg, hm, cfg.coverage_thresholds_m);
  CHECK(s.at("probe").at("x_m") == 30.0);
  CHECK(s.at("probe").at("y_m") == 40.0);
  CHECK(s.at("coverage").size() == 3);  // default thresholds
}
