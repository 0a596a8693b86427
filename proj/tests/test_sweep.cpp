// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>

#include "nfres/bench.hpp"
#include "nfres/sweep.hpp"

using namespace nfres;
namespace fs = std::filesystem;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / name;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

SweepSpec tiny_identity_spec() {
  SweepSpec spec;
  spec.axis = SweepAxis::r1;
  spec.axis_values = {10.0};
  spec.config = ArrayConfig::half_wavelength(0, 16, 0.01);
  spec.user1 = UserLocation(1.0, kHalfPi, kHalfPi);
  spec.user2 = UserLocation(10.0, kHalfPi, kHalfPi);
  spec.methods = {Method::closed_form, Method::oracle_fresnel,
                  Method::oracle_exact, Method::closed_form_ula};
  return spec;
}

}  // namespace

TEST_CASE("presets") {
  SUBCASE("fig2 fixes the linear-array geometry") {
    const std::vector<SweepSpec> family = preset("fig2");
    REQUIRE(family.size() == 1);
    const SweepSpec& spec = family[0];
    CHECK(spec.axis == SweepAxis::beta);
    CHECK(spec.config.m_max == 0);
    CHECK(spec.config.n_max == 128);
    CHECK(spec.config.wavelength == 0.01);
    CHECK(spec.config.spacing == 0.005);
    CHECK(spec.user2.r == doctest::Approx(327.68).epsilon(1e-12));
    REQUIRE(spec.axis_values.size() == 50);
    CHECK(spec.axis_values.front() > 0.01);
    CHECK(spec.axis_values.back() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::find(spec.methods.begin(), spec.methods.end(),
                    Method::closed_form_ula) != spec.methods.end());
  }

  SUBCASE("fig1 is planar") {
    const std::vector<SweepSpec> family = preset("fig1");
    REQUIRE(family.size() == 3);
    for (const SweepSpec& spec : family) {
      CHECK(spec.config.m_max > 0);
      CHECK(spec.config.n_max > 0);
      CHECK(spec.axis == SweepAxis::beta);
      CHECK(!spec.r2_offset.has_value());
    }
    CHECK(family[0].config.m_max != family[1].config.m_max);
  }

  SUBCASE("fig3 fixes r2 per curve and the grid crosses it") {
    const std::vector<SweepSpec> family = preset("fig3");
    REQUIRE(family.size() == 2);
    for (const SweepSpec& spec : family) {
      CHECK(spec.axis == SweepAxis::r1);
      CHECK(!spec.r2_offset.has_value());
      double nearest = 1e9;
      for (const double v : spec.axis_values)
        nearest = std::min(nearest, std::abs(v - spec.user2.r));
      CHECK(nearest <= 1e-9);
    }
    CHECK(family[0].user2.r == doctest::Approx(40.0));
    CHECK(family[1].user2.r == doctest::Approx(20.0));
  }

  SUBCASE("fig4 links r2 to r1") {
    const std::vector<SweepSpec> family = preset("fig4");
    REQUIRE(family.size() == 2);
    CHECK(family[0].axis == SweepAxis::r1);
    REQUIRE(family[0].r2_offset.has_value());
    REQUIRE(family[1].r2_offset.has_value());
    CHECK(*family[0].r2_offset == 20.0);
    CHECK(*family[1].r2_offset == 40.0);
    CHECK(family[0].axis_values.size() == 200);
  }

  SUBCASE("angle overrides drop the ula column when phi tilts") {
    const std::vector<SweepSpec> tilted = preset("fig2", kHalfPi, 1.2);
    CHECK(std::find(tilted[0].methods.begin(), tilted[0].methods.end(),
                    Method::closed_form_ula) == tilted[0].methods.end());
  }

  SUBCASE("unknown name") {
    CHECK_THROWS_AS(preset("fig9"), std::invalid_argument);
  }
}

TEST_CASE("sweep validation") {
  SweepSpec spec = tiny_identity_spec();

  SUBCASE("well-formed passes") { CHECK_NOTHROW(validate(spec)); }

  SUBCASE("grid shape") {
    spec.axis_values = {};
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);
    spec.axis_values = {2.0, 1.0};
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);
    spec.axis_values = {1.0, 1.0};
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);
  }

  SUBCASE("methods") {
    spec.methods = {};
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);
    spec.methods = {Method::sum_oracle};
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);
  }

  SUBCASE("ula preconditions checked per point") {
    spec.config = ArrayConfig::half_wavelength(1, 16, 0.01);
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);

    spec = tiny_identity_spec();
    spec.user1 = UserLocation(1.0, kHalfPi, 1.2);
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);

    // Without the ula method the tilted pair is fine.
    spec.methods = {Method::closed_form};
    CHECK_NOTHROW(validate(spec));
  }

  SUBCASE("axis binding failures point at the grid value") {
    spec.axis = SweepAxis::beta;
    spec.axis_values = {-0.5, 0.5};
    try {
      validate(spec);
      FAIL("expected invalid_argument");
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find("-0.5") != std::string::npos);
    }
  }

  SUBCASE("integer axes require integers") {
    spec.axis = SweepAxis::N;
    spec.axis_values = {2.5, 3.0};
    spec.methods = {Method::closed_form};
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);
  }
}

TEST_CASE("run_sweep") {
  SUBCASE("identity point yields ones for every method") {
    const std::vector<SweepRow> rows = run_sweep(tiny_identity_spec());
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].axis_value == 10.0);
    REQUIRE(rows[0].deltas.size() == 4);
    for (const double d : rows[0].deltas)
      CHECK(d == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("rows keep axis order and methods agree per row") {
    SweepSpec spec;
    spec.axis = SweepAxis::r1;
    for (int k = 1; k <= 20; ++k) spec.axis_values.push_back(0.7 * k);
    spec.config = ArrayConfig::half_wavelength(3, 21, 0.01);
    spec.user1 = UserLocation(1.0, 1.1, 1.9);
    spec.user2 = UserLocation(9.0, 1.1, 1.9);
    spec.methods = {Method::closed_form, Method::oracle_fresnel};
    const std::vector<SweepRow> rows = run_sweep(spec);
    REQUIRE(rows.size() == 20);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(rows[i].axis_value == spec.axis_values[i]);
      CHECK(std::abs(rows[i].deltas[0] - rows[i].deltas[1]) <= 1e-9);
    }
  }

  SUBCASE("aperture axis rebinds the config") {
    SweepSpec spec;
    spec.axis = SweepAxis::N;
    spec.axis_values = {0.0, 4.0, 16.0};
    spec.config = ArrayConfig::half_wavelength(0, 1, 0.01);
    spec.user1 = UserLocation(5.0, kHalfPi, kHalfPi);
    spec.user2 = UserLocation(10.0, kHalfPi, kHalfPi);
    spec.methods = {Method::closed_form};
    const std::vector<SweepRow> rows = run_sweep(spec);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].deltas[0] == 1.0);        // single element
    CHECK(rows[2].deltas[0] < rows[0].deltas[0]);
  }

  SUBCASE("output is identical across thread counts") {
    const SweepSpec spec = preset("fig2")[0];
    const std::string serial = csv_text(run_sweep(spec, 1), spec);
    const std::string threaded = csv_text(run_sweep(spec, 4), spec);
    CHECK(serial == threaded);
  }
}

TEST_CASE("csv emission") {
  SUBCASE("identity single row, bit-stable") {
    SweepSpec spec = tiny_identity_spec();
    spec.config = ArrayConfig::half_wavelength(0, 64, 0.01);  // boundary 81.92
    spec.methods = {Method::closed_form};
    const std::vector<SweepRow> rows = run_sweep(spec);
    CHECK(csv_text(rows, spec) == "axis,closed_form,warnings\n10,1,\n");

    spec.output_path = temp_file("nfres_csv_a.csv").string();
    emit_csv(rows, spec);
    const std::string first = slurp(spec.output_path);
    emit_csv(rows, spec);
    CHECK(first == slurp(spec.output_path));
    CHECK(first == csv_text(rows, spec));
    fs::remove(spec.output_path);
  }

  SUBCASE("header order follows the method order") {
    SweepSpec spec = tiny_identity_spec();
    spec.methods = {Method::oracle_exact, Method::closed_form_ula,
                    Method::closed_form};
    const std::string text = csv_text(run_sweep(spec), spec);
    CHECK(text.rfind("axis,oracle_exact,ula,closed_form,warnings\n", 0) == 0);
  }

  SUBCASE("warnings land in the last column") {
    SweepSpec spec = tiny_identity_spec();  // rayleigh boundary at 5.12 m
    spec.methods = {Method::closed_form};
    const std::string text = csv_text(run_sweep(spec), spec);
    CHECK(text.find("r1_beyond_rayleigh;r2_beyond_rayleigh") !=
          std::string::npos);
  }

  SUBCASE("unwritable path raises an io error naming it") {
    SweepSpec spec = tiny_identity_spec();
    spec.output_path = "/nonexistent_dir_nfres/out.csv";
    const std::vector<SweepRow> rows = run_sweep(spec);
    try {
      emit_csv(rows, spec);
      FAIL("expected IoError");
    } catch (const IoError& e) {
      CHECK(std::string(e.what()).find(spec.output_path) != std::string::npos);
    }
  }

  SUBCASE("no rows is a contract error") {
    const SweepSpec spec = tiny_identity_spec();
    CHECK_THROWS_AS(csv_text({}, spec), std::invalid_argument);
  }
}

TEST_CASE("plot scripts") {
  const fs::path csv = temp_file("nfres_plot.csv");
  const fs::path script = temp_file("nfres_plot.gp");

  SweepSpec spec = preset("fig3")[0];
  spec.output_path = csv.string();
  emit_plot_script(spec, csv.string(), script.string());

  const std::string text = slurp(script);
  CHECK(text.find("nfres_plot.csv") != std::string::npos);
  CHECK(text.find(spec.title) != std::string::npos);
  CHECK(text.find("r1 [m]") != std::string::npos);  // meters on the x axis
  CHECK(text.find("using 1:2") != std::string::npos);
  fs::remove(csv);
  fs::remove(script);
}

TEST_CASE("spec files") {
  const fs::path path = temp_file("nfres_spec.txt");

  SUBCASE("round trip") {
    {
      std::ofstream out(path);
      out << "# delta against r1 at a fixed companion\n"
          << "axis = r1\n"
          << "axis_range = 1, 10, 10\n"
          << "M = 0\n"
          << "N = 32\n"
          << "lambda = 0.01\n"
          << "r2 = 7.5\n"
          << "theta1 = 1.2\n"
          << "theta2 = 1.2\n"
          << "methods = closed_form, oracle_fresnel\n"
          << "out = roundtrip.csv\n";
    }
    const SweepSpec spec = parse_spec_file(path.string());
    CHECK(spec.axis == SweepAxis::r1);
    REQUIRE(spec.axis_values.size() == 10);
    CHECK(spec.axis_values.front() == doctest::Approx(1.0));
    CHECK(spec.axis_values.back() == doctest::Approx(10.0));
    CHECK(spec.config.m_max == 0);
    CHECK(spec.config.n_max == 32);
    CHECK(spec.config.spacing == doctest::Approx(0.005));  // lambda/2 default
    CHECK(spec.user2.r == 7.5);
    CHECK(spec.user1.theta == 1.2);
    CHECK(spec.user1.phi == doctest::Approx(kHalfPi));
    REQUIRE(spec.methods.size() == 2);
    CHECK(spec.methods[0] == Method::closed_form);
    CHECK(spec.output_path == "roundtrip.csv");
    CHECK(spec.title == "roundtrip");
    CHECK_NOTHROW(validate(spec));
    fs::remove(path);
  }

  SUBCASE("offset stands in for r2") {
    {
      std::ofstream out(path);
      out << "axis = r1\naxis_values = 1,2,3\nM = 0\nN = 8\n"
          << "r2_offset = 20\nmethods = closed_form\n";
    }
    const SweepSpec spec = parse_spec_file(path.string());
    REQUIRE(spec.r2_offset.has_value());
    CHECK(*spec.r2_offset == 20.0);
    CHECK_NOTHROW(validate(spec));
    fs::remove(path);
  }

  SUBCASE("rejects unknown keys and malformed lines") {
    {
      std::ofstream out(path);
      out << "axis = r1\naxis_values = 1,2\nM = 0\nN = 8\nr2 = 5\n"
          << "methods = closed_form\nbogus = 1\n";
    }
    CHECK_THROWS_AS(parse_spec_file(path.string()), std::invalid_argument);
    {
      std::ofstream out(path);
      out << "axis r1\n";
    }
    CHECK_THROWS_AS(parse_spec_file(path.string()), std::invalid_argument);
    {
      std::ofstream out(path);
      out << "axis_values = 1,2\nM = 0\nN = 8\nr2 = 5\nmethods = closed_form\n";
    }
    CHECK_THROWS_AS(parse_spec_file(path.string()), std::invalid_argument);
    fs::remove(path);
    CHECK_THROWS_AS(parse_spec_file("/nonexistent_nfres_spec.txt"), IoError);
  }
}

TEST_CASE("figure-level structure") {
  SUBCASE("fig3 peaks where the radii meet") {
    for (const SweepSpec& spec : preset("fig3")) {
      const std::vector<SweepRow> rows = run_sweep(spec);
      std::size_t argmax = 0;
      for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].deltas[0] > rows[argmax].deltas[0]) argmax = i;
      CHECK(std::abs(rows[argmax].axis_value - spec.user2.r) <= 0.2 + 1e-9);
      CHECK(rows[argmax].deltas[0] >= 0.999);
    }
  }

  SUBCASE("fig2 plateau point") {
    const SweepSpec spec = preset("fig2")[0];
    const std::vector<SweepRow> rows = run_sweep(spec);
    std::size_t near09 = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
      if (std::abs(rows[i].axis_value - 0.9) <
          std::abs(rows[near09].axis_value - 0.9))
        near09 = i;
    CHECK(rows[near09].deltas[0] > 0.95);
  }
}

TEST_CASE("bench smoke") {
  const std::vector<BenchRow> table = run_bench({{8, 8}, {16, 16}}, 5);
  REQUIRE(table.size() == 2);
  for (const BenchRow& row : table) {
    CHECK(row.closed_form_seconds > 0.0);
    CHECK(row.oracle_seconds > 0.0);
    CHECK(row.speedup == doctest::Approx(row.oracle_seconds /
                                         row.closed_form_seconds));
  }
  // O(t) against O(M+N): the oracle grows much faster with the aperture.
  CHECK(table[1].oracle_seconds > table[0].oracle_seconds);
  CHECK(table[1].speedup > 2.0);
  CHECK_THROWS_AS(run_bench({}, 5), std::invalid_argument);
}
