#include <cmath>
#include <cstring>
#include <filesystem>
#include <limits>

#include "doctest.h"
#include "vortibc/config.hpp"
#include "vortibc/io.hpp"
#include "vortibc/scenarios.hpp"

using namespace vortibc;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("vortibc_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

ErrorCode parse_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IOError;  // sentinel: no error raised
}

}  // namespace

TEST_CASE("config parses keys, comments and lists") {
  const RunConfig c = parse_config(
      "# header\n"
      "domain.kind = channel   # trailing comment\n"
      "domain.length_x = 6.5\n"
      "domain.n1 = 48\n"
      "\n"
      "physics.mu_list = 0.1, 0.03,0.01\n"
      "physics.initial = zero\n"
      "solver.scheme = crank_nicolson\n"
      "output.seed = 18446744073709551615\n");
  CHECK(c.domain.kind == DomainKind::Channel);
  CHECK(c.domain.length_x == 6.5);
  CHECK(c.n1 == 48);
  CHECK(c.n2 == RunConfig{}.n2);
  CHECK(c.mu_list == std::vector<double>{0.1, 0.03, 0.01});
  CHECK(c.scheme == TimeScheme::CrankNicolson);
  CHECK(c.seed == std::numeric_limits<std::uint64_t>::max());
}

TEST_CASE("config errors") {
  CHECK(parse_error("domain.kind annulus\n") == ErrorCode::ConfigError);
  CHECK(parse_error("domain.nope = 1\n") == ErrorCode::ConfigError);
  CHECK(parse_error("physics.mu = 0.1\nphysics.mu = 0.2\n") == ErrorCode::ConfigError);
  CHECK(parse_error("physics.mu = fast\n") == ErrorCode::ConfigError);
  CHECK(parse_error("physics.mu = 0.1x\n") == ErrorCode::ConfigError);
  CHECK(parse_error("domain.n1 = 3.5\n") == ErrorCode::ConfigError);
  CHECK(parse_error("domain.kind = sphere\n") == ErrorCode::ConfigError);
  CHECK(parse_error("solver.scheme = rk4\n") == ErrorCode::ConfigError);

  RunConfig c;
  CHECK_NOTHROW(validate(c));
  c.initial = "vortex_street";
  CHECK_THROWS_AS(validate(c), Error);
  c = {};
  c.mu_list = {0.01, 0.1};
  CHECK_THROWS_AS(validate(c), Error);
  c = {};
  c.mu = 0.0;
  CHECK_THROWS_AS(validate(c), Error);
  c = {};
  c.domain.r_inner = 3.0;
  CHECK_THROWS_AS(validate(c), Error);
  c = {};
  c.boundary = "sometimes";
  CHECK_THROWS_AS(validate(c), Error);
}

TEST_CASE("config round trip is exact") {
  RunConfig c;
  c.domain = DomainSpec::torus(2.0 * M_PI, 1.0 / 3.0);
  c.n1 = 40;
  c.mu = 0.1 + 0.2;  // not representable in few digits
  c.T = std::nextafter(1.0, 2.0);
  c.dt = 1e-300;
  c.initial = "random_divfree";
  c.initial_param = M_PI;
  c.boundary = "compatible_plus";
  c.boundary_param = -5.0;
  c.boundary_time_amp = 0.25;
  c.mu_list = {1.0 / 3.0, 1e-2, 3e-3};
  c.scheme = TimeScheme::CrankNicolson;
  c.tol_fix = 1e-9;
  c.max_iter = 17;
  c.contraction_window = 3;
  c.verify_levels = 2;
  c.directory = "some dir/with spaces";
  c.checkpoint_stride = 7;
  c.seed = 1234567890123ull;
  const std::string text = serialize_config(c);
  const RunConfig back = parse_config(text);
  CHECK(back == c);
  CHECK(serialize_config(back) == text);
  CHECK(parse_config(serialize_config(RunConfig{})) == RunConfig{});
}

TEST_CASE("config builds the run") {
  RunConfig c;
  c.initial = "random_divfree";
  c.initial_param = 2.0;
  c.seed = 5;
  const GridPtr g = make_grid(c);
  const VectorField u = make_initial(c, g);
  CHECK(max_speed(u) == doctest::Approx(2.0));
  c.seed = 6;
  CHECK(l2(make_initial(c, g) - u) > 0.0);
  const StokesRun run = make_stokes_run(c);
  CHECK(run.grid->n1 == c.n1);
  CHECK(run.mu == c.mu);
}

TEST_CASE("VBF1 layout") {
  const VbfArray a{{2, 3}, 2, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}};
  const std::string bytes = encode_vbf(a);
  REQUIRE(bytes.size() == 4 + 4 + 8 + 4 + 12 * 8);
  CHECK(bytes.substr(0, 4) == "VBF1");
  CHECK(static_cast<unsigned char>(bytes[4]) == 2);  // rank, little endian
  CHECK(bytes[5] == 0);
  CHECK(static_cast<unsigned char>(bytes[8]) == 2);   // n1
  CHECK(static_cast<unsigned char>(bytes[12]) == 3);  // n2
  CHECK(static_cast<unsigned char>(bytes[16]) == 2);  // components
  double third;
  std::memcpy(&third, bytes.data() + 20 + 2 * 8, 8);
  CHECK(third == 2.0);
  CHECK(decode_vbf(bytes) == a);

  CHECK_THROWS_AS(decode_vbf("VBF2" + bytes.substr(4)), Error);
  CHECK_THROWS_AS(decode_vbf(bytes.substr(0, bytes.size() - 1)), Error);
  CHECK_THROWS_AS(decode_vbf(bytes + "x"), Error);
}

TEST_CASE("VBF1 field round trip is bit-identical") {
  const auto dir = scratch_dir("vbf");
  auto g = build_grid(DomainSpec::annulus(1.0, 2.0), 17, 23);
  const VectorField u = random_smooth_field(g, 9);
  ScalarField s = curl2d(u);
  s[3] = -0.0;
  s[4] = std::numeric_limits<double>::denorm_min();
  const std::string pu = (dir / "u.vbf").string(), ps = (dir / "s.vbf").string();
  write_vbf(pu, to_vbf(u));
  write_vbf(ps, to_vbf(s));
  const VectorField u2 = vector_from_vbf(read_vbf(pu), g);
  const ScalarField s2 = scalar_from_vbf(read_vbf(ps), g);
  CHECK(std::memcmp(u2.x.data(), u.x.data(), u.x.size() * sizeof(double)) == 0);
  CHECK(std::memcmp(u2.y.data(), u.y.data(), u.y.size() * sizeof(double)) == 0);
  CHECK(std::memcmp(s2.v.data(), s.v.data(), s.v.size() * sizeof(double)) == 0);
  CHECK(std::signbit(s2[3]));
  // Node k = i * n2 + j is stored at position k, component innermost.
  const VbfArray a = to_vbf(u);
  CHECK(a.data[2 * g->index(5, 7) + 1] == u.y[g->index(5, 7)]);
  auto other = build_grid(DomainSpec::annulus(1.0, 2.0), 23, 17);
  CHECK_THROWS_AS(vector_from_vbf(read_vbf(pu), other), Error);
  CHECK_THROWS_AS(scalar_from_vbf(read_vbf(pu), g), Error);
}

TEST_CASE("CSV output") {
  DiagnosticsRecord r({"t", "x"});
  r.add({0.0, 0.1});
  r.add({1.0 / 3.0, -2.5e-300});
  CHECK(format_csv(r) == "t,x\n0,0.10000000000000001\n0.33333333333333331,-2.5e-300\n");
  const auto dir = scratch_dir("csv");
  const std::string p = (dir / "r.csv").string();
  write_csv(p, r);
  CHECK(read_file(p) == format_csv(r));
  CHECK(!std::filesystem::exists(p + ".tmp"));
  write_csv(p, DiagnosticsRecord({"only"}));
  CHECK(read_file(p) == "only\n");
  CHECK_THROWS_AS(write_csv((dir / "missing" / "r.csv").string(), r), Error);
  CHECK_THROWS_AS(read_file((dir / "absent.csv").string()), Error);
}
