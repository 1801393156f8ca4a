#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <sstream>

#include "qinterf/estimators.hpp"
#include "qinterf/io.hpp"
#include "qinterf/synthesis.hpp"

using namespace qinterf;

namespace {

MixtureModel two_cluster_1d() {
  std::vector<ClusterSpec> cs;
  cs.emplace_back(0.5, vec1(0.0), Covariance::isotropic(1, 4.0));
  cs.emplace_back(0.5, vec1(4.0), Covariance::isotropic(1, 4.0));
  return MixtureModel(std::move(cs));
}

}  // namespace

TEST_CASE("dataset round trip is byte identical") {
  const Dataset d = stratified_sample(two_cluster_1d(), {20, 20}, 9);
  std::ostringstream os1;
  write_dataset(os1, d);
  CHECK(os1.str().rfind("# qinterf-dataset v1 dim=1 n=40 seed=9", 0) == 0);

  std::istringstream is(os1.str());
  const Dataset back = read_dataset(is);
  REQUIRE(back.size() == d.size());
  CHECK(back.seed == d.seed);
  REQUIRE(back.labels.has_value());
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(back.points[i][0] == d.points[i][0]);
    CHECK((*back.labels)[i] == (*d.labels)[i]);
  }
  std::ostringstream os2;
  write_dataset(os2, back);
  CHECK(os1.str() == os2.str());
}

TEST_CASE("dataset without labels round trips") {
  Dataset d;
  d.points = {vec2(1.0, -0.5), vec2(0.25, 3.125)};
  d.seed = 4;
  std::ostringstream os;
  write_dataset(os, d);
  std::istringstream is(os.str());
  const Dataset back = read_dataset(is);
  CHECK_FALSE(back.labels.has_value());
  CHECK(back.points[1][1] == 3.125);
}

TEST_CASE("dataset read rejects malformed input") {
  std::istringstream empty("");
  CHECK_THROWS_AS(read_dataset(empty), ConfigError);
  std::istringstream bad_header("# wrong v9\n1.0\n");
  CHECK_THROWS_AS(read_dataset(bad_header), ConfigError);
  std::istringstream short_row("# qinterf-dataset v1 dim=2 n=1 seed=0\n1.0\n");
  CHECK_THROWS_AS(read_dataset(short_row), ConfigError);
  std::istringstream wrong_n("# qinterf-dataset v1 dim=1 n=3 seed=0\n1.0\n");
  CHECK_THROWS_AS(read_dataset(wrong_n), ConfigError);
  std::istringstream mixed_labels(
      "# qinterf-dataset v1 dim=1 n=2 seed=0\n1.0\t0\n2.0\n");
  CHECK_THROWS_AS(read_dataset(mixed_labels), ConfigError);
}

TEST_CASE("1D field round trip") {
  const Dataset d = stratified_sample(two_cluster_1d(), {50, 50}, 3);
  const Covariance eta = Covariance::isotropic(1, 16.0);
  const EvaluationGrid grid = default_grid(d.points, eta, 60);
  const DensityField f = classical_density(d, 10.0, eta, grid);
  std::ostringstream os1;
  write_field(os1, f, "classical");
  CHECK(os1.str().rfind("# qinterf-field v1 kind=classical dim=1", 0) == 0);

  std::istringstream is(os1.str());
  const FieldFile back = read_field(is);
  CHECK(back.kind == "classical");
  REQUIRE(back.grid == grid);
  const DensityField fd = back.as_density();
  for (std::size_t i = 0; i < f.values.size(); ++i)
    CHECK(fd.values[i] == f.values[i]);
  std::ostringstream os2;
  write_field(os2, fd, back.kind);
  CHECK(os1.str() == os2.str());
}

TEST_CASE("2D field round trip") {
  const EvaluationGrid grid({GridAxis{-1.0, 2.0, 6}, GridAxis{0.0, 1.0, 4}});
  std::vector<double> v(grid.node_count());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 0.001 * (i + 1);
  DensityField f(grid, std::move(v));
  f.normalize();
  std::ostringstream os;
  write_field(os, f, "quantum");
  std::istringstream is(os.str());
  const FieldFile back = read_field(is);
  REQUIRE(back.grid == grid);
  for (std::size_t i = 0; i < f.values.size(); ++i)
    CHECK(back.real_values[i] == f.values[i]);
}

TEST_CASE("amplitude field round trip keeps both parts") {
  const Dataset d = stratified_sample(two_cluster_1d(), {30, 30}, 6);
  const Covariance eta = Covariance::isotropic(1, 16.0);
  const EvaluationGrid grid = default_grid(d.points, eta, 40);
  const auto amp = quantum_amplitude(
      d, 0.4, eta, assign_phases(d, RandomUniformPhases{2}), grid);
  std::ostringstream os;
  write_field(os, amp);
  std::istringstream is(os.str());
  const FieldFile back = read_field(is);
  CHECK(back.kind == "amplitude");
  REQUIRE(back.imag_values.size() == amp.values.size());
  for (std::size_t i = 0; i < amp.values.size(); ++i) {
    CHECK(back.real_values[i] == amp.values[i].real());
    CHECK(back.imag_values[i] == amp.values[i].imag());
  }
  CHECK_THROWS_AS(back.as_density(), ConfigError);
}

TEST_CASE("field read rejects malformed input") {
  std::istringstream bad("# qinterf-field v1 kind=classical dim=3\n");
  CHECK_THROWS_AS(read_field(bad), ConfigError);
  std::istringstream missing("# qinterf-field v1 kind=classical dim=1\n1.0\n");
  CHECK_THROWS_AS(read_field(missing), ConfigError);
  // non-uniform coordinates
  std::istringstream warped(
      "# qinterf-field v1 kind=classical dim=1\n0\t1\n1\t1\n3\t1\n");
  CHECK_THROWS_AS(read_field(warped), ConfigError);
}

TEST_CASE("peak report format") {
  const EvaluationGrid grid({GridAxis{-8.0, 12.0, 100}});
  std::vector<double> v(grid.node_count());
  for (std::size_t n = 0; n < v.size(); ++n) {
    const double y = grid.node(n)[0];
    v[n] = gauss1d(1.0, y) + gauss1d(1.0, y - 4.0);
  }
  DensityField f(grid, std::move(v));
  f.normalize();
  const PeakReport r = count_peaks(f, 0.5);
  std::ostringstream os;
  write_peak_report(os, r);
  const std::string s = os.str();
  CHECK(s.find("threshold_fraction=0.5\n") != std::string::npos);
  CHECK(s.find("count=2\n") != std::string::npos);
  CHECK(s.find("plateau_merges=") != std::string::npos);
  // one tab-separated line per peak
  CHECK(static_cast<int>(std::count(s.begin(), s.end(), '\t')) == r.count);
}
