#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "oracles/oracles.hpp"
#include "sagraph/families.hpp"
#include "sagraph/kernels.hpp"
#include "sagraph/operators.hpp"
#include "sagraph/verification.hpp"

using namespace sagraph;

namespace {

MuVector random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  MuVector u = MuVector::zero(n);
  for (auto& v : u.values) v = {gauss(rng), gauss(rng)};
  return u;
}

GraphBundle cycle3(double flux) {
  BundleBuilder b;
  for (int i = 0; i < 3; ++i) b.add_vertex(VertexId("c" + std::to_string(i)), 1.0);
  b.add_edge(0, 1, 1.0, flux);
  b.add_edge(1, 2, 1.0);
  b.add_edge(2, 0, 1.0);
  return std::move(b).build();
}

}  // namespace

TEST_CASE("assembled matrices match the defining formula") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const GraphBundle g = random_bundle(seed);
    const OperatorMatrix op = assemble(g);
    const auto a = op.dense_operator();
    const auto s = op.dense_symmetrized();
    const auto ha = oracle::operator_matrix(g);
    const auto hs = oracle::symmetrized_matrix(g);
    for (std::size_t x = 0; x < g.size(); ++x) {
      for (std::size_t y = 0; y < g.size(); ++y) {
        CHECK(std::abs(a(x, y) - ha[x][y]) <= 1e-12 * (1.0 + std::abs(ha[x][y])));
        CHECK(std::abs(s(x, y) - hs[x][y]) <= 1e-12 * (1.0 + std::abs(hs[x][y])));
        // Built Hermitian, not merely close to it.
        CHECK(s(x, y) == std::conj(s(y, x)));
      }
    }
  }
}

TEST_CASE("dense spectrum agrees with the Jacobi oracle") {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    const GraphBundle g = random_bundle(seed);
    const auto r = spectrum(assemble(g));
    const auto ref = oracle::jacobi_eigenvalues(oracle::symmetrized_matrix(g));
    REQUIRE(r.eigenvalues.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
      CHECK(std::abs(r.eigenvalues[i] - ref[i]) <= 1e-9 * (1.0 + r.spectral_radius));
    }
    CHECK(r.residual <= 1e-10);
  }
}

TEST_CASE("spectra of size at most 3 match the characteristic polynomial roots") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> w(0.1, 10.0), ang(-std::numbers::pi, std::numbers::pi);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 3;
    BundleBuilder b;
    for (int i = 0; i < n; ++i) b.add_vertex(VertexId("t" + std::to_string(i)), w(rng), w(rng) - 5.0);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) b.add_edge(i, j, w(rng), ang(rng));
    const GraphBundle g = std::move(b).build();
    const auto r = spectrum(assemble(g));
    const auto ref = oracle::closed_form_eigenvalues(oracle::symmetrized_matrix(g));
    for (int i = 0; i < n; ++i) CHECK(r.eigenvalues[i] == doctest::Approx(ref[i]).epsilon(1e-10));
  }
}

TEST_CASE("triangle with flux pi has lowest eigenvalue 1") {
  const auto r = spectrum(assemble(cycle3(std::numbers::pi)));
  CHECK(std::abs(r.eigenvalues.front() - 1.0) <= 1e-10);
  CHECK(std::abs(spectrum(assemble(cycle3(0.0))).eigenvalues.front()) <= 1e-12);
}

TEST_CASE("A and its symmetrization share a spectrum") {
  for (std::uint64_t seed = 200; seed < 210; ++seed) {
    const GraphBundle g = random_bundle(seed);
    const OperatorMatrix op = assemble(g);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> general(op.dense_operator());
    std::vector<double> ev;
    for (Eigen::Index i = 0; i < general.eigenvalues().size(); ++i) ev.push_back(general.eigenvalues()[i].real());
    std::sort(ev.begin(), ev.end());
    const auto r = spectrum(op);
    for (std::size_t i = 0; i < ev.size(); ++i) {
      CHECK(std::abs(ev[i] - r.eigenvalues[i]) <= 1e-10 * (1.0 + r.spectral_radius));
    }
  }
}

TEST_CASE("Lanczos finds the same lowest eigenvalues as the dense path") {
  const GraphBundle g = generate(LayeredFamilySpec::bipartite(), 30);
  SpectralOptions iterative;
  iterative.dense_limit = 10;
  iterative.extremal_count = 4;
  const auto lanczos = spectrum(assemble(g), iterative);
  const auto dense = spectrum(assemble(g));
  CHECK_FALSE(lanczos.complete);
  REQUIRE(lanczos.eigenvalues.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(lanczos.eigenvalues[i] == doctest::Approx(dense.eigenvalues[i]).epsilon(1e-8));
  }
}

TEST_CASE("ground state is mu-normalized and satisfies the eigen equation") {
  const GraphBundle g = random_bundle(31);
  const auto gs = ground_state(g);
  CHECK(norm(g.graph, gs.vector) == doctest::Approx(1.0).epsilon(1e-12));
  const MuVector hv = apply(g, gs.vector);
  double err = 0.0;
  for (std::size_t x = 0; x < g.size(); ++x) err = std::max(err, std::abs(hv[x] - gs.eigenvalue * gs.vector[x]));
  CHECK(err <= 1e-8 * (1.0 + std::abs(gs.eigenvalue)));
}

TEST_CASE("quadratic form, apply and the matrix agree") {
  std::mt19937_64 rng(41);
  for (std::uint64_t seed = 300; seed < 320; ++seed) {
    const GraphBundle g = random_bundle(seed);
    const MuVector u = random_vector(g.size(), rng);
    const double q = quadratic_form(g, u);
    const double ref = oracle::quadratic_form(g, u.values);
    CHECK(q == doctest::Approx(ref).epsilon(1e-10));
    CHECK(inner(g.graph, apply(g, u), u).real() == doctest::Approx(ref).epsilon(1e-10));
  }
}

TEST_CASE("gauge transforms leave the spectrum in place") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  const GraphBundle g = random_bundle(47);
  std::vector<double> tau(g.size());
  for (double& t : tau) t = ang(rng);
  const auto a = spectrum(assemble(g)).eigenvalues;
  const auto b = spectrum(assemble(gauge_transform(g, tau))).eigenvalues;
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-8);
}

TEST_CASE("serial and OpenMP kernels are bitwise identical") {
  const GraphBundle g = generate(LayeredFamilySpec::triangular(1.0, 0.5), 120);
  std::mt19937_64 rng(5);
  const MuVector u = random_vector(g.size(), rng);
  std::vector<cplx> s(g.size()), p(g.size());
  kernels::apply_serial(g, u.values, s);
  kernels::apply_parallel(g, u.values, p);
  CHECK(s == p);
  kernels::symmetrized_apply_serial(g, u.values, s);
  kernels::symmetrized_apply_parallel(g, u.values, p);
  CHECK(s == p);
  std::vector<double> es(g.graph.edge_count()), ep(g.graph.edge_count());
  kernels::edge_energies_serial(g, u.values, {}, es);
  kernels::edge_energies_parallel(g, u.values, {}, ep);
  CHECK(es == ep);
}
