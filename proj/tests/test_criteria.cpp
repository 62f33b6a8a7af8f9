#include <doctest.h>

#include <cmath>

#include "sagraph/criteria.hpp"
#include "sagraph/error.hpp"
#include "sagraph/families.hpp"
#include "sagraph/power_law.hpp"

using namespace sagraph;

namespace {

LayeredFamilySpec ex51_positive(double alpha, double beta) {
  auto s = LayeredFamilySpec::triangular(alpha, beta);
  s.potential = RowFormula::power(1.0, 2.0 * beta + alpha - 1.5);
  return s;
}

// Closed product for the triangular spine with W = 0:
// a_2^2 = (delta + |2 + lambda|)^2 / 4 and each further factor
// ((delta + |G_j + lambda|) / G_j)^2, G_j = j^{a+2b}(floor(sqrt j)+1) + 2 j^{2b}(j-1)^a.
double ex51_an2(int n, double alpha, double beta, double delta, double lambda) {
  if (n == 1) return 1.0;
  double v = std::pow(delta + std::abs(2.0 + lambda), 2) / 4.0;
  for (int j = 2; j <= n - 1; ++j) {
    const double G = std::pow(j, alpha + 2 * beta) * (std::floor(std::sqrt(j)) + 1.0) +
                     2.0 * std::pow(j, 2 * beta) * std::pow(j - 1.0, alpha);
    v *= std::pow((delta + std::abs(G + lambda)) / G, 2);
  }
  return v;
}

}  // namespace

TEST_CASE("covering criterion passes on the triangular family with the negative potential") {
  for (double beta : {0.5, 0.6}) {
    const auto r = theorem2_check(CheckSubject::of_family(LayeredFamilySpec::triangular(1.0, beta), 60));
    CHECK(r.verdict == Verdict::Pass);
    REQUIRE(r.certificate.has_value());
    CHECK(r.constants.count("C"));
  }
}

TEST_CASE("a fixed constant below the lower bound fails, one above passes") {
  const auto subject = CheckSubject::of_family(LayeredFamilySpec::triangular(1.0, 0.5), 60);
  const auto searched = theorem2_check(subject);
  REQUIRE(searched.verdict == Verdict::Pass);
  const double C = searched.constants.at("C");
  CHECK(theorem2_check(subject, {C + 1.0}).verdict == Verdict::Pass);
  CHECK(theorem2_check(subject, {searched.constants.at("C_lower_bound") - 0.5}).verdict == Verdict::Fail);
}

TEST_CASE("plain minorant criterion: positive potential passes, negative one fails") {
  CHECK(theorem1_check(CheckSubject::of_family(ex51_positive(1.0, 0.5), 60)).verdict == Verdict::Pass);
  CHECK(theorem1_check(CheckSubject::of_family(LayeredFamilySpec::triangular(1.0, 0.5), 60)).verdict ==
        Verdict::Fail);
}

TEST_CASE("the incompleteness criteria stay silent on complete spaces") {
  const auto complete = CheckSubject::of_family(LayeredFamilySpec::triangular(0.4, 0.3), 40);
  CHECK(theorem1_check(complete).verdict == Verdict::Inconclusive);
  CHECK(theorem2_check(complete).verdict == Verdict::Inconclusive);
}

TEST_CASE("rescaled metric criterion passes on the bipartite family") {
  const auto r = theorem3_check(CheckSubject::of_family(LayeredFamilySpec::bipartite(), 60));
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.constants.at("K") <= 1.0 + 1e-12);
}

TEST_CASE("rescaled metric criterion names the vertex where W < -q") {
  const auto r = theorem3_check(CheckSubject::of_family(LayeredFamilySpec::triangular(1.0, 0.5), 10));
  CHECK(r.verdict == Verdict::Fail);
  REQUIRE_FALSE(r.witnesses.empty());
}

TEST_CASE("finite graphs without frontier pass the rescaled criterion") {
  GraphBundle g = generate(LayeredFamilySpec::bipartite(), 6);
  g.frontier.clear();
  for (double& w : g.potential.values) w = 0.0;
  CHECK(theorem3_check(CheckSubject::of_graph(g)).verdict == Verdict::Pass);
  CHECK(theorem1_check(CheckSubject::of_graph(g)).verdict == Verdict::Inconclusive);
}

TEST_CASE("series classification") {
  std::vector<double> geometric, harmonic, raabe_fast;
  for (int n = 1; n <= 4000; ++n) {
    geometric.push_back(-0.5 * n);
    harmonic.push_back(-std::log(static_cast<double>(n)));
    raabe_fast.push_back(-1.5 * std::log(static_cast<double>(n)));
  }
  CHECK(classify_series(geometric).verdict == SeriesClass::Converges);
  CHECK(classify_series(harmonic).verdict == SeriesClass::Inconclusive);
  CHECK(classify_series(raabe_fast).verdict == SeriesClass::Converges);
  std::vector<double> slow;
  for (int n = 1; n <= 4000; ++n) slow.push_back(-0.5 * std::log(static_cast<double>(n)));
  CHECK(classify_series(slow).verdict == SeriesClass::Diverges);
}

TEST_CASE("spine terms of the Golenia series match the closed products") {
  GoleniaOptions o;
  o.delta = 1.0;
  o.lambda = 1.0;
  o.n_max = 50;
  const auto t = golenia_trace(CheckSubject::of_family(LayeredFamilySpec::bipartite(), 10), o);
  REQUIRE(t.a.size() == 50);
  for (int n = 1; n <= 50; ++n) {
    const double expected =
        std::exp((2.0 * n - 2.0) * std::log(2.0) - (n - 1.0) * std::log(4.0) - std::lgamma(static_cast<double>(n)));
    CHECK(std::abs(t.a[n - 1] * t.a[n - 1] - expected) <= 1e-9 * expected);
  }

  GoleniaOptions w;
  w.delta = 0.7;
  w.lambda = 0.3;
  w.n_max = 50;
  auto spec = LayeredFamilySpec::triangular(1.0, 0.6);
  spec.potential = RowFormula::zero();
  const auto s = golenia_trace(CheckSubject::of_family(spec, 10), w);
  for (int n = 1; n <= 50; ++n) {
    const double expected = ex51_an2(n, 1.0, 0.6, 0.7, 0.3);
    CHECK(std::abs(s.a[n - 1] * s.a[n - 1] - expected) <= 1e-9 * expected);
  }
}

TEST_CASE("Golenia verdicts on the two families") {
  GoleniaTrace trace;
  auto spec = LayeredFamilySpec::triangular(1.0, 0.6);
  spec.potential = RowFormula::zero();
  const auto r = golenia_check(CheckSubject::of_family(spec, 10), {}, &trace);
  CHECK(trace.classification.verdict == SeriesClass::Converges);
  CHECK(trace.classification.raabe == doctest::Approx(1.2).epsilon(0.01));
  CHECK(r.verdict == Verdict::Fail);

  GoleniaTrace t2;
  golenia_check(CheckSubject::of_family(LayeredFamilySpec::bipartite(), 10), {}, &t2);
  CHECK(t2.classification.verdict == SeriesClass::Converges);
}

TEST_CASE("Golenia rejects a non-positive delta and a broken path") {
  GoleniaOptions bad;
  bad.delta = 0.0;
  CHECK_THROWS_AS(golenia_check(CheckSubject::of_family(LayeredFamilySpec::bipartite(), 5), bad), InputError);
  const GraphBundle g = generate(LayeredFamilySpec::triangular(1.0, 0.5), 5);
  GoleniaOptions path;
  path.path = std::vector<VertexIndex>{0, g.size() - 1};
  CHECK_THROWS_AS(golenia_check(CheckSubject::of_graph(g), path), InputError);
}

TEST_CASE("verdicts map to exit codes") {
  CHECK(exit_code(Verdict::Pass) == 0);
  CHECK(exit_code(Verdict::Fail) == 1);
  CHECK(exit_code(Verdict::Inconclusive) == 2);
  CHECK(exit_code(Verdict::VerifiedUpToTruncation) == 2);
  CHECK(criterion_from_string("thm2") == Criterion::Thm2);
  CHECK_THROWS_AS(criterion_from_string("thm9"), InputError);
}

TEST_CASE("stability probe reproduces the pinned dense values") {
  const std::vector<int> rows{5, 10};
  const auto p = spectral_stability_probe(LayeredFamilySpec::bipartite(), rows);
  CHECK(p.plain[0] == doctest::Approx(-4.117332759696795).epsilon(1e-10));
  CHECK(p.penalized[1] == doctest::Approx(-4.681857588641288).epsilon(1e-10));
}
