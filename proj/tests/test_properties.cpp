#include <doctest.h>

#include "gme/json_io.hpp"
#include "property_harness.hpp"

using namespace gme;

// Moderate case counts here; the acceptance runner repeats these suites at
// the full thousand-case scale.

TEST_CASE("matching equals brute force") {
  auto r = properties::matching_vs_brute_force(1001, 250);
  CHECK(r.failures == 0);
}

TEST_CASE("partition counts equal stirling numbers") {
  auto r = properties::partition_counts(8);
  CHECK(r.failures == 0);
  CHECK(r.cases > 1000);
}

TEST_CASE("pauli algebra equals the dense oracle") {
  auto r = properties::pauli_dense_oracle(1002, 300);
  CHECK(r.failures == 0);
}

TEST_CASE("k-separable states never violate the tight bound") {
  auto r = properties::separable_soundness(1003, 120, 6);
  CHECK(r.failures == 0);
}

TEST_CASE("fixed-partition states never violate their ceiling") {
  auto r = properties::fixed_partition_soundness(1004, 120, 6);
  CHECK(r.failures == 0);
}

TEST_CASE("anticommutativity and product-state inequalities") {
  CHECK(properties::anticommutativity_bound(1005, 300).failures == 0);
  CHECK(properties::product_state_bound(1006, 300).failures == 0);
}

TEST_CASE("energy expectation is dominated by the witness") {
  oracles::Rng rng(1007);
  for (int t = 0; t < 200; ++t) {
    Graph g = oracles::random_connected_graph(rng, 2 + rng.below(5));
    MeasurementRecord rec(g);
    double energy0 = 0, energy1 = 0;
    for (int v = 1; v <= g.n(); ++v) {
      double val = 2 * rng.uniform() - 1;
      rec.vertex_terms[v] = {val, 0.0, Provenance::Measured};
      energy0 += val;
    }
    for (auto [i, j] : g.edges()) {
      double val = 2 * rng.uniform() - 1;
      rec.edge_terms[{i, j}] = {val, 0.0, Provenance::Measured, {}, ""};
      energy1 += val;
    }
    for (double gamma : {0.0, 0.3, 1.0})
      CHECK(std::abs(energy0 + gamma * energy1) <= witness_value(rec, gamma) + 1e-12);
  }
}

TEST_CASE("record json round trip") {
  Graph ring4 = make_ring(4);
  MeasurementRecord rec = measure_record(add_white_noise(graph_state(ring4), 0.2), ring4,
                                         {}, ShotModel{5000, 3});
  EdgeTerm sdp;
  sdp.value = 0.55;
  sdp.provenance = Provenance::SdpLowerBound;
  sdp.gradients = {{1, 0.9}, {2, 1.1}};
  rec.edge_terms[{1, 2}] = sdp;
  rec.covariance = rec.effective_covariance();

  Json j = record_to_json(rec);
  MeasurementRecord back = record_from_json(j);
  CHECK(back.graph == rec.graph);
  CHECK(back.vertex_terms.size() == rec.vertex_terms.size());
  for (const auto& [v, t] : rec.vertex_terms) {
    CHECK(back.vertex_terms.at(v).value == t.value);
    CHECK(back.vertex_terms.at(v).sigma == t.sigma);
  }
  const EdgeTerm& bt = back.edge_terms.at({1, 2});
  CHECK(bt.provenance == Provenance::SdpLowerBound);
  CHECK(bt.value == 0.55);
  REQUIRE(bt.gradients.size() == 2);
  CHECK(bt.gradients[1].second == 1.1);
  REQUIRE(back.covariance.has_value());
  CHECK((*back.covariance - *rec.covariance).cwiseAbs().maxCoeff() == 0.0);

  // serialization is byte-stable
  CHECK(record_to_json(back).dump(2) == j.dump(2));
}
