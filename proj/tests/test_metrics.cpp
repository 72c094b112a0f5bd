#include <catch2/catch_amalgamated.hpp>

#include "liqnet/metrics.hpp"
#include "oracles.hpp"

using namespace liqnet;

namespace {

QuarterlyNetwork make_net(int n, std::vector<Edge> edges) {
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) ids.push_back(std::string(1, static_cast<char>('A' + i)));
  return QuarterlyNetwork(Quarter{2005, 1}, std::move(ids), std::move(edges));
}

}  // namespace

TEST_CASE("bank metrics on a mutual pair") {
  const auto net = make_net(2, {Edge{0, 1, 1.0}, Edge{1, 0, 1.0}});
  const auto m = bank_metrics(net);
  CHECK(m[0].in_degree == 1);
  CHECK(m[0].out_degree == 1);
  CHECK(m[0].reciprocal_degree == 1);
  CHECK(m[0].degree == 1);
  CHECK(m[0].in_strength == 1.0);
  CHECK(m[0].out_strength == 1.0);
  CHECK(m[0].strength == 2.0);
}

TEST_CASE("bank metrics on a star") {
  const auto net = make_net(4, {Edge{0, 1, 1.0}, Edge{0, 2, 1.0}, Edge{0, 3, 1.0}});
  const auto m = bank_metrics(net);
  CHECK(m[0].out_degree == 3);
  CHECK(m[0].in_degree == 0);
  CHECK(m[0].out_strength == 3.0);
  CHECK(m[1].in_degree == 1);
  CHECK(m[1].out_degree == 0);
}

TEST_CASE("bank metrics match dense-matrix sums on random instances") {
  for (std::uint64_t seed : {11u, 22u, 33u, 44u}) {
    const auto net = oracle::random_network(5, 0.45, seed);
    const auto w = oracle::weight_matrix(net);
    const auto ms = bank_metrics(net);
    for (int i = 0; i < 5; ++i) {
      int k_in = 0, k_out = 0, k_rec = 0;
      double s_in = 0.0, s_out = 0.0;
      for (int j = 0; j < 5; ++j) {
        if (w[j][i] > 0) ++k_in;
        if (w[i][j] > 0) ++k_out;
        if (w[i][j] > 0 && w[j][i] > 0) ++k_rec;
        s_in += w[j][i];
        s_out += w[i][j];
      }
      CAPTURE(seed, i);
      CHECK(ms[i].in_degree == k_in);
      CHECK(ms[i].out_degree == k_out);
      CHECK(ms[i].reciprocal_degree == k_rec);
      CHECK(ms[i].degree == k_out + k_in - k_rec);
      CHECK(ms[i].in_strength == Catch::Approx(s_in).epsilon(1e-14));
      CHECK(ms[i].out_strength == Catch::Approx(s_out).epsilon(1e-14));
    }
  }
}

TEST_CASE("degree identity holds on every bank of random networks") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto net = oracle::random_network(3 + static_cast<int>(seed % 6), 0.4, seed + 100);
    for (const BankMetrics& m : bank_metrics(net)) {
      CHECK(m.degree == m.out_degree + m.in_degree - m.reciprocal_degree);
      CHECK(m.reciprocal_degree <= std::min(m.in_degree, m.out_degree));
      CHECK(m.strength == Catch::Approx(m.in_strength + m.out_strength));
    }
  }
}

TEST_CASE("density and total volume") {
  std::vector<Edge> complete3;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) complete3.push_back(Edge{i, j, 1.0});
  CHECK(density(make_net(3, complete3)) == 1.0);

  const auto net45 =
      make_net(4, {Edge{0, 1, 1.0}, Edge{1, 2, 1.0}, Edge{2, 3, 1.0}, Edge{3, 0, 1.0},
                   Edge{0, 2, 1.0}});
  CHECK(density(net45) == Catch::Approx(5.0 / 12.0));

  CHECK(total_volume(make_net(2, {Edge{0, 1, 2.0}, Edge{1, 0, 3.5}})) == 5.5);
}

TEST_CASE("degree skewness") {
  CHECK(moment_skewness({1, 2, 3}) == Catch::Approx(0.0).margin(1e-12));
  // {1,1,1,9}: direct moment computation.
  const std::vector<double> xs = {1, 1, 1, 9};
  const double mean = 3.0;
  double m2 = 0, m3 = 0;
  for (double x : xs) {
    m2 += (x - mean) * (x - mean);
    m3 += (x - mean) * (x - mean) * (x - mean);
  }
  m2 /= 4;
  m3 /= 4;
  CHECK(moment_skewness(xs) == Catch::Approx(m3 / std::pow(m2, 1.5)).epsilon(1e-13));
  CHECK_THROWS_WITH(moment_skewness({2, 2, 2}), Catch::Matchers::ContainsSubstring("undefined"));
  CHECK_THROWS_AS(moment_skewness({2, 2}), std::invalid_argument);

  // Mutual 2-bank network has constant degrees {1,1}.
  const auto net = make_net(2, {Edge{0, 1, 1.0}, Edge{1, 0, 1.0}});
  CHECK_THROWS_AS(degree_skewness(net), std::invalid_argument);
}

TEST_CASE("reciprocity conventions") {
  CHECK(reciprocity(make_net(2, {Edge{0, 1, 1.0}})) == 0.0);
  CHECK(reciprocity(make_net(2, {Edge{0, 1, 1.0}, Edge{1, 0, 2.0}})) == 1.0);
  // 3 links, 2 of them a mutual pair: r = 2*1/3.
  CHECK(reciprocity(make_net(3, {Edge{0, 1, 1.0}, Edge{1, 0, 1.0}, Edge{1, 2, 1.0}})) ==
        Catch::Approx(2.0 / 3.0));
}

TEST_CASE("reciprocity is 1 on symmetric and 0 on mutual-free networks") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto net = oracle::random_network(6, 0.4, 500 + seed);
    // Symmetrize.
    std::map<std::pair<int, int>, double> sym;
    for (const Edge& e : net.edges()) {
      sym[{e.src, e.dst}] = e.weight;
      sym[{e.dst, e.src}] = e.weight;
    }
    std::vector<Edge> edges;
    for (const auto& [key, w] : sym) edges.push_back(Edge{key.first, key.second, w});
    CHECK(reciprocity(make_net(6, edges)) == 1.0);
    // Keep only the lower-to-higher direction: no mutual pairs.
    std::vector<Edge> oneway;
    for (const Edge& e : net.edges())
      if (e.src < e.dst) oneway.push_back(e);
    if (!oneway.empty() &&
        static_cast<int>(oracle::weight_matrix(net).size())) {  // may disconnect; rebuild WCC
      QuarterAggregate agg;
      agg.quarter = Quarter{2005, 1};
      agg.bank_ids = net.bank_ids();
      agg.edges = oneway;
      const QuarterlyNetwork reduced = reduce_to_wcc(agg);
      if (reduced.n_links() > 0) CHECK(reciprocity(reduced) == 0.0);
    }
  }
}

TEST_CASE("clustering on canonical shapes") {
  // Undirected triangle: binary clustering 1 everywhere.
  const auto tri = make_net(3, {Edge{0, 1, 1.0}, Edge{1, 0, 1.0}, Edge{1, 2, 1.0},
                                Edge{2, 1, 1.0}, Edge{0, 2, 1.0}, Edge{2, 0, 1.0}});
  const auto c = clustering(tri, ClusteringMode::binary);
  CHECK(c.network == Catch::Approx(1.0));
  for (double v : c.per_bank) CHECK(v == Catch::Approx(1.0));

  // Path A<->B<->C: no triangle anywhere.
  const auto path =
      make_net(3, {Edge{0, 1, 1.0}, Edge{1, 0, 1.0}, Edge{1, 2, 1.0}, Edge{2, 1, 1.0}});
  const auto cp = clustering(path, ClusteringMode::binary);
  CHECK(cp.network == 0.0);
  CHECK(cp.per_bank[1] == 0.0);  // k=2 but open triple
  CHECK(cp.per_bank[0] == 0.0);  // k<2 rule
}

TEST_CASE("clustering matches the triple-loop oracle") {
  for (std::uint64_t seed : {7u, 8u, 9u}) {
    const auto net = oracle::random_network(4 + static_cast<int>(seed % 3), 0.5, seed);
    const int n = net.n_banks();
    const auto w = oracle::weight_matrix(net);
    for (const auto mode : {ClusteringMode::binary, ClusteringMode::weighted}) {
      auto u = [&](int i, int j) {
        if (mode == ClusteringMode::weighted) return w[i][j] + w[j][i];
        const double a = w[i][j] > 0 ? 1.0 : 0.0, b = w[j][i] > 0 ? 1.0 : 0.0;
        return a + b - a * b;
      };
      const auto got = clustering(net, mode);
      for (int i = 0; i < n; ++i) {
        double num = 0.0;
        int k = 0;
        for (int j = 0; j < n; ++j)
          if (j != i && u(i, j) > 0) ++k;
        for (int j = 0; j < n; ++j) {
          for (int h = 0; h < n; ++h) {
            if (j == i || h == i || j == h) continue;
            num += u(i, j) * u(i, h) * u(j, h);
          }
        }
        const double expected = k >= 2 ? num / (static_cast<double>(k) * k - k) : 0.0;
        CAPTURE(seed, static_cast<int>(mode), i);
        CHECK(got.per_bank[i] == Catch::Approx(expected).margin(1e-12));
      }
    }
  }
}

TEST_CASE("binary clustering lies in [0,1]; weighted scales cubically") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto net = oracle::random_network(6, 0.5, 900 + seed);
    const auto cb = clustering(net, ClusteringMode::binary);
    for (double v : cb.per_bank) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    // w -> 3w multiplies every weighted coefficient by 27.
    std::vector<Edge> scaled = net.edges();
    for (Edge& e : scaled) e.weight *= 3.0;
    const QuarterlyNetwork net3(net.quarter(), net.bank_ids(), scaled);
    const auto cw = clustering(net, ClusteringMode::weighted);
    const auto cw3 = clustering(net3, ClusteringMode::weighted);
    for (int i = 0; i < net.n_banks(); ++i) {
      CHECK(cw3.per_bank[i] == Catch::Approx(27.0 * cw.per_bank[i]).margin(1e-12));
    }
  }
}

TEST_CASE("efficiency on canonical shapes") {
  std::vector<Edge> complete;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) complete.push_back(Edge{i, j, 1.0});
  CHECK(efficiency(make_net(4, complete)) == 1.0);
  // Directed path A->B->C: pairs (A,B)=1,(B,C)=1,(A,C)=1/2, rest unreachable.
  CHECK(efficiency(make_net(3, {Edge{0, 1, 1.0}, Edge{1, 2, 1.0}})) == Catch::Approx(5.0 / 12.0));
}

TEST_CASE("efficiency equals Floyd-Warshall enumeration exactly on small graphs") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 3 + static_cast<int>(seed % 6);
    const auto net = oracle::random_network(n, 0.35, 1300 + seed);
    CAPTURE(seed, n);
    CHECK(efficiency(net) == oracle::efficiency(net));
  }
}

TEST_CASE("betweenness on canonical shapes") {
  // A->C->B: only C intermediates, sigma_AB(C)/sigma_AB = 1, normalizer 2.
  const auto chain = make_net(3, {Edge{0, 2, 1.0}, Edge{2, 1, 1.0}});
  const auto bc = betweenness(chain);
  CHECK(bc[2] == Catch::Approx(0.5));
  CHECK(bc[0] == 0.0);
  CHECK(bc[1] == 0.0);

  std::vector<Edge> complete;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) complete.push_back(Edge{i, j, 1.0});
  for (double v : betweenness(make_net(4, complete))) CHECK(v == 0.0);
}

TEST_CASE("betweenness equals exhaustive path enumeration exactly on small graphs") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 3 + static_cast<int>(seed % 6);
    const auto net = oracle::random_network(n, 0.35, 1700 + seed);
    const auto got = betweenness(net);
    const auto expected = oracle::betweenness(net);
    CAPTURE(seed, n);
    for (int v = 0; v < n; ++v) CHECK(got[v] == expected[v]);
  }
}

TEST_CASE("permuting bank indices permutes per-bank metrics and fixes network metrics") {
  const auto net = oracle::random_network(6, 0.4, 4242);
  // Reverse permutation.
  const int n = net.n_banks();
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = n - 1 - i;
  std::vector<std::string> ids(n);
  for (int i = 0; i < n; ++i) ids[perm[i]] = net.bank_ids()[i];
  std::vector<Edge> edges;
  for (const Edge& e : net.edges()) edges.push_back(Edge{perm[e.src], perm[e.dst], e.weight});
  const QuarterlyNetwork permuted(net.quarter(), ids, edges);

  const NetworkMetrics a = network_metrics(net);
  const NetworkMetrics b = network_metrics(permuted);
  CHECK(a.density == b.density);
  CHECK(a.reciprocity == b.reciprocity);
  CHECK(a.clustering == Catch::Approx(b.clustering).margin(1e-13));
  CHECK(a.efficiency == Catch::Approx(b.efficiency).margin(1e-13));
  CHECK(*a.degree_skewness == Catch::Approx(*b.degree_skewness).margin(1e-12));

  const auto ma = bank_metrics(net);
  const auto mb = bank_metrics(permuted);
  for (int i = 0; i < n; ++i) {
    CHECK(ma[i].degree == mb[perm[i]].degree);
    CHECK(ma[i].betweenness == Catch::Approx(mb[perm[i]].betweenness).margin(1e-13));
    CHECK(ma[i].weighted_clustering == Catch::Approx(mb[perm[i]].weighted_clustering).margin(1e-12));
  }
}

TEST_CASE("moving average") {
  CHECK(moving_average({}) == std::vector<double>{});
  const std::vector<double> constant(7, 4.2);
  CHECK(moving_average(constant) == constant);
  const auto ma = moving_average({1, 2, 3, 4, 5});
  CHECK(ma[2] == 3.0);     // full 5-point window
  CHECK(ma[0] == 1.0);     // boundary shrinks to a 1-point window
  CHECK(ma[1] == 2.0);     // 3-point window
  CHECK(ma[4] == 5.0);
  CHECK_THROWS_AS(moving_average({1, 2}, 4), std::invalid_argument);
}

TEST_CASE("degenerate networks are rejected by density and efficiency") {
  const QuarterlyNetwork single(Quarter{2005, 1}, {"A"}, {});
  CHECK_THROWS_WITH(density(single), Catch::Matchers::ContainsSubstring("degenerate"));
  CHECK_THROWS_AS(efficiency(single), std::invalid_argument);
  CHECK_THROWS_AS(betweenness(single), std::invalid_argument);
}
