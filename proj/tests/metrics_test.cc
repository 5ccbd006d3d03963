#include <gtest/gtest.h>

#include <string>

#include "test_util.hpp"
#include "vecpart/metrics.hpp"
#include "vecpart/partitioner.hpp"
#include "vecpart/sbm.hpp"

using namespace vecpart;

namespace {

PartitionAssignment assign(std::uint32_t k, std::vector<std::uint32_t> parts) {
  PartitionAssignment a;
  a.k = k;
  a.part_of = std::move(parts);
  return a;
}

}  // namespace

TEST(EdgeCutRatio, PathGraphCases) {
  auto tg = testutil::make_graph(3, {{0, 1}, {1, 2}});
  EXPECT_DOUBLE_EQ(edge_cut_ratio(tg.graph, assign(1, {0, 0, 0})), 0.0);
  EXPECT_DOUBLE_EQ(edge_cut_ratio(tg.graph, assign(2, {0, 1, 0})), 1.0);
}

TEST(EdgeCutRatio, TriangleTwoThirds) {
  auto tg = testutil::make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  EXPECT_DOUBLE_EQ(edge_cut_ratio(tg.graph, assign(2, {0, 0, 1})), 2.0 / 3.0);
}

TEST(EdgeCutRatio, EdgelessGraphIsZero) {
  auto tg = testutil::make_graph(4, {});
  EXPECT_DOUBLE_EQ(edge_cut_ratio(tg.graph, assign(2, {0, 1, 0, 1})), 0.0);
}

TEST(EdgeCutRatio, InvariantUnderLabelAndVertexRelabeling) {
  Rng rng(404);
  for (int trial = 0; trial < 10; ++trial) {
    auto tg = testutil::random_test_graph(rng, 30, 80);
    const std::uint32_t k = 2 + static_cast<std::uint32_t>(rng.next_below(4));
    std::vector<std::uint32_t> parts(tg.n);
    for (auto& p : parts) p = static_cast<std::uint32_t>(rng.next_below(k));
    const PartitionAssignment a = assign(k, parts);
    const double base = edge_cut_ratio(tg.graph, a);

    // permute partition labels
    std::vector<std::uint32_t> label(k);
    std::iota(label.begin(), label.end(), 0u);
    for (std::size_t i = 0; i + 1 < k; ++i) std::swap(label[i], label[i + rng.next_below(k - i)]);
    std::vector<std::uint32_t> relabeled(tg.n);
    for (std::size_t v = 0; v < tg.n; ++v) relabeled[v] = label[parts[v]];
    EXPECT_DOUBLE_EQ(edge_cut_ratio(tg.graph, assign(k, relabeled)), base);

    // relabel vertices
    const PartitionAssignment random_parts = random_partition(tg.n, k, trial);
    const Ordering ordering = ordering_from_partition(random_parts);
    const RelabeledData relabeled_graph = apply_ordering(tg.graph, {}, {}, ordering);
    std::vector<std::uint32_t> permuted(tg.n);
    for (std::size_t v = 0; v < tg.n; ++v) permuted[ordering.perm[v]] = parts[v];
    EXPECT_DOUBLE_EQ(edge_cut_ratio(relabeled_graph.graph, assign(k, permuted)), base);
  }
}

TEST(VertexBalance, EqualSizesGiveOne) {
  EXPECT_DOUBLE_EQ(vertex_balance(assign(2, {0, 1, 0, 1})).value, 1.0);
}

TEST(VertexBalance, AllInOnePartitionGivesK) {
  const BalanceValue b = vertex_balance(assign(4, {2, 2, 2, 2, 2}));
  EXPECT_DOUBLE_EQ(b.value, 4.0);
  EXPECT_FALSE(b.empty_class);
}

TEST(VertexBalance, SkewedSizes) {
  EXPECT_DOUBLE_EQ(vertex_balance(assign(2, {0, 0, 0, 1})).value, 1.5);  // sizes [3,1]
}

TEST(VertexBalance, EmptyClassReportsOneWithFlag) {
  NodeSplit split = NodeSplit::all_rest(4);
  const BalanceValue b = vertex_balance(assign(2, {0, 1, 0, 1}), split, NodeClass::kTrain);
  EXPECT_DOUBLE_EQ(b.value, 1.0);
  EXPECT_TRUE(b.empty_class);
}

TEST(VertexBalance, StaysWithinOneAndK) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint32_t k = 1 + static_cast<std::uint32_t>(rng.next_below(6));
    const std::size_t n = k + rng.next_below(50);
    std::vector<std::uint32_t> parts(n);
    for (auto& p : parts) p = static_cast<std::uint32_t>(rng.next_below(k));
    const BalanceValue b = vertex_balance(assign(k, parts));
    EXPECT_GE(b.value, 1.0 - 1e-12);
    EXPECT_LE(b.value, static_cast<double>(k) + 1e-12);
  }
}

TEST(Gap, Definition) {
  Ordering identity = Ordering::identity(10);
  EXPECT_EQ(gap(identity, 3, 3), 0u);
  EXPECT_EQ(gap(identity, 3, 7), 4u);
  Ordering reversed;
  reversed.perm.resize(10);
  for (VertexId v = 0; v < 10; ++v) reversed.perm[v] = 9 - v;
  EXPECT_EQ(gap(reversed, 0, 9), 9u);
}

TEST(VertexBandwidth, PathAndStar) {
  auto path = testutil::make_graph(3, {{0, 1}, {1, 2}});
  const Ordering id3 = Ordering::identity(3);
  EXPECT_EQ(vertex_bandwidth(path.graph, id3, 1), 1u);

  auto star = testutil::make_graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  const Ordering id5 = Ordering::identity(5);
  EXPECT_EQ(vertex_bandwidth(star.graph, id5, 0), 4u);

  auto isolated = testutil::make_graph(3, {{0, 1}});
  EXPECT_EQ(vertex_bandwidth(isolated.graph, id3, 2), 0u);
}

TEST(AvgGraphBandwidth, PathAndStar) {
  auto path = testutil::make_graph(3, {{0, 1}, {1, 2}});
  EXPECT_DOUBLE_EQ(avg_graph_bandwidth(path.graph, Ordering::identity(3)), 1.0);

  auto star = testutil::make_graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  // per-vertex bandwidths: 4, 1, 2, 3, 4
  EXPECT_DOUBLE_EQ(avg_graph_bandwidth(star.graph, Ordering::identity(5)), 2.8);
}

TEST(Metrics, MatchBruteForceOraclesOnRandomGraphs) {
  Rng rng(777);
  for (int trial = 0; trial < 30; ++trial) {
    auto tg = testutil::random_test_graph(rng, 50, 200);
    const std::uint32_t k = 1 + static_cast<std::uint32_t>(rng.next_below(6));
    std::vector<std::uint32_t> parts(tg.n);
    for (auto& p : parts) p = static_cast<std::uint32_t>(rng.next_below(k));
    const PartitionAssignment a = assign(k, parts);

    EXPECT_EQ(edge_cut_ratio(tg.graph, a), testutil::ecr_oracle(tg, parts));
    EXPECT_EQ(vertex_balance(a).value, testutil::balance_oracle(parts, k));
    EXPECT_EQ(cut_matrix(tg.graph, a), testutil::cut_matrix_oracle(tg, parts, k));

    // random ordering
    std::vector<VertexId> perm(tg.n);
    std::iota(perm.begin(), perm.end(), 0u);
    for (std::size_t i = 0; i + 1 < tg.n; ++i) std::swap(perm[i], perm[i + rng.next_below(tg.n - i)]);
    Ordering ordering;
    ordering.perm = perm;
    for (std::size_t v = 0; v < tg.n; ++v) {
      EXPECT_EQ(vertex_bandwidth(tg.graph, ordering, static_cast<VertexId>(v)),
                testutil::vertex_bandwidth_oracle(tg, perm, static_cast<VertexId>(v)));
    }
    EXPECT_EQ(avg_graph_bandwidth(tg.graph, ordering), testutil::avg_bandwidth_oracle(tg, perm));
  }
}

TEST(Metrics, ThreadCountDoesNotChangeResult) {
  const SbmResult fixture = sbm_generate({3000, 3000}, 0.002, 0.0005, 3);
  const PartitionAssignment a = random_partition(fixture.graph.n, 4, 7);
  EXPECT_EQ(edge_cut_ratio(fixture.graph, a, 1), edge_cut_ratio(fixture.graph, a, 4));
  const Ordering ordering = ordering_from_partition(a);
  EXPECT_EQ(avg_graph_bandwidth(fixture.graph, ordering, 1), avg_graph_bandwidth(fixture.graph, ordering, 4));
}

TEST(Report, AggregatesAndCutMatrixConsistent) {
  auto tg = testutil::make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  NodeSplit split = NodeSplit::all_rest(3);
  split.class_of[0] = NodeClass::kTrain;
  const PartitionAssignment a = assign(2, {0, 0, 1});
  const MetricsReport r = metrics_report(tg.graph, a, split);
  EXPECT_DOUBLE_EQ(r.ecr, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.balance_overall, 2.0 / 1.5);
  ASSERT_EQ(r.cut_matrix.size(), 2u);
  EXPECT_EQ(r.cut_matrix[0][1], 2u);
  EXPECT_EQ(r.cut_matrix[1][0], 2u);
  EXPECT_EQ(r.cut_matrix[0][0], 0u);
  EXPECT_FALSE(r.avg_bandwidth.has_value());
  EXPECT_FALSE(r.train_empty);
  EXPECT_TRUE(r.val_empty);

  // upper triangle sums to |C|
  std::uint64_t upper = 0;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = i + 1; j < 2; ++j) upper += r.cut_matrix[i][j];
  }
  EXPECT_EQ(upper, 2u);
}

TEST(Report, JsonShape) {
  auto tg = testutil::make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  const PartitionAssignment a = assign(2, {0, 0, 1});
  const Ordering ordering = Ordering::identity(3);
  const MetricsReport r = metrics_report(tg.graph, a, NodeSplit::all_rest(3), &ordering);
  const std::string json = to_json(r);
  EXPECT_NE(json.find("\"schema\": 1"), std::string::npos);
  EXPECT_NE(json.find("\"ecr\": 0.666667"), std::string::npos);  // 6 significant digits
  EXPECT_NE(json.find("\"cut_matrix\": [[0, 2], [2, 0]]"), std::string::npos);
  EXPECT_NE(json.find("\"avg_bandwidth\":"), std::string::npos);
  EXPECT_NE(json.find("\"empty_classes\": [\"train\", \"val\"]"), std::string::npos);

  const MetricsReport no_ordering = metrics_report(tg.graph, a, NodeSplit::all_rest(3));
  EXPECT_EQ(to_json(no_ordering).find("avg_bandwidth"), std::string::npos);
}

TEST(Metrics, SizeMismatchThrows) {
  auto tg = testutil::make_graph(3, {{0, 1}});
  EXPECT_THROW(edge_cut_ratio(tg.graph, assign(2, {0, 1})), std::invalid_argument);
  EXPECT_THROW(avg_graph_bandwidth(tg.graph, Ordering::identity(2)), std::invalid_argument);
}
