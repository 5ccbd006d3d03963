#include <gtest/gtest.h>

#include <vector>

#include "test_util.hpp"
#include "vecpart/graph.hpp"

using namespace vecpart;
using testutil::TempDir;
using testutil::write_text;

TEST(LoadEdgeList, PathGraph) {
  TempDir dir;
  const std::string path = dir.file("path.edges");
  write_text(path, "0 1\n1 2\n");
  const Graph g = load_edge_list(path);
  EXPECT_EQ(g.n, 3u);
  EXPECT_EQ(g.edge_count, 2u);
  EXPECT_EQ(g.degrees, (std::vector<VertexId>{1, 2, 1}));
  EXPECT_EQ(g.neighbors_of(1).size(), 2u);
  EXPECT_EQ(g.neighbors_of(1)[0], 0u);
  EXPECT_EQ(g.neighbors_of(1)[1], 2u);
}

TEST(LoadEdgeList, CollapsesDuplicatesAndDropsSelfLoops) {
  TempDir dir;
  const std::string path = dir.file("dup.edges");
  write_text(path, "0 1\n1 0\n0 0\n");
  const Graph g = load_edge_list(path);
  EXPECT_EQ(g.n, 2u);
  EXPECT_EQ(g.edge_count, 1u);
  EXPECT_EQ(g.degrees, (std::vector<VertexId>{1, 1}));
}

TEST(LoadEdgeList, GapsBecomeIsolatedVertices) {
  TempDir dir;
  const std::string path = dir.file("gap.edges");
  write_text(path, "0 2\n");
  const Graph g = load_edge_list(path);
  EXPECT_EQ(g.n, 3u);
  EXPECT_EQ(g.degree(1), 0u);
  EXPECT_EQ(g.edge_count, 1u);
}

TEST(LoadEdgeList, ToleratesCommentsAndCrLf) {
  TempDir dir;
  const std::string path = dir.file("crlf.edges");
  write_text(path, "# header\r\n0 1\r\n\r\n1 2\n");
  const Graph g = load_edge_list(path);
  EXPECT_EQ(g.n, 3u);
  EXPECT_EQ(g.edge_count, 2u);
}

TEST(LoadEdgeList, MalformedLineReportsLineNumber) {
  TempDir dir;
  const std::string path = dir.file("bad.edges");
  write_text(path, "0 1\nx y\n");
  try {
    load_edge_list(path);
    FAIL() << "expected parse error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find(":2"), std::string::npos) << e.what();
  }
}

TEST(LoadEdgeList, MissingEndpointIsMalformed) {
  TempDir dir;
  const std::string path = dir.file("one.edges");
  write_text(path, "0\n");
  EXPECT_THROW(load_edge_list(path), std::runtime_error);
}

TEST(LoadEdgeList, TrailingTokenIsMalformed) {
  TempDir dir;
  const std::string path = dir.file("three.edges");
  write_text(path, "0 1 2\n");
  EXPECT_THROW(load_edge_list(path), std::runtime_error);
}

TEST(LoadEdgeList, EmptyFileIsError) {
  TempDir dir;
  const std::string path = dir.file("empty.edges");
  write_text(path, "");
  EXPECT_THROW(load_edge_list(path), std::runtime_error);
  write_text(path, "# only a comment\n");
  EXPECT_THROW(load_edge_list(path), std::runtime_error);
}

TEST(LoadEdgeList, MissingFileIsError) {
  EXPECT_THROW(load_edge_list("/nonexistent/never.edges"), std::runtime_error);
}

TEST(Graph, FromEdgesSymmetrizesAndValidates) {
  auto tg = testutil::make_graph(5, {{0, 1}, {1, 0}, {3, 1}, {2, 4}, {4, 2}, {2, 2}});
  EXPECT_EQ(tg.graph.edge_count, 3u);
  EXPECT_NO_THROW(tg.graph.validate());
  EXPECT_TRUE(tg.graph.has_edge(1, 3));
  EXPECT_TRUE(tg.graph.has_edge(3, 1));
  EXPECT_FALSE(tg.graph.has_edge(0, 2));
}

TEST(Graph, ValidateCatchesAsymmetry) {
  auto tg = testutil::make_graph(3, {{0, 1}, {1, 2}});
  Graph broken = tg.graph;
  broken.neighbors[broken.offsets[0]] = 2;  // 0 -> 2 without the reverse edge
  EXPECT_THROW(broken.validate(), std::runtime_error);
}

TEST(Graph, ValidateCatchesOffsetMismatch) {
  auto tg = testutil::make_graph(3, {{0, 1}});
  Graph broken = tg.graph;
  broken.edge_count = 5;
  EXPECT_THROW(broken.validate(), std::runtime_error);
}

TEST(Graph, SaveLoadRoundTrip) {
  TempDir dir;
  auto tg = testutil::make_graph(6, {{0, 3}, {1, 2}, {2, 5}, {4, 5}, {0, 5}});
  const std::string path = dir.file("rt.edges");
  save_edge_list(tg.graph, path);
  const Graph reloaded = load_edge_list(path);
  EXPECT_EQ(reloaded.n, tg.graph.n);
  EXPECT_EQ(reloaded.offsets, tg.graph.offsets);
  EXPECT_EQ(reloaded.neighbors, tg.graph.neighbors);
}

TEST(LoadSplit, DefaultsToRest) {
  TempDir dir;
  const std::string path = dir.file("s.split");
  write_text(path, "0 train\n1 val\n");
  const NodeSplit s = load_split(path, 3);
  EXPECT_EQ(s.class_of[0], NodeClass::kTrain);
  EXPECT_EQ(s.class_of[1], NodeClass::kVal);
  EXPECT_EQ(s.class_of[2], NodeClass::kRest);
}

TEST(LoadSplit, EmptyFileAllRest) {
  TempDir dir;
  const std::string path = dir.file("e.split");
  write_text(path, "");
  const NodeSplit s = load_split(path, 5);
  for (NodeClass c : s.class_of) EXPECT_EQ(c, NodeClass::kRest);
}

TEST(LoadSplit, IdOutOfRangeIsError) {
  TempDir dir;
  const std::string path = dir.file("oor.split");
  write_text(path, "7 train\n");
  EXPECT_THROW(load_split(path, 3), std::runtime_error);
}

TEST(LoadSplit, UnknownClassIsError) {
  TempDir dir;
  const std::string path = dir.file("uc.split");
  write_text(path, "0 test\n");
  EXPECT_THROW(load_split(path, 3), std::runtime_error);
}

TEST(LoadSplit, SaveLoadRoundTrip) {
  TempDir dir;
  NodeSplit s = NodeSplit::all_rest(4);
  s.class_of[0] = NodeClass::kTrain;
  s.class_of[2] = NodeClass::kVal;
  const std::string path = dir.file("rt.split");
  save_split(s, path);
  const NodeSplit reloaded = load_split(path, 4);
  EXPECT_EQ(reloaded.class_of, s.class_of);
}

TEST(NodeSplit, MembersPartitionTheVertexSet) {
  NodeSplit s = NodeSplit::all_rest(10);
  for (std::size_t v = 0; v < 4; ++v) s.class_of[v] = NodeClass::kTrain;
  for (std::size_t v = 4; v < 6; ++v) s.class_of[v] = NodeClass::kVal;
  std::size_t total = 0;
  for (NodeClass c : kAllClasses) total += s.members(c).size();
  EXPECT_EQ(total, 10u);
  EXPECT_EQ(s.members(NodeClass::kTrain).size(), 4u);
  EXPECT_EQ(s.members(NodeClass::kVal).size(), 2u);
  EXPECT_EQ(s.members(NodeClass::kRest).size(), 4u);
}
