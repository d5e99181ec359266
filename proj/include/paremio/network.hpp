#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "paremio/matcher.hpp"

namespace paremio {

enum class NodeKind { document, author };

/// Unweighted projection of the node-proverb incidence: two nodes are
/// adjacent iff they share at least one matched proverb, regardless of how
/// many they share. No self-loops, no duplicate edges.
struct ProjectionGraph {
  NodeKind node_kind = NodeKind::document;
  std::vector<std::string> labels;         // node index -> label, sorted
  std::vector<std::vector<int>> adjacency; // sorted neighbor lists
  std::size_t edge_count = 0;
};

/// Builds the co-occurrence projection from a document-keyed MatchTable.
/// In author mode, documents are grouped by the author given in
/// `doc_authors`; authorless documents are skipped and logged. Node count
/// above `max_nodes` aborts (dense projections grow quadratically).
ProjectionGraph build_cooccurrence_graph(
    const MatchTable& table, NodeKind kind,
    const std::map<std::string, std::string>& doc_authors = {},
    std::size_t max_nodes = 50000);

/// Exact betweenness centrality over unordered node pairs via per-source
/// shortest-path accumulation. Pairs in different components contribute
/// zero. With `normalized`, scores are divided by (N-1)(N-2)/2 (all zeros
/// for N < 3). The parallel reduction merges per-block partial sums in a
/// fixed order, so results are bit-identical for every worker count.
std::vector<double> betweenness(const ProjectionGraph& graph, bool normalized,
                                int workers = 1);

struct CentralNode {
  int rank = 0;
  std::string label;
  double score = 0.0;
};

/// Top-k nodes by score descending, ties by label ascending. k above the
/// node count returns all nodes; k <= 0 is an error.
std::vector<CentralNode> top_central_nodes(const ProjectionGraph& graph,
                                           const std::vector<double>& scores,
                                           int k);

std::string serialize_edges(const ProjectionGraph& graph);
std::string serialize_centrality(const std::vector<CentralNode>& nodes);

} // namespace paremio
