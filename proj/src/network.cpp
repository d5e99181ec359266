#include "paremio/network.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <mutex>
#include <set>
#include <thread>

#include "paremio/errors.hpp"
#include "paremio/log.hpp"
#include "paremio/table_io.hpp"

namespace paremio {

ProjectionGraph build_cooccurrence_graph(
    const MatchTable& table, NodeKind kind,
    const std::map<std::string, std::string>& doc_authors,
    std::size_t max_nodes) {
  if (table.key_kind != TableKeyKind::document)
    throw DataError("projection requires a document-keyed match table");

  // node label per document key; author mode folds documents together
  auto label_of = [&](const std::string& doc_id) -> const std::string* {
    if (kind == NodeKind::document) return &doc_id;
    auto it = doc_authors.find(doc_id);
    if (it == doc_authors.end() || it->second.empty()) return nullptr;
    return &it->second;
  };

  std::set<std::string> label_set;
  int skipped = 0;
  for (const auto& [pid, keys] : table.cells)
    for (const auto& [doc_id, cell] : keys) {
      if (const std::string* label = label_of(doc_id)) label_set.insert(*label);
      else ++skipped;
    }
  if (skipped > 0)
    log_warn(std::to_string(skipped) +
             " matched document entries without an author, skipped");
  if (label_set.size() > max_nodes)
    throw ConfigError("projection would have " +
                      std::to_string(label_set.size()) +
                      " nodes (limit " + std::to_string(max_nodes) +
                      "); raise --max-nodes to proceed");
  if (label_set.size() > 10000)
    log_warn("projection has " + std::to_string(label_set.size()) +
             " nodes; shared-proverb edges grow quadratically");

  ProjectionGraph g;
  g.node_kind = kind;
  g.labels.assign(label_set.begin(), label_set.end());
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < g.labels.size(); ++i)
    index.emplace(g.labels[i], int(i));

  std::set<std::pair<int, int>> edges;
  for (const auto& [pid, keys] : table.cells) {
    std::set<int> members; // set: author mode can repeat a node
    for (const auto& [doc_id, cell] : keys)
      if (const std::string* label = label_of(doc_id))
        members.insert(index.at(*label));
    for (auto i = members.begin(); i != members.end(); ++i)
      for (auto j = std::next(i); j != members.end(); ++j)
        edges.emplace(*i, *j);
  }

  g.adjacency.resize(g.labels.size());
  for (auto [a, b] : edges) {
    g.adjacency[std::size_t(a)].push_back(b);
    g.adjacency[std::size_t(b)].push_back(a);
  }
  for (auto& neighbors : g.adjacency)
    std::sort(neighbors.begin(), neighbors.end());
  g.edge_count = edges.size();
  return g;
}

namespace {

// Brandes accumulation from one source. Adds the source's contribution to
// `acc`; the caller owns ordering of accumulations.
void accumulate_from_source(const ProjectionGraph& g, int source,
                            std::vector<double>& acc) {
  const int n = int(g.labels.size());
  std::vector<int> dist(std::size_t(n), -1);
  std::vector<double> sigma(std::size_t(n), 0.0);
  std::vector<double> delta(std::size_t(n), 0.0);
  std::vector<std::vector<int>> preds(static_cast<std::size_t>(n));
  std::vector<int> order;
  order.reserve(std::size_t(n));

  dist[std::size_t(source)] = 0;
  sigma[std::size_t(source)] = 1.0;
  std::vector<int> queue{source};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    order.push_back(v);
    for (int w : g.adjacency[std::size_t(v)]) {
      if (dist[std::size_t(w)] < 0) {
        dist[std::size_t(w)] = dist[std::size_t(v)] + 1;
        queue.push_back(w);
      }
      if (dist[std::size_t(w)] == dist[std::size_t(v)] + 1) {
        sigma[std::size_t(w)] += sigma[std::size_t(v)];
        preds[std::size_t(w)].push_back(v);
      }
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int w = *it;
    for (int v : preds[std::size_t(w)])
      delta[std::size_t(v)] += sigma[std::size_t(v)] / sigma[std::size_t(w)] *
                               (1.0 + delta[std::size_t(w)]);
    if (w != source) acc[std::size_t(w)] += delta[std::size_t(w)];
  }
}

} // namespace

std::vector<double> betweenness(const ProjectionGraph& graph, bool normalized,
                                int workers) {
  const int n = int(graph.labels.size());
  std::vector<double> scores(std::size_t(n), 0.0);
  if (n == 0) return scores;

  constexpr int kBlock = 32; // sources per reduction block
  const int num_blocks = (n + kBlock - 1) / kBlock;
  workers = std::clamp(workers, 1, num_blocks);

  auto run_block = [&](int block, std::vector<double>& partial) {
    const int lo = block * kBlock;
    const int hi = std::min(n, lo + kBlock);
    for (int s = lo; s < hi; ++s) accumulate_from_source(graph, s, partial);
  };

  if (workers == 1) {
    // same block-partial summation as the parallel path, so every worker
    // count performs the identical floating-point op sequence
    std::vector<double> partial(static_cast<std::size_t>(n), 0.0);
    for (int b = 0; b < num_blocks; ++b) {
      std::fill(partial.begin(), partial.end(), 0.0);
      run_block(b, partial);
      for (int i = 0; i < n; ++i)
        scores[std::size_t(i)] += partial[std::size_t(i)];
    }
  } else {
    // Workers pull blocks; the main thread folds partials strictly in
    // block order, so the floating-point sum sequence never depends on
    // scheduling or worker count.
    std::mutex mu;
    std::condition_variable cv;
    std::map<int, std::vector<double>> done;
    std::atomic<int> next_block{0};

    std::vector<std::thread> pool;
    pool.reserve(std::size_t(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int b = next_block.fetch_add(1); b < num_blocks;
             b = next_block.fetch_add(1)) {
          std::vector<double> partial(std::size_t(n), 0.0);
          run_block(b, partial);
          {
            std::lock_guard<std::mutex> lock(mu);
            done.emplace(b, std::move(partial));
          }
          cv.notify_one();
        }
      });
    }
    {
      std::unique_lock<std::mutex> lock(mu);
      for (int expect = 0; expect < num_blocks; ++expect) {
        cv.wait(lock, [&] { return done.count(expect) > 0; });
        std::vector<double> partial = std::move(done.at(expect));
        done.erase(expect);
        lock.unlock();
        for (int i = 0; i < n; ++i)
          scores[std::size_t(i)] += partial[std::size_t(i)];
        lock.lock();
      }
    }
    for (std::thread& t : pool) t.join();
  }

  // Brandes counts each unordered pair from both endpoints.
  for (double& s : scores) s *= 0.5;
  if (normalized) {
    if (n < 3) {
      std::fill(scores.begin(), scores.end(), 0.0);
    } else {
      const double pairs = double(n - 1) * double(n - 2) / 2.0;
      for (double& s : scores) s /= pairs;
    }
  }
  return scores;
}

std::vector<CentralNode> top_central_nodes(const ProjectionGraph& graph,
                                           const std::vector<double>& scores,
                                           int k) {
  if (k <= 0) throw ConfigError("top-k must be positive");
  if (scores.size() != graph.labels.size())
    throw DataError("scores do not match the graph's node count");

  std::vector<CentralNode> all;
  all.reserve(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i)
    all.push_back({0, graph.labels[i], scores[i]});
  std::sort(all.begin(), all.end(), [](const CentralNode& a,
                                       const CentralNode& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.label < b.label;
  });
  if (std::size_t(k) < all.size()) all.resize(std::size_t(k));
  for (std::size_t i = 0; i < all.size(); ++i)
    all[i].rank = int(i + 1);
  return all;
}

std::string serialize_edges(const ProjectionGraph& graph) {
  std::string out = "node_a\tnode_b\n";
  for (std::size_t a = 0; a < graph.adjacency.size(); ++a)
    for (int b : graph.adjacency[a])
      if (std::size_t(b) > a) {
        out += graph.labels[a];
        out += '\t';
        out += graph.labels[std::size_t(b)];
        out += '\n';
      }
  return out;
}

std::string serialize_centrality(const std::vector<CentralNode>& nodes) {
  std::string out = "rank\tnode_label\tbetweenness\n";
  for (const CentralNode& node : nodes) {
    out += std::to_string(node.rank);
    out += '\t';
    out += node.label;
    out += '\t';
    out += format_double(node.score);
    out += '\n';
  }
  return out;
}

} // namespace paremio
