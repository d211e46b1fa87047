#include "latticecalc/site_graph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "latticecalc/error.hpp"

namespace latticecalc {

SiteGraph SiteGraph::path(int n, const Caps& caps) {
  if (n < 1) input_error("bad_graph", "path needs at least one vertex");
  SiteGraph g;
  g.kind_ = GraphKind::path;
  for (Site i = 0; i < n; ++i) g.vertices_.push_back(i);
  for (Site i = 0; i + 1 < n; ++i) {
    g.edges_.emplace_back(i, i + 1);
    g.edges_.emplace_back(i + 1, i);
  }
  g.finish(caps);
  return g;
}

SiteGraph SiteGraph::cycle(int n, const Caps& caps) {
  if (n < 3) input_error("bad_graph", "cycle needs at least three vertices");
  SiteGraph g;
  g.kind_ = GraphKind::cycle;
  for (Site i = 0; i < n; ++i) {
    g.vertices_.push_back(i);
    const Site j = (i + 1) % n;
    g.edges_.emplace_back(i, j);
    g.edges_.emplace_back(j, i);
  }
  g.finish(caps);
  return g;
}

SiteGraph SiteGraph::lattice_z(int k, Site a, Site b, bool window_of_infinite, const Caps& caps) {
  if (k < 1) input_error("bad_graph", "lattice range k must be at least 1");
  if (a > b) input_error("bad_graph", "empty lattice window");
  if (static_cast<std::size_t>(b - a + 1) > caps.max_graph_vertices) {
    input_error("cap_exceeded", "lattice window exceeds the vertex cap");
  }
  SiteGraph g;
  g.kind_ = GraphKind::lattice_z;
  g.range_ = k;
  g.window_of_infinite_ = window_of_infinite;
  for (Site i = a; i <= b; ++i) {
    g.vertices_.push_back(i);
    for (Site j = std::max(a, i - k); j <= std::min(b, i + k); ++j) {
      if (j != i) g.edges_.emplace_back(i, j);
    }
  }
  g.finish(caps);
  return g;
}

SiteGraph SiteGraph::explicit_graph(std::vector<std::string> labels,
                                    const std::vector<std::pair<std::string, std::string>>& edges,
                                    SymmetryMode mode, const Caps& caps) {
  if (labels.empty()) input_error("bad_graph", "graph needs at least one vertex");
  std::map<std::string, Site> index;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!index.emplace(labels[i], static_cast<Site>(i)).second) {
      input_error("duplicate_vertex", "duplicate vertex \"" + labels[i] + "\"");
    }
  }
  auto lookup = [&](const std::string& l) {
    auto it = index.find(l);
    if (it == index.end()) input_error("unknown_vertex", "unknown vertex \"" + l + "\"");
    return it->second;
  };
  std::set<Edge> edge_set;
  for (const auto& [x, y] : edges) {
    const Site u = lookup(x), v = lookup(y);
    if (u == v) input_error("bad_graph", "self-loop at \"" + x + "\"");
    edge_set.emplace(u, v);
  }
  for (const auto& [u, v] : std::vector<Edge>(edge_set.begin(), edge_set.end())) {
    if (edge_set.count({v, u}) == 0) {
      if (mode == SymmetryMode::strict) {
        input_error("asymmetric", "edge (" + labels[static_cast<std::size_t>(u)] + "," +
                                      labels[static_cast<std::size_t>(v)] + ") has no reverse");
      }
      edge_set.emplace(v, u);
    }
  }
  SiteGraph g;
  g.kind_ = GraphKind::explicit_finite;
  for (std::size_t i = 0; i < labels.size(); ++i) g.vertices_.push_back(static_cast<Site>(i));
  g.labels_ = std::move(labels);
  g.edges_.assign(edge_set.begin(), edge_set.end());
  g.finish(caps);
  return g;
}

void SiteGraph::finish(const Caps& caps) {
  const std::size_t n = vertices_.size();
  if (n > caps.max_graph_vertices) input_error("cap_exceeded", "graph exceeds the vertex cap");
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  adjacency_.assign(n, {});
  for (const auto& [x, y] : edges_) adjacency_[index_of(x)].push_back(y);
  distances_.assign(n * n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    int* row = &distances_[s * n];
    std::queue<std::size_t> queue;
    row[s] = 0;
    queue.push(s);
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop();
      for (Site w : adjacency_[v]) {
        const std::size_t wi = index_of(w);
        if (row[wi] < 0) {
          row[wi] = row[v] + 1;
          queue.push(wi);
        }
      }
    }
    if (std::find(row, row + n, -1) != row + n) input_error("disconnected_graph", "graph is not connected");
  }
}

bool SiteGraph::contains(Site x) const { return x >= vertices_.front() && x <= vertices_.back(); }

std::size_t SiteGraph::index_of(Site x) const {
  if (!contains(x)) input_error("unknown_vertex", "site " + std::to_string(x) + " is not a vertex");
  return static_cast<std::size_t>(x - vertices_.front());
}

bool SiteGraph::has_edge(Site x, Site y) const {
  if (!contains(x) || !contains(y)) return false;
  const auto& adj = adjacency_[index_of(x)];
  return std::binary_search(adj.begin(), adj.end(), y);
}

const std::vector<Site>& SiteGraph::neighbors(Site x) const { return adjacency_[index_of(x)]; }

std::string SiteGraph::label(Site x) const {
  if (kind_ == GraphKind::explicit_finite) return labels_[index_of(x)];
  return std::to_string(x);
}

std::optional<Site> SiteGraph::find_label(const std::string& label) const {
  if (kind_ == GraphKind::explicit_finite) {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i] == label) return static_cast<Site>(i);
    }
    return std::nullopt;
  }
  try {
    std::size_t used = 0;
    const long long v = std::stoll(label, &used);
    if (used != label.size() || !contains(v)) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

int SiteGraph::distance(Site x, Site y) const { return distances_[index_of(x) * vertices_.size() + index_of(y)]; }

SiteSet SiteGraph::ball(Site x, const Rational& radius) const {
  const std::size_t xi = index_of(x);
  SiteSet out;
  for (std::size_t j = 0; j < vertices_.size(); ++j) {
    if (Rational(distances_[xi * vertices_.size() + j]) < radius) out.push_back(vertices_[j]);
  }
  return out;
}

int SiteGraph::diameter(std::span<const Site> sites) const {
  int best = 0;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    for (std::size_t j = i + 1; j < sites.size(); ++j) best = std::max(best, distance(sites[i], sites[j]));
  }
  if (sites.size() == 1) index_of(sites[0]);
  return best;
}

bool same_graph(const GraphPtr& a, const GraphPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

}  // namespace latticecalc
