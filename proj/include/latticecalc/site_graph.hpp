#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "latticecalc/caps.hpp"
#include "latticecalc/interaction.hpp"
#include "latticecalc/rational.hpp"

namespace latticecalc {

// Site id. Lattice, path and cycle graphs use the integer coordinate; explicit
// graphs use the position of the vertex label in the declared vertex list.
using Site = std::int64_t;
using SiteSet = std::vector<Site>;  // sorted, distinct
using Edge = std::pair<Site, Site>;

enum class GraphKind { explicit_finite, path, cycle, lattice_z };

/*
 * Connected, locally finite symmetric digraph on finitely many sites.
 *
 * lattice_z(k, a, b) is the window {a..b} of (Z, E_k) where E_k joins i and j
 * when 1 <= |i - j| <= k. All pairwise distances are computed once at
 * construction.
 */
class SiteGraph {
 public:
  static SiteGraph path(int n, const Caps& caps = {});
  static SiteGraph cycle(int n, const Caps& caps = {});
  static SiteGraph lattice_z(int k, Site a, Site b, bool window_of_infinite = true, const Caps& caps = {});
  static SiteGraph explicit_graph(std::vector<std::string> labels,
                                  const std::vector<std::pair<std::string, std::string>>& edges,
                                  SymmetryMode mode, const Caps& caps = {});

  GraphKind kind() const { return kind_; }
  int range() const { return range_; }  // k for lattice_z, 1 otherwise
  std::pair<Site, Site> window() const { return {vertices_.front(), vertices_.back()}; }
  bool is_window_of_infinite() const { return window_of_infinite_; }
  bool is_lattice() const { return kind_ == GraphKind::lattice_z; }

  const std::vector<Site>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  bool contains(Site x) const;
  std::size_t index_of(Site x) const;  // throws input_error("unknown_vertex")

  // Ordered edges sorted lexicographically; both orientations present.
  const std::vector<Edge>& edges() const { return edges_; }
  bool has_edge(Site x, Site y) const;
  const std::vector<Site>& neighbors(Site x) const;

  // String label of a site; for integer-keyed kinds this is the decimal id.
  std::string label(Site x) const;
  const std::vector<std::string>& explicit_labels() const { return labels_; }
  std::optional<Site> find_label(const std::string& label) const;

  int distance(Site x, Site y) const;
  SiteSet ball(Site x, const Rational& radius) const;  // { y : d(x,y) < radius }
  int diameter(std::span<const Site> sites) const;     // 0 for empty and singleton sets

  friend bool operator==(const SiteGraph& a, const SiteGraph& b) {
    return a.kind_ == b.kind_ && a.range_ == b.range_ && a.window_of_infinite_ == b.window_of_infinite_ &&
           a.vertices_ == b.vertices_ && a.edges_ == b.edges_ && a.labels_ == b.labels_;
  }

 private:
  SiteGraph() = default;
  void finish(const Caps& caps);

  GraphKind kind_ = GraphKind::path;
  int range_ = 1;
  bool window_of_infinite_ = false;
  std::vector<Site> vertices_;
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Site>> adjacency_;
  std::vector<int> distances_;  // row-major by vertex index
};

using GraphPtr = std::shared_ptr<const SiteGraph>;

inline GraphPtr share(SiteGraph g) { return std::make_shared<const SiteGraph>(std::move(g)); }

bool same_graph(const GraphPtr& a, const GraphPtr& b);

}  // namespace latticecalc
