#pragma once

#include <cstddef>
#include <string_view>

namespace latticecalc {

// Size limits that keep dense tables and enumerations at desk scale.
struct Caps {
  std::size_t max_support_sites = 12;
  std::size_t max_table_entries = std::size_t{1} << 20;
  std::size_t max_configurations = std::size_t{1} << 20;
  std::size_t max_bfs_states = 1'000'000;
  std::size_t max_kernel_unknowns = 20'000;
  std::size_t max_graph_vertices = 4096;

  // Overrides from a string such as "table=4194304,bfs=5000000".
  // Recognised keys: support, table, configurations, bfs, unknowns, vertices.
  static Caps parse(std::string_view spec);

  // Defaults, overridden by the LATTICECALC_CAPS environment variable.
  static Caps from_environment();
};

}  // namespace latticecalc
