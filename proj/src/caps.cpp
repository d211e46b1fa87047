#include "latticecalc/caps.hpp"

#include <charconv>
#include <cstdlib>
#include <string>

#include "latticecalc/error.hpp"

namespace latticecalc {

Caps Caps::parse(std::string_view spec) {
  Caps caps;
  while (!spec.empty()) {
    const auto comma = spec.find(',');
    std::string_view item = spec.substr(0, comma);
    spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) input_error("bad_caps", "expected key=value in caps: " + std::string(item));
    const std::string_view key = item.substr(0, eq);
    const std::string_view value = item.substr(eq + 1);
    std::size_t n = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
      input_error("bad_caps", "bad cap value: " + std::string(item));
    }
    if (key == "support") caps.max_support_sites = n;
    else if (key == "table") caps.max_table_entries = n;
    else if (key == "configurations") caps.max_configurations = n;
    else if (key == "bfs") caps.max_bfs_states = n;
    else if (key == "unknowns") caps.max_kernel_unknowns = n;
    else if (key == "vertices") caps.max_graph_vertices = n;
    else input_error("bad_caps", "unknown cap: " + std::string(key));
  }
  return caps;
}

Caps Caps::from_environment() {
  const char* env = std::getenv("LATTICECALC_CAPS");
  return env == nullptr ? Caps{} : parse(env);
}

}  // namespace latticecalc
