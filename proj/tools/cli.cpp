#include "cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "latticecalc/cohomology.hpp"
#include "latticecalc/error.hpp"
#include "latticecalc/io.hpp"
#include "latticecalc/transition_system.hpp"
#include "latticecalc/uniform_function.hpp"

namespace latticecalc::cli {
namespace {

using io::Json;

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    input_error("io_error", "sha256 failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return hex.str();
}

bool is_file(const std::string& path) {
  std::error_code ec;
  return std::filesystem::is_regular_file(path, ec);
}

struct Options {
  std::string interaction;
  std::string graph;
  std::string function;
  std::string from;
  std::string to;
  std::string config;
  std::string base;
  std::string window;
  std::string sigma;
  std::string x;
  std::string y;
  std::string out;
  std::string format = "json";
  int radius = -1;
  int k = 1;
  std::size_t probe_bound = 0;
  std::size_t max_states = 1'000'000;
  bool no_exchange = false;
};

// Loads inputs and records each one (with a digest for files) in the report.
class Context {
 public:
  Context(const Options& o, Caps caps) : o_(o), caps_(caps) {}

  Json inputs = Json::object();
  Json verification = Json::array();
  std::vector<Json> lines;

  const Caps& caps() const { return caps_; }

  void check(const std::string& name, bool pass) {
    Json entry;
    entry["name"] = name;
    entry["pass"] = pass;
    verification.push_back(std::move(entry));
  }

  void record_scalar(const std::string& key, Json value) { inputs[key] = std::move(value); }

  Json load_file(const std::string& key, const std::string& path) {
    const std::string text = io::read_text_file(path);
    Json parsed = io::parse_json_text(text, path);
    Json entry;
    entry["path"] = path;
    entry["sha256"] = sha256_hex(text);
    entry["content"] = parsed;
    inputs[key] = std::move(entry);
    return parsed;
  }

  const Interaction& interaction() {
    if (!phi_) {
      need(o_.interaction, "--interaction");
      if (is_file(o_.interaction)) {
        phi_ = io::interaction_from_json(load_file("interaction", o_.interaction));
      } else {
        phi_ = builtin_interaction(o_.interaction);
        Json entry;
        entry["builtin"] = o_.interaction;
        inputs["interaction"] = std::move(entry);
      }
    }
    return *phi_;
  }

  bool has_interaction() const { return !o_.interaction.empty(); }
  bool has_graph() const { return !o_.graph.empty(); }

  GraphPtr graph() {
    if (!graph_) {
      need(o_.graph, "--graph");
      if (is_file(o_.graph)) {
        graph_ = share(io::graph_from_json(load_file("graph", o_.graph), caps_));
      } else {
        graph_ = share(io::resolve_graph(o_.graph, caps_));
        Json entry;
        entry["shorthand"] = o_.graph;
        inputs["graph"] = std::move(entry);
      }
    }
    return graph_;
  }

  StateIndex base_or_default() {
    const StateSpace& s = interaction().states();
    if (!o_.base.empty()) {
      record_scalar("base", o_.base);
      return s.index_of(o_.base);
    }
    return s.base().value_or(0);
  }

  io::LoadedFunction function() {
    need(o_.function, "--function");
    const Json j = load_file("function", o_.function);
    std::optional<StateSpace> states;
    if (has_interaction()) states = interaction().states();
    return io::uniform_function_from_json(j, states, has_graph() ? graph() : nullptr);
  }

  Configuration configuration(const std::string& key, const std::string& spec, const StateSpace& states,
                              const GraphPtr& g, StateIndex base) {
    if (is_file(spec)) return io::configuration_from_json(load_file(key, spec), states, g, base);
    Json entry;
    entry["inline"] = spec;
    inputs[key] = std::move(entry);
    return io::configuration_from_inline(spec, states, g, base);
  }

  // Sites lo..hi from --window "lo:hi", if given.
  std::optional<std::pair<Site, Site>> window() {
    if (o_.window.empty()) return std::nullopt;
    static const std::regex pattern(R"(^\s*(-?[0-9]+)\s*[:,]\s*(-?[0-9]+)\s*$)");
    std::smatch m;
    if (!std::regex_match(o_.window, m, pattern)) input_error("bad_argument", "--window expects lo:hi");
    const Site lo = std::stoll(m[1]), hi = std::stoll(m[2]);
    if (lo > hi) input_error("bad_argument", "--window is empty");
    record_scalar("window", Json::array({lo, hi}));
    return std::make_pair(lo, hi);
  }

  EdgeWindow edge_window(const SiteGraph& g) {
    if (auto w = window()) return edge_window_between(g, w->first, w->second);
    return full_edge_window(g);
  }

 private:
  static void need(const std::string& value, const char* flag) {
    if (value.empty()) input_error("missing_argument", std::string(flag) + " is required");
  }

  const Options& o_;
  Caps caps_;
  std::optional<Interaction> phi_;
  GraphPtr graph_;
};

using Handler = std::function<Json(const Options&, Context&)>;

Json cmd_consv(const Options&, Context& ctx) {
  const Interaction& phi = ctx.interaction();
  const StateIndex base = ctx.base_or_default();
  const auto basis = consv_basis(phi, base);
  Json out;
  out["base"] = phi.states().label(base);
  out["dimension"] = basis.size();
  Json list = Json::array();
  bool conserved = true, normalised = true;
  for (const auto& xi : basis) {
    list.push_back(io::conserved_to_json(xi, phi.states()));
    conserved = conserved && !conservation_violation(phi, xi);
    normalised = normalised && xi.values[static_cast<std::size_t>(base)] == 0;
  }
  out["basis"] = std::move(list);
  ctx.check("basis_satisfies_conservation", conserved);
  ctx.check("basis_normalized_at_base", normalised);
  return out;
}

Json cmd_exchangeable(const Options&, Context& ctx) {
  const Interaction& phi = ctx.interaction();
  const bool exchangeable = is_exchangeable(phi);
  Json out;
  out["exchangeable"] = exchangeable;
  out["pair_components"] = pair_components(phi).count;
  if (exchangeable) {
    bool replayed = true;
    for (StateIndex s1 = 0; s1 < phi.num_states(); ++s1) {
      for (StateIndex s2 = 0; s2 < phi.num_states(); ++s2) {
        StatePair at{s1, s2};
        for (const PhiEdge& e : pair_exchange_path(phi, s1, s2)) {
          const auto& next = phi.neighbors(at);
          replayed = replayed && e.from == at && std::binary_search(next.begin(), next.end(), e.to);
          at = e.to;
        }
        replayed = replayed && at == StatePair{s2, s1};
      }
    }
    ctx.check("pair_exchange_paths_replay", replayed);
  }
  return out;
}

Json cmd_expand(const Options& o, Context& ctx) {
  const Interaction& phi = ctx.interaction();
  const StateSpace& states = phi.states();
  if (o.function.empty()) input_error("missing_argument", "--function is required");
  const Json j = ctx.load_file("function", o.function);
  GraphPtr g;
  if (ctx.has_graph()) {
    g = ctx.graph();
  } else {
    // Integer sites: view them inside the smallest covering window of Z.
    Site lo = 0, hi = 0;
    bool first = true;
    if (j.contains("support")) {
      for (const auto& s : j.at("support")) {
        if (!s.is_number_integer()) input_error("bad_function", "non-integer sites need --graph");
        const Site x = s.get<Site>();
        lo = first ? x : std::min(lo, x);
        hi = first ? x : std::max(hi, x);
        first = false;
      }
    }
    g = share(SiteGraph::lattice_z(1, lo, hi, true, ctx.caps()));
  }
  const LocalFunction f = io::local_function_from_json(j, states, *g);
  const StateIndex base = ctx.base_or_default();
  const Expansion parts = expand(f, base, ctx.caps());
  Json out = io::components_to_json(parts, states, *g, base);
  ctx.check("assemble_reconstructs_input", assemble(parts, f.support(), f.num_states()) == f);
  ctx.check("components_have_exact_support",
            std::all_of(parts.begin(), parts.end(),
                        [&](const auto& p) { return is_exact_support(p.second.function(), base); }));
  return out;
}

Json cmd_rebase(const Options& o, Context& ctx) {
  const auto loaded = ctx.function();
  if (o.base.empty()) input_error("missing_argument", "--base is required");
  ctx.record_scalar("base", o.base);
  const StateIndex target = loaded.states.index_of(o.base);
  const UniformFunction g = rebase(loaded.function, target, ctx.caps());
  Json out;
  out["function"] = io::uniform_function_to_json(g, loaded.states);
  ctx.check("rebase_roundtrip", rebase(g, loaded.function.base(), ctx.caps()).same_family(loaded.function));
  return out;
}

Json cmd_diff(const Options& o, Context& ctx) {
  const auto loaded = ctx.function();
  const UniformFunction& f = loaded.function;
  if (o.from.empty() || o.to.empty()) input_error("missing_argument", "--from and --to are required");
  const Configuration eta = ctx.configuration("from", o.from, loaded.states, f.graph(), f.base());
  const Configuration eta_prime = ctx.configuration("to", o.to, loaded.states, f.graph(), f.base());
  const Rational d = difference(f, eta, eta_prime);
  Json out;
  out["difference"] = io::rational_to_json(d);
  if (eta.base() == f.base()) ctx.check("matches_evaluate", evaluate(f, eta_prime) - evaluate(f, eta) == d);
  return out;
}

Configuration start_configuration(const Options& o, Context& ctx, const GraphPtr& g) {
  const Interaction& phi = ctx.interaction();
  const StateIndex base = ctx.base_or_default();
  return ctx.configuration("config", o.config, phi.states(), g, base);
}

Json cmd_neighbors(const Options& o, Context& ctx) {
  const Interaction& phi = ctx.interaction();
  const GraphPtr g = ctx.graph();
  const Configuration eta = start_configuration(o, ctx, g);
  const auto moves = neighbors(phi, eta, ctx.edge_window(*g));
  Json out;
  out["count"] = moves.size();
  Json list = Json::array();
  bool valid = true;
  for (const auto& t : moves) {
    Json entry = io::transition_to_json(t, phi.states());
    entry["after"] = io::configuration_to_json(t.after, phi.states());
    list.push_back(std::move(entry));
    valid = valid && make_transition(phi, t.before, t.edge, t.phi_edge).after == t.after;
  }
  out["transitions"] = std::move(list);
  ctx.check("transitions_valid", valid);
  return out;
}

Json cmd_component(const Options& o, Context& ctx) {
  const Interaction& phi = ctx.interaction();
  const GraphPtr g = ctx.graph();
  const Configuration eta = start_configuration(o, ctx, g);
  ctx.record_scalar("max_states", o.max_states);
  const ComponentResult c = component_bfs(phi, eta, ctx.edge_window(*g), o.max_states);
  Json out;
  out["size"] = c.members.size();
  out["truncated"] = c.truncated;
  Json members = Json::array();
  for (const auto& m : c.members) members.push_back(io::configuration_to_json(m, phi.states()));
  out["members"] = std::move(members);
  bool replayed = true;
  for (const auto& [index, t] : c.parent) {
    ctx.lines.push_back(io::transition_to_json(t, phi.states()));
    replayed = replayed && replay(phi, eta, tree_path(c, c.members[index])) == c.members[index];
  }
  ctx.check("tree_paths_replay", replayed);
  return out;
}

Permutation parse_sigma(const std::string& text, const SiteGraph& g) {
  Permutation sigma;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) input_error("bad_argument", "--sigma expects x:y pairs meaning sigma(x)=y");
    auto x = g.find_label(item.substr(0, colon));
    auto y = g.find_label(item.substr(colon + 1));
    if (!x || !y) input_error("unknown_vertex", "unknown vertex in --sigma");
    if (!sigma.emplace(*x, *y).second) input_error("not_a_bijection", "sigma maps a site twice");
  }
  return sigma;
}

Json cmd_swap_path(const Options& o, Context& ctx) {
  const Interaction& phi = ctx.interaction();
  const GraphPtr g = ctx.graph();
  const Configuration eta = start_configuration(o, ctx, g);
  Permutation sigma;
  std::vector<Transition> path;
  Configuration expected = eta;
  if (!o.sigma.empty()) {
    ctx.record_scalar("sigma", o.sigma);
    sigma = parse_sigma(o.sigma, *g);
    path = permutation_path(phi, eta, sigma);
    expected = permuted(eta, sigma);
  } else {
    if (o.x.empty() || o.y.empty()) input_error("missing_argument", "give --x and --y, or --sigma");
    ctx.record_scalar("x", o.x);
    ctx.record_scalar("y", o.y);
    auto x = g->find_label(o.x);
    auto y = g->find_label(o.y);
    if (!x || !y) input_error("unknown_vertex", "unknown vertex in --x/--y");
    path = swap_path(phi, eta, *x, *y);
    expected = eta.swapped(*x, *y);
  }
  const Configuration end = replay(phi, eta, path);
  Json out;
  out["length"] = path.size();
  out["endpoint"] = io::configuration_to_json(end, phi.states());
  for (const auto& t : path) ctx.lines.push_back(io::transition_to_json(t, phi.states()));
  ctx.check("replay_reaches_target", end == expected);
  return out;
}

Json cmd_invariant(const Options& o, Context& ctx) {
  const Interaction& phi = ctx.interaction();
  const auto loaded = ctx.function();
  const UniformFunction& f = loaded.function;
  const SiteGraph& g = *f.graph();
  const std::size_t p = o.probe_bound == 0 ? 2 : o.probe_bound;
  ctx.record_scalar("probe_bound", p);
  SiteSet sites;
  const auto w = ctx.window();
  for (Site x : g.vertices()) {
    if (!w || (x >= w->first && x <= w->second)) sites.push_back(x);
  }
  const EdgeWindow edges = w ? edge_window_between(g, w->first, w->second) : full_edge_window(g);
  const auto probes = configurations_up_to(f.graph(), f.num_states(), f.base(), sites, p, ctx.caps().max_configurations);
  const InvarianceCheck check = is_invariant(f, phi, edges, probes);
  Json out;
  out["invariant"] = check.invariant;
  out["probes"] = check.probes;
  out["transitions_checked"] = check.transitions_checked;
  if (check.witness) {
    Json witness = io::transition_to_json(*check.witness, loaded.states);
    witness["before"] = io::configuration_to_json(check.witness->before, loaded.states);
    witness["after"] = io::configuration_to_json(check.witness->after, loaded.states);
    witness["difference"] = io::rational_to_json(*check.witness_difference);
    out["witness"] = std::move(witness);
  }
  out["caveat"] = check.caveat;
  return out;
}

Json cmd_h0(const Options&, Context& ctx) {
  const CochainSpaceSummary s = h0_h1_finite(ctx.interaction(), *ctx.graph(), ctx.caps());
  ctx.check("h0_components_equals_kernel", s.h0_components == s.h0_kernel);
  ctx.check("h1_rank_nullity", s.h1 + s.rank_d == s.dim_c1);
  return io::summary_to_json(s);
}

Json cmd_extract(const Options&, Context& ctx) {
  const Interaction& phi = ctx.interaction();
  const auto loaded = ctx.function();
  const ExtractionResult r = extract_conserved(loaded.function, phi);
  if (r.conserved) {
    const UniformFunction rebuilt = xi_X(*r.conserved, loaded.function.graph(), loaded.function.base());
    ctx.check("f_equals_xi_X", rebuilt.materialize().components() == loaded.function.materialize().components());
    ctx.check("xi_conserved", !conservation_violation(phi, *r.conserved));
  }
  return io::extraction_to_json(r, loaded.states, *loaded.function.graph());
}

Json cmd_kernel(const Options& o, Context& ctx) {
  const Interaction& phi = ctx.interaction();
  const StateIndex base = ctx.base_or_default();
  const auto w = ctx.window();
  if (!w) input_error("missing_argument", "--window a:b is required");
  if (o.radius < 0) input_error("missing_argument", "--radius is required");
  ctx.record_scalar("radius", o.radius);
  ctx.record_scalar("k", o.k);
  KernelOptions options;
  options.caps = ctx.caps();
  if (o.probe_bound) {
    options.probe_bound = o.probe_bound;
    ctx.record_scalar("probe_bound", o.probe_bound);
  }
  if (o.no_exchange) {
    options.exchange_constraints = false;
    ctx.record_scalar("exchange_constraints", false);
  }
  const KernelResult r = invariance_kernel(phi, o.radius, o.k, w->first, w->second, base, options);
  ctx.check("basis_invariant_on_probes", r.verified.value_or(false));
  return io::kernel_to_json(r, phi.states());
}

void print_table(std::ostream& out, const std::string& command, const Json& outputs, const Context& ctx) {
  out << "command: " << command << "\n";
  for (const auto& [key, value] : outputs.items()) {
    out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
  for (const auto& v : ctx.verification) {
    out << "check " << v["name"].get<std::string>() << ": " << (v["pass"].get<bool>() ? "pass" : "FAIL") << "\n";
  }
  for (const auto& line : ctx.lines) {
    out << "edge (" << line["edge"][0].dump() << "," << line["edge"][1].dump() << "): (" << line["from"][0].get<std::string>()
        << "," << line["from"][1].get<std::string>() << ") -> (" << line["to"][0].get<std::string>() << ","
        << line["to"][1].get<std::string>() << ")\n";
  }
}

void emit_error(std::ostream& err, const std::string& code, const std::string& message) {
  Json e;
  e["error"]["code"] = code;
  e["error"]["message"] = message;
  err << e.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact conserved-quantity and uniform-function toolkit for interacting particle systems"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1, 1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Write the report to this file instead of stdout");
    sub->add_option("--format", o.format, "json (default) or table")->check(CLI::IsMember({"json", "table"}));
  };
  auto interaction = [&](CLI::App* sub) {
    sub->add_option("--interaction", o.interaction, "Built-in id or interaction file");
  };
  auto graph = [&](CLI::App* sub) {
    sub->add_option("--graph", o.graph, "Graph file or path:N, cycle:N, lattice_z:K:A:B");
  };
  auto function = [&](CLI::App* sub) { sub->add_option("--function", o.function, "Function file"); };
  auto base = [&](CLI::App* sub) { sub->add_option("--base", o.base, "Base state label"); };
  auto window = [&](CLI::App* sub, const char* help) { sub->add_option("--window", o.window, help); };
  auto config = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "Configuration file or inline site=state,...");
  };

  std::map<std::string, Handler> handlers;
  auto command = [&](const std::string& name, const std::string& help, Handler h) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub);
    handlers[name] = std::move(h);
    return sub;
  };

  {
    auto* s = command("consv", "Basis of conserved quantities", cmd_consv);
    interaction(s);
    base(s);
  }
  interaction(command("exchangeable", "Decide exchangeability", cmd_exchangeable));
  {
    auto* s = command("expand", "Exact-support expansion of a local function", cmd_expand);
    interaction(s);
    graph(s);
    function(s);
    base(s);
  }
  {
    auto* s = command("rebase", "Change the base state of a uniform function", cmd_rebase);
    interaction(s);
    graph(s);
    function(s);
    base(s);
  }
  {
    auto* s = command("diff", "Difference f(to) - f(from) of a uniform function", cmd_diff);
    interaction(s);
    graph(s);
    function(s);
    s->add_option("--from", o.from, "Configuration file or inline site=state,...");
    s->add_option("--to", o.to, "Configuration file or inline site=state,...");
  }
  {
    auto* s = command("neighbors", "Transitions out of a configuration", cmd_neighbors);
    interaction(s);
    graph(s);
    config(s);
    base(s);
    window(s, "Restrict firing edges to sites lo:hi");
  }
  {
    auto* s = command("component", "Connected component by breadth-first search", cmd_component);
    interaction(s);
    graph(s);
    config(s);
    base(s);
    window(s, "Restrict firing edges to sites lo:hi");
    s->add_option("--max-states", o.max_states, "Truncate the search after this many configurations");
  }
  {
    auto* s = command("swap-path", "Transition path exchanging two sites or applying a permutation", cmd_swap_path);
    interaction(s);
    graph(s);
    config(s);
    base(s);
    s->add_option("--x", o.x, "First site");
    s->add_option("--y", o.y, "Second site");
    s->add_option("--sigma", o.sigma, "Permutation as x:y pairs meaning sigma(x)=y");
  }
  {
    auto* s = command("invariant", "Check invariance of a uniform function over probe configurations", cmd_invariant);
    interaction(s);
    graph(s);
    function(s);
    window(s, "Probe sites and firing edges within lo:hi");
    s->add_option("--probe-bound", o.probe_bound, "Maximum number of off-base sites per probe (default 2)");
  }
  {
    auto* s = command("h0", "H0 and H1 dimensions of a finite configuration graph", cmd_h0);
    interaction(s);
    graph(s);
  }
  {
    auto* s = command("extract", "Decide whether f = xi_X for a conserved quantity xi", cmd_extract);
    interaction(s);
    graph(s);
    function(s);
  }
  {
    auto* s = command("kernel", "Invariant uniform functions on a window of Z", cmd_kernel);
    interaction(s);
    base(s);
    window(s, "Lattice window a:b");
    s->add_option("--radius", o.radius, "Radius R");
    s->add_option("--k", o.k, "Lattice range k (default 1)");
    s->add_option("--probe-bound", o.probe_bound, "Maximum number of off-base sites per probe (default R+3)");
    s->add_flag("--no-exchange", o.no_exchange, "Skip exchange constraints");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    emit_error(err, "usage", e.what());
    return 1;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    Context ctx(o, Caps::from_environment());
    const Json outputs = handlers.at(name)(o, ctx);
    Json report;
    report["tool"] = "latticecalc";
    report["version"] = kVersion;
    report["command"] = name;
    report["inputs"] = ctx.inputs;
    report["outputs"] = outputs;
    report["verification"] = ctx.verification;

    std::ostringstream text;
    if (o.format == "table") {
      print_table(text, name, outputs, ctx);
    } else {
      text << report.dump() << "\n";
      for (const auto& line : ctx.lines) text << line.dump() << "\n";
    }
    if (o.out.empty()) {
      out << text.str();
    } else {
      std::ofstream file(o.out, std::ios::binary);
      if (!file) input_error("io_error", "cannot write " + o.out);
      file << text.str();
    }
    return 0;
  } catch (const Error& e) {
    emit_error(err, e.code(), e.what());
    return e.category() == ErrorCategory::domain ? 2 : 1;
  } catch (const std::exception& e) {
    emit_error(err, "input_error", e.what());
    return 1;
  }
}

}  // namespace latticecalc::cli
