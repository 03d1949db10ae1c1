// ucs: command-line driver for unweighted spectral sparsification.
//
// Exit codes: 0 success, 1 usage or input error, 2 verification failure.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ucs/bounds.hpp"
#include "ucs/error.hpp"
#include "ucs/graph.hpp"
#include "ucs/layout.hpp"
#include "ucs/selection.hpp"
#include "ucs/spectra.hpp"
#include "ucs/verify.hpp"

namespace {

using nlohmann::json;

constexpr const char* kToolVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitVerify = 2;

/// Raised for bad flags or unreadable inputs; maps to exit code 1.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::size_t thread_count() {
  const char* env = std::getenv("UCS_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  try {
    std::size_t pos = 0;
    const long value = std::stol(env, &pos);
    if (pos == std::string(env).size() && value >= 1) return static_cast<std::size_t>(value);
  } catch (const std::exception&) {
  }
  throw InputError(std::string("UCS_THREADS must be an integer >= 1, got '") + env + "'");
}

struct Manifest {
  std::string command;
  std::string input;
  std::string format;
  std::optional<std::size_t> ell;
  std::optional<std::string> tie_rule;
  std::optional<std::uint64_t> seed;
  std::map<std::string, std::string> outputs;

  json to_json() const {
    json j = {{"command", command}, {"input", input}, {"format", format}};
    j["ell"] = ell ? json(*ell) : json(nullptr);
    j["tie_rule"] = tie_rule ? json(*tie_rule) : json(nullptr);
    j["seed"] = seed ? json(*seed) : json(nullptr);
    j["outputs"] = outputs;
    j["tool_version"] = kToolVersion;
    j["timestamp"] = utc_timestamp();
    return j;
  }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
  if (!out) throw InputError("write failed for '" + path + "'");
}

void emit_json(const std::string& path, const json& j) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
  } else {
    write_text(path, text);
  }
}

json edge_pair(const ucs::Graph& g, ucs::EdgeIndex i) {
  const auto& e = g.edge(i);
  return json::array({g.original_ids()[e.u], g.original_ids()[e.v]});
}

json edge_pairs(const ucs::Graph& g, const std::vector<ucs::EdgeIndex>& edges) {
  json out = json::array();
  for (auto i : edges) out.push_back(edge_pair(g, i));
  return out;
}

/// Reads a subset file: {"selected_edges": [[u,v],...]} or a bare [[u,v],...]
/// array, with original vertex ids. Unknown edges are input errors.
std::vector<ucs::EdgeIndex> read_subset(const std::string& path, const ucs::Graph& g) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open subset file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& ex) {
    throw InputError("subset file '" + path + "' is not valid JSON: " + ex.what());
  }
  const json& pairs = j.is_object() && j.contains("selected_edges") ? j.at("selected_edges") : j;
  if (!pairs.is_array()) throw InputError("subset file must hold an array of [u, v] pairs");

  std::map<std::pair<ucs::OriginalId, ucs::OriginalId>, ucs::EdgeIndex> lookup;
  for (ucs::EdgeIndex i = 0; i < g.edge_count(); ++i) {
    const auto& e = g.edge(i);
    const auto a = g.original_ids()[e.u];
    const auto b = g.original_ids()[e.v];
    lookup.emplace(std::minmax(a, b), i);
  }
  std::vector<ucs::EdgeIndex> out;
  std::vector<bool> seen(g.edge_count(), false);
  for (const auto& p : pairs) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() ||
        !p[1].is_number_integer()) {
      throw InputError("subset entries must be [u, v] integer pairs");
    }
    const auto a = p[0].get<ucs::OriginalId>();
    const auto b = p[1].get<ucs::OriginalId>();
    const auto it = lookup.find(std::minmax(a, b));
    if (it == lookup.end()) {
      throw InputError("subset references unknown edge [" + std::to_string(a) + ", " +
                       std::to_string(b) + "]");
    }
    if (seen[it->second]) {
      throw InputError("subset lists edge [" + std::to_string(a) + ", " + std::to_string(b) +
                       "] twice");
    }
    seen[it->second] = true;
    out.push_back(it->second);
  }
  return out;
}

json graph_summary(const ucs::ParsedGraph& parsed) {
  const auto labels = ucs::connected_components(parsed.graph);
  return {{"vertex_count", parsed.graph.vertex_count()},
          {"edge_count", parsed.graph.edge_count()},
          {"components", labels.component_count},
          {"rank", parsed.graph.vertex_count() - labels.component_count},
          {"duplicates_dropped", parsed.stats.duplicates_dropped},
          {"self_loops_dropped", parsed.stats.self_loops_dropped}};
}

ucs::LayoutConfig layout_config(std::uint64_t seed, int iterations) {
  ucs::LayoutConfig cfg;
  cfg.seed = seed;
  cfg.iterations = iterations;
  return cfg;
}

// ---------------------------------------------------------------- commands

struct GraphArgs {
  std::string input;
  std::string format = "snap";
};

void add_graph_options(CLI::App* cmd, GraphArgs& args) {
  cmd->add_option("--input,-i", args.input, "Edge-list file")->required();
  cmd->add_option("--format,-f", args.format, "snap (u<TAB>v) or weighted (u v w)")
      ->check(CLI::IsMember({"snap", "weighted"}));
}

ucs::ParsedGraph load(const GraphArgs& args) {
  return ucs::read_edge_list_file(args.input, ucs::parse_format(args.format));
}

struct SparsifyArgs {
  GraphArgs graph;
  std::size_t ell = 0;
  std::string tie = "first";
  std::string out;
  std::string svg;
  std::uint64_t seed = 0;
  int iterations = 500;
};

int cmd_sparsify(const SparsifyArgs& args) {
  const auto parsed = load(args.graph);
  const ucs::Graph& g = parsed.graph;
  const auto basis = ucs::edge_orthonormal_basis(g);
  ucs::SparsifyOptions options;
  options.tie_rule = ucs::parse_tie_rule(args.tie);
  options.threads = thread_count();
  const auto result = ucs::sparsify(basis, args.ell, options);
  const auto sandwich =
      ucs::verify_sandwich(basis, result.selected_edges, result.kappa_inv_bound);
  const auto choice = ucs::choose_T(result.n, result.m, args.ell);

  Manifest manifest{"sparsify", args.graph.input, args.graph.format, args.ell,
                    ucs::to_string(*options.tie_rule), std::nullopt, {}};
  if (!args.out.empty()) manifest.outputs["json"] = args.out;
  if (!args.svg.empty()) {
    manifest.outputs["svg"] = args.svg;
    manifest.seed = args.seed;
  }

  json iterations = json::array();
  for (const auto& rec : result.per_iteration) {
    iterations.push_back({{"t", rec.t},
                          {"lambda", rec.lambda},
                          {"lambda_hat", rec.lambda_hat},
                          {"trace_at_lambda", rec.trace_at_lambda},
                          {"chosen", rec.chosen},
                          {"chosen_edge", edge_pair(g, rec.chosen)},
                          {"chosen_trace", rec.chosen_trace},
                          {"candidates_examined", rec.candidates_examined}});
  }
  json report = {{"manifest", manifest.to_json()},
                 {"graph", graph_summary(parsed)},
                 {"params",
                  {{"ell", result.params.ell},
                   {"T", result.params.T},
                   {"T_hat_star", choice.T_hat_star},
                   {"F_at_star", choice.F_at_star},
                   {"tie_rule", ucs::to_string(result.params.tie_rule)},
                   {"root_tol", result.params.root_tol},
                   {"trace_slack", result.params.trace_slack}}},
                 {"selected_edges", edge_pairs(g, result.selected_edges)},
                 {"selected_edge_indices", result.selected_edges},
                 {"lambda_min", result.lambda_min_achieved},
                 {"lambda_max", result.lambda_max_achieved},
                 {"kappa_inv_bound", result.kappa_inv_bound},
                 {"sandwich", ucs::to_json(sandwich)},
                 {"per_iteration", std::move(iterations)}};
  emit_json(args.out, report);

  if (!args.svg.empty()) {
    const auto coords = ucs::fruchterman_reingold(g, layout_config(args.seed, args.iterations));
    write_text(args.svg, ucs::render_svg(g, coords, result.selected_edges));
  }
  if (!sandwich.pass || !result.bound_satisfied()) {
    std::cerr << "verification failed: lambda_min=" << result.lambda_min_achieved
              << " bound=" << result.kappa_inv_bound << " upper=" << sandwich.upper << "\n";
    return kExitVerify;
  }
  return kExitOk;
}

struct TreeArgs {
  GraphArgs graph;
  std::string out;
  std::string edges;
};

int cmd_tree(const TreeArgs& args) {
  const auto parsed = load(args.graph);
  const ucs::Graph& g = parsed.graph;
  ucs::SparsifyOptions options;
  options.threads = thread_count();
  const auto tree = ucs::spanning_structure(g, options);

  const auto before = ucs::connected_components(g);
  const auto after = ucs::connected_components(g.edge_subgraph(tree));
  const bool acyclic = tree.size() == g.vertex_count() - after.component_count;
  const bool same_components = after.labels == before.labels;

  Manifest manifest{"tree", args.graph.input, args.graph.format, std::nullopt, std::nullopt,
                    std::nullopt, {}};
  if (!args.out.empty()) manifest.outputs["json"] = args.out;
  if (!args.edges.empty()) manifest.outputs["edges"] = args.edges;
  json report = {{"manifest", manifest.to_json()},
                 {"graph", graph_summary(parsed)},
                 {"edge_count", tree.size()},
                 {"acyclic", acyclic},
                 {"same_components", same_components},
                 {"selected_edges", edge_pairs(g, tree)},
                 {"selected_edge_indices", tree}};
  if (!args.edges.empty()) {
    write_text(args.edges, ucs::write_edge_list(g.edge_subgraph(tree), ucs::EdgeListFormat::snap));
  }
  emit_json(args.out, report);
  return acyclic && same_components ? kExitOk : kExitVerify;
}

struct BoundsArgs {
  std::string n;
  std::string m;
  std::string ell;
  std::string csv;
  std::string json_out;
};

ucs::TripleRange parse_range(const std::string& text, const char* name) {
  try {
    const auto colon = text.find(':');
    std::size_t pos = 0;
    if (colon == std::string::npos) {
      const auto v = std::stoull(text, &pos);
      if (pos != text.size()) throw std::invalid_argument(text);
      return {v, v};
    }
    const std::string a = text.substr(0, colon);
    const std::string b = text.substr(colon + 1);
    const auto lo = std::stoull(a, &pos);
    if (pos != a.size()) throw std::invalid_argument(text);
    const auto hi = std::stoull(b, &pos);
    if (pos != b.size() || hi < lo) throw std::invalid_argument(text);
    return {lo, hi};
  } catch (const std::exception&) {
    throw InputError(std::string("--") + name + " expects N or LO:HI, got '" + text + "'");
  }
}

int cmd_bounds(const BoundsArgs& args) {
  const auto rows = ucs::bound_table(parse_range(args.n, "n"), parse_range(args.m, "m"),
                                     parse_range(args.ell, "ell"));
  for (const auto& row : rows) {
    if (!row.report) {
      std::cerr << "n=" << row.n << " m=" << row.m << " ell=" << row.ell << ": " << row.note
                << "\n";
    }
  }
  if (!args.json_out.empty()) {
    Manifest manifest{"bounds", "", "", std::nullopt, std::nullopt, std::nullopt, {}};
    manifest.outputs["json"] = args.json_out;
    if (!args.csv.empty()) manifest.outputs["csv"] = args.csv;
    emit_json(args.json_out,
              {{"manifest", manifest.to_json()}, {"rows", ucs::bound_table_json(rows)}});
  }
  const std::string csv = ucs::bound_table_csv(rows);
  if (!args.csv.empty()) {
    write_text(args.csv, csv);
  } else if (args.json_out.empty()) {
    std::cout << csv;
  }
  return kExitOk;
}

struct VerifyArgs {
  GraphArgs graph;
  std::string subset;
  double kappa_inv = 0.0;
  double tol = 1e-8;
  std::string out;
};

int cmd_verify(const VerifyArgs& args) {
  const auto parsed = load(args.graph);
  const auto subset = read_subset(args.subset, parsed.graph);
  const auto basis = ucs::edge_orthonormal_basis(parsed.graph);
  const auto report = ucs::verify_sandwich(basis, subset, args.kappa_inv, args.tol);
  Manifest manifest{"verify", args.graph.input, args.graph.format, std::nullopt, std::nullopt,
                    std::nullopt, {{"subset", args.subset}}};
  if (!args.out.empty()) manifest.outputs["json"] = args.out;
  json j = ucs::to_json(report);
  j["subset_size"] = subset.size();
  j["manifest"] = manifest.to_json();
  emit_json(args.out, j);
  return report.pass ? kExitOk : kExitVerify;
}

struct LayoutArgs {
  GraphArgs graph;
  std::string subset;
  std::uint64_t seed = 0;
  int iterations = 500;
  std::string coords;
  std::string svg;
};

int cmd_layout(const LayoutArgs& args) {
  const auto parsed = load(args.graph);
  const ucs::Graph& g = parsed.graph;
  if (g.vertex_count() == 0) throw InputError("graph has no vertices");
  std::vector<ucs::EdgeIndex> subset;
  if (!args.subset.empty()) subset = read_subset(args.subset, g);

  const auto cfg = layout_config(args.seed, args.iterations);
  // With a subset the layout follows the sparsifier; all edges of G are drawn.
  const auto coords = args.subset.empty() ? ucs::fruchterman_reingold(g, cfg)
                                          : ucs::fruchterman_reingold(g.edge_subgraph(subset), cfg);

  Manifest manifest{"layout", args.graph.input, args.graph.format, std::nullopt, std::nullopt,
                    args.seed, {}};
  if (!args.subset.empty()) manifest.outputs["subset"] = args.subset;
  if (!args.coords.empty()) manifest.outputs["coords"] = args.coords;
  if (!args.svg.empty()) manifest.outputs["svg"] = args.svg;

  if (!args.svg.empty()) write_text(args.svg, ucs::render_svg(g, coords, subset));
  json j = {{"manifest", manifest.to_json()},
            {"iterations", args.iterations},
            {"coordinates", ucs::coordinates_json(g, coords)}};
  emit_json(args.coords, j);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unweighted spectral graph sparsification by greedy column selection"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  SparsifyArgs sparsify_args;
  auto* sparsify = app.add_subcommand("sparsify", "Select ell edges that kappa-approximate G");
  add_graph_options(sparsify, sparsify_args.graph);
  sparsify->add_option("--ell,-l", sparsify_args.ell, "Number of edges to keep")->required();
  sparsify->add_option("--tie", sparsify_args.tie, "Candidate rule: first or best")
      ->check(CLI::IsMember({"first", "best"}));
  sparsify->add_option("--out,-o", sparsify_args.out, "Result JSON (default stdout)");
  sparsify->add_option("--svg", sparsify_args.svg, "Draw G with the sparsifier highlighted");
  sparsify->add_option("--seed", sparsify_args.seed, "Layout seed for --svg");
  sparsify->add_option("--iterations", sparsify_args.iterations, "Layout sweeps for --svg")
      ->check(CLI::PositiveNumber);

  TreeArgs tree_args;
  auto* tree = app.add_subcommand("tree", "Extract a spanning forest via ell = n + 1 selection");
  add_graph_options(tree, tree_args.graph);
  tree->add_option("--out,-o", tree_args.out, "Result JSON (default stdout)");
  tree->add_option("--edges", tree_args.edges, "Write the forest as a SNAP edge list");

  BoundsArgs bounds_args;
  auto* bounds = app.add_subcommand("bounds", "Tabulate 1/kappa bounds over (n, m, ell)");
  bounds->add_option("--n", bounds_args.n, "N or LO:HI")->required();
  bounds->add_option("--m", bounds_args.m, "N or LO:HI")->required();
  bounds->add_option("--ell", bounds_args.ell, "N or LO:HI")->required();
  bounds->add_option("--csv", bounds_args.csv, "CSV output (default stdout)");
  bounds->add_option("--json", bounds_args.json_out, "JSON output");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Audit (1/kappa) L_G <= L_H <= L_G for a subset");
  add_graph_options(verify, verify_args.graph);
  verify->add_option("--subset", verify_args.subset, "JSON list of [u, v] edges")->required();
  verify->add_option("--kappa-inv", verify_args.kappa_inv, "Claimed 1/kappa")->required();
  verify->add_option("--tol", verify_args.tol, "Absolute eigenvalue tolerance");
  verify->add_option("--out,-o", verify_args.out, "Report JSON (default stdout)");

  LayoutArgs layout_args;
  auto* layout = app.add_subcommand("layout", "Force-directed layout and SVG rendering");
  add_graph_options(layout, layout_args.graph);
  layout->add_option("--subset", layout_args.subset, "Lay out on this edge subset");
  layout->add_option("--seed", layout_args.seed, "Initial placement seed");
  layout->add_option("--iterations", layout_args.iterations, "Sweeps")
      ->check(CLI::PositiveNumber);
  layout->add_option("--coords", layout_args.coords, "Coordinates JSON (default stdout)");
  layout->add_option("--svg", layout_args.svg, "SVG output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*sparsify) return cmd_sparsify(sparsify_args);
    if (*tree) return cmd_tree(tree_args);
    if (*bounds) return cmd_bounds(bounds_args);
    if (*verify) return cmd_verify(verify_args);
    if (*layout) return cmd_layout(layout_args);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ucs::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ucs::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ucs::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ucs::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInput;
  } catch (const ucs::RankMismatchError& e) {
    std::cerr << "rank mismatch: " << e.what() << "\n";
    return kExitInput;
  } catch (const ucs::Error& e) {
    // Solver or selection failures: the sparsifier could not be certified.
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerify;
  }
  return kExitInput;
}
