#include "dkq/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "dkq/components.hpp"
#include "dkq/error.hpp"
#include "dkq/girth.hpp"
#include "dkq/graph.hpp"
#include "dkq/graph_io.hpp"
#include "dkq/verify.hpp"

namespace dkq::cli {
namespace {

struct RunConfig {
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t budget = kDefaultVertexBudget;
  bool force = false;
  std::uint64_t seed = kDefaultSeed;

  int k = 0;
  std::uint64_t q = 0;
  std::string modulus;
  std::string out_path;
  std::string in_path;
  std::string report_path;
  std::string format = "edgelist";
  std::optional<std::uint32_t> component;
  std::optional<std::uint32_t> max_depth;
  bool cd = false;
  bool certificate = false;
  bool json = false;
  bool heavy = false;
  std::string k_list;
  std::string q_list;

  BuildOptions build_options() const { return {budget, force}; }
};

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(static_cast<T>(v));
    } catch (const std::exception&) {
      throw ParameterError(std::string("bad ") + what + " entry \"" + item + "\"");
    }
  }
  if (out.empty()) throw ParameterError(std::string("empty ") + what);
  return out;
}

std::optional<Poly> modulus_arg(const RunConfig& cfg) {
  if (cfg.modulus.empty()) return std::nullopt;
  return parse_list<std::uint32_t>(cfg.modulus, "modulus");
}

Field field_arg(const RunConfig& cfg) { return Field::make(cfg.q, modulus_arg(cfg)); }

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--threads", cfg.threads, "Worker threads (default: available parallelism)")->check(CLI::PositiveNumber);
  sub->add_option("--budget", cfg.budget, "Vertex budget (default 2^26)");
  sub->add_flag("--force", cfg.force, "Ignore the vertex budget");
  sub->add_option("--seed", cfg.seed, "Seed for sampled checks");
}

void add_instance(CLI::App* sub, RunConfig& cfg, bool required = true) {
  auto* k = sub->add_option("--k", cfg.k, "Number of coordinates k >= 1")->check(CLI::PositiveNumber);
  auto* q = sub->add_option("--q", cfg.q, "Field order (prime power)");
  if (required) {
    k->required();
    q->required();
  }
  sub->add_option("--modulus", cfg.modulus, "Modulus coefficients c0,c1,...,1 (constant term first)");
}

void print_table(std::ostream& out, const Field& f, bool multiply) {
  const int width = static_cast<int>(std::to_string(f.q() - 1).size()) + 1;
  out << (multiply ? "*" : "+") << std::string(static_cast<std::size_t>(width), ' ') << "|";
  for (Elem b = 0; b < f.q(); ++b) out << std::setw(width) << b;
  out << '\n' << std::string(static_cast<std::size_t>(width + 2 + width * static_cast<int>(f.q())), '-') << '\n';
  for (Elem a = 0; a < f.q(); ++a) {
    out << std::setw(width) << a << " |";
    for (Elem b = 0; b < f.q(); ++b) out << std::setw(width) << (multiply ? f.mul(a, b) : f.add(a, b));
    out << '\n';
  }
}

int cmd_field(const RunConfig& cfg, std::ostream& out) {
  const Field f = field_arg(cfg);
  out << "q = " << f.q() << "\np = " << f.p() << "\nm = " << f.m() << "\nmodulus = " << f.describe_modulus();
  if (!f.modulus().empty()) {
    out << " [";
    for (std::size_t i = 0; i < f.modulus().size(); ++i) out << (i ? "," : "") << f.modulus()[i];
    out << "]";
  }
  out << '\n';
  if (f.q() <= 16) {
    out << "\naddition\n";
    print_table(out, f, false);
    out << "\nmultiplication\n";
    print_table(out, f, true);
  }
  return kExitOk;
}

void describe(std::ostream& out, const BipartiteGraph& g, int k_requested) {
  const auto& info = g.info();
  out << info.kind << "(" << info.k << "," << info.field->q() << ")";
  if (k_requested != info.k) out << " (k = " << k_requested << " is built as k = " << info.k << ")";
  out << ": " << g.vertex_count() << " vertices, " << g.edge_count() << " edges\n";
}

int cmd_build(const RunConfig& cfg, std::ostream& out) {
  const Field f = field_arg(cfg);
  const auto format = parse_format(cfg.format);
  const auto g = build(cfg.k, f, cfg.build_options());
  describe(out, g, cfg.k);
  if (!cfg.out_path.empty()) {
    export_graph(cfg.out_path, g, format);
    out << "wrote " << cfg.out_path << '\n';
  }
  return kExitOk;
}

int cmd_components(const RunConfig& cfg, std::ostream& out) {
  const Field f = field_arg(cfg);
  const auto g = build(cfg.k, f, cfg.build_options());
  const auto labeling = components(g);
  const int t = t_of(g.info().k);
  std::uint64_t bound = 1;
  for (int i = 1; i < t; ++i) bound *= f.q();

  if (cfg.json) {
    nlohmann::ordered_json j;
    j["k"] = cfg.k;
    j["k_effective"] = g.info().k;
    j["q"] = f.q();
    j["t"] = t;
    j["components"] = labeling.count();
    j["lower_bound"] = bound;
    auto rows = nlohmann::ordered_json::array();
    for (std::uint32_t i = 0; i < labeling.count(); ++i) {
      const auto& c = labeling.components[i];
      rows.push_back({{"id", i}, {"order", c.order}, {"size", c.size}, {"invariant", c.invariant}});
    }
    j["rows"] = std::move(rows);
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "N = " << labeling.count() << "\nq^(t-1) = " << bound << " (t = " << t << ")\n";
  out << "id order size invariant\n";
  for (std::uint32_t i = 0; i < labeling.count(); ++i) {
    const auto& c = labeling.components[i];
    out << i << ' ' << c.order << ' ' << c.size << " [";
    for (std::size_t j = 0; j < c.invariant.size(); ++j) out << (j ? "," : "") << c.invariant[j];
    out << "]\n";
  }
  return kExitOk;
}

int cmd_cd(const RunConfig& cfg, std::ostream& out) {
  const Field f = field_arg(cfg);
  const auto format = parse_format(cfg.format);
  const auto g = build(cfg.k, f, cfg.build_options());
  const auto labeling = components(g);
  const auto cd = extract_component(g, labeling, cfg.component.value_or(0));
  describe(out, cd.graph, cfg.k);
  out << "component " << cfg.component.value_or(0) << " of " << labeling.count() << '\n';
  export_graph(cfg.out_path, cd.graph, format);
  const std::string map_path = cfg.out_path + ".map";
  std::ofstream map(map_path);
  if (!map) throw ParameterError("cannot open " + map_path + " for writing");
  write_mapping(map, cd.new_to_old);
  out << "wrote " << cfg.out_path << " and " << map_path << '\n';
  return kExitOk;
}

void print_girth(std::ostream& out, const GirthResult& r, bool certificate) {
  out << "mode: " << (r.mode == GirthMode::Exact ? "exact" : "lower-bound-only") << '\n';
  if (r.girth) {
    out << "girth: " << *r.girth << '\n';
  } else if (r.mode == GirthMode::Exact) {
    out << "girth: infinite\n";
  } else {
    out << "girth: > " << 2 * r.probed_depth << '\n';
  }
  out << "probed_depth: " << r.probed_depth << '\n';
  if (certificate && !r.certificate.empty()) {
    out << "certificate:";
    for (auto v : r.certificate) out << ' ' << v;
    out << '\n';
  }
}

int cmd_girth(const RunConfig& cfg, std::ostream& out) {
  const bool from_file = !cfg.in_path.empty();
  if (from_file == (cfg.k != 0 || cfg.q != 0)) throw ParameterError("give either --in PATH or --k/--q");
  if (!from_file && (cfg.k == 0 || cfg.q == 0)) throw ParameterError("--k and --q are both required");
  if (from_file && cfg.cd) throw ParameterError("--cd applies to --k/--q instances");

  BipartiteGraph g;
  if (from_file) {
    g = import_graph(cfg.in_path);
  } else {
    g = build(cfg.k, field_arg(cfg), cfg.build_options());
    if (cfg.cd) g = extract_component(g, components(g), 0).graph;
  }
  GirthOptions opts;
  opts.max_depth = cfg.max_depth;
  opts.certificate = cfg.certificate;
  opts.threads = cfg.threads;
  print_girth(out, girth(g, opts), cfg.certificate);
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  VerifyOptions opts;
  opts.heavy = cfg.heavy;
  opts.seed = cfg.seed;
  opts.build = cfg.build_options();
  opts.threads = cfg.threads;
  opts.modulus = modulus_arg(cfg);
  const auto report = verify_all(cfg.k, cfg.q, opts);
  for (const auto& c : report.checks) {
    out << std::left << std::setw(4) << c.id << ' ' << std::setw(8) << to_string(c.status) << ' ' << c.claim;
    if (!c.note.empty()) out << " (" << c.note << ")";
    out << '\n';
  }
  out << "verdict: " << (report.pass() ? "pass" : "fail") << '\n';
  if (!cfg.report_path.empty()) {
    std::ofstream os(cfg.report_path);
    if (!os) throw ParameterError("cannot open " + cfg.report_path + " for writing");
    os << report.to_json().dump(2) << '\n';
  }
  return report.pass() ? kExitOk : kExitCheckFailed;
}

int cmd_table(const RunConfig& cfg, std::ostream& out) {
  VerifyOptions opts;
  opts.heavy = cfg.heavy;
  opts.build = cfg.build_options();
  opts.threads = cfg.threads;
  const auto rows = table(parse_list<int>(cfg.k_list, "k list"), parse_list<std::uint64_t>(cfg.q_list, "q list"), opts);

  const std::vector<std::string> head{"k", "q", "t", "order", "N", "q^(t-1)", "CD order", "girth", "gamma", "residual"};
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows) {
    if (!r.skipped.empty()) {
      cells.push_back({std::to_string(r.k), std::to_string(r.q), std::to_string(r.t), "skipped", "-", "-", "-", "-",
                       "-", "-"});
      continue;
    }
    std::string g;
    if (r.girth.girth) {
      g = std::to_string(*r.girth.girth);
    } else {
      g = r.girth.mode == GirthMode::Exact ? "inf" : "> " + std::to_string(2 * r.girth.probed_depth);
    }
    std::ostringstream gamma, res;
    if (r.gamma) {
      gamma << std::fixed << std::setprecision(3) << *r.gamma;
    } else {
      gamma << "n/a";
    }
    res << std::scientific << std::setprecision(1) << static_cast<double>(r.residual);
    cells.push_back({std::to_string(r.k), std::to_string(r.q), std::to_string(r.t), std::to_string(r.order),
                     std::to_string(r.components), std::to_string(r.lower_bound), std::to_string(r.cd_order), g,
                     gamma.str(), res.str()});
  }
  std::vector<std::size_t> width(head.size());
  for (std::size_t c = 0; c < head.size(); ++c) {
    width[c] = head[c].size();
    for (const auto& row : cells) width[c] = std::max(width[c], row[c].size());
  }
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c ? "  " : "") << std::right << std::setw(static_cast<int>(width[c])) << row[c];
    }
    out << '\n';
  };
  emit(head);
  for (const auto& row : cells) emit(row);
  for (const auto& r : rows) {
    if (!r.skipped.empty()) out << "skipped k=" << r.k << " q=" << r.q << ": " << r.skipped << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Construct and verify the graphs D(k,q) and their components CD(k,q)", "dkq"};
  app.require_subcommand(1);

  auto* field = app.add_subcommand("field", "Describe GF(q) and print its tables for q <= 16");
  field->add_option("--q", cfg.q, "Field order (prime power)")->required();
  field->add_option("--modulus", cfg.modulus, "Modulus coefficients c0,c1,...,1");

  auto* build_cmd = app.add_subcommand("build", "Build D(k,q) and optionally export it");
  add_instance(build_cmd, cfg);
  build_cmd->add_option("--out", cfg.out_path, "Output path");
  build_cmd->add_option("--format", cfg.format, "edgelist | dimacs | json");
  add_common(build_cmd, cfg);

  auto* comps = app.add_subcommand("components", "Count and describe the components of D(k,q)");
  add_instance(comps, cfg);
  comps->add_flag("--json", cfg.json, "JSON output");
  add_common(comps, cfg);

  auto* cd = app.add_subcommand("cd", "Export one component CD(k,q) with an id map");
  add_instance(cd, cfg);
  cd->add_option("--component", cfg.component, "Component id (default 0, the all-zero point's component)");
  cd->add_option("--out", cfg.out_path, "Output path; the map is written to PATH.map")->required();
  cd->add_option("--format", cfg.format, "edgelist | dimacs | json");
  add_common(cd, cfg);

  auto* girth_cmd = app.add_subcommand("girth", "Girth of D(k,q), CD(k,q) or an imported graph");
  add_instance(girth_cmd, cfg, false);
  girth_cmd->add_flag("--cd", cfg.cd, "Use the component of the all-zero point");
  girth_cmd->add_option("--in", cfg.in_path, "Graph file to import");
  girth_cmd->add_option("--max-depth", cfg.max_depth, "Probe depth; cycles up to 2*D are found");
  girth_cmd->add_flag("--certificate", cfg.certificate, "Print a shortest cycle");
  add_common(girth_cmd, cfg);

  auto* verify = app.add_subcommand("verify", "Run every check on D(k,q); exit 0 iff all asserted checks pass");
  add_instance(verify, cfg);
  verify->add_flag("--heavy", cfg.heavy, "Exact girth above 100000 vertices");
  verify->add_option("--report", cfg.report_path, "JSON report path");
  add_common(verify, cfg);

  auto* table_cmd = app.add_subcommand("table", "Summary table over a grid of (k, q)");
  table_cmd->add_option("--k-list", cfg.k_list, "Comma separated k values")->required();
  table_cmd->add_option("--q-list", cfg.q_list, "Comma separated q values")->required();
  table_cmd->add_flag("--heavy", cfg.heavy, "Exact girth above 100000 vertices");
  add_common(table_cmd, cfg);

  std::vector<const char*> argv{"dkq"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*field) return cmd_field(cfg, out);
    if (*build_cmd) return cmd_build(cfg, out);
    if (*comps) return cmd_components(cfg, out);
    if (*cd) return cmd_cd(cfg, out);
    if (*girth_cmd) return cmd_girth(cfg, out);
    if (*verify) return cmd_verify(cfg, out);
    if (*table_cmd) return cmd_table(cfg, out);
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BudgetError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace dkq::cli
