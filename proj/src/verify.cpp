#include "dkq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "dkq/components.hpp"
#include "dkq/error.hpp"

namespace dkq {
namespace {

using nlohmann::ordered_json;

std::uint64_t ipow(std::uint64_t base, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

ordered_json girth_json(const GirthResult& r) {
  ordered_json j;
  j["mode"] = r.mode == GirthMode::Exact ? "exact" : "lower_bound_only";
  if (r.girth) {
    j["girth"] = *r.girth;
  } else if (r.mode == GirthMode::Exact) {
    j["girth"] = "infinite";
  } else {
    j["girth_greater_than"] = 2 * r.probed_depth;
  }
  j["probed_depth"] = r.probed_depth;
  return j;
}

CheckRecord record(std::string id, std::string claim, bool asserted) {
  CheckRecord c;
  c.id = std::move(id);
  c.claim = std::move(claim);
  c.asserted = asserted;
  return c;
}

CheckStatus verdict(bool ok) { return ok ? CheckStatus::Pass : CheckStatus::Fail; }

}  // namespace

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
    case CheckStatus::Reported: return "reported";
  }
  return "?";
}

bool VerificationReport::pass() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const CheckRecord& c) { return c.asserted && c.status == CheckStatus::Fail; });
}

const CheckRecord* VerificationReport::find(const std::string& id) const {
  for (const auto& c : checks) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

ordered_json VerificationReport::to_json() const {
  ordered_json j;
  j["tool"] = "dkq";
  j["report_version"] = 1;
  ordered_json inst;
  inst["k"] = k_requested;
  inst["k_effective"] = k;
  inst["q"] = q;
  inst["p"] = p;
  inst["m"] = m;
  inst["modulus"] = modulus;
  inst["t"] = t;
  j["instance"] = inst;
  j["seed"] = seed;
  j["heavy"] = heavy;
  j["density_mode"] = "floating point (long double), tolerance 1e-9";

  ordered_json summary;
  summary["vertices"] = vertices;
  summary["edges"] = edges;
  summary["components"] = components;
  summary["cd_order"] = cd_order;
  summary["cd_size"] = cd_size;
  summary["girth"] = girth ? girth_json(*girth) : ordered_json("not computed");
  summary["gamma"] = gamma ? ordered_json(*gamma) : ordered_json("not applicable");
  summary["density_residual"] = static_cast<double>(density_residual);
  j["summary"] = summary;

  ordered_json arr = ordered_json::array();
  for (const auto& c : checks) {
    ordered_json r;
    r["id"] = c.id;
    r["claim"] = c.claim;
    r["asserted"] = c.asserted;
    r["expected"] = c.expected;
    r["measured"] = c.measured;
    r["status"] = to_string(c.status);
    if (!c.note.empty()) r["note"] = c.note;
    arr.push_back(std::move(r));
  }
  j["checks"] = arr;
  j["verdict"] = pass() ? "pass" : "fail";
  return j;
}

long double density_identity(std::uint64_t v, std::uint32_t q, std::uint64_t n_components, int k) {
  const long double lv = static_cast<long double>(v);
  const long double kk = static_cast<long double>(k);
  const long double e = lv * q / 2.0L;
  const long double rhs = std::pow(2.0L, -1.0L - 1.0L / kk) *
                          std::pow(static_cast<long double>(n_components), 1.0L / kk) * std::pow(lv, 1.0L + 1.0L / kk);
  return std::fabs(e - rhs);
}

ExponentRecord corollary_exponent(int s) {
  if (s < 2) throw ParameterError("s must be >= 2");
  ExponentRecord r;
  r.s = s;
  r.k = 2 * s - 3;
  r.t = t_of(r.k);
  r.denominator = r.k - r.t + 1;
  r.epsilon = s % 2 == 1 ? 0 : 1;
  const std::int64_t den = 3 * s - 3 + r.epsilon;
  const std::int64_t num = den + 2;
  const std::int64_t g = std::gcd(num, den);
  r.exponent_num = num / g;
  r.exponent_den = den / g;
  return r;
}

std::optional<double> gamma_metric(std::uint64_t v, std::uint32_t girth, std::uint32_t q) {
  if (q < 3 || v < 2) return std::nullopt;
  return static_cast<double>(girth) * std::log(static_cast<double>(q - 1)) / std::log(static_cast<double>(v));
}

VerificationReport verify_all(int k, std::uint64_t q_in, const VerifyOptions& options) {
  if (k < 1) throw ParameterError("k must be >= 1");
  const Field field = Field::make(q_in, options.modulus);
  const BipartiteGraph g = build(k, field, options.build);

  VerificationReport rep;
  rep.k_requested = k;
  rep.k = effective_k(k);
  rep.t = t_of(rep.k);
  rep.q = field.q();
  rep.p = field.p();
  rep.m = field.m();
  rep.modulus = field.modulus();
  rep.seed = options.seed;
  rep.heavy = options.heavy;
  rep.vertices = g.vertex_count();
  rep.edges = g.edge_count();

  const std::uint32_t q = rep.q;
  const int ke = rep.k;
  const int t = rep.t;
  const std::uint64_t side = side_size(q, ke);

  // C1 order and size
  {
    auto c = record("C1", "D(k,q) has order 2q^k (2q^2 for k = 1) and q^(k+1) edges", true);
    c.expected = {{"vertices", 2 * side}, {"edges", side * q}};
    c.measured = {{"vertices", rep.vertices}, {"edges", rep.edges}};
    c.status = verdict(rep.vertices == 2 * side && rep.edges == side * q);
    rep.checks.push_back(std::move(c));
  }
  // C2 regularity
  {
    auto c = record("C2", "D(k,q) is q-regular", true);
    std::size_t min_deg = ~std::size_t{0}, max_deg = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      min_deg = std::min(min_deg, g.degree(v));
      max_deg = std::max(max_deg, g.degree(v));
    }
    c.expected = {{"degree", q}};
    c.measured = {{"min_degree", min_deg}, {"max_degree", max_deg}};
    c.status = verdict(min_deg == q && max_deg == q);
    rep.checks.push_back(std::move(c));
  }
  // C3 bipartiteness with points and lines as the two sides
  {
    auto c = record("C3", "D(k,q) is bipartite with points and lines as its parts", true);
    const auto bc = check_bipartite(g);
    c.expected = {{"bipartite", true}, {"sides_consistent", true}};
    c.measured = {{"bipartite", bc.bipartite}, {"sides_consistent", bc.sides_consistent}};
    if (!bc.bipartite) c.measured["odd_cycle"] = bc.odd_cycle;
    c.status = verdict(bc.bipartite && bc.sides_consistent);
    rep.checks.push_back(std::move(c));
  }

  ComponentLabeling labeling;
  std::string labeling_error;
  try {
    labeling = components(g);
  } catch (const InternalError& e) {
    labeling_error = e.what();
  }
  if (!labeling_error.empty()) {
    auto c = record("C7", "the invariant vector is constant on every component", true);
    c.status = CheckStatus::Fail;
    c.note = labeling_error;
    rep.checks.push_back(std::move(c));
    return rep;
  }
  rep.components = labeling.count();
  rep.cd_order = labeling.components.front().order;
  rep.cd_size = labeling.components.front().size;

  std::vector<GirthResult> girths;
  const bool exact_girth = rep.vertices <= kExactGirthLimit || options.heavy;
  if (exact_girth) {
    GirthOptions go;
    go.threads = options.threads;
    girths = component_girths(g, labeling, go);
    GirthResult overall = girths.front();
    for (const auto& r : girths) {
      if (r.girth && (!overall.girth || *r.girth < *overall.girth)) overall = r;
      overall.probed_depth = std::max(overall.probed_depth, r.probed_depth);
    }
    rep.girth = overall;
  }
  const bool odd_k = k % 2 == 1;
  const std::string girth_skip = "exact girth on more than 100000 vertices requires --heavy";

  // C4 girth lower bound for odd k
  {
    auto c = record("C4", "for odd k, girth(D(k,q)) >= k + 5", odd_k);
    c.expected = {{"girth_at_least", k + 5}};
    if (!odd_k) {
      c.note = "k is even; no girth bound is claimed";
      c.status = CheckStatus::Skipped;
      c.asserted = false;
    } else if (!rep.girth) {
      c.note = girth_skip;
      c.status = CheckStatus::Skipped;
    } else {
      c.measured = girth_json(*rep.girth);
      c.status = verdict(rep.girth->lower_bound() >= static_cast<std::uint32_t>(k + 5));
    }
    rep.checks.push_back(std::move(c));
  }
  // C5 girth equality under the congruence condition
  {
    const bool applies = odd_k && q % static_cast<std::uint32_t>((k + 5) / 2) == 1;
    auto c = record("C5", "for odd k and q = 1 mod (k+5)/2, girth(D(k,q)) = k + 5", applies);
    c.expected = {{"girth", k + 5}, {"modulus", (k + 5) / 2}};
    if (!applies) {
      c.status = CheckStatus::Skipped;
      c.note = odd_k ? "q is not 1 mod (k+5)/2; girth reported only" : "k is even";
      if (rep.girth) c.measured = girth_json(*rep.girth);
    } else if (!rep.girth) {
      c.note = girth_skip;
      c.status = CheckStatus::Skipped;
    } else {
      c.measured = girth_json(*rep.girth);
      c.status = verdict(rep.girth->girth && *rep.girth->girth == static_cast<std::uint32_t>(k + 5));
    }
    rep.checks.push_back(std::move(c));
  }
  // C6 component count lower bound
  const std::uint64_t lower_bound = ipow(q, std::max(t - 1, 0));
  {
    auto c = record("C6", "the number of components N is at least q^(t-1)", true);
    c.expected = {{"at_least", lower_bound}};
    c.measured = {{"components", rep.components}};
    c.status = verdict(rep.components >= lower_bound);
    rep.checks.push_back(std::move(c));
  }
  // C7 invariant conservation along edges
  {
    auto c = record("C7", "adjacent vertices have equal invariant vectors", true);
    std::mt19937_64 rng(options.seed);
    const auto cons = check_conservation(g, rng);
    c.expected = {{"violations", 0}};
    c.measured = {{"edges_checked", cons.edges_checked},
                  {"violations", cons.violations},
                  {"exhaustive", cons.exhaustive}};
    c.status = verdict(cons.violations == 0);
    rep.checks.push_back(std::move(c));
  }
  // C8 witness points realize every invariant vector in distinct components
  {
    auto c = record("C8", "every c in GF(q)^(t-1) is realized by a witness point, in distinct components", true);
    if (t < 2) {
      c.status = CheckStatus::Skipped;
      c.asserted = false;
      c.note = "t < 2: the invariant vector is empty";
    } else if (lower_bound > kWitnessLimit) {
      c.status = CheckStatus::Skipped;
      c.asserted = false;
      c.note = "more than 10000 witness vectors";
    } else {
      std::uint64_t mismatches = 0;
      std::set<std::uint32_t> comps;
      std::vector<Elem> vec(static_cast<std::size_t>(t - 1), 0);
      for (std::uint64_t code = 0; code < lower_bound; ++code) {
        std::uint64_t r = code;
        for (auto& e : vec) {
          e = static_cast<Elem>(r % q);
          r /= q;
        }
        const Vertex w = witness_point(vec, ke, field);
        if (invariant_vector(w, field) != vec) ++mismatches;
        comps.insert(labeling.component_of[encode(w, q)]);
      }
      c.expected = {{"witnesses", lower_bound}, {"mismatches", 0}, {"distinct_components", lower_bound}};
      c.measured = {{"witnesses", lower_bound}, {"mismatches", mismatches}, {"distinct_components", comps.size()}};
      c.status = verdict(mismatches == 0 && comps.size() == lower_bound);
    }
    rep.checks.push_back(std::move(c));
  }
  // C9 order of CD(k,q)
  {
    auto c = record("C9", "order(CD(k,q)) * N = 2q^k and order(CD(k,q)) <= 2q^(k-t+1)", true);
    const std::uint64_t bound = 2 * ipow(q, ke - t + 1);
    c.expected = {{"order_times_N", 2 * side}, {"order_at_most", bound}};
    c.measured = {{"cd_order", rep.cd_order}, {"order_times_N", rep.cd_order * rep.components}};
    c.status = verdict(rep.cd_order * rep.components == 2 * side && rep.cd_order <= bound);
    rep.checks.push_back(std::move(c));
  }
  // C10 component uniformity
  {
    auto c = record("C10", "all components share order, size and girth", true);
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> shapes;
    for (const auto& info : labeling.components) ++shapes[{info.order, info.size}];
    std::set<std::uint32_t> girth_values;
    for (const auto& r : girths) girth_values.insert(r.girth.value_or(0));
    ordered_json shape_list = ordered_json::array();
    for (const auto& [shape, count] : shapes) {
      shape_list.push_back({{"order", shape.first}, {"size", shape.second}, {"count", count}});
    }
    c.expected = {{"distinct_shapes", 1}, {"distinct_girths", 1}};
    c.measured = {{"shapes", shape_list}};
    if (exact_girth) {
      c.measured["girths"] = girth_values;
    } else {
      c.note = "girth agreement not checked: " + girth_skip;
    }
    c.status = verdict(shapes.size() == 1 && (!exact_girth || girth_values.size() == 1));
    rep.checks.push_back(std::move(c));
  }
  // C11 density identity
  {
    auto c = record("C11", "e = vq/2 = 2^(-1-1/k) N^(1/k) v^(1+1/k) for CD(k,q)", true);
    rep.density_residual = density_identity(rep.cd_order, q, rep.components, ke);
    c.expected = {{"size", rep.cd_order * q / 2}, {"residual_below", kDensityTolerance}};
    c.measured = {{"size", rep.cd_size}, {"residual", static_cast<double>(rep.density_residual)}};
    c.status = verdict(rep.cd_size * 2 == rep.cd_order * q && rep.density_residual < kDensityTolerance);
    rep.checks.push_back(std::move(c));
  }
  // C12 large-girth constant, reported only
  {
    auto c = record("C12", "gamma = girth / log_(q-1)(v) for CD(k,q)", false);
    c.status = CheckStatus::Reported;
    if (!girths.empty() && girths.front().girth) {
      rep.gamma = gamma_metric(rep.cd_order, *girths.front().girth, q);
    }
    if (rep.gamma) {
      c.measured = {{"gamma", *rep.gamma}};
    } else {
      c.note = q == 2 ? "q = 2: logarithm base 1 is undefined" : "girth not computed";
    }
    rep.checks.push_back(std::move(c));
  }
  return rep;
}

std::vector<TableRow> table(const std::vector<int>& k_list, const std::vector<std::uint64_t>& q_list,
                            const VerifyOptions& options) {
  std::vector<TableRow> rows;
  for (int k : k_list) {
    for (std::uint64_t q_in : q_list) {
      TableRow row;
      row.k = k;
      row.q = static_cast<std::uint32_t>(q_in);
      row.t = t_of(effective_k(k));
      try {
        const Field field = Field::make(q_in, std::nullopt);
        const BipartiteGraph g = build(k, field, options.build);
        const auto labeling = components(g);
        row.order = g.vertex_count();
        row.components = labeling.count();
        row.lower_bound = ipow(row.q, std::max(row.t - 1, 0));
        row.cd_order = labeling.components.front().order;
        GirthOptions go;
        go.threads = options.threads;
        if (row.order > kExactGirthLimit && !options.heavy) {
          go.max_depth = static_cast<std::uint32_t>((effective_k(k) + 5) / 2);
        }
        // girth of the zero component
        auto extracted = extract_component(g, labeling, 0);
        row.girth = girth(extracted.graph, go);
        if (row.girth.girth) row.gamma = gamma_metric(row.cd_order, *row.girth.girth, row.q);
        row.residual = density_identity(row.cd_order, row.q, row.components, effective_k(k));
      } catch (const BudgetError& e) {
        row.skipped = e.what();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace dkq
