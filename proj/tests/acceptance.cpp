// Acceptance suite. One line per criterion; exit status is nonzero if any fails.
// Pass --heavy to include the D(5,11) girth run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dkq/components.hpp"
#include "dkq/coords.hpp"
#include "dkq/field.hpp"
#include "dkq/girth.hpp"
#include "dkq/graph.hpp"
#include "dkq/verify.hpp"
#include "oracles.hpp"

namespace {

using dkq::Field;

// limits, in seconds
constexpr double kLimitGrid = 60;
constexpr double kLimitGirthBounds = 120;
constexpr double kLimitGirthEquality = 30;
constexpr double kLimitGirthHeavy = 1800;
constexpr double kLimitComponents = 60;
constexpr double kLimitConservation = 60;
constexpr double kLimitWitness = 60;
constexpr double kLimitCd = 120;
constexpr double kLimitDensity = 60;
constexpr double kLimitCorollary = 1;
constexpr double kLimitOracle = 60;

constexpr long double kDensityTolerance = 1e-9L;
constexpr std::uint64_t kOracleVertexLimit = 2000;

struct Instance {
  int k;
  std::uint32_t q;
};

const std::vector<Instance> kGrid = {{2, 2}, {2, 3}, {3, 3}, {3, 4}, {3, 5}, {3, 9}, {4, 3},
                                     {5, 3}, {6, 2}, {6, 3}, {7, 2}, {7, 3}, {10, 2}};
const std::vector<Instance> kComponentInstances = {{6, 2}, {6, 3}, {7, 3}, {10, 2}};

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

int t_for(int k) { return (k + 2) / 4; }

std::string name(const Instance& in) {
  return "D(" + std::to_string(in.k) + "," + std::to_string(in.q) + ")";
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& what) {
    if (!pass) detail << "; ";
    pass = false;
    detail << what;
  }
};

struct Criterion {
  int id;
  std::string title;
  double limit;
  std::function<void(Outcome&)> body;
};

// criterion 1
void grid(Outcome& o) {
  for (const auto& in : kGrid) {
    const auto g = dkq::build(in.k, Field::make(in.q));
    const std::uint64_t side = ipow(in.q, in.k);
    if (g.vertex_count() != 2 * side) o.fail(name(in) + " order " + std::to_string(g.vertex_count()));
    if (g.edge_count() != side * in.q) o.fail(name(in) + " size " + std::to_string(g.edge_count()));
    for (dkq::VertexId v = 0; v < g.vertex_count(); ++v) {
      if (g.degree(v) != in.q) {
        o.fail(name(in) + " vertex " + std::to_string(v) + " has degree " + std::to_string(g.degree(v)));
        break;
      }
    }
    const auto bip = dkq::check_bipartite(g);
    if (!bip.bipartite || !bip.sides_consistent) o.fail(name(in) + " not bipartite along point/line sides");
  }
  if (o.pass) o.detail << kGrid.size() << " instances";
}

// criterion 2
void girth_bounds(Outcome& o) {
  const std::vector<std::pair<Instance, std::uint32_t>> cases = {
      {{3, 3}, 8}, {{3, 4}, 8}, {{3, 5}, 8}, {{3, 9}, 8}, {{5, 3}, 10}, {{7, 2}, 12}, {{7, 3}, 12}};
  for (const auto& [in, bound] : cases) {
    const auto r = dkq::girth(dkq::build(in.k, Field::make(in.q)));
    if (r.mode != dkq::GirthMode::Exact) o.fail(name(in) + " girth not exact");
    const auto measured = r.lower_bound();
    if (measured < bound) o.fail(name(in) + " girth " + std::to_string(measured));
    if (o.pass) o.detail << name(in) << "=" << (r.girth ? std::to_string(*r.girth) : "inf") << " ";
  }
}

void check_exact_girth(Outcome& o, const Instance& in, std::uint32_t expected) {
  const auto g = dkq::build(in.k, Field::make(in.q));
  dkq::GirthOptions opts;
  opts.certificate = true;
  const auto r = dkq::girth(g, opts);
  if (r.mode != dkq::GirthMode::Exact || r.girth != expected) {
    o.fail(name(in) + " girth " + (r.girth ? std::to_string(*r.girth) : "none"));
    return;
  }
  if (r.certificate.size() != expected || !dkq::validate_cycle(g, r.certificate)) {
    o.fail(name(in) + " certificate invalid");
    return;
  }
  o.detail << name(in) << "=" << *r.girth << " ";
}

// criterion 3
void girth_equality(Outcome& o) {
  check_exact_girth(o, {3, 5}, 8);
  check_exact_girth(o, {3, 9}, 8);
}

void girth_heavy(Outcome& o) { check_exact_girth(o, {5, 11}, 10); }

// criterion 4
void component_bounds(Outcome& o) {
  for (const auto& in : kComponentInstances) {
    const auto g = dkq::build(in.k, Field::make(in.q));
    const auto n = dkq::components(g).count();
    const auto bound = ipow(in.q, t_for(in.k) - 1);
    if (n < bound) o.fail(name(in) + " N=" + std::to_string(n) + " < " + std::to_string(bound));
    o.detail << name(in) << " N=" << n << ">=" << bound << " ";
  }
}

// criterion 5
void conservation(Outcome& o) {
  std::uint64_t edges = 0;
  std::uint64_t violations = 0;
  for (const auto& in : kComponentInstances) {
    const auto f = Field::make(in.q);
    const auto g = dkq::build(in.k, f);
    const int t = t_for(in.k);
    for (const auto& [a, b] : g.edges()) {
      ++edges;
      const auto u = g.vertex(a);
      const auto v = g.vertex(b);
      const auto au = dkq::invariant_vector(u, f);
      const auto av = dkq::invariant_vector(v, f);
      bool ok = au == av && static_cast<int>(au.size()) == t - 1;
      for (int r = 2; ok && r <= t; ++r) {
        ok = oracle::invariant_a(u, r, f) == au[r - 2] && oracle::invariant_a(v, r, f) == av[r - 2];
      }
      if (!ok) ++violations;
    }
  }
  if (violations != 0) o.fail(std::to_string(violations) + " violations");
  o.detail << (o.pass ? "" : "; ") << edges << " edges checked exhaustively";
}

// criterion 6
void witnesses(Outcome& o) {
  std::uint64_t total = 0;
  for (const auto& in : kComponentInstances) {
    const auto f = Field::make(in.q);
    const auto g = dkq::build(in.k, f);
    const auto labeling = dkq::components(g);
    const int len = t_for(in.k) - 1;
    const std::uint64_t count = ipow(in.q, len);
    std::set<std::uint32_t> seen;
    std::vector<dkq::Elem> c(static_cast<std::size_t>(len));
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::uint64_t rest = idx;
      for (auto& x : c) {
        x = static_cast<dkq::Elem>(rest % in.q);
        rest /= in.q;
      }
      const auto w = dkq::witness_point(c, in.k, f);
      if (dkq::invariant_vector(w, f) != c) o.fail(name(in) + " witness " + std::to_string(idx) + " has wrong invariant");
      seen.insert(labeling.component_of[dkq::encode(w, in.q)]);
      ++total;
    }
    if (seen.size() != count) o.fail(name(in) + " witnesses share components");
  }
  o.detail << (o.pass ? "" : "; ") << total << " witness vectors";
}

// criterion 7
void cd_structure(Outcome& o) {
  for (const auto& in : kGrid) {
    const auto g = dkq::build(in.k, Field::make(in.q));
    const auto labeling = dkq::components(g);
    const auto n = labeling.count();
    const auto order = labeling.components.front().order;
    for (const auto& c : labeling.components) {
      if (c.order != order) o.fail(name(in) + " components differ in order");
    }
    if (order * n != 2 * ipow(in.q, in.k)) o.fail(name(in) + " order*N != 2q^k");
    const int t = t_for(in.k);
    if (order > 2 * ipow(in.q, in.k - t + 1)) o.fail(name(in) + " order above 2q^(k-t+1)");
  }
  const Instance in{7, 3};
  const auto g = dkq::build(in.k, Field::make(in.q));
  const auto labeling = dkq::components(g);
  const auto girths = dkq::component_girths(g, labeling);
  const auto& first = labeling.components.front();
  for (std::size_t i = 0; i < labeling.components.size(); ++i) {
    const auto& c = labeling.components[i];
    if (c.order != first.order || c.size != first.size || !(girths[i] == girths.front())) {
      o.fail("D(7,3) component " + std::to_string(i) + " differs");
    }
  }
  const auto cd_girth = girths.front().lower_bound();
  if (girths.front().mode != dkq::GirthMode::Exact || cd_girth < 12) {
    o.fail("girth(CD(7,3)) = " + std::to_string(cd_girth));
  }
  o.detail << (o.pass ? "" : "; ") << "CD(7,3): " << labeling.count() << " components of order " << first.order
           << ", size " << first.size << ", girth " << cd_girth;
}

// criterion 8
void density(Outcome& o) {
  long double worst = 0;
  for (const auto& in : kGrid) {
    const auto g = dkq::build(in.k, Field::make(in.q));
    const auto labeling = dkq::components(g);
    const auto& cd = labeling.components.front();
    const long double v = static_cast<long double>(cd.order);
    const long double k = in.k;
    const long double e = static_cast<long double>(cd.size);
    const long double rhs = std::pow(2.0L, -1.0L - 1.0L / k) *
                            std::pow(static_cast<long double>(labeling.count()), 1.0L / k) * std::pow(v, 1.0L + 1.0L / k);
    const long double local = std::fabs(e - rhs);
    const long double lib = dkq::density_identity(cd.order, in.q, labeling.count(), in.k);
    worst = std::max({worst, local, lib});
    if (2 * cd.size != cd.order * in.q) o.fail(name(in) + " e != vq/2");
    if (local >= kDensityTolerance || lib >= kDensityTolerance) o.fail(name(in) + " residual too large");
    const auto report = dkq::verify_all(in.k, in.q);
    if (!report.pass()) o.fail(name(in) + " verification report fails");
  }
  o.detail << (o.pass ? "" : "; ") << "max residual " << std::scientific << std::setprecision(2)
           << static_cast<double>(worst) << ", verify pass on " << kGrid.size() << " instances";
}

// criterion 9
void corollary(Outcome& o) {
  for (int s = 2; s <= 50; ++s) {
    const auto r = dkq::corollary_exponent(s);
    const int k = 2 * s - 3;
    const int d = k - t_for(k) + 1;
    const bool odd = s % 2 == 1;
    const bool ok = r.k == k && r.t == t_for(k) && r.denominator == d && r.epsilon == (odd ? 0 : 1) &&
                    2 * d == (odd ? 3 * s - 3 : 3 * s - 2) && r.exponent_num * d == r.exponent_den * (d + 1);
    if (!ok) o.fail("s=" + std::to_string(s));
  }
  const auto s3 = dkq::corollary_exponent(3);
  const auto s2 = dkq::corollary_exponent(2);
  if (s3.exponent_num != 4 || s3.exponent_den != 3) o.fail("s=3 exponent");
  if (s2.exponent_num != 3 || s2.exponent_den != 2) o.fail("s=2 exponent");
  if (o.pass) o.detail << "s=2..50; s=2 -> 3/2, s=3 -> 4/3";
}

// criterion 10
void oracle_equivalence(Outcome& o) {
  std::vector<Instance> instances;
  for (const auto& in : kGrid) {
    if (2 * ipow(in.q, in.k) <= kOracleVertexLimit) instances.push_back(in);
  }
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    for (int k = 1; 2 * ipow(q, k) <= kOracleVertexLimit; ++k) {
      bool dup = false;
      for (const auto& in : instances) dup = dup || (in.k == k && in.q == q);
      if (!dup) instances.push_back({k, q});
    }
  }
  int discrepancies = 0;
  for (const auto& in : instances) {
    const auto f = Field::make(in.q);
    const auto g = dkq::build(in.k, f);
    const auto edges = g.edges();
    const std::set<dkq::Edge> built(edges.begin(), edges.end());
    // D(1,q) is defined to be D(2,q)
    if (built != oracle::brute_force_edges(std::max(in.k, 2), f)) {
      ++discrepancies;
      o.fail(name(in) + " edge set");
    }
    const auto r = dkq::girth(g);
    const std::uint32_t ours = r.girth.value_or(0);
    if (r.mode != dkq::GirthMode::Exact || ours != oracle::girth_by_edge_removal(g)) {
      ++discrepancies;
      o.fail(name(in) + " girth");
    }
  }
  o.detail << (o.pass ? "" : "; ") << instances.size() << " instances, " << discrepancies << " discrepancies";
}

}  // namespace

int main(int argc, char** argv) {
  bool heavy = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--heavy") == 0) {
      heavy = true;
    } else {
      std::cerr << "usage: " << argv[0] << " [--heavy]\n";
      return 2;
    }
  }

  const std::vector<Criterion> criteria = {
      {1, "order, size, regularity, bipartite on the grid", kLimitGrid, grid},
      {2, "girth lower bounds for odd k", kLimitGirthBounds, girth_bounds},
      {3, "girth equality under congruence", kLimitGirthEquality, girth_equality},
      {4, "component count lower bounds", kLimitComponents, component_bounds},
      {5, "invariant conserved over every edge", kLimitConservation, conservation},
      {6, "witness points realize every invariant", kLimitWitness, witnesses},
      {7, "component structure", kLimitCd, cd_structure},
      {8, "density identity", kLimitDensity, density},
      {9, "corollary arithmetic", kLimitCorollary, corollary},
      {10, "solver and girth agree with brute force", kLimitOracle, oracle_equivalence},
  };

  int failures = 0;
  auto run = [&](const std::string& label, const std::string& title, double limit, const auto& body) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      body(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= limit) o.fail("took longer than the limit");
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << std::setw(3) << std::left << label << title << ": "
              << o.detail.str() << " [" << std::fixed << std::setprecision(2) << secs << " s, limit " << std::setprecision(0)
              << limit << " s]\n"
              << std::defaultfloat << std::flush;
  };

  for (const auto& c : criteria) {
    run(std::to_string(c.id), c.title, c.limit, c.body);
    if (c.id == 3) {
      if (heavy) {
        run("3h", "girth of D(5,11)", kLimitGirthHeavy, girth_heavy);
      } else {
        std::cout << "SKIP  3h girth of D(5,11): pass --heavy to run\n";
      }
    }
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
