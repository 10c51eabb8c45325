#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dkq/field.hpp"
#include "dkq/girth.hpp"
#include "dkq/graph.hpp"

namespace dkq {

inline constexpr std::uint64_t kDefaultSeed = 0xD1C0DE;
inline constexpr double kDensityTolerance = 1e-9;
/// Above this order exact girth needs the heavy option.
inline constexpr std::uint64_t kExactGirthLimit = 100'000;
inline constexpr std::uint64_t kWitnessLimit = 10'000;

enum class CheckStatus { Pass, Fail, Skipped, Reported };

std::string to_string(CheckStatus s);

struct CheckRecord {
  std::string id;
  std::string claim;
  bool asserted = true;
  nlohmann::ordered_json expected;
  nlohmann::ordered_json measured;
  CheckStatus status = CheckStatus::Skipped;
  std::string note;
};

struct VerificationReport {
  int k_requested = 0;
  int k = 0;
  int t = 0;
  std::uint32_t q = 0;
  std::uint32_t p = 0;
  std::uint32_t m = 0;
  Poly modulus;
  std::uint64_t seed = kDefaultSeed;
  bool heavy = false;

  std::uint64_t vertices = 0;
  std::uint64_t edges = 0;
  std::uint32_t components = 0;
  std::uint64_t cd_order = 0;
  std::uint64_t cd_size = 0;
  std::optional<GirthResult> girth;
  std::optional<double> gamma;
  long double density_residual = 0;

  std::vector<CheckRecord> checks;

  /// Pass iff every asserted check that ran passed.
  bool pass() const;
  const CheckRecord* find(const std::string& id) const;
  nlohmann::ordered_json to_json() const;
};

struct VerifyOptions {
  bool heavy = false;
  std::uint64_t seed = kDefaultSeed;
  BuildOptions build;
  unsigned threads = 0;
  std::optional<Poly> modulus;
};

/// Builds D(k,q) and runs checks C1..C12 in order.
VerificationReport verify_all(int k, std::uint64_t q, const VerifyOptions& options = {});

/// |vq/2 - 2^(-1-1/k) N^(1/k) v^(1+1/k)| in long double.
long double density_identity(std::uint64_t v, std::uint32_t q, std::uint64_t n_components, int k);

struct ExponentRecord {
  int s = 0;
  int k = 0;
  int t = 0;
  int denominator = 0;  // k - t + 1
  int epsilon = 0;
  /// 1 + 2/(3s - 3 + eps) as a reduced fraction.
  std::int64_t exponent_num = 0;
  std::int64_t exponent_den = 1;
  double exponent() const { return static_cast<double>(exponent_num) / static_cast<double>(exponent_den); }
};

/// Exponent bookkeeping for cycle-free density with 2s = k + 3. Throws
/// ParameterError for s < 2.
ExponentRecord corollary_exponent(int s);

/// girth / log_{q-1}(v); nullopt when q = 2 (base-1 logarithm).
std::optional<double> gamma_metric(std::uint64_t v, std::uint32_t girth, std::uint32_t q);

struct TableRow {
  int k = 0;
  std::uint32_t q = 0;
  int t = 0;
  std::uint64_t order = 0;
  std::uint32_t components = 0;
  std::uint64_t lower_bound = 0;
  std::uint64_t cd_order = 0;
  GirthResult girth;
  std::optional<double> gamma;
  long double residual = 0;
  std::string skipped;  // non-empty when the instance was not built
};

/// One row per (k, q); exact girth up to kExactGirthLimit vertices (or with
/// heavy), otherwise a probe to depth ceil((k+4)/2).
std::vector<TableRow> table(const std::vector<int>& k_list, const std::vector<std::uint64_t>& q_list,
                            const VerifyOptions& options = {});

}  // namespace dkq
