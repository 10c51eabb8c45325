#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dkq {

/// A field element, stored as the base-p encoding of its polynomial-basis
/// coefficient vector (constant term is the least significant digit).
using Elem = std::uint32_t;

/// Coefficients of a polynomial over GF(p), constant term first.
using Poly = std::vector<std::uint32_t>;

/// GF(q) for q = p^m, represented in a polynomial basis modulo a monic
/// irreducible polynomial of degree m.
///
/// Unless overridden, the modulus is the monic irreducible polynomial whose
/// lower coefficients c_0..c_{m-1} give the smallest value of sum c_i p^i.
/// Small fields use log/antilog tables for multiplication; the results are
/// identical to plain polynomial arithmetic (see `mul_poly`).
class Field {
 public:
  /// Builds GF(q). Throws ParameterError when q is not a prime power or the
  /// override is not a monic irreducible polynomial of degree m.
  static Field make(std::uint64_t q, std::optional<Poly> modulus_override = std::nullopt);

  std::uint32_t p() const { return p_; }
  std::uint32_t m() const { return m_; }
  std::uint32_t q() const { return q_; }
  /// Monic modulus of length m+1; empty for prime fields.
  const Poly& modulus() const { return modulus_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  /// Throws std::domain_error for a == 0.
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t e) const;

  /// Reference multiplication by schoolbook product and reduction, bypassing tables.
  Elem mul_poly(Elem a, Elem b) const;

  Poly digits(Elem a) const;
  Elem from_digits(std::span<const std::uint32_t> digits) const;

  std::string describe_modulus() const;

 private:
  Field(std::uint32_t p, std::uint32_t m, Poly modulus);

  std::uint32_t p_;
  std::uint32_t m_;
  std::uint32_t q_;
  Poly modulus_;

  std::vector<Elem> neg_table_;
  std::vector<Elem> add_table_;  // q*q entries, only for small q
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp_;  // length 2(q-1) so log sums need no reduction
};

/// Returns (p, m) when q = p^m with p prime, std::nullopt otherwise.
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q);

/// Rabin irreducibility test for a monic polynomial over GF(p).
bool is_irreducible(const Poly& f, std::uint32_t p);

/// Encoding sum c_i p^i of the lower m coefficients of a monic degree-m polynomial.
std::uint64_t modulus_encoding(const Poly& f, std::uint32_t p);

}  // namespace dkq
