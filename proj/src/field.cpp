#include "dkq/field.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "dkq/error.hpp"

namespace dkq {
namespace {

constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 31;
constexpr std::uint32_t kAddTableLimit = 256;
constexpr std::uint32_t kLogTableLimit = 1u << 16;

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Polynomials over GF(p) as coefficient vectors, constant term first, no
// trailing zeros (the zero polynomial is empty).
void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// f must be monic.
Poly poly_mod(Poly a, const Poly& f, std::uint32_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  while (a.size() >= f.size()) {
    const std::uint64_t c = a.back();
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t j = 0; j <= df; ++j) {
      const std::uint64_t sub = (c * f[j]) % p;
      a[shift + j] = static_cast<std::uint32_t>((a[shift + j] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = static_cast<std::uint32_t>(
          (prod[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    }
  }
  return poly_mod(std::move(prod), f, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::uint32_t p) {
  Poly result{1};
  base = poly_mod(std::move(base), f, p);
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return result;
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t result = 1, base = a % p;
  for (std::uint64_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

Poly make_monic(Poly a, std::uint32_t p) {
  trim(a);
  if (a.empty()) return a;
  const std::uint64_t li = inv_mod(a.back(), p);
  for (auto& c : a) c = static_cast<std::uint32_t>(c * li % p);
  return a;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  a = make_monic(std::move(a), p);
  b = make_monic(std::move(b), p);
  while (!b.empty()) {
    Poly r = make_monic(poly_mod(a, b, p), p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_sub(Poly a, const Poly& b, std::uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

}  // namespace

std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  const auto factors = prime_factors(q);
  if (factors.size() != 1) return std::nullopt;
  std::uint32_t m = 0;
  for (std::uint64_t r = q; r > 1; r /= factors[0]) ++m;
  return std::pair{static_cast<std::uint32_t>(factors[0]), m};
}

bool is_irreducible(const Poly& f_in, std::uint32_t p) {
  Poly f = f_in;
  trim(f);
  if (f.size() < 2 || f.back() != 1) return false;
  const std::size_t m = f.size() - 1;
  if (m == 1) return true;

  // x^(p^i) mod f for i = 0..m
  std::vector<Poly> frob(m + 1);
  frob[0] = poly_mod(Poly{0, 1}, f, p);
  for (std::size_t i = 1; i <= m; ++i) frob[i] = poly_powmod(frob[i - 1], p, f, p);

  const Poly x = poly_mod(Poly{0, 1}, f, p);
  if (frob[m] != x) return false;
  for (const auto r : prime_factors(m)) {
    const Poly g = poly_gcd(f, poly_sub(frob[m / r], x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

std::uint64_t modulus_encoding(const Poly& f, std::uint32_t p) {
  std::uint64_t enc = 0;
  for (std::size_t i = f.size() - 1; i-- > 0;) enc = enc * p + f[i];
  return enc;
}

Field Field::make(std::uint64_t q, std::optional<Poly> modulus_override) {
  if (q > kMaxOrder) throw ParameterError("q = " + std::to_string(q) + " is too large (limit 2^31)");
  const auto pm = prime_power(q);
  if (!pm) throw ParameterError("q = " + std::to_string(q) + " is not a prime power");
  const auto [p, m] = *pm;

  if (modulus_override) {
    Poly f = *modulus_override;
    if (f.size() != m + 1) {
      throw ParameterError("modulus must have " + std::to_string(m + 1) + " coefficients for q = " +
                           std::to_string(q));
    }
    for (auto c : f) {
      if (c >= p) throw ParameterError("modulus coefficient out of range 0.." + std::to_string(p - 1));
    }
    if (f.back() != 1) throw ParameterError("modulus must be monic");
    if (!is_irreducible(f, p)) throw ParameterError("modulus is reducible over GF(" + std::to_string(p) + ")");
    return Field(p, m, m == 1 ? Poly{} : std::move(f));
  }

  if (m == 1) return Field(p, 1, {});

  Poly f(m + 1, 0);
  f[m] = 1;
  const std::uint64_t count = q;  // number of candidate lower-coefficient vectors
  for (std::uint64_t enc = 0; enc < count; ++enc) {
    std::uint64_t r = enc;
    for (std::uint32_t i = 0; i < m; ++i) {
      f[i] = static_cast<std::uint32_t>(r % p);
      r /= p;
    }
    if (is_irreducible(f, p)) return Field(p, m, f);
  }
  throw InternalError("no irreducible polynomial found");
}

Field::Field(std::uint32_t p, std::uint32_t m, Poly modulus)
    : p_(p), m_(m), q_(1), modulus_(std::move(modulus)) {
  for (std::uint32_t i = 0; i < m_; ++i) q_ *= p_;

  neg_table_.resize(q_);
  for (Elem a = 0; a < q_; ++a) {
    Poly d = digits(a);
    for (auto& c : d) c = (p_ - c) % p_;
    neg_table_[a] = from_digits(d);
  }

  if (m_ > 1 && q_ <= kAddTableLimit) {
    add_table_.resize(static_cast<std::size_t>(q_) * q_);
    for (Elem a = 0; a < q_; ++a) {
      const Poly da = digits(a);
      for (Elem b = 0; b < q_; ++b) {
        Poly db = digits(b);
        for (std::uint32_t i = 0; i < m_; ++i) db[i] = (da[i] + db[i]) % p_;
        add_table_[static_cast<std::size_t>(a) * q_ + b] = from_digits(db);
      }
    }
  }

  if (q_ <= kLogTableLimit) {
    const auto factors = prime_factors(q_ - 1);
    Elem gen = 1;
    for (;; ++gen) {
      bool primitive = true;
      for (auto r : factors) {
        Elem x = 1;
        Elem base = gen;
        for (std::uint64_t e = (q_ - 1) / r; e > 0; e >>= 1) {
          if (e & 1) x = mul_poly(x, base);
          base = mul_poly(base, base);
        }
        if (x == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) break;
    }
    log_.assign(q_, 0);
    exp_.assign(2 * static_cast<std::size_t>(q_ - 1), 0);
    Elem x = 1;
    for (std::uint32_t i = 0; i < q_ - 1; ++i) {
      exp_[i] = x;
      exp_[i + q_ - 1] = x;
      log_[x] = i;
      x = mul_poly(x, gen);
    }
  }
}

Elem Field::add(Elem a, Elem b) const {
  if (m_ == 1) {
    const std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Elem>(s >= p_ ? s - p_ : s);
  }
  if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
  Elem out = 0, scale = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    out += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return out;
}

Elem Field::neg(Elem a) const { return neg_table_[a]; }

Elem Field::sub(Elem a, Elem b) const { return add(a, neg_table_[b]); }

Elem Field::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  if (!log_.empty()) return exp_[log_[a] + log_[b]];
  return mul_poly(a, b);
}

Elem Field::mul_poly(Elem a, Elem b) const {
  if (m_ == 1) return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
  const Poly da = digits(a), db = digits(b);
  Poly prod(2 * m_ - 1, 0);
  for (std::uint32_t i = 0; i < m_; ++i) {
    for (std::uint32_t j = 0; j < m_; ++j) {
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(da[i]) * db[j]) % p_);
    }
  }
  for (std::size_t d = prod.size(); d-- > m_;) {
    const std::uint64_t c = prod[d];
    if (c == 0) continue;
    for (std::uint32_t j = 0; j <= m_; ++j) {
      const std::size_t at = d - m_ + j;
      prod[at] = static_cast<std::uint32_t>((prod[at] + p_ - c * modulus_[j] % p_) % p_);
    }
  }
  prod.resize(m_);
  return from_digits(prod);
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw std::domain_error("inverse of zero in GF(" + std::to_string(q_) + ")");
  if (!log_.empty()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  return pow(a, q_ - 2);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  Elem result = 1;
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

Poly Field::digits(Elem a) const {
  Poly d(m_, 0);
  for (std::uint32_t i = 0; i < m_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

Elem Field::from_digits(std::span<const std::uint32_t> d) const {
  Elem out = 0;
  for (std::size_t i = d.size(); i-- > 0;) out = out * p_ + d[i];
  return out;
}

std::string Field::describe_modulus() const {
  if (modulus_.empty()) return "none";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = modulus_.size(); i-- > 0;) {
    const auto c = modulus_[i];
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || c != 1) os << c;
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

}  // namespace dkq
