#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dkq/field.hpp"

namespace dkq {

enum class Side : std::uint8_t { Point, Line };

/// Labeled coordinate u_{..}. Diag(i) is u_{i,i}, DiagPrime(i) is u'_{i,i},
/// Super(i) is u_{i,i+1}, Sub(i) is u_{i+1,i}. First is u_1 and ignores index.
struct CoordLabel {
  enum class Kind : std::uint8_t { First, Diag, DiagPrime, Super, Sub };
  Kind kind;
  int index = 0;

  static constexpr CoordLabel first() { return {Kind::First, 1}; }
  static constexpr CoordLabel diag(int i) { return {Kind::Diag, i}; }
  static constexpr CoordLabel diag_prime(int i) { return {Kind::DiagPrime, i}; }
  static constexpr CoordLabel super(int i) { return {Kind::Super, i}; }
  static constexpr CoordLabel sub(int i) { return {Kind::Sub, i}; }

  friend constexpr bool operator==(CoordLabel, CoordLabel) = default;
};

/// Storage position (1-based) of a label, or nullopt when the label has no
/// storage slot in a length-k vector (position > k, or a conventional label
/// such as u_{0,0} or u'_{1,1}).
std::optional<int> position_of(CoordLabel label, int k);

/// Inverse of position_of for position >= 1.
CoordLabel label_of(int position);

/// "first", "d_i", "dp_i", "s_i" or "b_i".
std::string label_name(CoordLabel label);

/// floor((k + 2) / 4)
constexpr int t_of(int k) { return (k + 2) / 4; }

/// D(1, q) is defined to coincide with D(2, q).
constexpr int effective_k(int k) { return k == 1 ? 2 : k; }

struct Vertex {
  Side side = Side::Point;
  std::vector<Elem> coords;

  int k() const { return static_cast<int>(coords.size()); }
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Value of a labeled coordinate including the boundary conventions:
/// u_{0,0} = -1, u'_{0,0} = 1, p_{0,1} = p_1, l_{1,0} = l_1, u'_{1,1} = u_{1,1};
/// the remaining lines/points conventions u_{0,1}, u_{1,0} are 0; negative
/// indices and positions beyond k read as 0.
Elem read_coord(const Vertex& v, CoordLabel label, const Field& field);

}  // namespace dkq
