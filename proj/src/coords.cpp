#include "dkq/coords.hpp"

namespace dkq {

std::optional<int> position_of(CoordLabel label, int k) {
  using K = CoordLabel::Kind;
  const int i = label.index;
  int pos = 0;
  switch (label.kind) {
    case K::First:
      pos = 1;
      break;
    case K::Diag:
      if (i < 1) return std::nullopt;
      pos = i == 1 ? 2 : 4 * i - 3;
      break;
    case K::DiagPrime:
      if (i < 2) return std::nullopt;
      pos = 4 * i - 2;
      break;
    case K::Super:
      if (i < 1) return std::nullopt;
      pos = i == 1 ? 3 : 4 * i - 1;
      break;
    case K::Sub:
      if (i < 1) return std::nullopt;
      pos = 4 * i;
      break;
  }
  if (pos > k) return std::nullopt;
  return pos;
}

CoordLabel label_of(int position) {
  switch (position) {
    case 1: return CoordLabel::first();
    case 2: return CoordLabel::diag(1);
    case 3: return CoordLabel::super(1);
    case 4: return CoordLabel::sub(1);
    default: break;
  }
  const int i = (position + 3) / 4;
  switch (position % 4) {
    case 1: return CoordLabel::diag(i);
    case 2: return CoordLabel::diag_prime(i);
    case 3: return CoordLabel::super(i);
    default: return CoordLabel::sub(i);
  }
}

std::string label_name(CoordLabel label) {
  using K = CoordLabel::Kind;
  const auto idx = std::to_string(label.index);
  switch (label.kind) {
    case K::First: return "first";
    case K::Diag: return "d_" + idx;
    case K::DiagPrime: return "dp_" + idx;
    case K::Super: return "s_" + idx;
    case K::Sub: return "b_" + idx;
  }
  return {};
}

Elem read_coord(const Vertex& v, CoordLabel label, const Field& field) {
  using K = CoordLabel::Kind;
  const int k = v.k();
  if (auto pos = position_of(label, k)) return v.coords[static_cast<std::size_t>(*pos - 1)];
  if (label.kind == K::First || label.index < 0) return field.zero();

  if (label.index == 0) {
    switch (label.kind) {
      case K::Diag: return field.neg(field.one());
      case K::DiagPrime: return field.one();
      case K::Super: return v.side == Side::Point && k >= 1 ? v.coords[0] : field.zero();
      case K::Sub: return v.side == Side::Line && k >= 1 ? v.coords[0] : field.zero();
      default: break;
    }
  }
  if (label.kind == K::DiagPrime && label.index == 1) return read_coord(v, CoordLabel::diag(1), field);
  return field.zero();
}

}  // namespace dkq
