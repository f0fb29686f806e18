#include "kfp/basis.hpp"

namespace kfp {

BasisMatrix basis_matrix(BasisTag tag) {
  using R = std::array<std::array<double, 4>, 4>;
  switch (tag) {
    case BasisTag::Hvv:
      return {tag, Matrix4::from_rows(R{{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}})};
    case BasisTag::Hxx:
      return {tag, Matrix4::from_rows(R{{{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}})};
    case BasisTag::J:
      return {tag, Matrix4::from_rows(R{{{0, 0, -1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, 1, 0, 0}}})};
    case BasisTag::JJ:
      return {tag, Matrix4::from_rows(R{{{0, 0, 0, 1}, {0, 0, -1, 0}, {0, -1, 0, 0}, {1, 0, 0, 0}}})};
    case BasisTag::Jvv:
      return {tag, Matrix4::from_rows(R{{{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}})};
    case BasisTag::Jxx:
      return {tag, Matrix4::from_rows(R{{{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}}})};
    case BasisTag::K:
      return {tag, Matrix4::from_rows(R{{{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}}})};
    case BasisTag::KJ:
      return {tag, Matrix4::from_rows(R{{{0, 0, 0, -1}, {0, 0, 1, 0}, {0, -1, 0, 0}, {1, 0, 0, 0}}})};
  }
  return {tag, Matrix4::zero()};
}

std::string_view basis_name(BasisTag tag) {
  switch (tag) {
    case BasisTag::Hvv: return "H_vv";
    case BasisTag::Hxx: return "H_xx";
    case BasisTag::J: return "J";
    case BasisTag::JJ: return "J_J";
    case BasisTag::Jvv: return "J_vv";
    case BasisTag::Jxx: return "J_xx";
    case BasisTag::K: return "K";
    case BasisTag::KJ: return "K_J";
  }
  return "?";
}

}  // namespace kfp
