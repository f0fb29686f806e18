#pragma once

#include <string_view>

#include "kfp/core.hpp"

namespace kfp {

// Real 4x4 matrices spanning e^{-tM}, M^k and the product e^{-tM} e^{-tM*}.
enum class BasisTag { Hvv, Hxx, J, JJ, Jvv, Jxx, K, KJ };

struct BasisMatrix {
  BasisTag tag;
  Matrix4 entries;
};

BasisMatrix basis_matrix(BasisTag tag);

std::string_view basis_name(BasisTag tag);

inline constexpr BasisTag kAllBasisTags[] = {BasisTag::Hvv, BasisTag::Hxx, BasisTag::J,   BasisTag::JJ,
                                             BasisTag::Jvv, BasisTag::Jxx, BasisTag::K,   BasisTag::KJ};

}  // namespace kfp
