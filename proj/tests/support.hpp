#pragma once

#include <memory>

#include "klq/coxeter.hpp"
#include "klq/hecke.hpp"

namespace klq::testing {

inline std::shared_ptr<const GroupTable> group(CartanType t, int rank, Twist tw = Twist::none) {
  return GroupTable::build(GroupDatum{t, rank, tw});
}

inline std::shared_ptr<const GroupTable> sym(int n, Twist tw = Twist::none) {
  return group(CartanType::A, n - 1, tw);
}

inline const LaurentPoly v = LaurentPoly::v();
inline const LaurentPoly vi = LaurentPoly::v_inv();

}  // namespace klq::testing
