#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "branewin/brane.hpp"

namespace branewin {

// Sign (-1)^{#{l in J : l > i}} used by contraction and wedge entries.
// `positions` are bit positions within the mask, ordered like `vars`.
int koszul_sign(std::size_t pos, uint32_t mask);

// A subset-indexed complex built from contraction variables `vars`:
// summand J has twist  twist_base - sum_{l in J} gauge_l
// and shift            shift_base + sum_{l in J} (1 - r_l).
// The differential carries contraction entries (var_l : J -> J\{l}) and,
// when `wedge` is nonempty, wedge entries (wedge_l : J -> J+{l}), both with
// the Koszul sign above. Subsets are ordered by decreasing size, then
// increasing mask value.
struct SubsetComplex {
  Brane brane;
  std::vector<uint32_t> masks;             // per summand
  std::map<uint32_t, std::size_t> slot;    // mask -> summand index
  std::vector<std::size_t> vars;           // table indices, fixed order
};

SubsetComplex build_subset_complex(
    const ModelPtr& model, Space space, const std::vector<std::size_t>& vars,
    const std::vector<BigradedPolynomial>& wedge, long twist_base,
    long shift_base, const std::function<bool(uint32_t)>& keep);

}  // namespace branewin
