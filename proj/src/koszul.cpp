#include "branewin/koszul.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace branewin {

int koszul_sign(std::size_t pos, uint32_t mask) {
  uint32_t above = mask >> (pos + 1);
  return (std::popcount(above) % 2 == 0) ? 1 : -1;
}

SubsetComplex build_subset_complex(
    const ModelPtr& model, Space space, const std::vector<std::size_t>& vars,
    const std::vector<BigradedPolynomial>& wedge, long twist_base,
    long shift_base, const std::function<bool(uint32_t)>& keep) {
  if (vars.size() > 20)
    throw std::invalid_argument("subset complex: too many variables");
  if (!wedge.empty() && wedge.size() != vars.size())
    throw std::invalid_argument("subset complex: wedge arity mismatch");
  auto table = model->table();

  const uint32_t full = vars.empty() ? 0u : (1u << vars.size()) - 1u;
  std::vector<uint32_t> masks;
  for (uint32_t m = 0; m <= full; ++m)
    if (!keep || keep(m)) masks.push_back(m);
  std::sort(masks.begin(), masks.end(), [](uint32_t a, uint32_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa > pb;
    return a < b;
  });

  std::map<uint32_t, std::size_t> slot;
  std::vector<Summand> summands;
  for (uint32_t m : masks) {
    long k = twist_base, n = shift_base;
    for (std::size_t p = 0; p < vars.size(); ++p)
      if (m & (1u << p)) {
        k -= table->var(vars[p]).gauge;
        n += 1 - table->var(vars[p]).r;
      }
    slot[m] = summands.size();
    summands.push_back({k, n});
  }

  const std::size_t nsum = summands.size();
  std::vector<std::vector<BigradedPolynomial>> d(
      nsum,
      std::vector<BigradedPolynomial>(nsum, BigradedPolynomial::zero(table)));
  for (std::size_t s = 0; s < nsum; ++s) {
    uint32_t m = masks[s];
    for (std::size_t p = 0; p < vars.size(); ++p) {
      if (m & (1u << p)) {
        // contraction J -> J \ {l}
        uint32_t m2 = m & ~(1u << p);
        auto it = slot.find(m2);
        if (it == slot.end()) continue;
        auto v = BigradedPolynomial::variable(table, vars[p]) *
                 Rational(koszul_sign(p, m));
        d[it->second][s] += v;
      } else if (!wedge.empty() && !wedge[p].is_zero()) {
        // wedge J -> J + {l}
        uint32_t m2 = m | (1u << p);
        auto it = slot.find(m2);
        if (it == slot.end()) continue;
        d[it->second][s] += wedge[p] * Rational(koszul_sign(p, m));
      }
    }
  }
  return SubsetComplex{Brane(model, space, std::move(summands), std::move(d)),
                       std::move(masks), std::move(slot), vars};
}

}  // namespace branewin
