#pragma once

#include <functional>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "branewin/brane.hpp"
#include "branewin/linalg.hpp"

namespace branewin {

// Raised when a linear solve is infeasible at the given truncation bound.
// Search incompleteness, never a wrong output.
struct BoundError : std::runtime_error {
  explicit BoundError(const std::string& what) : std::runtime_error(what) {}
};

// Truncated basis of polynomial maps source -> target of one R-charge, one
// monomial per (target summand, source summand, exponent) triple. Components
// may be restricted by a filter (used for homological-grade blocks).
class MapSpace {
 public:
  using ComponentFilter = std::function<bool(std::size_t, std::size_t)>;

  MapSpace(Brane source, Brane target, long charge, long bound,
           ComponentFilter filter = nullptr);

  const Brane& source() const { return source_; }
  const Brane& target() const { return target_; }
  long charge() const { return charge_; }
  long bound() const { return bound_; }
  std::size_t dim() const { return basis_.size(); }

  struct Elem {
    std::size_t i, j;
    Exponents e;
  };
  const std::vector<Elem>& basis() const { return basis_; }

  BraneMap from_coords(const QVector& v) const;
  // Exact coordinates; throws std::domain_error if the map leaves the span.
  QVector to_coords(const BraneMap& m) const;
  bool contains(const BraneMap& m) const;

 private:
  Brane source_;
  Brane target_;
  long charge_;
  long bound_;
  std::vector<Elem> basis_;
  std::map<std::tuple<std::size_t, std::size_t, Exponents>, std::size_t>
      index_;
};

// Matrix of a linear operator between two map spaces, computed by applying
// `op` to each basis element symbolically.
QMatrix operator_matrix(const MapSpace& domain, const MapSpace& codomain,
                        const std::function<BraneMap(const BraneMap&)>& op);

// Solves op(X) = rhs for X in `domain`; the codomain must be large enough to
// hold op of every basis element exactly (no projection).
std::optional<BraneMap> solve_operator(
    const MapSpace& domain, const MapSpace& codomain,
    const std::function<BraneMap(const BraneMap&)>& op, const BraneMap& rhs);

// Affine system: a list of (domain-variable blocks, operators, rhs) sharing
// one unknown vector. Used for joint closedness + compatibility solves.
struct LinearEquation {
  const MapSpace* codomain;
  // op receives the candidate maps for each block, in order.
  std::function<BraneMap(const std::vector<BraneMap>&)> op;
  BraneMap rhs;
};

std::optional<std::vector<BraneMap>> solve_system(
    const std::vector<const MapSpace*>& blocks,
    const std::vector<LinearEquation>& equations);

}  // namespace branewin
