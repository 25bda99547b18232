#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "branewin/brane.hpp"
#include "branewin/homspace.hpp"
#include "branewin/linalg.hpp"
#include "branewin/model.hpp"

namespace branewin {

struct CohomologyTable {
  // (cohomological degree p, R-degree r) -> dimension; only nonzero entries.
  std::map<std::pair<long, long>, long> dims;
  long bound = 0;
  bool stabilized = false;

  long total() const;
  long dim(long p, long r) const;
  void add(long p, long r, long d);
  bool same_dims(const CohomologyTable& o) const { return dims == o.dims; }
  // dimensions per R-charge; the canonical comparison key (the p of a
  // homology class is a representative label, not filtration data)
  std::map<long, long> r_marginal() const;
  bool same_r_marginal(const CohomologyTable& o) const {
    return r_marginal() == o.r_marginal();
  }
  std::string str() const;
  std::string to_json_string() const;
};

// Monomial basis of the (gauge, r) piece of H^0(space) truncated at
// sum |e_i| <= bound. Exponents are nonnegative except on a side whose
// semistable eigenspace is a single variable, where that exponent ranges
// over Z (the quotient keeps Laurent sections there).
std::vector<Exponents> section_basis(const GaugedModel& m, Space space,
                                     long gauge, long r, long bound);

// Cohomology of O(k) on the weighted projective stack P V_x (side = Plus)
// or P V_y (side = Minus). Exact: both rows are finite-dimensional.
CohomologyTable proj_line_cohomology(const GaugedModel& m, Space side, long k,
                                     long rmin, long rmax);

// Cohomology of O(k) on the stack, X_+ or X_-, assembled fiberwise; the
// fiber directions are truncated at `bound`.
CohomologyTable line_cohomology(const GaugedModel& m, Space space, long k,
                                long rmin, long rmax, long bound);

// Homology of the R-graded Hom complex of truncated section spaces, per
// R-charge; entries reported at p = 0. On Plus (resp. Minus) with at least
// two semistable variables, every Hom component O(k_i(F) - k_j(E)) must
// satisfy k_i - k_j > -d (resp. < d) so that sheaf cohomology is
// concentrated in degree 0; violations raise std::domain_error naming the
// pair. Computed at bound, bound+1, bound+2; `stabilized` reports whether
// all three agree.
CohomologyTable hom_homology(const Brane& e, const Brane& f, long bound);

// Single-bound version (no stabilization scan).
CohomologyTable hom_homology_at(const Brane& e, const Brane& f, long bound);

// ---------------------------------------------------------------------
// Cech model of RGamma Hom(A, B) on a side: one chart per semistable
// variable. Total charge = R-degree of the monomial + n_i(B) - n_j(A) +
// (|chart set| - 1). The total differential is the Hom differential plus
// the signed Cech coboundary; it squares to zero even when W != 0.
class CechHomSpace {
 public:
  CechHomSpace(Brane a, Brane b, Space side, long charge, long bound);

  struct Elem {
    std::size_t i, j;  // target summand of B, source summand of A
    uint32_t mask;     // nonempty subset of the side's variables
    Exponents e;       // integer exponents on mask vars, >= 0 elsewhere
  };

  std::size_t dim() const { return basis_.size(); }
  const std::vector<Elem>& basis() const { return basis_; }
  const Brane& a() const { return a_; }
  const Brane& b() const { return b_; }
  long charge() const { return charge_; }
  long bound() const { return bound_; }
  Space side() const { return side_; }

  // Total differential into `next` (charge + 1). Monomials that leave the
  // codomain's span are dropped; pick next.bound >= bound + max entry degree
  // for an exact (no-drop) matrix.
  QMatrix differential_to(const CechHomSpace& next) const;

  // Embeds a polynomial map as the 0-cochain with the same terms on every
  // chart. Throws if the monomials exceed the bound.
  QVector embed(const BraneMap& m) const;

  long cech_degree(std::size_t idx) const;

 private:
  Brane a_, b_;
  Space side_;
  long charge_;
  long bound_;
  std::vector<std::size_t> side_vars_;
  std::vector<Elem> basis_;
  std::map<std::tuple<std::size_t, std::size_t, uint32_t, Exponents>,
           std::size_t>
      index_;
};

// A contracting homotopy of id_X in the Cech model: D(h) = id exactly.
// This is an exact certificate that X is contractible in Br(side, W) with
// the Cech global-sections model.
struct CechContraction {
  long bound = 0;
  bool verified = false;
  // (i, j, chart mask, exponents, coefficient); charts listed by variable
  // names in the description.
  std::vector<std::tuple<std::size_t, std::size_t, uint32_t, Exponents,
                         Rational>>
      terms;
  std::string to_json_string(const Brane& x) const;
};

std::optional<CechContraction> cech_contract_identity(const Brane& x,
                                                      long bound);

// Homology of the Cech-model Hom complex per total charge. Entries are
// reported at (p = Cech degree of the class pivot, r = total charge).
// Truncated; compare across bounds for stabilization.
CohomologyTable cech_hom_homology(const Brane& a, const Brane& b, long bound);

// Same, with the three-bound stabilization scan.
CohomologyTable cech_hom_homology_stabilized(const Brane& a, const Brane& b,
                                             long bound);

}  // namespace branewin
