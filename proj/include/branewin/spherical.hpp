#pragma once

#include <optional>
#include <string>
#include <vector>

#include "branewin/brane.hpp"
#include "branewin/cohom.hpp"
#include "branewin/windows.hpp"

namespace branewin {

// A splitting W = sum_i y_i f_i with f_i bihomogeneous of gauge degree
// -gauge(y_i) and R-degree 2 - r(y_i).
struct Splitting {
  ModelPtr model;
  std::vector<std::size_t> y_vars;  // table indices, model order
  std::vector<BigradedPolynomial> f;

  bool verify() const;
  std::string str() const;
};

// Greedy splitting: each monomial of W is divided by its first y-variable
// in the given preference order (default: table order).
Splitting split_w(const ModelPtr& m);
Splitting split_w_prefer(const ModelPtr& m,
                         const std::vector<std::size_t>& y_preference);

// The deformed Koszul brane S(t) on X_+ with 2^{|y|} summands.
Brane build_spherical(const Splitting& s, long t);

// Mutually inverse closed degree-0 maps between the spherical branes of two
// splittings of the same W, as a composite of elementary moves.
struct SplittingIso {
  BraneMap forward;   // S_a -> S_b
  BraneMap backward;  // S_b -> S_a
  std::size_t moves = 0;
  bool verify() const;  // closed both ways, composites equal identity
};
SplittingIso splitting_iso(const Splitting& a, const Splitting& b, long t);

// The restriction to the zero section of the twisted dual complex: kills
// every y- and z-variable in E^dual(t) and re-expresses it over the x-only
// table (with W = 0).
Brane zero_section_dual(const Brane& e, long t);

// Hom(E, S(t)) through the zero-section complex: the hypercohomology of
// zeta^* E^dual(t) on P V_x in the Cech model. Entries at (Cech degree of
// the class pivot, total R-charge).
CohomologyTable hom_to_spherical(const Brane& e, long t, long bound);

enum class SphericalVerdict { Spherical, Zero, Inconclusive };
std::string verdict_name(SphericalVerdict v);

// Exact witness that (fbar_1, ..., fbar_q) cut out nothing on P V_x:
// x_v^{N_v} = sum_j g_{vj} fbar_j for every x-variable.
struct CoveringCertificate {
  struct Entry {
    std::size_t var;
    long power;
    std::vector<BigradedPolynomial> coeffs;
  };
  std::vector<Entry> entries;
  bool verified = false;
  std::string to_json_string(const TablePtr& table) const;
};

struct ClassifyResult {
  SphericalVerdict verdict = SphericalVerdict::Inconclusive;
  CohomologyTable table;  // computed Ext(S,S) data via the dual complex
  bool exact = false;     // verdict independent of any truncation
  std::optional<CoveringCertificate> covering;
  std::optional<CechContraction> contraction;  // D(h) = id_S on X_+
  std::string str() const;
  std::string to_json_string(const Brane& s) const;
};

ClassifyResult classify_spherical(const Splitting& s, long t, long bound);

// The inverse-twist image of E: the shifted mapping cone (fiber) of the
// closed map eps_E : E -> H^dual (x) S(t) built grade by grade.
Brane build_twist_cone(const Brane& e, long t, long bound);

struct TwistCompareResult {
  Brane monodromy_brane;
  Brane cone_brane;
  HomotopyCertificate cert;  // monodromy_brane ~ cone_brane, verified
};
TwistCompareResult twist_compare(const Brane& e, long t, long bound);

}  // namespace branewin
