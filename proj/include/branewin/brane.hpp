#pragma once

#include <string>
#include <vector>

#include "branewin/model.hpp"
#include "branewin/poly.hpp"

namespace branewin {

// Line-bundle summand O(k)[n]: gauge twist k, R-shift n. With our
// conventions O(k)[n] sits in cohomological position -n.
struct Summand {
  long k = 0;
  long n = 0;
  bool operator==(const Summand&) const = default;
};

// A map of R-charge s from summand (k_j, n_j) to summand (k_i, n_i) is a
// polynomial of gauge degree k_i - k_j and R-degree s + n_i - n_j. This is
// fixed once here; everything else inherits it.
Bidegree entry_bidegree(const Summand& target, const Summand& source,
                        long charge);

struct BraneCheckReport {
  bool ok = true;
  std::vector<std::string> errors;
  std::string str() const;
};

// A B-brane: summands plus a matrix d with d[i][j] : summand j -> summand i,
// d of R-charge 1 and d*d = W * Id. The polynomial data lives on V; Plus and
// Minus only re-tag where computations take place.
class Brane {
 public:
  Brane(ModelPtr model, Space space, std::vector<Summand> summands,
        std::vector<std::vector<BigradedPolynomial>> d);

  static Brane zero(ModelPtr model, Space space);
  // Single summand O(k)[n] with zero endomorphism (a brane iff W = 0).
  static Brane line(ModelPtr model, Space space, long k, long n);

  const ModelPtr& model() const { return model_; }
  Space space() const { return space_; }
  std::size_t size() const { return summands_.size(); }
  const std::vector<Summand>& summands() const { return summands_; }
  const Summand& summand(std::size_t i) const { return summands_.at(i); }
  const BigradedPolynomial& entry(std::size_t i, std::size_t j) const {
    return d_.at(i).at(j);
  }
  const std::vector<std::vector<BigradedPolynomial>>& matrix() const {
    return d_;
  }

  Brane with_space(Space s) const;

  bool operator==(const Brane& o) const;

  std::string to_json_string() const;
  static Brane from_json_string(ModelPtr model, const std::string& text);
  std::string summand_str() const;

 private:
  ModelPtr model_;
  Space space_;
  std::vector<Summand> summands_;
  std::vector<std::vector<BigradedPolynomial>> d_;
};

// Verifies grading compatibility and d*d = W*Id exactly.
BraneCheckReport check_brane(const Brane& b);

// Applies O(k)[n]: every summand (k_i, n_i) -> (k_i + k, n_i + n), matrix
// unchanged.
Brane twist_shift(const Brane& b, long k, long n);

Brane direct_sum(const Brane& a, const Brane& b);

// A matrix of polynomials representing a map of pure R-charge between two
// branes over the same model.
class BraneMap {
 public:
  BraneMap(Brane source, Brane target, long charge);

  static BraneMap zero(const Brane& source, const Brane& target, long charge);
  static BraneMap identity(const Brane& b);

  const Brane& source() const { return source_; }
  const Brane& target() const { return target_; }
  long charge() const { return charge_; }

  const BigradedPolynomial& entry(std::size_t i, std::size_t j) const {
    return m_.at(i).at(j);
  }
  // Enforces the entry bidegree; throws on violation.
  void set_entry(std::size_t i, std::size_t j, BigradedPolynomial p);
  void add_to_entry(std::size_t i, std::size_t j, const BigradedPolynomial& p);

  bool is_zero() const;
  BraneMap operator+(const BraneMap& o) const;
  BraneMap operator-(const BraneMap& o) const;
  BraneMap operator*(const Rational& c) const;
  BraneMap operator-() const;

  // d(phi) = d_target . phi - (-1)^{charge} phi . d_source, of charge + 1.
  BraneMap differential() const;
  bool is_closed() const { return differential().is_zero(); }

  std::string to_json() const;

  bool operator==(const BraneMap& o) const;

 private:
  Brane source_;
  Brane target_;
  long charge_;
  std::vector<std::vector<BigradedPolynomial>> m_;
};

// g . f (apply f first); middle branes must agree as data.
BraneMap compose(const BraneMap& g, const BraneMap& f);

// Hom(E, F) = E^dual (x) F with the differential
// d(phi) = d_F . phi - (-1)^{|phi|} phi . d_E. A thin wrapper fixing the
// component bidegrees; the differential squares to zero identically (the
// two copies of W cancel), which verify_square_zero checks on every
// elementary monomial map up to the bound.
class HomComplex {
 public:
  HomComplex(Brane source, Brane target);

  const Brane& source() const { return source_; }
  const Brane& target() const { return target_; }

  // bidegree of the (i, j) component of a charge-s element
  Bidegree component_bidegree(std::size_t i, std::size_t j, long charge) const;
  BraneMap apply_differential(const BraneMap& phi) const;
  bool verify_square_zero(long bound) const;

 private:
  Brane source_;
  Brane target_;
};

// Mapping cone of a closed degree-0 map: summands E[1] then F, with
// differential [[-d_E, 0], [phi, d_F]]. Throws unless phi is closed of
// charge 0.
Brane cone(const BraneMap& phi);

// Closed maps F: a->b, G: b->a with homotopies witnessing G.F ~ id_a and
// F.G ~ id_b. All identities are exact polynomial matrix equations.
struct HomotopyCertificate {
  Brane a, b;
  BraneMap f;      // a -> b, charge 0, closed
  BraneMap g;      // b -> a, charge 0, closed
  BraneMap h_a;    // a -> a, charge -1: d(h_a) = g.f - id_a
  BraneMap h_b;    // b -> b, charge -1: d(h_b) = f.g - id_b

  static HomotopyCertificate identity(const Brane& x);
  bool verify() const;
  std::string to_json_string() const;
};

HomotopyCertificate compose_certificates(const HomotopyCertificate& ab,
                                         const HomotopyCertificate& bc);
HomotopyCertificate invert_certificate(const HomotopyCertificate& c);

// Gaussian elimination of invertible constant differential entries. Returns
// the reduced brane and a verified certificate reduced ~ input.
struct ReductionResult {
  Brane reduced;
  HomotopyCertificate cert;  // a = input, b = reduced
};
ReductionResult cancel_unit_pairs(const Brane& b);

}  // namespace branewin
