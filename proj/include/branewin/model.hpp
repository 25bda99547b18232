#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "branewin/poly.hpp"

namespace branewin {

enum class Space { Stack, Plus, Minus };

std::string space_name(Space s);
std::optional<Space> space_from_name(std::string_view name);

struct ValidationCheck {
  std::string axiom;
  bool ok = false;
  std::string detail;
};

struct ValidationReport {
  bool valid = false;
  std::vector<ValidationCheck> checks;
  // t with gauge_i * t == r_i (mod 2) for all i, when the parity axiom holds.
  std::optional<Rational> parity_witness;

  std::string str() const;
};

struct Decomposition {
  std::vector<std::size_t> x_indices;  // gauge > 0
  std::vector<std::size_t> y_indices;  // gauge < 0
  std::vector<std::size_t> z_indices;  // gauge = 0
  long d = 0;                          // sum of positive gauge weights
};

// The data (V, C*_G, C*_R, W): variable table plus superpotential.
class GaugedModel {
 public:
  GaugedModel(std::string name, TablePtr table, BigradedPolynomial w);

  const std::string& name() const { return name_; }
  const TablePtr& table() const { return table_; }
  const BigradedPolynomial& superpotential() const { return w_; }

  ValidationReport validate() const;
  bool is_valid() const { return validate().valid; }
  Decomposition decompose() const;

  // Nonempty x-side (resp. y-side) is required for Plus (resp. Minus).
  bool space_available(Space s) const;

  // Default truncation bound: 2d + max total degree of W.
  long default_bound() const;

  std::string to_json_string() const;
  static GaugedModel from_json_string(const std::string& text);

 private:
  std::string name_;
  TablePtr table_;
  BigradedPolynomial w_;
};

using ModelPtr = std::shared_ptr<const GaugedModel>;

}  // namespace branewin
