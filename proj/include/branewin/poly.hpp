#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "branewin/rational.hpp"

namespace branewin {

struct Variable {
  std::string name;
  long gauge = 0;
  long r = 0;

  bool operator==(const Variable&) const = default;
};

// Ordered list of variables carrying the two gradings. Immutable after
// construction; shared by polynomials via TablePtr.
class VariableTable {
 public:
  explicit VariableTable(std::vector<Variable> vars);

  std::size_t arity() const { return vars_.size(); }
  const Variable& var(std::size_t i) const { return vars_.at(i); }
  const std::vector<Variable>& vars() const { return vars_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  long gauge_sum() const;

  bool operator==(const VariableTable& other) const {
    return vars_ == other.vars_;
  }

 private:
  std::vector<Variable> vars_;
};

using TablePtr = std::shared_ptr<const VariableTable>;

bool same_table(const TablePtr& a, const TablePtr& b);

using Exponents = std::vector<int32_t>;

struct Bidegree {
  long gauge = 0;
  long r = 0;
  bool operator==(const Bidegree&) const = default;
};

long total_degree(const Exponents& e);
Bidegree monomial_bidegree(const Exponents& e, const VariableTable& table);

// Graded lexicographic order in table order: lower total degree first, then
// lexicographic with earlier variables more significant.
struct GrlexLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

// Sparse polynomial with exact rational coefficients on the variables of a
// fixed table. Zero coefficients are never stored.
class BigradedPolynomial {
 public:
  using TermMap = std::map<Exponents, Rational, GrlexLess>;

  explicit BigradedPolynomial(TablePtr table);

  static BigradedPolynomial zero(TablePtr table);
  static BigradedPolynomial constant(TablePtr table, const Rational& c);
  static BigradedPolynomial monomial(TablePtr table, Exponents e,
                                     const Rational& c);
  static BigradedPolynomial variable(TablePtr table, std::size_t index);

  const TablePtr& table() const { return table_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  long max_total_degree() const;  // 0 for the zero polynomial

  // Bidegree when bihomogeneous and nonzero; nullopt otherwise. The zero
  // polynomial is bihomogeneous of every bidegree.
  std::optional<Bidegree> bidegree() const;
  bool is_bihomogeneous(const Bidegree& want) const;

  BigradedPolynomial operator-() const;
  BigradedPolynomial operator+(const BigradedPolynomial& o) const;
  BigradedPolynomial operator-(const BigradedPolynomial& o) const;
  BigradedPolynomial operator*(const BigradedPolynomial& o) const;
  BigradedPolynomial operator*(const Rational& c) const;
  BigradedPolynomial& operator+=(const BigradedPolynomial& o);
  BigradedPolynomial& operator-=(const BigradedPolynomial& o);

  bool operator==(const BigradedPolynomial& o) const;

  void add_term(const Exponents& e, const Rational& c);
  Rational coefficient(const Exponents& e) const;

  // Exact division by a single variable; requires every term divisible.
  BigradedPolynomial divided_by_variable(std::size_t index) const;
  // Substitutes 0 for the listed variables.
  BigradedPolynomial kill_variables(const std::vector<bool>& kill) const;

  // Canonical text form, terms in decreasing grlex order.
  std::string str() const;
  // Parses the canonical syntax: rational coefficients, '*', '^', '(', ')'.
  static BigradedPolynomial parse(TablePtr table, std::string_view text);

 private:
  TablePtr table_;
  TermMap terms_;
};

// bidegree of a monomial given as exponent vector; checks arity and sign.
Bidegree bidegree_checked(const Exponents& e, const VariableTable& table);

// All monomials of total degree <= max_total_degree with bidegree exactly
// (g, r), strictly increasing in grlex order.
std::vector<Exponents> graded_basis(long g, long r, long max_total_degree,
                                    const VariableTable& table);

}  // namespace branewin
