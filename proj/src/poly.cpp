#include "branewin/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace branewin {

VariableTable::VariableTable(std::vector<Variable> vars)
    : vars_(std::move(vars)) {
  if (vars_.empty())
    throw std::invalid_argument("variable table must be nonempty");
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].name.empty())
      throw std::invalid_argument("variable names must be nonempty");
    for (std::size_t j = i + 1; j < vars_.size(); ++j)
      if (vars_[i].name == vars_[j].name)
        throw std::invalid_argument("duplicate variable name: " +
                                    vars_[i].name);
  }
}

std::optional<std::size_t> VariableTable::index_of(
    std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name == name) return i;
  return std::nullopt;
}

long VariableTable::gauge_sum() const {
  long s = 0;
  for (const auto& v : vars_) s += v.gauge;
  return s;
}

bool same_table(const TablePtr& a, const TablePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

long total_degree(const Exponents& e) {
  long s = 0;
  for (auto x : e) s += x;
  return s;
}

Bidegree monomial_bidegree(const Exponents& e, const VariableTable& table) {
  Bidegree d;
  for (std::size_t i = 0; i < e.size(); ++i) {
    d.gauge += static_cast<long>(e[i]) * table.var(i).gauge;
    d.r += static_cast<long>(e[i]) * table.var(i).r;
  }
  return d;
}

Bidegree bidegree_checked(const Exponents& e, const VariableTable& table) {
  if (e.size() != table.arity())
    throw std::invalid_argument("exponent vector arity mismatch");
  for (auto x : e)
    if (x < 0) throw std::invalid_argument("negative exponent");
  return monomial_bidegree(e, table);
}

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
  long da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return a.size() < b.size();
}

BigradedPolynomial::BigradedPolynomial(TablePtr table)
    : table_(std::move(table)) {
  if (!table_) throw std::invalid_argument("polynomial needs a table");
}

BigradedPolynomial BigradedPolynomial::zero(TablePtr table) {
  return BigradedPolynomial(std::move(table));
}

BigradedPolynomial BigradedPolynomial::constant(TablePtr table,
                                                const Rational& c) {
  BigradedPolynomial p(table);
  p.add_term(Exponents(table->arity(), 0), c);
  return p;
}

BigradedPolynomial BigradedPolynomial::monomial(TablePtr table, Exponents e,
                                                const Rational& c) {
  BigradedPolynomial p(table);
  bidegree_checked(e, *table);
  p.add_term(e, c);
  return p;
}

BigradedPolynomial BigradedPolynomial::variable(TablePtr table,
                                                std::size_t index) {
  Exponents e(table->arity(), 0);
  e.at(index) = 1;
  return monomial(std::move(table), std::move(e), 1);
}

long BigradedPolynomial::max_total_degree() const {
  long m = 0;
  for (const auto& [e, c] : terms_) m = std::max(m, total_degree(e));
  return m;
}

std::optional<Bidegree> BigradedPolynomial::bidegree() const {
  if (terms_.empty()) return std::nullopt;
  std::optional<Bidegree> d;
  for (const auto& [e, c] : terms_) {
    Bidegree t = monomial_bidegree(e, *table_);
    if (!d)
      d = t;
    else if (!(*d == t))
      return std::nullopt;
  }
  return d;
}

bool BigradedPolynomial::is_bihomogeneous(const Bidegree& want) const {
  if (terms_.empty()) return true;
  auto d = bidegree();
  return d && *d == want;
}

BigradedPolynomial BigradedPolynomial::operator-() const {
  BigradedPolynomial p(table_);
  for (const auto& [e, c] : terms_) p.terms_.emplace(e, -c);
  return p;
}

BigradedPolynomial& BigradedPolynomial::operator+=(
    const BigradedPolynomial& o) {
  if (!same_table(table_, o.table_))
    throw std::invalid_argument("polynomial table mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

BigradedPolynomial& BigradedPolynomial::operator-=(
    const BigradedPolynomial& o) {
  if (!same_table(table_, o.table_))
    throw std::invalid_argument("polynomial table mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

BigradedPolynomial BigradedPolynomial::operator+(
    const BigradedPolynomial& o) const {
  BigradedPolynomial p = *this;
  p += o;
  return p;
}

BigradedPolynomial BigradedPolynomial::operator-(
    const BigradedPolynomial& o) const {
  BigradedPolynomial p = *this;
  p -= o;
  return p;
}

BigradedPolynomial BigradedPolynomial::operator*(
    const BigradedPolynomial& o) const {
  if (!same_table(table_, o.table_))
    throw std::invalid_argument("polynomial table mismatch");
  BigradedPolynomial p(table_);
  Exponents sum(table_->arity(), 0);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = ea[i] + eb[i];
      p.add_term(sum, ca * cb);
    }
  }
  return p;
}

BigradedPolynomial BigradedPolynomial::operator*(const Rational& c) const {
  if (c == 0) return zero(table_);
  BigradedPolynomial p(table_);
  for (const auto& [e, k] : terms_) p.terms_.emplace(e, k * c);
  return p;
}

bool BigradedPolynomial::operator==(const BigradedPolynomial& o) const {
  return same_table(table_, o.table_) && terms_ == o.terms_;
}

void BigradedPolynomial::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  if (e.size() != table_->arity())
    throw std::invalid_argument("exponent vector arity mismatch");
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational BigradedPolynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

BigradedPolynomial BigradedPolynomial::divided_by_variable(
    std::size_t index) const {
  BigradedPolynomial p(table_);
  for (const auto& [e, c] : terms_) {
    if (e.at(index) < 1)
      throw std::domain_error("term not divisible by " +
                              table_->var(index).name);
    Exponents q = e;
    q[index] -= 1;
    p.add_term(q, c);
  }
  return p;
}

BigradedPolynomial BigradedPolynomial::kill_variables(
    const std::vector<bool>& kill) const {
  if (kill.size() != table_->arity())
    throw std::invalid_argument("kill mask arity mismatch");
  BigradedPolynomial p(table_);
  for (const auto& [e, c] : terms_) {
    bool dies = false;
    for (std::size_t i = 0; i < kill.size(); ++i)
      if (kill[i] && e[i] > 0) {
        dies = true;
        break;
      }
    if (!dies) p.add_term(e, c);
  }
  return p;
}

std::string BigradedPolynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational a = c;
    if (first) {
      if (a < 0) {
        out << "-";
        a = -a;
      }
    } else {
      out << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    bool has_vars = total_degree(e) > 0;
    if (!has_vars) {
      out << rational_str(a);
      continue;
    }
    bool printed = false;
    if (a != 1) {
      out << rational_str(a);
      printed = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (printed) out << "*";
      out << table_->var(i).name;
      if (e[i] > 1) out << "^" << e[i];
      printed = true;
    }
  }
  return out.str();
}

namespace {

// Recursive-descent parser for the canonical polynomial syntax.
class PolyParser {
 public:
  PolyParser(TablePtr table, std::string_view text)
      : table_(std::move(table)), text_(text) {}

  BigradedPolynomial parse() {
    BigradedPolynomial p = parse_expr();
    skip_ws();
    if (pos_ != text_.size())
      throw std::invalid_argument("trailing input in polynomial: '" +
                                  std::string(text_.substr(pos_)) + "'");
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  BigradedPolynomial parse_expr() {
    BigradedPolynomial acc = BigradedPolynomial::zero(table_);
    bool neg = eat('-');
    acc += parse_term() * Rational(neg ? -1 : 1);
    for (;;) {
      if (eat('+'))
        acc += parse_term();
      else if (eat('-'))
        acc -= parse_term();
      else
        break;
    }
    return acc;
  }

  BigradedPolynomial parse_term() {
    BigradedPolynomial acc = parse_factor();
    while (eat('*')) acc = acc * parse_factor();
    return acc;
  }

  BigradedPolynomial parse_factor() {
    BigradedPolynomial base = parse_primary();
    if (eat('^')) {
      long n = parse_integer();
      if (n < 0) throw std::invalid_argument("negative exponent in input");
      BigradedPolynomial acc = BigradedPolynomial::constant(table_, 1);
      for (long i = 0; i < n; ++i) acc = acc * base;
      return acc;
    }
    return base;
  }

  BigradedPolynomial parse_primary() {
    char c = peek();
    if (c == '(') {
      eat('(');
      BigradedPolynomial p = parse_expr();
      if (!eat(')')) throw std::invalid_argument("missing ')'");
      return p;
    }
    if (c == '-') {
      eat('-');
      return -parse_primary();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return parse_variable();
    throw std::invalid_argument("unexpected character in polynomial: '" +
                                std::string(1, c) + "'");
  }

  long parse_integer() {
    skip_ws();
    bool neg = eat('-');
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ == start) throw std::invalid_argument("expected integer");
    long v = std::stol(std::string(text_.substr(start, pos_ - start)));
    return neg ? -v : v;
  }

  BigradedPolynomial parse_number() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    std::string num(text_.substr(start, pos_ - start));
    if (eat('/')) {
      skip_ws();
      std::size_t ds = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      if (pos_ == ds) throw std::invalid_argument("expected denominator");
      num += "/" + std::string(text_.substr(ds, pos_ - ds));
    }
    auto q = parse_rational(num);
    if (!q) throw std::invalid_argument("bad rational: " + num);
    return BigradedPolynomial::constant(table_, *q);
  }

  BigradedPolynomial parse_variable() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_'))
      ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    auto idx = table_->index_of(name);
    if (!idx) throw std::invalid_argument("unknown variable: " + name);
    return BigradedPolynomial::variable(table_, *idx);
  }

  TablePtr table_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

BigradedPolynomial BigradedPolynomial::parse(TablePtr table,
                                             std::string_view text) {
  return PolyParser(std::move(table), text).parse();
}

namespace {

void enumerate_rec(std::size_t i, long budget, long g_left, long r_left,
                   const VariableTable& table, Exponents& cur,
                   std::vector<Exponents>& out) {
  const std::size_t n = table.arity();
  if (i == n) {
    if (g_left == 0 && r_left == 0) out.push_back(cur);
    return;
  }
  // Attainability bounds for the remaining suffix.
  long gmax = 0, gmin = 0, rmax = 0, rmin = 0;
  for (std::size_t j = i; j < n; ++j) {
    gmax = std::max(gmax, table.var(j).gauge);
    gmin = std::min(gmin, table.var(j).gauge);
    rmax = std::max(rmax, table.var(j).r);
    rmin = std::min(rmin, table.var(j).r);
  }
  if (g_left > budget * gmax || g_left < budget * gmin) return;
  if (r_left > budget * rmax || r_left < budget * rmin) return;
  for (long e = 0; e <= budget; ++e) {
    cur[i] = static_cast<int32_t>(e);
    enumerate_rec(i + 1, budget - e, g_left - e * table.var(i).gauge,
                  r_left - e * table.var(i).r, table, cur, out);
  }
  cur[i] = 0;
}

}  // namespace

std::vector<Exponents> graded_basis(long g, long r, long max_total_degree,
                                    const VariableTable& table) {
  if (max_total_degree < 0)
    throw std::invalid_argument("max_total_degree must be >= 0");
  std::vector<Exponents> out;
  Exponents cur(table.arity(), 0);
  enumerate_rec(0, max_total_degree, g, r, table, cur, out);
  std::sort(out.begin(), out.end(), GrlexLess{});
  return out;
}

}  // namespace branewin
