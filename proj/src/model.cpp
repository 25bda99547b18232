#include "branewin/model.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace branewin {

std::string space_name(Space s) {
  switch (s) {
    case Space::Stack: return "stack";
    case Space::Plus: return "plus";
    case Space::Minus: return "minus";
  }
  return "?";
}

std::optional<Space> space_from_name(std::string_view name) {
  if (name == "stack") return Space::Stack;
  if (name == "plus") return Space::Plus;
  if (name == "minus") return Space::Minus;
  return std::nullopt;
}

std::string ValidationReport::str() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << (c.ok ? "[ok]   " : "[FAIL] ") << c.axiom;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << "\n";
  }
  out << (valid ? "model valid" : "model INVALID") << "\n";
  return out.str();
}

GaugedModel::GaugedModel(std::string name, TablePtr table,
                         BigradedPolynomial w)
    : name_(std::move(name)), table_(std::move(table)), w_(std::move(w)) {
  if (!same_table(table_, w_.table()))
    throw std::invalid_argument("superpotential table mismatch");
}

namespace {

// Solves gauge_i * t == r_i (mod 2) over t in Q, exactly. Any solution has
// denominator dividing lcm of the nonzero |gauge_i|.
std::optional<Rational> parity_witness(const VariableTable& table) {
  long lcm_g = 1;
  bool any_nonzero = false;
  for (const auto& v : table.vars()) {
    if (v.gauge == 0) {
      if (v.r % 2 != 0) return std::nullopt;
      continue;
    }
    any_nonzero = true;
    lcm_g = std::lcm(lcm_g, std::abs(v.gauge));
  }
  if (!any_nonzero) return Rational(0);
  // t = s/lcm_g; s must be a multiple of h_i = lcm_g/|g_i| for g_i*t to be an
  // integer. With s = H*u, H = lcm(h_i), the parity conditions become linear
  // conditions on u mod 2.
  long big_h = 1;
  for (const auto& v : table.vars())
    if (v.gauge != 0) big_h = std::lcm(big_h, lcm_g / std::abs(v.gauge));
  std::optional<long> u_mod2;
  for (const auto& v : table.vars()) {
    if (v.gauge == 0) continue;
    long h_i = lcm_g / std::abs(v.gauge);
    long a = (big_h / h_i) % 2;
    long b = ((v.r % 2) + 2) % 2;
    if (a == 0) {
      if (b != 0) return std::nullopt;
    } else {
      if (u_mod2 && *u_mod2 != b) return std::nullopt;
      u_mod2 = b;
    }
  }
  long u = u_mod2.value_or(0);
  Rational t(big_h * u, lcm_g);
  t.canonicalize();
  return t;
}

}  // namespace

ValidationReport GaugedModel::validate() const {
  ValidationReport rep;
  {
    long s = table_->gauge_sum();
    rep.checks.push_back({"calabi-yau (gauge weights sum to 0)", s == 0,
                          "sum = " + std::to_string(s)});
  }
  {
    bool ok = w_.is_bihomogeneous(Bidegree{0, 2});
    std::string detail = w_.is_zero() ? "W = 0" : "W = " + w_.str();
    rep.checks.push_back({"W bihomogeneous of bidegree (0, 2)", ok, detail});
  }
  {
    auto t = parity_witness(*table_);
    rep.parity_witness = t;
    rep.checks.push_back(
        {"parity (-1 in C*_R acts as a gauge element)", t.has_value(),
         t ? "witness t = " + rational_str(*t) : "no solution"});
  }
  rep.valid = true;
  for (const auto& c : rep.checks) rep.valid = rep.valid && c.ok;
  return rep;
}

Decomposition GaugedModel::decompose() const {
  Decomposition dec;
  for (std::size_t i = 0; i < table_->arity(); ++i) {
    long g = table_->var(i).gauge;
    if (g > 0) {
      dec.x_indices.push_back(i);
      dec.d += g;
    } else if (g < 0) {
      dec.y_indices.push_back(i);
    } else {
      dec.z_indices.push_back(i);
    }
  }
  return dec;
}

bool GaugedModel::space_available(Space s) const {
  auto dec = decompose();
  if (s == Space::Plus) return !dec.x_indices.empty();
  if (s == Space::Minus) return !dec.y_indices.empty();
  return true;
}

long GaugedModel::default_bound() const {
  return 2 * decompose().d + w_.max_total_degree();
}

std::string GaugedModel::to_json_string() const {
  nlohmann::ordered_json j;
  j["name"] = name_;
  j["variables"] = nlohmann::ordered_json::array();
  for (const auto& v : table_->vars())
    j["variables"].push_back(
        {{"name", v.name}, {"gauge", v.gauge}, {"r", v.r}});
  j["W"] = w_.str();
  return j.dump(2);
}

GaugedModel GaugedModel::from_json_string(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::vector<Variable> vars;
  for (const auto& v : j.at("variables"))
    vars.push_back(Variable{v.at("name").get<std::string>(),
                            v.at("gauge").get<long>(), v.at("r").get<long>()});
  auto table = std::make_shared<const VariableTable>(std::move(vars));
  auto w = BigradedPolynomial::parse(table, j.at("W").get<std::string>());
  return GaugedModel(j.value("name", std::string("model")), table,
                     std::move(w));
}

}  // namespace branewin
