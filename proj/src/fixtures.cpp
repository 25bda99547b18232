#include "branewin/fixtures.hpp"

#include <stdexcept>

#include "branewin/spherical.hpp"

namespace branewin {

namespace {

ModelPtr flop_model(bool with_w, bool degenerate) {
  std::vector<Variable> vars{{"x1", 1, 0}, {"x2", 1, 0}};
  if (with_w) {
    vars.push_back({"y1", -1, 2});
    vars.push_back({"y2", -1, 2});
  } else {
    vars.push_back({"y1", -1, 0});
    vars.push_back({"y2", -1, 0});
  }
  auto table = std::make_shared<VariableTable>(vars);
  std::string w = !with_w ? "0" : (degenerate ? "x1*y1" : "x1*y1 + x2*y2");
  std::string name = !with_w ? "flop"
                             : (degenerate ? "flop-degenerate"
                                           : "flop-superpotential");
  return std::make_shared<GaugedModel>(name, table,
                                       BigradedPolynomial::parse(table, w));
}

ModelPtr orbifold_model(long n) {
  std::vector<Variable> vars;
  for (long i = 1; i <= n; ++i)
    vars.push_back({"x" + std::to_string(i), 1, 0});
  vars.push_back({"p", -n, 2});
  auto table = std::make_shared<VariableTable>(vars);
  // Fermat superpotential W = p * sum x_i^n
  BigradedPolynomial w = BigradedPolynomial::zero(table);
  for (long i = 0; i < n; ++i) {
    Exponents e(table->arity(), 0);
    e[i] = static_cast<int32_t>(n);
    e[table->arity() - 1] = 1;
    w.add_term(e, 1);
  }
  return std::make_shared<GaugedModel>("orbifold-" + std::to_string(n), table,
                                       w);
}

ModelPtr cone_xy_model() {
  auto table = std::make_shared<VariableTable>(
      std::vector<Variable>{{"x", 1, 0}, {"y", -1, 2}});
  return std::make_shared<GaugedModel>(
      "cone-xy", table, BigradedPolynomial::parse(table, "x*y"));
}

// W = x1 x2 p on [C^3 / (1,1,-2)]: the critical locus on X_+ is two points,
// so Hom homology stabilizes honestly.
ModelPtr orbifold_node_model() {
  auto table = std::make_shared<VariableTable>(std::vector<Variable>{
      {"x1", 1, 0}, {"x2", 1, 0}, {"p", -2, 2}});
  return std::make_shared<GaugedModel>(
      "orbifold-node", table, BigradedPolynomial::parse(table, "x1*x2*p"));
}

// W = x y1 y2 on weights (2,-1,-1): a single semistable variable on the
// plus side, so X_+ carries Laurent sections.
ModelPtr cone_node_model() {
  auto table = std::make_shared<VariableTable>(std::vector<Variable>{
      {"x", 2, 2}, {"y1", -1, 0}, {"y2", -1, 0}});
  return std::make_shared<GaugedModel>(
      "cone-node", table, BigradedPolynomial::parse(table, "x*y1*y2"));
}

Brane degenerate_pair(const ModelPtr& m, long t) {
  auto table = m->table();
  std::vector<Summand> sum{{t, 0}, {t + 1, -1}};
  std::vector<std::vector<BigradedPolynomial>> d(
      2, std::vector<BigradedPolynomial>(2, BigradedPolynomial::zero(table)));
  d[0][1] = BigradedPolynomial::parse(table, "y1");
  d[1][0] = BigradedPolynomial::parse(table, "x1");
  return Brane(m, Space::Plus, std::move(sum), std::move(d));
}

}  // namespace

std::vector<std::string> fixture_names() {
  return {"flop",       "flop-superpotential", "flop-degenerate",
          "cone-xy",    "orbifold-node",       "cone-node",
          "orbifold-2", "orbifold-3"};
}

Fixture load_fixture(const std::string& name) {
  if (name == "flop") {
    auto m = flop_model(false, false);
    Fixture f{m, {}};
    f.branes.emplace_back("O0", Brane::line(m, Space::Plus, 0, 0));
    f.branes.emplace_back("O1", Brane::line(m, Space::Plus, 1, 0));
    f.branes.emplace_back("spherical", build_spherical(split_w(m), 0));
    return f;
  }
  if (name == "flop-superpotential") {
    auto m = flop_model(true, false);
    Fixture f{m, {}};
    f.branes.emplace_back("spherical", build_spherical(split_w(m), 0));
    return f;
  }
  if (name == "flop-degenerate") {
    auto m = flop_model(true, true);
    Fixture f{m, {}};
    f.branes.emplace_back("pair", degenerate_pair(m, 0));
    f.branes.emplace_back("spherical", build_spherical(split_w(m), 0));
    return f;
  }
  if (name == "cone-xy") {
    auto m = cone_xy_model();
    Fixture f{m, {}};
    f.branes.emplace_back("spherical", build_spherical(split_w(m), 0));
    return f;
  }
  if (name == "orbifold-node") {
    auto m = orbifold_node_model();
    auto table = m->table();
    std::vector<Summand> sum{{0, 0}, {1, -1}};
    std::vector<std::vector<BigradedPolynomial>> d(
        2,
        std::vector<BigradedPolynomial>(2, BigradedPolynomial::zero(table)));
    d[0][1] = BigradedPolynomial::parse(table, "x1*p");
    d[1][0] = BigradedPolynomial::parse(table, "x2");
    Fixture f{m, {}};
    f.branes.emplace_back("pair",
                          Brane(m, Space::Plus, std::move(sum), std::move(d)));
    f.branes.emplace_back("spherical", build_spherical(split_w(m), 0));
    return f;
  }
  if (name == "cone-node") {
    auto m = cone_node_model();
    auto table = m->table();
    std::vector<Summand> sum{{0, 0}, {1, 1}};
    std::vector<std::vector<BigradedPolynomial>> d(
        2,
        std::vector<BigradedPolynomial>(2, BigradedPolynomial::zero(table)));
    d[0][1] = BigradedPolynomial::parse(table, "y1");
    d[1][0] = BigradedPolynomial::parse(table, "x*y2");
    Fixture f{m, {}};
    f.branes.emplace_back("pair",
                          Brane(m, Space::Plus, std::move(sum), std::move(d)));
    f.branes.emplace_back("spherical", build_spherical(split_w(m), 0));
    return f;
  }
  if (name.rfind("orbifold-", 0) == 0) {
    long n = std::stol(name.substr(9));
    if (n < 2 || n > 6)
      throw std::invalid_argument("orbifold fixture: n must be in [2, 6]");
    auto m = orbifold_model(n);
    Fixture f{m, {}};
    f.branes.emplace_back("spherical", build_spherical(split_w(m), 0));
    return f;
  }
  throw std::invalid_argument("unknown fixture: " + name);
}

}  // namespace branewin
