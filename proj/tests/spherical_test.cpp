#include <random>

#include "branewin/fixtures.hpp"
#include "branewin/spherical.hpp"
#include "doctest.h"

using namespace branewin;

namespace {

// Models whose superpotentials admit several splittings (monomials with
// more than one y-variable), used for splitting-independence tests.
ModelPtr multi_split_model(int which) {
  if (which == 0) {
    auto t = std::make_shared<VariableTable>(std::vector<Variable>{
        {"x1", 1, 0}, {"x2", 1, 0}, {"y1", -1, 2}, {"y2", -1, 0}});
    return std::make_shared<GaugedModel>(
        "ms0", t,
        BigradedPolynomial::parse(t, "x1*x2*y1*y2 + x1^2*y1*y2 + x1*y1"));
  }
  if (which == 1) {
    auto t = std::make_shared<VariableTable>(std::vector<Variable>{
        {"x1", 2, 0}, {"x2", 1, 0}, {"y1", -2, 2}, {"y2", -1, 0}});
    return std::make_shared<GaugedModel>(
        "ms1", t,
        BigradedPolynomial::parse(t, "x1*y1 + x2^2*y1 + x1*x2*y1*y2"));
  }
  auto t = std::make_shared<VariableTable>(std::vector<Variable>{
      {"x1", 1, 0}, {"x2", 1, 2}, {"y1", -1, 2}, {"y2", -1, 0}});
  return std::make_shared<GaugedModel>(
      "ms2", t, BigradedPolynomial::parse(t, "x1*y1 + x2*y2 + x1^2*y1*y2"));
}

BigradedPolynomial random_w(const ModelPtr& skeleton, std::mt19937_64& rng) {
  auto table = skeleton->table();
  auto basis = graded_basis(0, 2, 4, *table);
  std::uniform_int_distribution<int> coef(-2, 2);
  BigradedPolynomial w = BigradedPolynomial::zero(table);
  for (const auto& e : basis) w.add_term(e, coef(rng));
  return w;
}

}  // namespace

TEST_CASE("split_w greedy assignment") {
  auto fw = load_fixture("flop-superpotential");
  auto s = split_w(fw.model);
  CHECK(s.verify());
  CHECK(s.f[0].str() == "x1");
  CHECK(s.f[1].str() == "x2");

  auto flop = load_fixture("flop");
  auto s0 = split_w(flop.model);
  CHECK(s0.verify());
  CHECK(s0.f[0].is_zero());
  CHECK(s0.f[1].is_zero());

  // multi-y monomials go to the first y in the preference order
  auto ms = multi_split_model(0);
  auto g1 = split_w(ms);
  CHECK(g1.verify());
  CHECK(g1.f[1].is_zero());  // everything lands on y1
  auto g2 = split_w_prefer(ms, {ms->decompose().y_indices[1],
                                ms->decompose().y_indices[0]});
  CHECK(g2.verify());
  CHECK_FALSE(g2.f[1].is_zero());
  CHECK_FALSE(g1.f == g2.f);
}

TEST_CASE("split_w rejects W not supported on V_y") {
  // z-variable carrying the whole R-charge: W = z^1 has no y-factor.
  auto t = std::make_shared<VariableTable>(std::vector<Variable>{
      {"x", 1, 0}, {"y", -1, 2}, {"z", 0, 2}});
  auto m = std::make_shared<GaugedModel>("zbad", t,
                                         BigradedPolynomial::parse(t, "z"));
  CHECK(m->validate().valid);
  CHECK_THROWS_AS(split_w(m), std::domain_error);
}

TEST_CASE("build_spherical reproduces the normative flop matrices") {
  auto fw = load_fixture("flop-superpotential");
  auto tb = fw.model->table();
  auto s = build_spherical(split_w(fw.model), 0);
  REQUIRE(s.size() == 4);
  CHECK(s.summands() ==
        std::vector<Summand>{{2, -2}, {1, -1}, {1, -1}, {0, 0}});
  auto P = [&](const char* x) { return BigradedPolynomial::parse(tb, x); };
  CHECK(s.entry(1, 0) == P("y2"));
  CHECK(s.entry(2, 0) == P("-y1"));
  CHECK(s.entry(3, 1) == P("y1"));
  CHECK(s.entry(3, 2) == P("y2"));
  CHECK(s.entry(1, 3) == P("x1"));
  CHECK(s.entry(2, 3) == P("x2"));
  CHECK(s.entry(0, 1) == P("x2"));
  CHECK(s.entry(0, 2) == P("-x1"));
  CHECK(check_brane(s).ok);
}

TEST_CASE("build_spherical on one y-variable") {
  auto cx = load_fixture("cone-xy");
  auto s = build_spherical(split_w(cx.model), 0);
  REQUIRE(s.size() == 2);
  CHECK(s.summands() == std::vector<Summand>{{1, -1}, {0, 0}});
  CHECK(s.entry(1, 0).str() == "y");
  CHECK(s.entry(0, 1).str() == "x");
  CHECK(check_brane(s).ok);
}

TEST_CASE("spherical curvature identity for random superpotentials") {
  auto skeleton = multi_split_model(0);
  std::mt19937_64 rng(77);
  int built = 0;
  for (int trial = 0; built < 12 && trial < 60; ++trial) {
    auto w = random_w(skeleton, rng);
    if (w.is_zero()) continue;
    auto m = std::make_shared<GaugedModel>("rw", skeleton->table(), w);
    Splitting s;
    try {
      s = split_w(m);
    } catch (const std::domain_error&) {
      continue;  // a monomial without y-factor
    }
    auto sph = build_spherical(s, trial % 3 - 1);
    CHECK(check_brane(sph).ok);
    ++built;
  }
  CHECK(built >= 12);
}

TEST_CASE("splitting_iso on the identity") {
  auto fw = load_fixture("flop-superpotential");
  auto s = split_w(fw.model);
  auto iso = splitting_iso(s, s, 0);
  CHECK(iso.moves == 0);
  CHECK(iso.verify());
}

TEST_CASE("splitting_iso elementary move matches the paper's map") {
  // Mixed R-charges so that a nonzero move polynomial exists.
  auto t = std::make_shared<VariableTable>(std::vector<Variable>{
      {"x1", 1, 0}, {"x2", 1, 2}, {"y1", -1, 2}, {"y2", -1, 0}});
  auto m = std::make_shared<GaugedModel>(
      "mv", t, BigradedPolynomial::parse(t, "x1*y1 + x2*y2"));
  REQUIRE(m->validate().valid);
  Splitting a = split_w(m);
  Splitting b = a;
  // g = x1^2 has the required bidegree (2, 0) here
  auto g = BigradedPolynomial::parse(t, "x1^2");
  b.f[0] = a.f[0] + BigradedPolynomial::variable(t, 3) * g;
  b.f[1] = a.f[1] - BigradedPolynomial::variable(t, 2) * g;
  REQUIRE(b.verify());
  auto iso = splitting_iso(a, b, 0);
  CHECK(iso.moves == 1);
  CHECK(iso.verify());
  // the map is id plus a wedge into the top exterior slot
  CHECK(iso.forward.entry(0, 3).term_count() == 1);
}

TEST_CASE("splitting_iso connects different greedy orders") {
  for (int which = 0; which < 3; ++which) {
    auto m = multi_split_model(which);
    REQUIRE(m->validate().valid);
    auto dec = m->decompose();
    auto a = split_w(m);
    auto b = split_w_prefer(m, {dec.y_indices[1], dec.y_indices[0]});
    auto iso = splitting_iso(a, b, 0);
    CHECK(iso.verify());
    if (!(a.f == b.f)) CHECK(iso.moves >= 1);
  }
}

TEST_CASE("hom_to_spherical examples") {
  // E = O(t) with d = 0 on the W = 0 flop: one class.
  auto flop = load_fixture("flop");
  auto o0 = flop.branes[0].second;
  auto t1 = hom_to_spherical(o0, 0, 4);
  CHECK(t1.total() == 1);
  CHECK(t1.dim(0, 0) == 1);

  // E = S(t) itself, W = 0: C + C in the predicted spots.
  auto s = flop.branes[2].second;
  auto t2 = hom_to_spherical(s, 0, 4);
  CHECK(t2.total() == 2);

  // flop with superpotential: everything cancels.
  auto fw = load_fixture("flop-superpotential");
  auto t3 = hom_to_spherical(fw.branes[0].second, 0,
                             fw.model->default_bound());
  CHECK(t3.total() == 0);
  CHECK(t3.stabilized);
}

TEST_CASE("classify: flop with superpotential is Zero with certificates") {
  auto fw = load_fixture("flop-superpotential");
  auto res = classify_spherical(split_w(fw.model), 0,
                                fw.model->default_bound());
  CHECK(res.verdict == SphericalVerdict::Zero);
  CHECK(res.exact);
  REQUIRE(res.covering.has_value());
  CHECK(res.covering->verified);
  REQUIRE(res.contraction.has_value());
  CHECK(res.contraction->verified);
}

TEST_CASE("classify: W = 0 Koszul branes are spherical") {
  auto flop = load_fixture("flop");
  auto res = classify_spherical(split_w(flop.model), 0, 4);
  CHECK(res.verdict == SphericalVerdict::Spherical);
  CHECK(res.exact);
  CHECK(res.table.total() == 2);
  // cross-check against line cohomology of O + O(-d) on P V_x
  auto lc0 = proj_line_cohomology(*flop.model, Space::Plus, 0, -8, 8);
  auto lcd = proj_line_cohomology(*flop.model, Space::Plus, -2, -8, 8);
  CHECK(lc0.total() + lcd.total() == 2);
}

TEST_CASE("classify: orbifold Fermat spherical branes") {
  auto orb = load_fixture("orbifold-2");
  auto res = classify_spherical(split_w(orb.model), 0,
                                orb.model->default_bound());
  CHECK(res.verdict == SphericalVerdict::Spherical);
  CHECK(res.table.total() == 2);

  // d = 3: the two classes sit at charges 0 and 1 with stabilized
  // per-charge dimensions
  auto orb3 = load_fixture("orbifold-3");
  auto res3 = classify_spherical(split_w(orb3.model), 0, 8);
  CHECK(res3.verdict == SphericalVerdict::Spherical);
  CHECK(res3.table.total() == 2);
  auto marg = res3.table.r_marginal();
  CHECK(marg[0] == 1);
  CHECK(marg[1] == 1);
}

TEST_CASE("classify: the (1,-1) xy cone is Zero (exactly)") {
  // On X+ the model restricts to matrix factorizations of a coordinate
  // function, so S is contractible; the covering certificate is x = 1*x.
  auto cx = load_fixture("cone-xy");
  auto res = classify_spherical(split_w(cx.model), 0,
                                cx.model->default_bound());
  CHECK(res.verdict == SphericalVerdict::Zero);
  CHECK(res.exact);
  REQUIRE(res.covering.has_value());
  CHECK(res.covering->verified);
  REQUIRE(res.contraction.has_value());
  CHECK(res.contraction->verified);
}

TEST_CASE("classify verdicts are consistent across bounds") {
  auto cx = load_fixture("cone-xy");
  auto fw = load_fixture("flop-superpotential");
  auto flop = load_fixture("flop");
  for (long b = 3; b <= 5; ++b) {
    CHECK(classify_spherical(split_w(cx.model), 0, b).verdict ==
          SphericalVerdict::Zero);
    CHECK(classify_spherical(split_w(fw.model), 0, b).verdict ==
          SphericalVerdict::Zero);
    CHECK(classify_spherical(split_w(flop.model), 0, b).verdict ==
          SphericalVerdict::Spherical);
  }
}

TEST_CASE("hom_to_spherical is concentrated for in-window branes") {
  // For in-window E the zero-section complex has sections only on the
  // O(t)-summands (m_E constants), so everything sits in Cech degree 0.
  auto fd = load_fixture("flop-degenerate");
  auto pair = fd.branes[0].second;  // one O(0)-summand: m_E = 1
  auto tab = hom_to_spherical(pair, 0, fd.model->default_bound());
  CHECK(tab.total() == 1);
  CHECK(tab.dim(0, 0) == 1);
  for (const auto& [key, v] : tab.dims) CHECK(key.first == 0);

  // m_E = 2 with a zero induced differential
  auto two = direct_sum(pair, pair);
  auto tab2 = hom_to_spherical(two, 0, fd.model->default_bound());
  CHECK(tab2.total() == 2);
  CHECK(tab2.dim(0, 0) == 2);
}

TEST_CASE("monodromy and twist comparison on the node models") {
  for (const char* name : {"orbifold-node", "cone-node"}) {
    auto f = load_fixture(name);
    auto pair = f.branes[0].second;
    long b = f.model->default_bound();
    auto mon = monodromy(pair, 0, b);
    CHECK(check_brane(mon.brane).ok);
    CHECK(in_window(mon.brane, window_at(*f.model, 1)));
    auto tc = twist_compare(pair, 0, b);
    CHECK(tc.cert.verify());
  }
}

TEST_CASE("build_twist_cone bookkeeping case m_E = 0") {
  auto fd = load_fixture("flop-degenerate");
  auto m0 = std::make_shared<GaugedModel>(
      "fd0", fd.model->table(), BigradedPolynomial::zero(fd.model->table()));
  auto e = Brane::line(m0, Space::Plus, 1, 0);
  auto c = build_twist_cone(e, 0, 4);
  CHECK(c.summands() == e.summands());
  auto cert = find_equivalence(c, e, 4);
  REQUIRE(cert.has_value());
  CHECK(cert->verify());
}

TEST_CASE("build_twist_cone has a nonzero correction when W does") {
  auto fd = load_fixture("flop-degenerate");
  auto pair = fd.branes[0].second;
  auto c = build_twist_cone(pair, 0, fd.model->default_bound());
  CHECK(check_brane(c).ok);
  // the eps_1 block: a constant unit from the E[1] part into an exterior
  // degree-1 slot of S(t)
  bool has_unit = false;
  for (std::size_t i = pair.size(); i < c.size(); ++i)
    for (std::size_t j = 0; j < pair.size(); ++j) {
      const auto& p = c.entry(i, j);
      if (!p.is_zero() && p.term_count() == 1 &&
          total_degree(p.terms().begin()->first) == 0)
        has_unit = true;
    }
  CHECK(has_unit);
}

TEST_CASE("twist_compare: flop O(t) and the trivial fixed point") {
  auto flop = load_fixture("flop");
  long b = flop.model->default_bound();
  auto tc = twist_compare(flop.branes[0].second, 0, b);
  CHECK(tc.cert.verify());
  REQUIRE(tc.monodromy_brane.size() == 3);
  auto tc1 = twist_compare(flop.branes[1].second, 0, b);
  CHECK(tc1.cert.verify());
}

TEST_CASE("twist_compare on the degenerate superpotential") {
  auto fd = load_fixture("flop-degenerate");
  auto tc = twist_compare(fd.branes[0].second, 0, fd.model->default_bound());
  CHECK(tc.cert.verify());
  CHECK(check_brane(tc.cone_brane).ok);
  CHECK(check_brane(tc.monodromy_brane).ok);
}

TEST_CASE("twist cone with two O(t)-summands and a nonzero H-differential") {
  // A contractible pair O(t)[1] --1--> O(t): m_E = 2 and the induced
  // differential on H is the unit, so the twist image is contractible too.
  auto flop = load_fixture("flop");
  auto tb = flop.model->table();
  std::vector<Summand> sum{{0, 1}, {0, 0}};
  std::vector<std::vector<BigradedPolynomial>> d(
      2, std::vector<BigradedPolynomial>(2, BigradedPolynomial::zero(tb)));
  d[1][0] = BigradedPolynomial::constant(tb, 1);
  Brane e(flop.model, Space::Plus, sum, d);
  REQUIRE(check_brane(e).ok);
  auto c = build_twist_cone(e, 0, 4);
  CHECK(check_brane(c).ok);
  CHECK(cancel_unit_pairs(c).reduced.size() == 0);
  auto tc = twist_compare(e, 0, 5);
  CHECK(tc.cert.verify());
}

TEST_CASE("splitting chains across three y-variables") {
  auto t3 = std::make_shared<VariableTable>(std::vector<Variable>{
      {"x1", 1, 0}, {"x2", 1, 0}, {"x3", 1, 0},
      {"y1", -1, 2}, {"y2", -1, 0}, {"y3", -1, 2}});
  auto m3 = std::make_shared<GaugedModel>(
      "triple", t3,
      BigradedPolynomial::parse(t3, "x1*x2*y1*y2 + x3*y3 + x1*x3*y2*y3"));
  REQUIRE(m3->validate().valid);
  auto dec = m3->decompose();
  auto a = split_w(m3);
  auto b = split_w_prefer(
      m3, {dec.y_indices[2], dec.y_indices[1], dec.y_indices[0]});
  REQUIRE_FALSE(a.f == b.f);
  auto iso = splitting_iso(a, b, 0);
  CHECK(iso.moves >= 2);
  CHECK(iso.verify());
  auto s3 = build_spherical(a, 0);
  CHECK(s3.size() == 8);
  CHECK(check_brane(s3).ok);
}

TEST_CASE("zero brane through the twist machinery") {
  auto fw = load_fixture("flop-superpotential");
  auto z = Brane::zero(fw.model, Space::Plus);
  auto tc = twist_compare(z, 0, fw.model->default_bound());
  CHECK(tc.cert.verify());
  CHECK(tc.monodromy_brane.size() == 0);
}
