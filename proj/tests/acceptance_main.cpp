// Acceptance suite: one criterion per run ("acceptance N") or all ("acceptance").
// Each criterion prints a single PASS/FAIL line plus supporting detail.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "branewin/cohom.hpp"
#include "branewin/fixtures.hpp"
#include "branewin/spherical.hpp"
#include "branewin/windows.hpp"

using namespace branewin;

namespace {

uint64_t g_seed = 20240901;  // overridable: acceptance [criterion] [seed]

std::mt19937_64 make_rng(uint64_t salt) {
  return std::mt19937_64(g_seed + salt);
}

// ---------------------------------------------------------------- 1 ----
bool criterion1() {
  auto flop = load_fixture("flop");
  long bound = flop.model->default_bound();
  auto tb = flop.model->table();
  bool ok = true;
  for (long t : {0L, 2L, -3L}) {
    auto e = Brane::line(flop.model, Space::Plus, t, 0);
    auto mon = monodromy(e, t, bound);
    // expected image, with the sign convention printed in the source text
    std::vector<Summand> sum{{t + 2, 1}, {t + 1, 0}, {t + 1, 0}};
    std::vector<std::vector<BigradedPolynomial>> d(
        3, std::vector<BigradedPolynomial>(3, BigradedPolynomial::zero(tb)));
    d[1][0] = BigradedPolynomial::parse(tb, "-y2");
    d[2][0] = BigradedPolynomial::parse(tb, "y1");
    Brane expected(flop.model, Space::Plus, sum, d);
    auto cert = find_equivalence(mon.brane, expected, bound);
    bool projection_certified = !mon.projection.hops.empty();
    for (const auto& h : mon.projection.hops)
      projection_certified = projection_certified &&
                             h.comparison.is_closed() &&
                             h.cone_contraction.verified;
    bool here = cert.has_value() && cert->verify() && projection_certified &&
                check_brane(mon.brane).ok;
    std::cout << "  t=" << t << ": image " << mon.brane.summand_str()
              << ", equivalence certificate "
              << (cert && cert->verify() ? "verified" : "MISSING")
              << ", projection certificates "
              << (projection_certified ? "verified" : "MISSING") << "\n";
    // O(t+1) is fixed on the nose
    auto fixed = monodromy(Brane::line(flop.model, Space::Plus, t + 1, 0), t,
                           bound);
    bool fixed_ok =
        fixed.brane == Brane::line(flop.model, Space::Plus, t + 1, 0);
    std::cout << "  t=" << t << ": O(t+1) fixed: " << (fixed_ok ? "yes" : "NO")
              << "\n";
    ok = ok && here && fixed_ok;
  }
  return ok;
}

// ---------------------------------------------------------------- 2 ----
// Independent oracle: odometer enumeration of monomials (H^0) and of dual
// monomials e -> x^{-e-1} (H^top). No shared code with the library paths.
CohomologyTable oracle_proj(const GaugedModel& m, Space side, long k,
                            long rmin, long rmax) {
  auto dec = m.decompose();
  const auto& idx = side == Space::Plus ? dec.x_indices : dec.y_indices;
  CohomologyTable tab;
  if (idx.empty()) return tab;
  long box = 2;
  for (auto i : idx) box += std::abs(k) + std::abs(m.table()->var(i).gauge);
  std::vector<long> e(idx.size(), 0);
  auto loop = [&](auto&& emit) {
    std::fill(e.begin(), e.end(), 0);
    for (;;) {
      emit();
      std::size_t i = 0;
      while (i < e.size()) {
        if (++e[i] <= box) break;
        e[i] = 0;
        ++i;
      }
      if (i == e.size()) break;
    }
  };
  loop([&] {
    long g = 0, r = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      g += e[i] * m.table()->var(idx[i]).gauge;
      r += e[i] * m.table()->var(idx[i]).r;
    }
    if (g == k && r >= rmin && r <= rmax) tab.add(0, r, 1);
  });
  loop([&] {
    long g = 0, r = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      g -= (e[i] + 1) * m.table()->var(idx[i]).gauge;
      r -= (e[i] + 1) * m.table()->var(idx[i]).r;
    }
    if (g == k && r >= rmin && r <= rmax)
      tab.add(static_cast<long>(idx.size()) - 1, r, 1);
  });
  return tab;
}

bool criterion2() {
  auto rng = make_rng(2);
  std::uniform_int_distribution<int> cnt(1, 2), wt(1, 3), rw(0, 2);
  int models = 0, checks = 0;
  bool ok = true;
  while (models < 6) {
    int npos = cnt(rng), nneg = cnt(rng);
    std::vector<long> pos(npos), neg(nneg, 1);
    for (auto& g : pos) g = wt(rng);
    long sp = 0, sn = nneg;
    for (auto g : pos) sp += g;
    while (sn < sp) ++neg[rng() % nneg], ++sn;
    while (sp < sn) ++pos[rng() % npos], ++sp;
    std::vector<Variable> vars;
    for (int i = 0; i < npos; ++i)
      vars.push_back({"x" + std::to_string(i + 1), pos[i], 2L * rw(rng)});
    for (int i = 0; i < nneg; ++i)
      vars.push_back({"y" + std::to_string(i + 1), -neg[i], 2L * rw(rng)});
    if (vars.size() > 4) continue;
    auto table = std::make_shared<VariableTable>(vars);
    auto m = std::make_shared<GaugedModel>("rnd", table,
                                           BigradedPolynomial::zero(table));
    if (!m->validate().valid) continue;
    auto dec = m->decompose();
    if (dec.d > 6) continue;
    ++models;
    long rspan = 2 * dec.d * 3 + 6;
    for (Space side : {Space::Plus, Space::Minus}) {
      for (long k = -2 * dec.d; k <= 2 * dec.d; ++k) {
        auto got = proj_line_cohomology(*m, side, k, -rspan, rspan);
        auto want = oracle_proj(*m, side, k, -rspan, rspan);
        ++checks;
        if (!got.same_dims(want)) {
          ok = false;
          std::cout << "  MISMATCH model " << models << " side "
                    << space_name(side) << " k=" << k << "\n";
        }
      }
    }
  }
  std::cout << "  " << models << " weight systems, " << checks
            << " twists compared exactly against the oracle\n";
  return ok;
}

// ---------------------------------------------------------------- 3 ----
Brane random_window_brane(const Fixture& f, const Brane& seed,
                          std::mt19937_64& rng) {
  std::uniform_int_distribution<int> shift(-1, 1), copies(1, 2);
  Brane acc = Brane::zero(f.model, seed.space());
  int n = copies(rng);
  for (int i = 0; i < n; ++i)
    acc = direct_sum(acc, twist_shift(seed, 0, shift(rng)));
  return acc;
}

bool criterion3() {
  auto rng = make_rng(3);
  bool ok = true;
  int pairs = 0;
  std::vector<std::string> names{"flop-degenerate", "orbifold-node",
                                 "cone-node"};
  for (const auto& name : names) {
    auto f = load_fixture(name);
    auto seed = f.branes[0].second;
    for (int trial = 0; trial < 7; ++trial) {
      Brane e = random_window_brane(f, seed, rng);
      Brane g = random_window_brane(f, seed, rng);
      if (e.size() == 0 || g.size() == 0) continue;
      ++pairs;
      for (long b = 2; b <= 4; ++b) {
        auto plus = hom_homology_at(e, g, b);
        auto stack = hom_homology_at(e.with_space(Space::Stack),
                                     g.with_space(Space::Stack), b);
        if (!plus.same_dims(stack)) {
          ok = false;
          std::cout << "  MISMATCH " << name << " trial " << trial
                    << " bound " << b << "\n";
        }
      }
    }
  }
  // W = 0 window complexes on the flop
  auto flop = load_fixture("flop");
  auto tb = flop.model->table();
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<Summand> sum{{1, 1}, {0, 0}};
    std::vector<std::vector<BigradedPolynomial>> d(
        2, std::vector<BigradedPolynomial>(2, BigradedPolynomial::zero(tb)));
    BigradedPolynomial y = BigradedPolynomial::zero(tb);
    y.add_term({0, 0, 1, 0}, coef(rng));
    y.add_term({0, 0, 0, 1}, coef(rng));
    d[1][0] = y;
    Brane e(flop.model, Space::Plus, sum, d);
    Brane g = Brane::line(flop.model, Space::Plus, trial % 2, 0);
    ++pairs;
    for (long b = 2; b <= 4; ++b) {
      auto plus = hom_homology_at(e, g, b);
      auto stack = hom_homology_at(e.with_space(Space::Stack),
                                   g.with_space(Space::Stack), b);
      if (!plus.same_dims(stack)) ok = false;
    }
  }
  std::cout << "  " << pairs
            << " in-window pairs on 4 models, per-charge dimensions equal on "
               "X+ and the stack at bounds 2, 3, 4\n";
  return ok && pairs >= 20;
}

// ---------------------------------------------------------------- 4 ----
bool criterion4() {
  auto rng = make_rng(4);
  int certified = 0;
  bool ok = true;
  // spherical branes over random superpotentials on three tables
  std::vector<ModelPtr> tables;
  {
    auto t0 = std::make_shared<VariableTable>(std::vector<Variable>{
        {"x1", 1, 0}, {"x2", 1, 0}, {"y1", -1, 2}, {"y2", -1, 0}});
    tables.push_back(
        std::make_shared<GaugedModel>("r0", t0, BigradedPolynomial::zero(t0)));
    auto t1 = std::make_shared<VariableTable>(std::vector<Variable>{
        {"x1", 2, 0}, {"x2", 1, 0}, {"y1", -2, 2}, {"y2", -1, 0}});
    tables.push_back(
        std::make_shared<GaugedModel>("r1", t1, BigradedPolynomial::zero(t1)));
    auto t2 = std::make_shared<VariableTable>(std::vector<Variable>{
        {"x1", 1, 0}, {"x2", 1, 0}, {"p", -2, 2}});
    tables.push_back(
        std::make_shared<GaugedModel>("r2", t2, BigradedPolynomial::zero(t2)));
  }
  std::uniform_int_distribution<int> coef(-2, 2), tw(-2, 2);
  for (int trial = 0; certified < 40 && trial < 400; ++trial) {
    const auto& skel = tables[trial % tables.size()];
    auto basis = graded_basis(0, 2, 4, *skel->table());
    BigradedPolynomial w = BigradedPolynomial::zero(skel->table());
    for (const auto& e : basis)
      if (rng() % 3 == 0) w.add_term(e, coef(rng));
    auto m = std::make_shared<GaugedModel>("rw", skel->table(), w);
    Splitting s;
    try {
      s = split_w(m);
    } catch (const std::domain_error&) {
      continue;
    }
    auto sph = build_spherical(s, tw(rng));
    if (!check_brane(sph).ok) {
      ok = false;
      std::cout << "  UNCERTIFIED spherical output on trial " << trial << "\n";
    }
    ++certified;
  }
  // window projections on the fixtures
  for (const auto& name :
       {std::string("flop-degenerate"), std::string("orbifold-node"),
        std::string("cone-node")}) {
    auto f = load_fixture(name);
    auto pair = f.branes[0].second;
    long bound = f.model->default_bound();
    for (long t : {1L, -1L, 2L}) {
      auto res = window_project(pair.with_space(Space::Minus),
                                window_at(*f.model, t), Space::Minus, bound);
      if (!check_brane(res.brane).ok) {
        ok = false;
        std::cout << "  UNCERTIFIED projection " << name << " t=" << t << "\n";
      }
      ++certified;
      auto res2 =
          window_project(pair, window_at(*f.model, t), Space::Plus, bound);
      if (!check_brane(res2.brane).ok) ok = false;
      ++certified;
    }
  }
  // every fixture brane passes as well
  for (const auto& name : fixture_names()) {
    auto f = load_fixture(name);
    for (auto& [bn, b] : f.branes) {
      if (!check_brane(b).ok) ok = false;
      ++certified;
    }
  }
  std::cout << "  " << certified
            << " outputs certified by the exact identity d*d = W*Id\n";
  return ok && certified >= 50;
}

// ---------------------------------------------------------------- 5 ----
bool criterion5() {
  auto fw = load_fixture("flop-superpotential");
  auto res =
      classify_spherical(split_w(fw.model), 0, fw.model->default_bound());
  std::cout << "  verdict: " << verdict_name(res.verdict)
            << (res.exact ? " (exact)" : "") << "\n";
  bool contraction_ok = res.contraction && res.contraction->verified;
  std::cout << "  contracting homotopy (Cech model): "
            << (contraction_ok ? "verified, D(h) = id exactly" : "MISSING")
            << "\n";
  if (res.covering)
    std::cout << "  covering certificate x_i in (f1, f2): verified\n";
  return res.verdict == SphericalVerdict::Zero && contraction_ok;
}

// ---------------------------------------------------------------- 6 ----
bool criterion6() {
  // As stated in the acceptance list: on the (1,-1)/W = xy model,
  // classify_spherical is expected to return Spherical with total Ext
  // dimension 2. The engine's exact computation contradicts this: on X+
  // the quotient is Spec C[u] with W = u (no critical points), so S is
  // contractible; classify returns Zero with an exact covering certificate
  // x = 1*x and a verified contracting homotopy. The truncated-homology
  // oracle below shows where a "2" can come from: a boundary phantom that
  // moves with the bound and never stabilizes.
  auto cx = load_fixture("cone-xy");
  auto s = split_w(cx.model);
  long bound = cx.model->default_bound();
  auto res = classify_spherical(s, 0, bound);
  std::cout << "  classify verdict: " << verdict_name(res.verdict)
            << (res.exact ? " (exact)" : "") << ", Ext table total "
            << res.table.total() << "\n";
  if (res.covering && res.covering->verified)
    std::cout << "  covering certificate verified (x = 1*x)\n";
  if (res.contraction && res.contraction->verified)
    std::cout << "  contracting homotopy verified\n";
  auto sph = build_spherical(s, 0);
  for (long b = bound; b <= bound + 2; ++b) {
    auto oracle = hom_homology_at(sph, sph, b);
    std::cout << "  truncated End(S) oracle on X+ at bound " << b << ":";
    if (oracle.dims.empty()) std::cout << " zero";
    for (const auto& [kk, v] : oracle.dims)
      std::cout << " (p=" << kk.first << ",r=" << kk.second << "):" << v;
    std::cout << "\n";
  }
  // The stack-level oracle reports total 2 at every bound: the identity
  // class plus a boundary phantom at charge = bound whose killer lies just
  // above the truncation. The per-charge tables never stabilize, so the
  // "2" is a truncation artifact, not an Ext dimension.
  auto st = sph.with_space(Space::Stack);
  for (long b = bound; b <= bound + 2; ++b) {
    auto oracle = hom_homology_at(st, st, b);
    std::cout << "  truncated End(S) oracle on the stack at bound " << b
              << ": total " << oracle.total() << " |";
    for (const auto& [kk, v] : oracle.dims)
      std::cout << " (p=" << kk.first << ",r=" << kk.second << "):" << v;
    std::cout << "\n";
  }
  bool as_stated =
      res.verdict == SphericalVerdict::Spherical && res.table.total() == 2;
  if (!as_stated)
    std::cout << "  criterion asserts Spherical with total dimension 2; the "
                 "exact computation disagrees (see decisions ledger)\n";
  return as_stated;
}

// ---------------------------------------------------------------- 7 ----
bool criterion7() {
  bool ok = true;
  // (a) flop, W = 0, E = O(t)
  auto flop = load_fixture("flop");
  long b = flop.model->default_bound();
  {
    auto e = Brane::line(flop.model, Space::Plus, 0, 0);
    auto tc = twist_compare(e, 0, b);
    bool verified = tc.cert.verify();
    auto tb = flop.model->table();
    std::vector<Summand> sum{{2, 1}, {1, 0}, {1, 0}};
    std::vector<std::vector<BigradedPolynomial>> d(
        3, std::vector<BigradedPolynomial>(3, BigradedPolynomial::zero(tb)));
    d[1][0] = BigradedPolynomial::parse(tb, "-y2");
    d[2][0] = BigradedPolynomial::parse(tb, "y1");
    Brane expected(flop.model, Space::Plus, sum, d);
    auto ce = find_equivalence(tc.cone_brane, expected, b);
    std::cout << "  (a) certificate " << (verified ? "verified" : "MISSING")
              << "; both sides equivalent to [O(t+2) -> O(t+1)^2]: "
              << (ce && ce->verify() ? "yes" : "NO") << "\n";
    ok = ok && verified && ce && ce->verify();
  }
  // (b) flop with superpotential: the determinant argument forces every
  // in-window brane to be zero (det of the y-block times det of the x-block
  // would factor the irreducible W), so the comparison runs on the zero
  // brane; the degenerate superpotential W = x1 y1, where in-window branes
  // exist, is exercised substantively.
  {
    auto fw = load_fixture("flop-superpotential");
    auto z = Brane::zero(fw.model, Space::Plus);
    auto tcz = twist_compare(z, 0, fw.model->default_bound());
    std::cout << "  (b) zero brane on flop-superpotential: certificate "
              << (tcz.cert.verify() ? "verified" : "MISSING") << "\n";
    ok = ok && tcz.cert.verify();

    auto fd = load_fixture("flop-degenerate");
    auto tc =
        twist_compare(fd.branes[0].second, 0, fd.model->default_bound());
    std::cout << "  (b') degenerate superpotential pair: certificate "
              << (tc.cert.verify() ? "verified" : "MISSING") << ", image "
              << tc.monodromy_brane.summand_str() << "\n";
    ok = ok && tc.cert.verify();
  }
  return ok;
}

// ---------------------------------------------------------------- 8 ----
bool criterion8() {
  auto rng = make_rng(8);
  std::vector<ModelPtr> skeletons;
  {
    auto t0 = std::make_shared<VariableTable>(std::vector<Variable>{
        {"x1", 1, 0}, {"x2", 1, 0}, {"y1", -1, 2}, {"y2", -1, 0}});
    skeletons.push_back(
        std::make_shared<GaugedModel>("s0", t0, BigradedPolynomial::zero(t0)));
    auto t1 = std::make_shared<VariableTable>(std::vector<Variable>{
        {"x1", 2, 0}, {"x2", 1, 0}, {"y1", -2, 2}, {"y2", -1, 0}});
    skeletons.push_back(
        std::make_shared<GaugedModel>("s1", t1, BigradedPolynomial::zero(t1)));
    auto t2 = std::make_shared<VariableTable>(std::vector<Variable>{
        {"x1", 1, 0}, {"x2", 1, 2}, {"y1", -1, 2}, {"y2", -1, 0}});
    skeletons.push_back(
        std::make_shared<GaugedModel>("s2", t2, BigradedPolynomial::zero(t2)));
  }
  std::uniform_int_distribution<int> coef(-2, 2);
  int done = 0, with_moves = 0;
  bool ok = true;
  for (int trial = 0; done < 12 && trial < 300; ++trial) {
    const auto& skel = skeletons[trial % skeletons.size()];
    auto basis = graded_basis(0, 2, 4, *skel->table());
    BigradedPolynomial w = BigradedPolynomial::zero(skel->table());
    for (const auto& e : basis)
      if (rng() % 2 == 0) w.add_term(e, coef(rng));
    if (w.is_zero()) continue;
    auto m = std::make_shared<GaugedModel>("rw8", skel->table(), w);
    auto dec = m->decompose();
    Splitting a, bsp;
    try {
      a = split_w(m);
      bsp = split_w_prefer(m, {dec.y_indices[1], dec.y_indices[0]});
    } catch (const std::domain_error&) {
      continue;
    }
    try {
      auto iso = splitting_iso(a, bsp, 0);
      if (!iso.verify()) {
        ok = false;
        std::cout << "  UNVERIFIED iso on trial " << trial << "\n";
      }
      if (iso.moves > 0) ++with_moves;
      ++done;
    } catch (const std::exception& ex) {
      ok = false;
      std::cout << "  iso construction failed: " << ex.what() << "\n";
    }
  }
  std::cout << "  " << done << " random superpotentials on 3 models, "
            << with_moves
            << " with nontrivial elementary-move chains; all isos are exact "
               "mutual inverses\n";
  return ok && done >= 10 && with_moves >= 3;
}

struct Criterion {
  int id;
  const char* title;
  std::function<bool()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> all{
      {1,
       "flop monodromy sends O(t) to [O(t+2) -> O(t+1)^2] and fixes O(t+1)",
       criterion1},
      {2,
       "weighted projective line-bundle cohomology equals the enumeration "
       "oracle",
       criterion2},
      {3, "window fully-faithfulness: stack and X+ Hom homology agree",
       criterion3},
      {4, "window projections and spherical branes are curvature-certified",
       criterion4},
      {5,
       "flop-superpotential spherical brane classifies as Zero with a "
       "verified contracting homotopy",
       criterion5},
      {6,
       "(1,-1)/W=xy classifies as Spherical with total Ext dimension 2 (as "
       "stated in the source criteria)",
       criterion6},
      {7, "twist comparison: monodromy output matches the twist fiber",
       criterion7},
      {8,
       "splitting independence: greedy splittings are connected by exact "
       "isomorphisms",
       criterion8},
  };
  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  if (argc > 2) g_seed = std::strtoull(argv[2], nullptr, 10);
  int failures = 0;
  for (auto& c : all) {
    if (only && c.id != only) continue;
    auto start = std::chrono::steady_clock::now();
    bool pass = false;
    std::string error;
    try {
      pass = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << c.id << ": "
              << c.title << " (" << ms << " ms)\n";
    if (!error.empty()) std::cout << "  exception: " << error << "\n";
    if (!pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
