#include "branewin/spherical.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "branewin/koszul.hpp"
#include "json.hpp"

namespace branewin {

bool Splitting::verify() const {
  if (!model) return false;
  auto table = model->table();
  BigradedPolynomial acc = BigradedPolynomial::zero(table);
  for (std::size_t p = 0; p < y_vars.size(); ++p) {
    const auto& v = table->var(y_vars[p]);
    if (!f[p].is_bihomogeneous(Bidegree{-v.gauge, 2 - v.r})) return false;
    acc += BigradedPolynomial::variable(table, y_vars[p]) * f[p];
  }
  return acc == model->superpotential();
}

std::string Splitting::str() const {
  std::ostringstream out;
  auto table = model->table();
  for (std::size_t p = 0; p < y_vars.size(); ++p) {
    if (p) out << ", ";
    out << "f[" << table->var(y_vars[p]).name << "] = " << f[p].str();
  }
  return out.str();
}

Splitting split_w_prefer(const ModelPtr& m,
                         const std::vector<std::size_t>& y_preference) {
  auto dec = m->decompose();
  if (dec.y_indices.empty())
    throw std::invalid_argument("split_w: no y-variables");
  auto table = m->table();
  Splitting s{m, dec.y_indices,
              std::vector<BigradedPolynomial>(
                  dec.y_indices.size(), BigradedPolynomial::zero(table))};
  std::vector<std::size_t> pos_of(table->arity(), SIZE_MAX);
  for (std::size_t p = 0; p < dec.y_indices.size(); ++p)
    pos_of[dec.y_indices[p]] = p;

  for (const auto& [e, c] : m->superpotential().terms()) {
    std::size_t chosen = SIZE_MAX;
    for (auto v : y_preference) {
      if (pos_of[v] != SIZE_MAX && e[v] > 0) {
        chosen = v;
        break;
      }
    }
    if (chosen == SIZE_MAX)
      throw std::domain_error(
          "split_w: a monomial of W contains no y-variable (V_y does not "
          "support W)");
    Exponents q = e;
    q[chosen] -= 1;
    s.f[pos_of[chosen]].add_term(q, c);
  }
  return s;
}

Splitting split_w(const ModelPtr& m) {
  return split_w_prefer(m, m->decompose().y_indices);
}

Brane build_spherical(const Splitting& s, long t) {
  if (!s.verify()) throw std::invalid_argument("invalid splitting");
  if (s.y_vars.size() > 12)
    throw std::invalid_argument("build_spherical: |y| capped at 12");
  auto sc = build_subset_complex(s.model, Space::Plus, s.y_vars, s.f, t, 0,
                                 nullptr);
  return sc.brane;
}

bool SplittingIso::verify() const {
  if (forward.charge() != 0 || backward.charge() != 0) return false;
  if (!forward.is_closed() || !backward.is_closed()) return false;
  auto fg = compose(forward, backward);
  auto gf = compose(backward, forward);
  return fg == BraneMap::identity(forward.target()) &&
         gf == BraneMap::identity(forward.source());
}

namespace {

// The operator wedge(g dy^i dy^j) on the subset complex, with the sign
// resolved by the closedness requirement.
BraneMap elementary_iso(const Splitting& from, const Splitting& to,
                        std::size_t pi, std::size_t pj,
                        const BigradedPolynomial& g, long t) {
  Brane sa = build_spherical(from, t);
  Brane sb = build_spherical(to, t);
  auto sca = build_subset_complex(from.model, Space::Plus, from.y_vars,
                                  from.f, t, 0, nullptr);
  // summand order of build_spherical matches build_subset_complex
  auto make = [&](int sign) {
    BraneMap phi(sa, sb, 0);
    for (std::size_t slot = 0; slot < sa.size(); ++slot)
      phi.set_entry(slot, slot,
                    BigradedPolynomial::constant(from.model->table(), 1));
    for (std::size_t slot = 0; slot < sa.size(); ++slot) {
      uint32_t m = sca.masks[slot];
      if (m & (1u << pi) || m & (1u << pj)) continue;
      uint32_t m2 = m | (1u << pi) | (1u << pj);
      auto it = sca.slot.find(m2);
      if (it == sca.slot.end()) continue;
      int sgn = koszul_sign(pj, m) * koszul_sign(pi, m | (1u << pj));
      phi.add_to_entry(it->second, slot, g * Rational(sign * sgn));
    }
    return phi;
  };
  for (int sign : {1, -1}) {
    BraneMap phi = make(sign);
    if (phi.is_closed()) return phi;
  }
  throw std::logic_error("elementary splitting iso: no closed sign");
}

}  // namespace

SplittingIso splitting_iso(const Splitting& a, const Splitting& b, long t) {
  if (!a.verify() || !b.verify())
    throw std::invalid_argument("splitting_iso: invalid splitting");
  if (a.y_vars != b.y_vars ||
      !(a.model->superpotential() == b.model->superpotential()))
    throw std::invalid_argument("splitting_iso: incompatible splittings");
  auto table = a.model->table();
  const std::size_t q = a.y_vars.size();

  // Chain of elementary moves from a to b, processed monomial by monomial
  // from the last y-position downward.
  Splitting cur = a;
  Brane scur = build_spherical(cur, t);
  BraneMap fwd = BraneMap::identity(scur);
  BraneMap bwd = BraneMap::identity(scur);
  std::size_t moves = 0;
  for (std::size_t qq = q; qq-- > 1;) {
    BigradedPolynomial delta = b.f[qq] - cur.f[qq];
    for (const auto& [mono, c] : delta.terms()) {
      std::size_t p = SIZE_MAX;
      for (std::size_t pp = 0; pp < qq; ++pp)
        if (mono[a.y_vars[pp]] > 0) {
          p = pp;
          break;
        }
      if (p == SIZE_MAX)
        throw CertificateError(
            "splitting_iso: no elementary chain found (difference monomial " +
            BigradedPolynomial::monomial(table, mono, c).str() +
            " has no earlier y-divisor)");
      Exponents div = mono;
      div[a.y_vars[p]] -= 1;
      BigradedPolynomial g =
          BigradedPolynomial::monomial(table, div, -c);
      Splitting next = cur;
      next.f[p] += BigradedPolynomial::variable(table, a.y_vars[qq]) * g;
      next.f[qq] -= BigradedPolynomial::variable(table, a.y_vars[p]) * g;
      BraneMap phi = elementary_iso(cur, next, p, qq, g, t);
      BraneMap phi_inv = elementary_iso(next, cur, p, qq, -g, t);
      fwd = compose(phi, fwd);
      bwd = compose(bwd, phi_inv);
      cur = next;
      ++moves;
    }
  }
  if (!(cur.f == b.f))
    throw std::logic_error("splitting_iso: chain did not converge");
  SplittingIso iso{fwd, bwd, moves};
  if (!iso.verify())
    throw std::logic_error("splitting_iso: certificate failed verification");
  return iso;
}

namespace {

ModelPtr x_restricted_model(const ModelPtr& m) {
  auto dec = m->decompose();
  std::vector<Variable> vars;
  for (auto i : dec.x_indices) vars.push_back(m->table()->var(i));
  auto table = std::make_shared<VariableTable>(vars);
  return std::make_shared<GaugedModel>(m->name() + "-zerosection", table,
                                       BigradedPolynomial::zero(table));
}

BigradedPolynomial restrict_to_x(const BigradedPolynomial& p,
                                 const std::vector<std::size_t>& x_indices,
                                 const TablePtr& x_table) {
  BigradedPolynomial out = BigradedPolynomial::zero(x_table);
  for (const auto& [e, c] : p.terms()) {
    bool pure = true;
    long used = 0;
    for (std::size_t i = 0; i < e.size() && pure; ++i) {
      if (e[i] == 0) continue;
      bool isx = std::find(x_indices.begin(), x_indices.end(), i) !=
                 x_indices.end();
      if (!isx) pure = false;
      used += e[i];
    }
    if (!pure) continue;
    Exponents q(x_table->arity(), 0);
    for (std::size_t p2 = 0; p2 < x_indices.size(); ++p2)
      q[p2] = e[x_indices[p2]];
    out.add_term(q, c);
  }
  return out;
}

}  // namespace

Brane zero_section_dual(const Brane& e, long t) {
  auto dec = e.model()->decompose();
  if (dec.x_indices.empty())
    throw std::invalid_argument("zero_section_dual: empty x-side");
  ModelPtr xm = x_restricted_model(e.model());
  std::vector<Summand> summands;
  for (const auto& s : e.summands()) summands.push_back({t - s.k, -s.n});
  const std::size_t n = e.size();
  std::vector<std::vector<BigradedPolynomial>> d(
      n, std::vector<BigradedPolynomial>(
             n, BigradedPolynomial::zero(xm->table())));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      d[i][j] = restrict_to_x(e.entry(j, i), dec.x_indices, xm->table());
  return Brane(xm, Space::Plus, std::move(summands), std::move(d));
}

CohomologyTable hom_to_spherical(const Brane& e, long t, long bound) {
  if (e.space() != Space::Plus)
    throw std::invalid_argument("hom_to_spherical: brane must live on X+");
  Brane dual = zero_section_dual(e, t);
  Brane unit = Brane::line(dual.model(), Space::Plus, 0, 0);
  return cech_hom_homology_stabilized(unit, dual, bound);
}

std::string verdict_name(SphericalVerdict v) {
  switch (v) {
    case SphericalVerdict::Spherical: return "Spherical";
    case SphericalVerdict::Zero: return "Zero";
    case SphericalVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string CoveringCertificate::to_json_string(const TablePtr& table) const {
  nlohmann::ordered_json j;
  j["verified"] = verified;
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& en : entries) {
    nlohmann::ordered_json e;
    e["variable"] = table->var(en.var).name;
    e["power"] = en.power;
    e["coeffs"] = nlohmann::ordered_json::array();
    for (const auto& c : en.coeffs) e["coeffs"].push_back(c.str());
    j["entries"].push_back(e);
  }
  return j.dump(2);
}

std::string ClassifyResult::str() const {
  std::ostringstream out;
  out << "verdict: " << verdict_name(verdict)
      << (exact ? " (exact)" : " (truncated evidence)") << "\n";
  if (covering) out << "covering certificate: verified\n";
  if (contraction) out << "contracting homotopy: verified\n";
  out << "Ext(S,S) table:\n" << table.str();
  return out.str();
}

std::string ClassifyResult::to_json_string(const Brane& s) const {
  nlohmann::ordered_json j;
  j["verdict"] = verdict_name(verdict);
  j["exact"] = exact;
  j["table"] = nlohmann::json::parse(table.to_json_string());
  if (covering)
    j["covering"] = nlohmann::json::parse(
        covering->to_json_string(s.model()->table()));
  if (contraction)
    j["contraction"] = nlohmann::json::parse(contraction->to_json_string(s));
  return j.dump(2);
}

namespace {

// Tries x_v^N = sum_j g_j fbar_j for each x-variable, N <= nmax.
std::optional<CoveringCertificate> covering_certificate(
    const ModelPtr& xmodel, const std::vector<BigradedPolynomial>& fbar,
    long nmax) {
  auto table = xmodel->table();
  CoveringCertificate cert;
  for (std::size_t v = 0; v < table->arity(); ++v) {
    bool found = false;
    for (long npow = 1; npow <= nmax && !found; ++npow) {
      // unknowns: for each j, coefficients of g_j in the required bidegree
      long gv = table->var(v).gauge, rv = table->var(v).r;
      std::vector<std::vector<Exponents>> bases;
      std::size_t total = 0;
      for (const auto& fb : fbar) {
        auto deg = fb.bidegree();
        if (!deg) {
          bases.push_back({});
          continue;
        }
        long need_g = npow * gv - deg->gauge, need_r = npow * rv - deg->r;
        if (need_g < 0) {
          bases.push_back({});
          continue;
        }
        bases.push_back(
            graded_basis(need_g, need_r, std::abs(need_g), *table));
        total += bases.back().size();
      }
      if (total == 0) continue;
      // target: coefficients of x_v^N in the span of products
      Exponents target(table->arity(), 0);
      target[v] = static_cast<int32_t>(npow);
      // row space: all monomials of the product bidegree
      auto rows =
          graded_basis(npow * gv, npow * rv, npow, *table);
      std::map<Exponents, std::size_t, GrlexLess> rowidx;
      for (std::size_t r = 0; r < rows.size(); ++r) rowidx[rows[r]] = r;
      QMatrix a(rows.size(), total);
      std::size_t col = 0;
      for (std::size_t jf = 0; jf < fbar.size(); ++jf)
        for (const auto& mono : bases[jf]) {
          for (const auto& [fe, fc] : fbar[jf].terms()) {
            Exponents prod = mono;
            for (std::size_t q = 0; q < prod.size(); ++q) prod[q] += fe[q];
            auto it = rowidx.find(prod);
            if (it != rowidx.end()) a.at(it->second, col) += fc;
          }
          ++col;
        }
      QVector rhs(rows.size(), Rational(0));
      auto itt = rowidx.find(target);
      if (itt == rowidx.end()) continue;
      rhs[itt->second] = 1;
      auto sol = solve(a, rhs);
      if (!sol) continue;
      CoveringCertificate::Entry entry{v, npow, {}};
      std::size_t c0 = 0;
      for (std::size_t jf = 0; jf < fbar.size(); ++jf) {
        BigradedPolynomial g = BigradedPolynomial::zero(table);
        for (const auto& mono : bases[jf]) g.add_term(mono, (*sol)[c0++]);
        entry.coeffs.push_back(g);
      }
      cert.entries.push_back(std::move(entry));
      found = true;
    }
    if (!found) return std::nullopt;
  }
  // exact re-verification
  cert.verified = true;
  for (const auto& en : cert.entries) {
    BigradedPolynomial acc = BigradedPolynomial::zero(table);
    for (std::size_t jf = 0; jf < fbar.size(); ++jf)
      acc += en.coeffs[jf] * fbar[jf];
    Exponents tgt(table->arity(), 0);
    tgt[en.var] = static_cast<int32_t>(en.power);
    if (!(acc == BigradedPolynomial::monomial(table, tgt, 1)))
      cert.verified = false;
  }
  if (!cert.verified) return std::nullopt;
  return cert;
}

}  // namespace

ClassifyResult classify_spherical(const Splitting& s, long t, long bound) {
  ClassifyResult res;
  Brane sph = build_spherical(s, t);
  auto dec = s.model->decompose();
  ModelPtr xm = x_restricted_model(s.model);
  std::vector<BigradedPolynomial> fbar;
  bool all_zero = true;
  for (const auto& fp : s.f) {
    fbar.push_back(restrict_to_x(fp, dec.x_indices, xm->table()));
    all_zero = all_zero && fbar.back().is_zero();
  }

  Brane dual = zero_section_dual(sph, t);
  Brane unit = Brane::line(dual.model(), Space::Plus, 0, 0);

  // Zero route: exact certificates.
  res.covering = covering_certificate(xm, fbar, bound);
  res.contraction = cech_contract_identity(sph, bound);
  if ((res.covering && res.covering->verified) ||
      (res.contraction && res.contraction->verified)) {
    res.verdict = SphericalVerdict::Zero;
    res.exact = true;
    res.table = cech_hom_homology(unit, dual, bound);
    return res;
  }

  if (all_zero) {
    // Pure Koszul: the dual complex has zero differential, so the table is
    // exact once the enumeration covers every twist that can contribute.
    long need = 0;
    for (const auto& sm : dual.summands())
      need = std::max(need, std::abs(sm.k) + static_cast<long>(
                                                 dec.x_indices.size()));
    res.table = cech_hom_homology(unit, dual, std::max(bound, need));
    res.table.stabilized = true;
    res.exact = true;
    res.verdict = res.table.total() == 2 ? SphericalVerdict::Spherical
                                         : SphericalVerdict::Inconclusive;
    return res;
  }

  res.table = cech_hom_homology_stabilized(unit, dual, bound);
  if (res.table.stabilized && res.table.total() == 2) {
    // identity class must survive: the constant map into the empty-subset
    // dual summand is closed; check it is not a boundary.
    CechHomSpace cm1(unit, dual, Space::Plus, -1, bound);
    CechHomSpace c0(unit, dual, Space::Plus, 0, bound);
    QMatrix dm1 = cm1.differential_to(c0);
    BraneMap u(unit, dual, 0);
    // the empty-subset summand of S(t) dualizes to twist 0, shift 0
    for (std::size_t i = 0; i < dual.size(); ++i)
      if (dual.summand(i).k == 0 && dual.summand(i).n == 0) {
        u.set_entry(i, 0,
                    BigradedPolynomial::constant(dual.model()->table(), 1));
        break;
      }
    bool id_nonzero = !solve(dm1, c0.embed(u)).has_value();
    res.verdict = id_nonzero ? SphericalVerdict::Spherical
                             : SphericalVerdict::Inconclusive;
  } else {
    res.verdict = SphericalVerdict::Inconclusive;
  }
  return res;
}

Brane build_twist_cone(const Brane& e, long t, long bound) {
  if (e.space() != Space::Plus)
    throw std::invalid_argument("build_twist_cone: brane must live on X+");
  Window w = window_at(*e.model(), t);
  if (!in_window(e, w))
    throw std::domain_error("build_twist_cone: brane is not in window t");
  auto model = e.model();
  auto table = model->table();
  Splitting s = split_w(model);
  Brane sph = build_spherical(s, t);

  // H = H^0(zeta^* E^dual(t), d^dual): one slot per O(t)-summand of E.
  std::vector<std::size_t> h_slots;
  for (std::size_t a = 0; a < e.size(); ++a)
    if (e.summand(a).k == t) h_slots.push_back(a);

  if (h_slots.empty())
    return twist_shift(cone(BraneMap::zero(e, Brane::zero(model, e.space()), 0)),
                       0, -1);

  auto dec = model->decompose();
  // H^dual (x) S(t): one S(t)-copy per slot, shifted by the slot's n; the
  // connecting blocks carry the transposed constants of d_E between O(t)
  // summands, against the exterior parity of S.
  std::vector<Summand> summands;
  const std::size_t ns = sph.size();
  for (auto a : h_slots)
    for (const auto& ss : sph.summands())
      summands.push_back({ss.k, ss.n + e.summand(a).n});
  std::vector<std::vector<BigradedPolynomial>> d(
      summands.size(), std::vector<BigradedPolynomial>(
                           summands.size(), BigradedPolynomial::zero(table)));
  auto sc = build_subset_complex(model, Space::Plus, s.y_vars, s.f, t, 0,
                                 nullptr);
  for (std::size_t ha = 0; ha < h_slots.size(); ++ha) {
    for (std::size_t i = 0; i < ns; ++i)
      for (std::size_t j = 0; j < ns; ++j)
        d[ha * ns + i][ha * ns + j] = sph.entry(i, j);
    for (std::size_t hb = 0; hb < h_slots.size(); ++hb) {
      if (ha == hb) continue;
      // Constant component of d_E between the O(t)-summands; dualizing H
      // twice leaves the direction alone, so the block runs hb-copy ->
      // ha-copy like d_E, against the exterior parity of S. Only the
      // constant part of a gauge-0 entry survives the zero-section
      // restriction.
      Rational c = e.entry(h_slots[ha], h_slots[hb])
                       .coefficient(Exponents(table->arity(), 0));
      if (c == 0) continue;
      for (std::size_t i = 0; i < ns; ++i) {
        int par = std::popcount(sc.masks[i]) % 2 == 0 ? 1 : -1;
        d[ha * ns + i][hb * ns + i] +=
            BigradedPolynomial::constant(table, c * par);
      }
    }
  }
  Brane hs(model, Space::Plus, std::move(summands), std::move(d));
  {
    auto rep = check_brane(hs);
    if (!rep.ok)
      throw std::logic_error("build_twist_cone: H (x) S(t) is not a brane:\n" +
                             rep.str());
  }

  // eps_0: project E onto its O(t)-summands, include as the top exterior
  // piece of the matching S(t)-copy.
  BraneMap eps0(e, hs, 0);
  std::size_t empty_slot = sc.slot.at(0u);
  for (std::size_t ha = 0; ha < h_slots.size(); ++ha)
    eps0.set_entry(ha * ns + empty_slot, h_slots[ha],
                   BigradedPolynomial::constant(table, 1));

  // corrections of positive exterior grade, one affine solve
  long maxdeg = 1;
  for (std::size_t i = 0; i < hs.size(); ++i)
    for (std::size_t j = 0; j < hs.size(); ++j)
      maxdeg = std::max(maxdeg, hs.entry(i, j).max_total_degree());
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = 0; j < e.size(); ++j)
      maxdeg = std::max(maxdeg, e.entry(i, j).max_total_degree());
  MapSpace dom(e, hs, 0, bound, [&](std::size_t i, std::size_t) {
    return (i % ns) != empty_slot;
  });
  MapSpace cod(e, hs, 1, bound + maxdeg + 1);
  auto corr = solve_operator(
      dom, cod, [](const BraneMap& x) { return x.differential(); },
      -eps0.differential());
  if (!corr)
    throw BoundError("build_twist_cone: eps correction infeasible at bound " +
                     std::to_string(bound) + "; raise bound");
  BraneMap eps = eps0 + *corr;
  if (!eps.is_closed())
    throw std::logic_error("build_twist_cone: eps not closed");
  return twist_shift(cone(eps), 0, -1);
}

TwistCompareResult twist_compare(const Brane& e, long t, long bound) {
  MonodromyResult m = monodromy(e, t, bound);
  Brane c = build_twist_cone(e, t, bound);
  auto cert = find_equivalence(m.brane, c, bound);
  if (!cert)
    throw CertificateError(
        "twist_compare: no homotopy equivalence certificate found at bound " +
        std::to_string(bound));
  return TwistCompareResult{m.brane, c, *cert};
}

}  // namespace branewin
