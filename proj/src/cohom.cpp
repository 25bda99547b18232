#include "branewin/cohom.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace branewin {

long CohomologyTable::total() const {
  long t = 0;
  for (const auto& [k, v] : dims) t += v;
  return t;
}

long CohomologyTable::dim(long p, long r) const {
  auto it = dims.find({p, r});
  return it == dims.end() ? 0 : it->second;
}

std::map<long, long> CohomologyTable::r_marginal() const {
  std::map<long, long> m;
  for (const auto& [k, v] : dims) m[k.second] += v;
  return m;
}

void CohomologyTable::add(long p, long r, long d) {
  if (d == 0) return;
  dims[{p, r}] += d;
  if (dims[{p, r}] == 0) dims.erase({p, r});
}

std::string CohomologyTable::str() const {
  std::ostringstream out;
  if (dims.empty()) out << "  (zero)\n";
  for (const auto& [k, v] : dims)
    out << "  p=" << k.first << " r=" << k.second << "  dim " << v << "\n";
  out << "  bound " << bound << ", stabilized " << (stabilized ? "yes" : "no")
      << "\n";
  return out.str();
}

std::string CohomologyTable::to_json_string() const {
  nlohmann::ordered_json j;
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& [k, v] : dims)
    j["entries"].push_back({{"p", k.first}, {"r", k.second}, {"dim", v}});
  j["bound"] = bound;
  j["stabilized"] = stabilized;
  return j.dump(2);
}

namespace {

// Enumerates exponent vectors with sum |e_i| <= bound, prescribed bidegree,
// negative exponents permitted exactly where `neg` is set.
void enumerate_signed_rec(std::size_t i, long budget, long g_left, long r_left,
                          const VariableTable& table,
                          const std::vector<bool>& neg, Exponents& cur,
                          std::vector<Exponents>& out) {
  const std::size_t n = table.arity();
  if (i == n) {
    if (g_left == 0 && r_left == 0) out.push_back(cur);
    return;
  }
  long gmax = 0, rmax = 0;
  for (std::size_t j = i; j < n; ++j) {
    gmax = std::max(gmax, std::abs(table.var(j).gauge));
    rmax = std::max(rmax, std::abs(table.var(j).r));
  }
  if (std::abs(g_left) > budget * gmax || std::abs(r_left) > budget * rmax)
    return;
  long lo = neg[i] ? -budget : 0;
  for (long e = lo; e <= budget; ++e) {
    cur[i] = static_cast<int32_t>(e);
    enumerate_signed_rec(i + 1, budget - std::abs(e),
                         g_left - e * table.var(i).gauge,
                         r_left - e * table.var(i).r, table, neg, cur, out);
  }
  cur[i] = 0;
}

std::vector<Exponents> enumerate_signed(const VariableTable& table,
                                        const std::vector<bool>& neg, long g,
                                        long r, long bound) {
  std::vector<Exponents> out;
  Exponents cur(table.arity(), 0);
  enumerate_signed_rec(0, bound, g, r, table, neg, cur, out);
  std::sort(out.begin(), out.end(), [](const Exponents& a,
                                       const Exponents& b) {
    long da = 0, db = 0;
    for (auto x : a) da += std::abs(x);
    for (auto x : b) db += std::abs(x);
    if (da != db) return da < db;
    return a < b;
  });
  return out;
}

std::vector<std::size_t> side_variable_indices(const GaugedModel& m,
                                               Space space) {
  auto dec = m.decompose();
  if (space == Space::Plus) return dec.x_indices;
  if (space == Space::Minus) return dec.y_indices;
  throw std::invalid_argument("side required (plus or minus)");
}

}  // namespace

std::vector<Exponents> section_basis(const GaugedModel& m, Space space,
                                     long gauge, long r, long bound) {
  const auto& table = *m.table();
  if (space == Space::Stack) return graded_basis(gauge, r, bound, table);
  auto side = side_variable_indices(m, space);
  if (side.empty())
    throw std::invalid_argument("section_basis: empty side " +
                                space_name(space));
  if (side.size() >= 2) return graded_basis(gauge, r, bound, table);
  // Single semistable variable: its exponent ranges over Z.
  std::vector<bool> neg(table.arity(), false);
  neg[side[0]] = true;
  return enumerate_signed(table, neg, gauge, r, bound);
}

CohomologyTable proj_line_cohomology(const GaugedModel& m, Space side, long k,
                                     long rmin, long rmax) {
  auto vars = side_variable_indices(m, side);
  if (vars.empty())
    throw std::invalid_argument("proj_line_cohomology: empty side");
  std::vector<Variable> sub;
  long d_side = 0, r_side = 0;
  for (auto i : vars) {
    sub.push_back(m.table()->var(i));
    d_side += m.table()->var(i).gauge;
    r_side += m.table()->var(i).r;
  }
  VariableTable subtable(sub);
  CohomologyTable tab;
  tab.stabilized = true;  // exact; no truncation enters
  const long ptop = static_cast<long>(vars.size()) - 1;
  for (long r = rmin; r <= rmax; ++r) {
    // H^0: monomials of gauge degree k.
    long h0 = static_cast<long>(
        graded_basis(k, r, std::abs(k), subtable).size());
    tab.add(0, r, h0);
    // H^top: dual classes e -> x^{-e-1}, gauge -k - d_side, R -r - r_side.
    long gdual = -k - d_side, rdual = -r - r_side;
    long htop = static_cast<long>(
        graded_basis(gdual, rdual, std::abs(gdual), subtable).size());
    tab.add(ptop, r, htop);
  }
  return tab;
}

CohomologyTable line_cohomology(const GaugedModel& m, Space space, long k,
                                long rmin, long rmax, long bound) {
  CohomologyTable tab;
  tab.bound = bound;
  tab.stabilized = true;
  const auto& table = *m.table();
  if (space == Space::Stack) {
    for (long r = rmin; r <= rmax; ++r)
      tab.add(0, r, static_cast<long>(graded_basis(k, r, bound, table).size()));
    return tab;
  }
  auto side = side_variable_indices(m, space);
  if (side.empty())
    throw std::invalid_argument("line_cohomology: empty side " +
                                space_name(space));
  for (long r = rmin; r <= rmax; ++r)
    tab.add(0, r,
            static_cast<long>(section_basis(m, space, k, r, bound).size()));
  if (side.size() >= 2) {
    // Top row: dual classes along the side tensored with fiber monomials.
    // Enumerated on the sign-flipped side table; see Lemma-style assembly.
    std::vector<Variable> flipped;
    long d_side = 0, r_side = 0;
    std::vector<bool> is_side(table.arity(), false);
    for (auto i : side) is_side[i] = true;
    for (std::size_t i = 0; i < table.arity(); ++i) {
      Variable v = table.var(i);
      if (is_side[i]) {
        d_side += v.gauge;
        r_side += v.r;
        v.gauge = -v.gauge;
        v.r = -v.r;
      }
      flipped.push_back(v);
    }
    VariableTable ftable(flipped);
    const long ptop = static_cast<long>(side.size()) - 1;
    long budget = bound - static_cast<long>(side.size());
    if (budget >= 0) {
      for (long r = rmin; r <= rmax; ++r) {
        auto basis = graded_basis(k + d_side, r + r_side, budget, ftable);
        tab.add(ptop, r, static_cast<long>(basis.size()));
      }
    }
  }
  return tab;
}

namespace {

struct GradedBasis {
  // per charge: flat list of (i, j, exponents)
  struct Elem {
    std::size_t i, j;
    Exponents e;
  };
  std::map<long, std::vector<Elem>> elems;
  std::map<long, std::map<std::tuple<std::size_t, std::size_t, Exponents>,
                          std::size_t>>
      index;
};

}  // namespace

CohomologyTable hom_homology_at(const Brane& e, const Brane& f, long bound) {
  if (!same_table(e.model()->table(), f.model()->table()) ||
      e.space() != f.space() ||
      !(e.model()->superpotential() == f.model()->superpotential()))
    throw std::invalid_argument("hom_homology: model/space mismatch");
  const auto& model = *e.model();
  Space space = e.space();
  const auto dec = model.decompose();

  // Degree-0 concentration precondition on a side with a genuine projective
  // base; single-variable sides are affine orbifolds (always concentrated).
  if (space == Space::Plus && dec.x_indices.size() >= 2) {
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = 0; j < e.size(); ++j)
        if (f.summand(i).k - e.summand(j).k <= -dec.d)
          throw std::domain_error(
              "hom_homology: component F[" + std::to_string(i) + "] - E[" +
              std::to_string(j) + "] has twist " +
              std::to_string(f.summand(i).k - e.summand(j).k) +
              " <= -d; cohomology is not concentrated in degree 0 on X+");
  }
  if (space == Space::Minus && dec.y_indices.size() >= 2) {
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = 0; j < e.size(); ++j)
        if (f.summand(i).k - e.summand(j).k >= dec.d)
          throw std::domain_error(
              "hom_homology: component F[" + std::to_string(i) + "] - E[" +
              std::to_string(j) + "] has twist " +
              std::to_string(f.summand(i).k - e.summand(j).k) +
              " >= d; cohomology is not concentrated in degree 0 on X-");
  }

  CohomologyTable tab;
  tab.bound = bound;
  if (e.size() == 0 || f.size() == 0) return tab;

  long max_r = 0;
  for (const auto& v : model.table()->vars())
    max_r = std::max(max_r, std::abs(v.r));
  long max_nd = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < e.size(); ++j)
      max_nd = std::max(max_nd, std::abs(f.summand(i).n - e.summand(j).n));
  const long smin = -bound * max_r - max_nd - 1;
  const long smax = bound * max_r + max_nd + 1;

  GradedBasis gb;
  for (long s = smin; s <= smax + 1; ++s) {
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = 0; j < e.size(); ++j) {
        Bidegree deg = entry_bidegree(f.summand(i), e.summand(j), s);
        for (auto& mono :
             section_basis(model, space, deg.gauge, deg.r, bound)) {
          gb.index[s][{i, j, mono}] = gb.elems[s].size();
          gb.elems[s].push_back({i, j, std::move(mono)});
        }
      }
  }

  auto diff_rank = [&](long s) -> std::size_t {
    const auto& dom = gb.elems[s];
    const auto& codind = gb.index[s + 1];
    const auto codn = gb.elems.count(s + 1) ? gb.elems[s + 1].size() : 0;
    if (dom.empty() || codn == 0) return 0;
    QMatrix mat(codn, dom.size());
    const bool odd = ((s % 2) + 2) % 2 == 1;
    for (std::size_t c = 0; c < dom.size(); ++c) {
      const auto& el = dom[c];
      // d_F . u
      for (std::size_t a = 0; a < f.size(); ++a)
        for (const auto& [mf, cf] : f.entry(a, el.i).terms()) {
          Exponents t = el.e;
          for (std::size_t q = 0; q < t.size(); ++q) t[q] += mf[q];
          auto it = codind.find({a, el.j, t});
          if (it != codind.end()) mat.at(it->second, c) += cf;
        }
      // -(-1)^s u . d_E
      for (std::size_t b = 0; b < e.size(); ++b)
        for (const auto& [mf, cf] : e.entry(el.j, b).terms()) {
          Exponents t = el.e;
          for (std::size_t q = 0; q < t.size(); ++q) t[q] += mf[q];
          auto it = codind.find({el.i, b, t});
          if (it != codind.end())
            mat.at(it->second, c) += (odd ? cf : -cf);
        }
    }
    return rank(mat);
  };

  std::map<long, std::size_t> ranks;
  for (long s = smin - 1; s <= smax; ++s) ranks[s] = diff_rank(s);
  for (long s = smin; s <= smax; ++s) {
    long h = static_cast<long>(gb.elems[s].size()) -
             static_cast<long>(ranks[s]) - static_cast<long>(ranks[s - 1]);
    tab.add(0, s, h);
  }
  return tab;
}

CohomologyTable hom_homology(const Brane& e, const Brane& f, long bound) {
  CohomologyTable t0 = hom_homology_at(e, f, bound);
  CohomologyTable t1 = hom_homology_at(e, f, bound + 1);
  CohomologyTable t2 = hom_homology_at(e, f, bound + 2);
  t0.stabilized = t0.same_dims(t1) && t1.same_dims(t2);
  return t0;
}

// ---------------------------------------------------------------------

CechHomSpace::CechHomSpace(Brane a, Brane b, Space side, long charge,
                           long bound)
    : a_(std::move(a)),
      b_(std::move(b)),
      side_(side),
      charge_(charge),
      bound_(bound) {
  if (!same_table(a_.model()->table(), b_.model()->table()))
    throw std::invalid_argument("cech hom across models");
  side_vars_ = side_variable_indices(*a_.model(), side);
  if (side_vars_.empty())
    throw std::invalid_argument("cech hom: empty side");
  if (side_vars_.size() > 20)
    throw std::invalid_argument("cech hom: side too large");
  const auto& table = *a_.model()->table();
  const uint32_t full = (1u << side_vars_.size()) - 1u;
  std::vector<uint32_t> masks;
  for (uint32_t m = 1; m <= full; ++m) masks.push_back(m);
  std::sort(masks.begin(), masks.end(), [](uint32_t x, uint32_t y) {
    int px = std::popcount(x), py = std::popcount(y);
    if (px != py) return px < py;
    return x < y;
  });
  for (uint32_t mask : masks) {
    std::vector<bool> neg(table.arity(), false);
    for (std::size_t p = 0; p < side_vars_.size(); ++p)
      if (mask & (1u << p)) neg[side_vars_[p]] = true;
    long cech = std::popcount(mask) - 1;
    for (std::size_t i = 0; i < b_.size(); ++i)
      for (std::size_t j = 0; j < a_.size(); ++j) {
        long gauge = b_.summand(i).k - a_.summand(j).k;
        long rdeg =
            charge_ - cech + (b_.summand(i).n - a_.summand(j).n);
        for (auto& mono : enumerate_signed(table, neg, gauge, rdeg, bound_)) {
          index_[{i, j, mask, mono}] = basis_.size();
          basis_.push_back(Elem{i, j, mask, std::move(mono)});
        }
      }
  }
}

long CechHomSpace::cech_degree(std::size_t idx) const {
  return std::popcount(basis_.at(idx).mask) - 1;
}

QMatrix CechHomSpace::differential_to(const CechHomSpace& next) const {
  if (next.charge_ != charge_ + 1)
    throw std::invalid_argument("differential_to: charge mismatch");
  QMatrix mat(next.dim(), dim());
  for (std::size_t c = 0; c < basis_.size(); ++c) {
    const auto& el = basis_[c];
    long s_int = charge_ - (std::popcount(el.mask) - 1);
    const bool odd = ((s_int % 2) + 2) % 2 == 1;
    // Hom differential within the chart.
    for (std::size_t a = 0; a < b_.size(); ++a)
      for (const auto& [mf, cf] : b_.entry(a, el.i).terms()) {
        Exponents t = el.e;
        for (std::size_t q = 0; q < t.size(); ++q) t[q] += mf[q];
        auto it = next.index_.find({a, el.j, el.mask, t});
        if (it != next.index_.end()) mat.at(it->second, c) += cf;
      }
    for (std::size_t bb = 0; bb < a_.size(); ++bb)
      for (const auto& [mf, cf] : a_.entry(el.j, bb).terms()) {
        Exponents t = el.e;
        for (std::size_t q = 0; q < t.size(); ++q) t[q] += mf[q];
        auto it = next.index_.find({el.i, bb, el.mask, t});
        if (it != next.index_.end())
          mat.at(it->second, c) += (odd ? cf : -cf);
      }
    // Signed Cech coboundary.
    Rational outer = odd ? -1 : 1;
    for (std::size_t p = 0; p < side_vars_.size(); ++p) {
      if (el.mask & (1u << p)) continue;
      uint32_t below = el.mask & ((1u << p) - 1u);
      Rational sgn = (std::popcount(below) % 2 == 0) ? outer : -outer;
      auto it = next.index_.find(
          {el.i, el.j, el.mask | (1u << p), el.e});
      if (it != next.index_.end()) mat.at(it->second, c) += sgn;
    }
  }
  return mat;
}

QVector CechHomSpace::embed(const BraneMap& m) const {
  if (!(m.source() == a_) || !(m.target() == b_) || m.charge() != charge_)
    throw std::invalid_argument("embed: map shape mismatch");
  QVector v(dim(), Rational(0));
  for (std::size_t i = 0; i < b_.size(); ++i)
    for (std::size_t j = 0; j < a_.size(); ++j)
      for (const auto& [mono, c] : m.entry(i, j).terms())
        for (std::size_t p = 0; p < side_vars_.size(); ++p) {
          auto it = index_.find({i, j, 1u << p, mono});
          if (it == index_.end())
            throw std::domain_error("embed: monomial exceeds bound");
          v[it->second] = c;
        }
  return v;
}

std::string CechContraction::to_json_string(const Brane& x) const {
  nlohmann::ordered_json j;
  j["bound"] = bound;
  j["verified"] = verified;
  j["terms"] = nlohmann::ordered_json::array();
  for (const auto& [i, jj, mask, e, c] : terms) {
    nlohmann::ordered_json t;
    t["target"] = i;
    t["source"] = jj;
    t["chart"] = mask;
    t["exponents"] = e;
    t["coeff"] = rational_str(c);
    j["terms"].push_back(t);
  }
  j["summands"] = nlohmann::json::parse(x.to_json_string())["summands"];
  return j.dump(2);
}

std::optional<CechContraction> cech_contract_identity(const Brane& x,
                                                      long bound) {
  CechContraction out;
  out.bound = bound;
  if (x.size() == 0) {
    out.verified = true;
    return out;
  }
  long maxdeg = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      maxdeg = std::max(maxdeg, x.entry(i, j).max_total_degree());

  if (x.space() == Space::Stack) {
    MapSpace dom(x, x, -1, bound);
    MapSpace cod(x, x, 0, bound + maxdeg);
    auto h = solve_operator(
        dom, cod, [](const BraneMap& m) { return m.differential(); },
        BraneMap::identity(x));
    if (!h) return std::nullopt;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j)
        for (const auto& [e, c] : h->entry(i, j).terms())
          out.terms.push_back({i, j, 0u, e, c});
    out.verified =
        (h->differential() - BraneMap::identity(x)).is_zero();
    if (!out.verified) return std::nullopt;
    return out;
  }

  CechHomSpace dom(x, x, x.space(), -1, bound);
  CechHomSpace cod(x, x, x.space(), 0, bound + maxdeg);
  QMatrix d = dom.differential_to(cod);
  QVector rhs = cod.embed(BraneMap::identity(x));
  auto h = solve(d, rhs);
  if (!h) return std::nullopt;
  for (std::size_t k = 0; k < h->size(); ++k) {
    if ((*h)[k] == 0) continue;
    const auto& el = dom.basis()[k];
    out.terms.push_back({el.i, el.j, el.mask, el.e, (*h)[k]});
  }
  // Exact re-verification of D(h) = id.
  QVector img = d.apply(*h);
  out.verified = (img == rhs);
  if (!out.verified) return std::nullopt;
  return out;
}

namespace {

struct RrefAccumulator {
  // rows kept in reduced form; returns pivot column if the vector extends
  // the span, nullopt otherwise.
  std::vector<QVector> rows;
  std::vector<std::size_t> pivots;

  std::optional<std::size_t> insert(QVector v) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (v[pivots[r]] != 0) {
        Rational f = v[pivots[r]];
        for (std::size_t c = 0; c < v.size(); ++c)
          v[c] -= f * rows[r][c];
      }
    }
    std::size_t p = 0;
    while (p < v.size() && v[p] == 0) ++p;
    if (p == v.size()) return std::nullopt;
    Rational inv = 1 / v[p];
    for (auto& c : v) c *= inv;
    rows.push_back(std::move(v));
    pivots.push_back(p);
    return p;
  }
};

}  // namespace

CohomologyTable cech_hom_homology(const Brane& a, const Brane& b, long bound) {
  CohomologyTable tab;
  tab.bound = bound;
  if (a.size() == 0 || b.size() == 0) return tab;
  Space side = a.space();
  const auto& model = *a.model();
  auto vars = side_variable_indices(model, side);

  long max_r = 0;
  for (const auto& v : model.table()->vars())
    max_r = std::max(max_r, std::abs(v.r));
  long max_nd = 0;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      max_nd = std::max(max_nd, std::abs(b.summand(i).n - a.summand(j).n));
  const long pmax = static_cast<long>(vars.size()) - 1;
  const long smin = -bound * max_r - max_nd - 1;
  const long smax = bound * max_r + max_nd + pmax + 1;

  std::map<long, CechHomSpace> spaces;
  for (long s = smin - 1; s <= smax + 1; ++s)
    spaces.emplace(s, CechHomSpace(a, b, side, s, bound));

  for (long s = smin; s <= smax; ++s) {
    const auto& cur = spaces.at(s);
    if (cur.dim() == 0) continue;
    QMatrix din = spaces.at(s - 1).differential_to(cur);
    QMatrix dout = cur.differential_to(spaces.at(s + 1));

    RrefAccumulator acc;
    // image of the incoming differential
    for (std::size_t c = 0; c < din.cols(); ++c) {
      QVector col(din.rows());
      for (std::size_t r = 0; r < din.rows(); ++r) col[r] = din.at(r, c);
      acc.insert(std::move(col));
    }
    // kernel vectors that extend the image span represent homology classes
    for (auto& v : kernel_basis(dout)) {
      auto piv = acc.insert(std::move(v));
      if (piv) tab.add(cur.cech_degree(*piv), s, 1);
    }
  }
  return tab;
}

CohomologyTable cech_hom_homology_stabilized(const Brane& a, const Brane& b,
                                             long bound) {
  CohomologyTable t0 = cech_hom_homology(a, b, bound);
  CohomologyTable t1 = cech_hom_homology(a, b, bound + 1);
  CohomologyTable t2 = cech_hom_homology(a, b, bound + 2);
  t0.stabilized = t0.same_r_marginal(t1) && t1.same_r_marginal(t2);
  return t0;
}

}  // namespace branewin
