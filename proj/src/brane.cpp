#include "branewin/brane.hpp"

#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace branewin {

Bidegree entry_bidegree(const Summand& target, const Summand& source,
                        long charge) {
  return Bidegree{target.k - source.k, charge + target.n - source.n};
}

std::string BraneCheckReport::str() const {
  if (ok) return "brane valid: d*d = W*Id\n";
  std::ostringstream out;
  out << "brane INVALID:\n";
  for (const auto& e : errors) out << "  - " << e << "\n";
  return out.str();
}

Brane::Brane(ModelPtr model, Space space, std::vector<Summand> summands,
             std::vector<std::vector<BigradedPolynomial>> d)
    : model_(std::move(model)),
      space_(space),
      summands_(std::move(summands)),
      d_(std::move(d)) {
  if (!model_) throw std::invalid_argument("brane needs a model");
  if (!model_->space_available(space_))
    throw std::invalid_argument("space " + space_name(space_) +
                                " unavailable: decomposition side is empty");
  if (d_.size() != summands_.size())
    throw std::invalid_argument("differential row count mismatch");
  for (const auto& row : d_)
    if (row.size() != summands_.size())
      throw std::invalid_argument("differential column count mismatch");
  for (const auto& row : d_)
    for (const auto& p : row)
      if (!same_table(p.table(), model_->table()))
        throw std::invalid_argument("differential entry on wrong table");
}

Brane Brane::zero(ModelPtr model, Space space) {
  return Brane(std::move(model), space, {}, {});
}

Brane Brane::line(ModelPtr model, Space space, long k, long n) {
  auto table = model->table();
  std::vector<std::vector<BigradedPolynomial>> d{
      {BigradedPolynomial::zero(table)}};
  return Brane(std::move(model), space, {Summand{k, n}}, std::move(d));
}

Brane Brane::with_space(Space s) const {
  return Brane(model_, s, summands_, d_);
}

bool Brane::operator==(const Brane& o) const {
  return same_table(model_->table(), o.model_->table()) &&
         model_->superpotential() == o.model_->superpotential() &&
         space_ == o.space_ && summands_ == o.summands_ && d_ == o.d_;
}

std::string Brane::summand_str() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < summands_.size(); ++i) {
    if (i) out << ", ";
    out << "O(" << summands_[i].k << ")[" << summands_[i].n << "]";
  }
  out << "]";
  return out.str();
}

std::string Brane::to_json_string() const {
  nlohmann::ordered_json j;
  j["model"] = model_->name();
  j["space"] = space_name(space_);
  j["summands"] = nlohmann::ordered_json::array();
  for (const auto& s : summands_)
    j["summands"].push_back({{"k", s.k}, {"n", s.n}});
  j["d"] = nlohmann::ordered_json::array();
  for (const auto& row : d_) {
    auto jrow = nlohmann::ordered_json::array();
    for (const auto& p : row) jrow.push_back(p.str());
    j["d"].push_back(jrow);
  }
  return j.dump(2);
}

Brane Brane::from_json_string(ModelPtr model, const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Space space = Space::Stack;
  if (j.contains("space")) {
    auto s = space_from_name(j.at("space").get<std::string>());
    if (!s) throw std::invalid_argument("bad space in brane file");
    space = *s;
  }
  std::vector<Summand> summands;
  for (const auto& s : j.at("summands"))
    summands.push_back(Summand{s.at("k").get<long>(), s.at("n").get<long>()});
  std::vector<std::vector<BigradedPolynomial>> d;
  for (const auto& row : j.at("d")) {
    std::vector<BigradedPolynomial> r;
    for (const auto& cell : row)
      r.push_back(BigradedPolynomial::parse(model->table(),
                                            cell.get<std::string>()));
    d.push_back(std::move(r));
  }
  return Brane(std::move(model), space, std::move(summands), std::move(d));
}

BraneCheckReport check_brane(const Brane& b) {
  BraneCheckReport rep;
  const std::size_t n = b.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Bidegree want = entry_bidegree(b.summand(i), b.summand(j), 1);
      if (!b.entry(i, j).is_bihomogeneous(want)) {
        std::ostringstream e;
        e << "entry (" << i << "," << j << ") = " << b.entry(i, j).str()
          << " is not bihomogeneous of bidegree (" << want.gauge << ","
          << want.r << ")";
        rep.ok = false;
        rep.errors.push_back(e.str());
      }
    }
  }
  const auto& w = b.model()->superpotential();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      BigradedPolynomial acc =
          BigradedPolynomial::zero(b.model()->table());
      for (std::size_t k = 0; k < n; ++k)
        acc += b.entry(i, k) * b.entry(k, j);
      const BigradedPolynomial want =
          (i == j) ? w : BigradedPolynomial::zero(b.model()->table());
      if (!(acc == want)) {
        std::ostringstream e;
        e << "curvature: (d*d)(" << i << "," << j << ") = " << acc.str()
          << ", expected " << want.str();
        rep.ok = false;
        rep.errors.push_back(e.str());
      }
    }
  }
  return rep;
}

Brane twist_shift(const Brane& b, long k, long n) {
  std::vector<Summand> summands = b.summands();
  for (auto& s : summands) {
    s.k += k;
    s.n += n;
  }
  return Brane(b.model(), b.space(), std::move(summands), b.matrix());
}

Brane direct_sum(const Brane& a, const Brane& b) {
  if (!same_table(a.model()->table(), b.model()->table()) ||
      a.space() != b.space())
    throw std::invalid_argument("direct_sum: model/space mismatch");
  std::vector<Summand> summands = a.summands();
  summands.insert(summands.end(), b.summands().begin(), b.summands().end());
  const std::size_t n = summands.size(), na = a.size();
  std::vector<std::vector<BigradedPolynomial>> d(
      n, std::vector<BigradedPolynomial>(
             n, BigradedPolynomial::zero(a.model()->table())));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) d[i][j] = a.entry(i, j);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      d[na + i][na + j] = b.entry(i, j);
  return Brane(a.model(), a.space(), std::move(summands), std::move(d));
}

BraneMap::BraneMap(Brane source, Brane target, long charge)
    : source_(std::move(source)), target_(std::move(target)), charge_(charge) {
  if (!same_table(source_.model()->table(), target_.model()->table()))
    throw std::invalid_argument("brane map across different models");
  m_.assign(target_.size(),
            std::vector<BigradedPolynomial>(
                source_.size(),
                BigradedPolynomial::zero(source_.model()->table())));
}

BraneMap BraneMap::zero(const Brane& source, const Brane& target,
                        long charge) {
  return BraneMap(source, target, charge);
}

BraneMap BraneMap::identity(const Brane& b) {
  BraneMap id(b, b, 0);
  for (std::size_t i = 0; i < b.size(); ++i)
    id.set_entry(i, i, BigradedPolynomial::constant(b.model()->table(), 1));
  return id;
}

void BraneMap::set_entry(std::size_t i, std::size_t j, BigradedPolynomial p) {
  Bidegree want =
      entry_bidegree(target_.summand(i), source_.summand(j), charge_);
  if (!p.is_bihomogeneous(want))
    throw std::invalid_argument(
        "map entry (" + std::to_string(i) + "," + std::to_string(j) +
        ") = " + p.str() + " not bihomogeneous of bidegree (" +
        std::to_string(want.gauge) + "," + std::to_string(want.r) + ")");
  m_.at(i).at(j) = std::move(p);
}

void BraneMap::add_to_entry(std::size_t i, std::size_t j,
                            const BigradedPolynomial& p) {
  set_entry(i, j, m_.at(i).at(j) + p);
}

bool BraneMap::is_zero() const {
  for (const auto& row : m_)
    for (const auto& p : row)
      if (!p.is_zero()) return false;
  return true;
}

BraneMap BraneMap::operator+(const BraneMap& o) const {
  if (!(source_ == o.source_) || !(target_ == o.target_) ||
      charge_ != o.charge_)
    throw std::invalid_argument("map addition mismatch");
  BraneMap out = *this;
  for (std::size_t i = 0; i < m_.size(); ++i)
    for (std::size_t j = 0; j < m_[i].size(); ++j)
      out.m_[i][j] += o.m_[i][j];
  return out;
}

BraneMap BraneMap::operator-(const BraneMap& o) const {
  return *this + (-o);
}

BraneMap BraneMap::operator*(const Rational& c) const {
  BraneMap out = *this;
  for (auto& row : out.m_)
    for (auto& p : row) p = p * c;
  return out;
}

BraneMap BraneMap::operator-() const { return *this * Rational(-1); }

BraneMap BraneMap::differential() const {
  const bool odd = ((charge_ % 2) + 2) % 2 == 1;
  BraneMap out(source_, target_, charge_ + 1);
  const std::size_t rows = target_.size(), cols = source_.size();
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      BigradedPolynomial acc =
          BigradedPolynomial::zero(source_.model()->table());
      for (std::size_t k = 0; k < rows; ++k)
        acc += target_.entry(i, k) * m_[k][j];
      for (std::size_t k = 0; k < cols; ++k) {
        auto t = m_[i][k] * source_.entry(k, j);
        if (odd)
          acc += t;
        else
          acc -= t;
      }
      out.m_[i][j] = std::move(acc);
    }
  }
  return out;
}

bool BraneMap::operator==(const BraneMap& o) const {
  return source_ == o.source_ && target_ == o.target_ &&
         charge_ == o.charge_ && m_ == o.m_;
}

std::string BraneMap::to_json() const {
  nlohmann::ordered_json j;
  j["charge"] = charge_;
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& row : m_) {
    auto jrow = nlohmann::ordered_json::array();
    for (const auto& p : row) jrow.push_back(p.str());
    j["entries"].push_back(jrow);
  }
  return j.dump();
}

BraneMap compose(const BraneMap& g, const BraneMap& f) {
  if (!(f.target() == g.source()))
    throw std::invalid_argument("compose: middle brane mismatch");
  BraneMap out(f.source(), g.target(), f.charge() + g.charge());
  for (std::size_t i = 0; i < g.target().size(); ++i)
    for (std::size_t j = 0; j < f.source().size(); ++j) {
      BigradedPolynomial acc =
          BigradedPolynomial::zero(f.source().model()->table());
      for (std::size_t k = 0; k < g.source().size(); ++k)
        acc += g.entry(i, k) * f.entry(k, j);
      out.set_entry(i, j, std::move(acc));
    }
  return out;
}

HomComplex::HomComplex(Brane source, Brane target)
    : source_(std::move(source)), target_(std::move(target)) {
  if (!same_table(source_.model()->table(), target_.model()->table()) ||
      source_.space() != target_.space() ||
      !(source_.model()->superpotential() ==
        target_.model()->superpotential()))
    throw std::invalid_argument("hom complex: model/space mismatch");
}

Bidegree HomComplex::component_bidegree(std::size_t i, std::size_t j,
                                        long charge) const {
  return entry_bidegree(target_.summand(i), source_.summand(j), charge);
}

BraneMap HomComplex::apply_differential(const BraneMap& phi) const {
  if (!(phi.source() == source_) || !(phi.target() == target_))
    throw std::invalid_argument("hom complex: map shape mismatch");
  return phi.differential();
}

bool HomComplex::verify_square_zero(long bound) const {
  auto table = source_.model()->table();
  for (std::size_t i = 0; i < target_.size(); ++i)
    for (std::size_t j = 0; j < source_.size(); ++j)
      for (long charge : {0L, 1L}) {
        Bidegree deg = component_bidegree(i, j, charge);
        for (const auto& e : graded_basis(deg.gauge, deg.r, bound, *table)) {
          BraneMap phi(source_, target_, charge);
          phi.set_entry(i, j, BigradedPolynomial::monomial(table, e, 1));
          if (!phi.differential().differential().is_zero()) return false;
        }
      }
  return true;
}

Brane cone(const BraneMap& phi) {
  if (phi.charge() != 0)
    throw std::invalid_argument("cone: map must have R-charge 0");
  if (!phi.is_closed())
    throw std::invalid_argument("cone: map must be closed");
  const Brane& e = phi.source();
  const Brane& f = phi.target();
  if (e.space() != f.space())
    throw std::invalid_argument("cone: space mismatch");
  auto table = e.model()->table();
  std::vector<Summand> summands;
  for (const auto& s : e.summands()) summands.push_back({s.k, s.n + 1});
  for (const auto& s : f.summands()) summands.push_back(s);
  const std::size_t ne = e.size(), n = ne + f.size();
  std::vector<std::vector<BigradedPolynomial>> d(
      n, std::vector<BigradedPolynomial>(n, BigradedPolynomial::zero(table)));
  for (std::size_t i = 0; i < ne; ++i)
    for (std::size_t j = 0; j < ne; ++j) d[i][j] = -e.entry(i, j);
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < f.size(); ++j)
      d[ne + i][ne + j] = f.entry(i, j);
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < ne; ++j) d[ne + i][j] = phi.entry(i, j);
  return Brane(e.model(), e.space(), std::move(summands), std::move(d));
}

HomotopyCertificate HomotopyCertificate::identity(const Brane& x) {
  return HomotopyCertificate{x, x, BraneMap::identity(x),
                             BraneMap::identity(x), BraneMap::zero(x, x, -1),
                             BraneMap::zero(x, x, -1)};
}

bool HomotopyCertificate::verify() const {
  if (f.charge() != 0 || g.charge() != 0) return false;
  if (h_a.charge() != -1 || h_b.charge() != -1) return false;
  if (!(f.source() == a) || !(f.target() == b)) return false;
  if (!(g.source() == b) || !(g.target() == a)) return false;
  if (!f.is_closed() || !g.is_closed()) return false;
  BraneMap gf = compose(g, f);
  BraneMap fg = compose(f, g);
  if (!((gf - BraneMap::identity(a)) == h_a.differential())) return false;
  if (!((fg - BraneMap::identity(b)) == h_b.differential())) return false;
  return true;
}

std::string HomotopyCertificate::to_json_string() const {
  nlohmann::ordered_json j;
  j["a_summands"] = nlohmann::json::parse(a.to_json_string())["summands"];
  j["b_summands"] = nlohmann::json::parse(b.to_json_string())["summands"];
  j["f"] = nlohmann::json::parse(f.to_json());
  j["g"] = nlohmann::json::parse(g.to_json());
  j["h_a"] = nlohmann::json::parse(h_a.to_json());
  j["h_b"] = nlohmann::json::parse(h_b.to_json());
  j["verified"] = verify();
  return j.dump(2);
}

HomotopyCertificate compose_certificates(const HomotopyCertificate& ab,
                                         const HomotopyCertificate& bc) {
  if (!(ab.b == bc.a))
    throw std::invalid_argument("certificate composition mismatch");
  HomotopyCertificate out{
      ab.a,
      bc.b,
      compose(bc.f, ab.f),
      compose(ab.g, bc.g),
      ab.h_a + compose(ab.g, compose(bc.h_a, ab.f)),
      bc.h_b + compose(bc.f, compose(ab.h_b, bc.g))};
  return out;
}

HomotopyCertificate invert_certificate(const HomotopyCertificate& c) {
  return HomotopyCertificate{c.b, c.a, c.g, c.f, c.h_b, c.h_a};
}

namespace {

// Picks a cancellable differential entry: distinct summands, nonzero
// constant. Deterministic scan order.
std::optional<std::pair<std::size_t, std::size_t>> find_unit(const Brane& b) {
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (i == j) continue;
      const auto& p = b.entry(i, j);
      if (p.term_count() == 1 &&
          total_degree(p.terms().begin()->first) == 0)
        return std::make_pair(i, j);
    }
  return std::nullopt;
}

// One cancellation step; formulas verified in the unit tests. The unit is
// u = d[i][j] (source j, target i). Remaining summands r keep
// d'[r'][r] = d[r'][r] - d[r'][j] u^{-1} d[i][r].
std::pair<Brane, HomotopyCertificate> cancel_once(const Brane& m,
                                                  std::size_t ui,
                                                  std::size_t uj) {
  auto table = m.model()->table();
  const Rational u = m.entry(ui, uj).terms().begin()->second;
  const Rational uinv = 1 / u;
  std::vector<std::size_t> rest;
  for (std::size_t s = 0; s < m.size(); ++s)
    if (s != ui && s != uj) rest.push_back(s);

  std::vector<Summand> summands;
  for (auto r : rest) summands.push_back(m.summand(r));
  std::vector<std::vector<BigradedPolynomial>> d(
      rest.size(), std::vector<BigradedPolynomial>(
                       rest.size(), BigradedPolynomial::zero(table)));
  for (std::size_t a = 0; a < rest.size(); ++a)
    for (std::size_t b = 0; b < rest.size(); ++b)
      d[a][b] = m.entry(rest[a], rest[b]) -
                m.entry(rest[a], uj) * (m.entry(ui, rest[b]) * uinv);
  Brane red(m.model(), m.space(), std::move(summands), std::move(d));

  // P: m -> red,   P[r][rest] = id, P[r][ui] = -d[r][uj]*u^{-1}, P[r][uj]=0
  BraneMap p(m, red, 0);
  for (std::size_t a = 0; a < rest.size(); ++a) {
    p.set_entry(a, rest[a], BigradedPolynomial::constant(table, 1));
    p.set_entry(a, ui, m.entry(rest[a], uj) * (-uinv));
  }
  // J: red -> m,   J[rest][r] = id, J[uj][r] = -u^{-1} d[ui][r], J[ui][r]=0
  BraneMap jmap(red, m, 0);
  for (std::size_t a = 0; a < rest.size(); ++a) {
    jmap.set_entry(rest[a], a, BigradedPolynomial::constant(table, 1));
    jmap.set_entry(uj, a, m.entry(ui, rest[a]) * (-uinv));
  }
  // d(h) = J.P - id with h[uj][ui] = -u^{-1}.
  BraneMap h(m, m, -1);
  h.set_entry(uj, ui, BigradedPolynomial::constant(table, -uinv));

  HomotopyCertificate cert{m,
                           red,
                           p,
                           jmap,
                           h,
                           BraneMap::zero(red, red, -1)};
  return {red, cert};
}

}  // namespace

ReductionResult cancel_unit_pairs(const Brane& b) {
  Brane cur = b;
  HomotopyCertificate cert = HomotopyCertificate::identity(b);
  for (;;) {
    auto unit = find_unit(cur);
    if (!unit) break;
    auto [red, step] = cancel_once(cur, unit->first, unit->second);
    cert = compose_certificates(cert, step);
    cur = red;
  }
  return ReductionResult{cur, cert};
}

}  // namespace branewin
