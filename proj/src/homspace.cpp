#include "branewin/homspace.hpp"

#include <stdexcept>

namespace branewin {

MapSpace::MapSpace(Brane source, Brane target, long charge, long bound,
                   ComponentFilter filter)
    : source_(std::move(source)),
      target_(std::move(target)),
      charge_(charge),
      bound_(bound) {
  const auto& table = *source_.model()->table();
  for (std::size_t i = 0; i < target_.size(); ++i) {
    for (std::size_t j = 0; j < source_.size(); ++j) {
      if (filter && !filter(i, j)) continue;
      Bidegree deg =
          entry_bidegree(target_.summand(i), source_.summand(j), charge_);
      for (auto& e : graded_basis(deg.gauge, deg.r, bound_, table)) {
        index_[{i, j, e}] = basis_.size();
        basis_.push_back(Elem{i, j, std::move(e)});
      }
    }
  }
}

BraneMap MapSpace::from_coords(const QVector& v) const {
  if (v.size() != basis_.size())
    throw std::invalid_argument("from_coords: dimension mismatch");
  BraneMap m(source_, target_, charge_);
  auto table = source_.model()->table();
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    if (v[k] == 0) continue;
    m.add_to_entry(basis_[k].i, basis_[k].j,
                   BigradedPolynomial::monomial(table, basis_[k].e, v[k]));
  }
  return m;
}

QVector MapSpace::to_coords(const BraneMap& m) const {
  if (!(m.source() == source_) || !(m.target() == target_) ||
      m.charge() != charge_)
    throw std::invalid_argument("to_coords: map shape mismatch");
  QVector v(basis_.size(), Rational(0));
  for (std::size_t i = 0; i < target_.size(); ++i)
    for (std::size_t j = 0; j < source_.size(); ++j)
      for (const auto& [e, c] : m.entry(i, j).terms()) {
        auto it = index_.find({i, j, e});
        if (it == index_.end())
          throw std::domain_error(
              "to_coords: map outside the truncated span (bound " +
              std::to_string(bound_) + ")");
        v[it->second] = c;
      }
  return v;
}

bool MapSpace::contains(const BraneMap& m) const {
  for (std::size_t i = 0; i < target_.size(); ++i)
    for (std::size_t j = 0; j < source_.size(); ++j)
      for (const auto& [e, c] : m.entry(i, j).terms())
        if (index_.find({i, j, e}) == index_.end()) return false;
  return true;
}

QMatrix operator_matrix(const MapSpace& domain, const MapSpace& codomain,
                        const std::function<BraneMap(const BraneMap&)>& op) {
  QMatrix a(codomain.dim(), domain.dim());
  QVector unit(domain.dim(), Rational(0));
  for (std::size_t k = 0; k < domain.dim(); ++k) {
    unit[k] = 1;
    QVector col = codomain.to_coords(op(domain.from_coords(unit)));
    unit[k] = 0;
    for (std::size_t r = 0; r < codomain.dim(); ++r) a.at(r, k) = col[r];
  }
  return a;
}

std::optional<BraneMap> solve_operator(
    const MapSpace& domain, const MapSpace& codomain,
    const std::function<BraneMap(const BraneMap&)>& op, const BraneMap& rhs) {
  QMatrix a = operator_matrix(domain, codomain, op);
  auto x = solve(a, codomain.to_coords(rhs));
  if (!x) return std::nullopt;
  return domain.from_coords(*x);
}

std::optional<std::vector<BraneMap>> solve_system(
    const std::vector<const MapSpace*>& blocks,
    const std::vector<LinearEquation>& equations) {
  std::size_t total = 0;
  std::vector<std::size_t> offset;
  for (const auto* b : blocks) {
    offset.push_back(total);
    total += b->dim();
  }
  std::size_t rows = 0;
  for (const auto& eq : equations) rows += eq.codomain->dim();

  auto assemble = [&](const QVector& v) {
    std::vector<BraneMap> maps;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      QVector part(v.begin() + offset[b],
                   v.begin() + offset[b] + blocks[b]->dim());
      maps.push_back(blocks[b]->from_coords(part));
    }
    return maps;
  };

  QMatrix a(rows, total);
  QVector rhs(rows, Rational(0));
  // Column k of the big matrix: op applied to the k-th unit, minus op(0)
  // (affine operators are allowed in principle; ours are linear so op(0)=0).
  QVector zero(total, Rational(0));
  std::vector<QVector> eq_at_zero;
  {
    auto maps = assemble(zero);
    for (const auto& eq : equations)
      eq_at_zero.push_back(eq.codomain->to_coords(eq.op(maps)));
  }
  for (std::size_t k = 0; k < total; ++k) {
    QVector v = zero;
    v[k] = 1;
    auto maps = assemble(v);
    std::size_t r0 = 0;
    for (std::size_t q = 0; q < equations.size(); ++q) {
      QVector col = equations[q].codomain->to_coords(equations[q].op(maps));
      for (std::size_t r = 0; r < col.size(); ++r)
        a.at(r0 + r, k) = col[r] - eq_at_zero[q][r];
      r0 += col.size();
    }
  }
  {
    std::size_t r0 = 0;
    for (std::size_t q = 0; q < equations.size(); ++q) {
      QVector b = equations[q].codomain->to_coords(equations[q].rhs);
      for (std::size_t r = 0; r < b.size(); ++r)
        rhs[r0 + r] = b[r] - eq_at_zero[q][r];
      r0 += b.size();
    }
  }
  auto x = solve(a, rhs);
  if (!x) return std::nullopt;
  return assemble(*x);
}

}  // namespace branewin
