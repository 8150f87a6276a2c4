#include "zonopref/lp.hpp"

#include "zonopref/error.hpp"

namespace zonopref::lp {

namespace {

class Tableau {
 public:
  Tableau(std::vector<Vec> rows, Vec rhs, std::vector<size_t> basis, size_t columns)
      : rows_(std::move(rows)), rhs_(std::move(rhs)), basis_(std::move(basis)),
        columns_(columns), barred_(columns, 0) {}

  void bar(size_t column) { barred_[column] = 1; }

  // Maximizes cost . x over the current basis. False when unbounded.
  bool optimize(const Vec& cost) {
    for (;;) {
      size_t entering = columns_;
      for (size_t j = 0; j < columns_ && entering == columns_; ++j) {
        if (barred_[j] || in_basis(j)) continue;
        Rational reduced = cost[j];
        for (size_t i = 0; i < rows_.size(); ++i)
          if (rows_[i][j] != 0) reduced -= cost[basis_[i]] * rows_[i][j];
        if (reduced > 0) entering = j;
      }
      if (entering == columns_) return true;

      size_t leaving = rows_.size();
      Rational best_ratio;
      for (size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i][entering] <= 0) continue;
        Rational ratio = rhs_[i] / rows_[i][entering];
        if (leaving == rows_.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leaving])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (leaving == rows_.size()) return false;
      pivot(leaving, entering);
    }
  }

  void pivot(size_t row, size_t column) {
    const Rational p = rows_[row][column];
    for (auto& v : rows_[row]) v /= p;
    rhs_[row] /= p;
    for (size_t i = 0; i < rows_.size(); ++i) {
      if (i == row || rows_[i][column] == 0) continue;
      const Rational f = rows_[i][column];
      for (size_t j = 0; j < columns_; ++j)
        if (rows_[row][j] != 0) rows_[i][j] -= f * rows_[row][j];
      rhs_[i] -= f * rhs_[row];
    }
    basis_[row] = column;
  }

  // Pivots artificial columns [first, columns) out of the basis, dropping
  // rows that are redundant.
  void expel(size_t first_artificial) {
    for (size_t i = 0; i < rows_.size();) {
      if (basis_[i] < first_artificial) {
        ++i;
        continue;
      }
      size_t column = first_artificial;
      for (size_t j = 0; j < first_artificial; ++j)
        if (rows_[i][j] != 0) {
          column = j;
          break;
        }
      if (column == first_artificial) {
        rows_.erase(rows_.begin() + static_cast<long>(i));
        rhs_.erase(rhs_.begin() + static_cast<long>(i));
        basis_.erase(basis_.begin() + static_cast<long>(i));
        continue;
      }
      pivot(i, column);
      ++i;
    }
  }

  Vec solution() const {
    Vec x(columns_, 0);
    for (size_t i = 0; i < rows_.size(); ++i) x[basis_[i]] = rhs_[i];
    return x;
  }

 private:
  bool in_basis(size_t j) const {
    for (size_t b : basis_)
      if (b == j) return true;
    return false;
  }

  std::vector<Vec> rows_;
  Vec rhs_;
  std::vector<size_t> basis_;
  size_t columns_;
  std::vector<char> barred_;
};

}  // namespace

Result solve(const LinearProgram& program) {
  const size_t n = program.num_vars;
  if (program.objective.size() != n)
    throw Error(ErrorCode::DimensionMismatch, "objective length differs from variable count");

  // Normalize to nonnegative right-hand sides.
  std::vector<Constraint> cons = program.constraints;
  for (auto& c : cons) {
    if (c.coeffs.size() != n)
      throw Error(ErrorCode::DimensionMismatch, "constraint length differs from variable count");
    if (c.rhs < 0) {
      for (auto& a : c.coeffs) a = -a;
      c.rhs = -c.rhs;
      if (c.sense == Sense::LessEq)
        c.sense = Sense::GreaterEq;
      else if (c.sense == Sense::GreaterEq)
        c.sense = Sense::LessEq;
    }
  }

  size_t slack_count = 0, artificial_count = 0;
  for (const auto& c : cons) {
    if (c.sense != Sense::Equal) ++slack_count;
    if (c.sense != Sense::LessEq) ++artificial_count;
  }
  const size_t first_slack = n;
  const size_t first_artificial = n + slack_count;
  const size_t columns = first_artificial + artificial_count;

  std::vector<Vec> rows;
  Vec rhs;
  std::vector<size_t> basis;
  size_t next_slack = first_slack, next_artificial = first_artificial;
  for (const auto& c : cons) {
    Vec row(columns, 0);
    for (size_t j = 0; j < n; ++j) row[j] = c.coeffs[j];
    switch (c.sense) {
      case Sense::LessEq:
        row[next_slack] = 1;
        basis.push_back(next_slack++);
        break;
      case Sense::GreaterEq:
        row[next_slack++] = -1;
        row[next_artificial] = 1;
        basis.push_back(next_artificial++);
        break;
      case Sense::Equal:
        row[next_artificial] = 1;
        basis.push_back(next_artificial++);
        break;
    }
    rows.push_back(std::move(row));
    rhs.push_back(c.rhs);
  }

  Tableau tableau(std::move(rows), std::move(rhs), std::move(basis), columns);
  Result result;
  if (artificial_count > 0) {
    Vec phase1(columns, 0);
    for (size_t j = first_artificial; j < columns; ++j) phase1[j] = -1;
    tableau.optimize(phase1);
    Vec x = tableau.solution();
    for (size_t j = first_artificial; j < columns; ++j)
      if (x[j] != 0) {
        result.status = Status::Infeasible;
        return result;
      }
    tableau.expel(first_artificial);
    for (size_t j = first_artificial; j < columns; ++j) tableau.bar(j);
  }

  Vec cost(columns, 0);
  for (size_t j = 0; j < n; ++j) cost[j] = program.objective[j];
  if (!tableau.optimize(cost)) {
    result.status = Status::Unbounded;
    return result;
  }
  Vec x = tableau.solution();
  result.status = Status::Optimal;
  result.x.assign(x.begin(), x.begin() + static_cast<long>(n));
  result.value = 0;
  for (size_t j = 0; j < n; ++j) result.value += program.objective[j] * result.x[j];
  return result;
}

}  // namespace zonopref::lp
