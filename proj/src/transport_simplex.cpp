#include "transport_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "w2het/stats.hpp"

namespace w2het::detail {

namespace {

struct BasisCell {
  int i = -1;
  int j = -1;
  double flow = 0.0;
};

class Simplex {
 public:
  Simplex(const Eigen::VectorXd& supply, const Eigen::VectorXd& demand, const Eigen::MatrixXd& cost)
      : a_(supply), b_(demand), c_(cost), m_(static_cast<int>(supply.size())),
        n_(static_cast<int>(demand.size())) {
    scale_ = std::max(1.0, c_.cwiseAbs().maxCoeff());
    price_tol_ = 1e-11 * scale_;
    row_cells_.resize(static_cast<std::size_t>(m_));
    col_cells_.resize(static_cast<std::size_t>(n_));
    u_.resize(m_);
    v_.resize(n_);
  }

  TransportSolution run() {
    northwest_corner();
    const int max_iter = 20000 + 200 * (m_ + n_);
    int degenerate_run = 0;
    int iter = 0;
    for (; iter < max_iter; ++iter) {
      compute_duals();
      const bool bland = degenerate_run > m_ + n_;
      const auto [ei, ej] = find_entering(bland);
      if (ei < 0) break;  // optimal
      const double theta = pivot(ei, ej);
      degenerate_run = (theta == 0.0) ? degenerate_run + 1 : 0;
    }
    if (iter >= max_iter) {
      throw std::runtime_error("transport simplex: iteration cap exceeded");
    }
    compute_duals();
    return assemble();
  }

 private:
  void add_cell(int i, int j, double flow) {
    const int idx = static_cast<int>(basis_.size());
    basis_.push_back({i, j, flow});
    row_cells_[static_cast<std::size_t>(i)].push_back(idx);
    col_cells_[static_cast<std::size_t>(j)].push_back(idx);
  }

  void northwest_corner() {
    Eigen::VectorXd ra = a_;
    Eigen::VectorXd rb = b_;
    int i = 0;
    int j = 0;
    // staircase walk from (0,0) to (m-1,n-1): exactly m + n - 1 basic cells
    for (;;) {
      const double f = std::max(0.0, std::min(ra(i), rb(j)));
      add_cell(i, j, f);
      ra(i) -= f;
      rb(j) -= f;
      if (i == m_ - 1 && j == n_ - 1) break;
      if (i == m_ - 1) {
        ++j;
      } else if (j == n_ - 1) {
        ++i;
      } else if (ra(i) < rb(j)) {
        ++i;
      } else if (rb(j) < ra(i)) {
        ++j;
      } else {
        ++i;  // tie: row exhausts first, next cell is degenerate
      }
    }
  }

  // Propagate u_i + v_j = c_ij over the basis tree from u_0 = 0.
  void compute_duals() {
    visited_rows_.assign(static_cast<std::size_t>(m_), false);
    visited_cols_.assign(static_cast<std::size_t>(n_), false);
    stack_.clear();
    u_(0) = 0.0;
    visited_rows_[0] = true;
    stack_.push_back(0);  // node ids: rows [0, m), cols [m, m+n)
    while (!stack_.empty()) {
      const int node = stack_.back();
      stack_.pop_back();
      if (node < m_) {
        for (int idx : row_cells_[static_cast<std::size_t>(node)]) {
          const auto& cell = basis_[static_cast<std::size_t>(idx)];
          if (!visited_cols_[static_cast<std::size_t>(cell.j)]) {
            v_(cell.j) = c_(cell.i, cell.j) - u_(cell.i);
            visited_cols_[static_cast<std::size_t>(cell.j)] = true;
            stack_.push_back(m_ + cell.j);
          }
        }
      } else {
        const int j = node - m_;
        for (int idx : col_cells_[static_cast<std::size_t>(j)]) {
          const auto& cell = basis_[static_cast<std::size_t>(idx)];
          if (!visited_rows_[static_cast<std::size_t>(cell.i)]) {
            u_(cell.i) = c_(cell.i, cell.j) - v_(cell.j);
            visited_rows_[static_cast<std::size_t>(cell.i)] = true;
            stack_.push_back(cell.i);
          }
        }
      }
    }
    for (bool seen : visited_rows_) {
      if (!seen) throw std::runtime_error("transport simplex: basis tree disconnected");
    }
    for (bool seen : visited_cols_) {
      if (!seen) throw std::runtime_error("transport simplex: basis tree disconnected");
    }
  }

  std::pair<int, int> find_entering(bool bland) const {
    int bi = -1;
    int bj = -1;
    double best = -price_tol_;
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) {
        const double red = c_(i, j) - u_(i) - v_(j);
        if (red < best) {
          best = red;
          bi = i;
          bj = j;
          if (bland) return {bi, bj};  // first eligible cell in row-major order
        }
      }
    }
    return {bi, bj};
  }

  // Unique cycle closed by the entering cell; returns the pivot step size.
  double pivot(int ei, int ej) {
    // path from col node ej back to row node ei through the basis tree
    prev_cell_.assign(static_cast<std::size_t>(m_ + n_), -1);
    prev_node_.assign(static_cast<std::size_t>(m_ + n_), -1);
    seen_.assign(static_cast<std::size_t>(m_ + n_), false);
    stack_.clear();
    stack_.push_back(ei);
    seen_[static_cast<std::size_t>(ei)] = true;
    const int target = m_ + ej;
    while (!stack_.empty()) {
      const int node = stack_.back();
      stack_.pop_back();
      if (node == target) break;
      const auto& cells =
          node < m_ ? row_cells_[static_cast<std::size_t>(node)] : col_cells_[static_cast<std::size_t>(node - m_)];
      for (int idx : cells) {
        const auto& cell = basis_[static_cast<std::size_t>(idx)];
        const int other = (node < m_) ? m_ + cell.j : cell.i;
        if (!seen_[static_cast<std::size_t>(other)]) {
          seen_[static_cast<std::size_t>(other)] = true;
          prev_cell_[static_cast<std::size_t>(other)] = idx;
          prev_node_[static_cast<std::size_t>(other)] = node;
          stack_.push_back(other);
        }
      }
    }
    if (!seen_[static_cast<std::size_t>(target)]) {
      throw std::runtime_error("transport simplex: entering cell closes no cycle");
    }

    // walk back: cells along the path alternate -, +, -, ... after the + entering cell
    cycle_cells_.clear();
    for (int node = target; node != ei; node = prev_node_[static_cast<std::size_t>(node)]) {
      cycle_cells_.push_back(prev_cell_[static_cast<std::size_t>(node)]);
    }

    double theta = std::numeric_limits<double>::infinity();
    int leaving_pos = -1;
    for (std::size_t t = 0; t < cycle_cells_.size(); t += 2) {  // minus positions
      const auto& cell = basis_[static_cast<std::size_t>(cycle_cells_[t])];
      if (cell.flow < theta ||
          (cell.flow == theta && leaving_pos >= 0 &&
           std::pair(cell.i, cell.j) < std::pair(basis_[static_cast<std::size_t>(cycle_cells_[static_cast<std::size_t>(leaving_pos)])].i,
                                                 basis_[static_cast<std::size_t>(cycle_cells_[static_cast<std::size_t>(leaving_pos)])].j))) {
        theta = cell.flow;
        leaving_pos = static_cast<int>(t);
      }
    }
    if (leaving_pos < 0) throw std::runtime_error("transport simplex: unbounded pivot");

    for (std::size_t t = 0; t < cycle_cells_.size(); ++t) {
      auto& cell = basis_[static_cast<std::size_t>(cycle_cells_[t])];
      if (t % 2 == 0) {
        cell.flow = (static_cast<int>(t) == leaving_pos) ? 0.0 : cell.flow - theta;
      } else {
        cell.flow += theta;
      }
    }

    replace_basis_cell(cycle_cells_[static_cast<std::size_t>(leaving_pos)], ei, ej, theta);
    return theta;
  }

  void replace_basis_cell(int idx, int ei, int ej, double flow) {
    auto& cell = basis_[static_cast<std::size_t>(idx)];
    auto detach = [&](std::vector<int>& list) {
      list.erase(std::find(list.begin(), list.end(), idx));
    };
    detach(row_cells_[static_cast<std::size_t>(cell.i)]);
    detach(col_cells_[static_cast<std::size_t>(cell.j)]);
    cell = {ei, ej, flow};
    row_cells_[static_cast<std::size_t>(ei)].push_back(idx);
    col_cells_[static_cast<std::size_t>(ej)].push_back(idx);
  }

  TransportSolution assemble() const {
    TransportSolution out;
    out.plan = Eigen::MatrixXd::Zero(m_, n_);
    KahanSum cost;
    for (const auto& cell : basis_) {
      out.plan(cell.i, cell.j) = cell.flow;
      cost.add(cell.flow * c_(cell.i, cell.j));
    }
    out.cost = cost.value();
    out.u = u_;
    out.v = v_;
    verify(out);
    return out;
  }

  void verify(const TransportSolution& s) const {
    const double mass = std::max(a_.maxCoeff(), b_.maxCoeff());
    const double marginal_tol = 1e-9 * std::max(1.0, mass);
    const double row_err = (s.plan.rowwise().sum() - a_).cwiseAbs().maxCoeff();
    const double col_err = (s.plan.colwise().sum().transpose() - b_).cwiseAbs().maxCoeff();
    if (row_err > marginal_tol || col_err > marginal_tol) {
      throw std::runtime_error("transport simplex: marginal mismatch in solution");
    }
    const double cert_tol = 1e-8 * scale_;
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) {
        const double red = c_(i, j) - s.u(i) - s.v(j);
        if (red < -cert_tol) {
          throw std::runtime_error("transport simplex: dual infeasibility in certificate");
        }
        if (s.plan(i, j) > marginal_tol && std::abs(red) > cert_tol) {
          throw std::runtime_error("transport simplex: complementary slackness violated");
        }
      }
    }
  }

  Eigen::VectorXd a_, b_;
  Eigen::MatrixXd c_;
  int m_, n_;
  double scale_ = 1.0;
  double price_tol_ = 1e-11;

  std::vector<BasisCell> basis_;
  std::vector<std::vector<int>> row_cells_, col_cells_;
  Eigen::VectorXd u_, v_;

  // scratch
  std::vector<bool> visited_rows_, visited_cols_, seen_;
  std::vector<int> stack_, prev_cell_, prev_node_, cycle_cells_;
};

}  // namespace

TransportSolution solve_transport(const Eigen::VectorXd& supply, const Eigen::VectorXd& demand,
                                  const Eigen::MatrixXd& cost) {
  if (supply.size() == 0 || demand.size() == 0) {
    throw std::invalid_argument("solve_transport: empty marginal");
  }
  if (cost.rows() != supply.size() || cost.cols() != demand.size()) {
    throw std::invalid_argument("solve_transport: cost shape mismatch");
  }
  if ((supply.array() <= 0.0).any() || (demand.array() <= 0.0).any()) {
    throw std::invalid_argument("solve_transport: marginals must be strictly positive");
  }
  if (std::abs(supply.sum() - demand.sum()) > 1e-9 * std::max(1.0, supply.sum())) {
    throw std::invalid_argument("solve_transport: unbalanced marginals");
  }
  Simplex solver(supply, demand, cost);
  return solver.run();
}

}  // namespace w2het::detail
