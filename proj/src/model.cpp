#include "handsoff/model.hpp"

#include "handsoff/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace handsoff {

LtiSystem::LtiSystem(Matrix a, Vector b, double horizon)
    : a_(std::move(a)), b_(std::move(b)), horizon_(horizon) {
  if (a_.rows() < 1 || a_.rows() != a_.cols()) {
    throw Error(ErrorCode::BadInput, "A must be a non-empty square matrix");
  }
  if (b_.size() != a_.rows()) {
    throw Error(ErrorCode::BadInput, "B must have " + std::to_string(a_.rows()) + " entries");
  }
  if (!(horizon_ > 0.0) || !std::isfinite(horizon_)) {
    throw Error(ErrorCode::BadInput, "horizon T must be finite and positive");
  }
  if (!a_.allFinite() || !b_.allFinite()) {
    throw Error(ErrorCode::BadInput, "A and B must have finite entries");
  }
}

Grid::Grid(double horizon, std::size_t cells) : horizon_(horizon), cells_(cells) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw Error(ErrorCode::BadInput, "grid horizon must be finite and positive");
  }
  if (cells == 0) {
    throw Error(ErrorCode::BadInput, "grid needs at least one cell");
  }
  width_ = horizon / static_cast<double>(cells);
}

double Grid::node(std::size_t k) const noexcept {
  if (k >= cells_) return horizon_;
  return static_cast<double>(k) * width_;
}

ZeroTolerance::ZeroTolerance(double eps) : eps_(eps) {
  if (!(eps > 0.0 && eps < 0.5)) {
    throw Error(ErrorCode::BadInput, "zero tolerance must lie in (0, 0.5)");
  }
}

ControlSignal::ControlSignal(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.cells()) {
    throw Error(ErrorCode::BadInput, "control has " + std::to_string(values_.size()) +
                                         " values for " + std::to_string(grid_.cells()) + " cells");
  }
}

ControlSignal ControlSignal::zeros(Grid grid) {
  return ControlSignal(grid, std::vector<double>(grid.cells(), 0.0));
}

ControlSignal ControlSignal::negated() const {
  std::vector<double> flipped(values_.size());
  std::transform(values_.begin(), values_.end(), flipped.begin(), [](double v) { return -v; });
  return ControlSignal(grid_, std::move(flipped));
}

double l1_norm(const ControlSignal& u) {
  double sum = 0.0;
  for (double v : u.values()) sum += std::abs(v);
  return u.grid().width() * sum;
}

double linf_norm(const ControlSignal& u) {
  double peak = 0.0;
  for (double v : u.values()) peak = std::max(peak, std::abs(v));
  return peak;
}

double l0_norm(const ControlSignal& u, ZeroTolerance tol) {
  const auto active = std::count_if(u.values().begin(), u.values().end(),
                                    [eps = tol.value()](double v) { return std::abs(v) > eps; });
  return u.grid().width() * static_cast<double>(active);
}

}  // namespace handsoff
