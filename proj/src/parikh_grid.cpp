#include "permclosure/parikh_grid.hpp"

#include <numeric>

namespace permclosure {

std::size_t ParikhVector::total() const { return std::accumulate(coords.begin(), coords.end(), std::size_t{0}); }

ParikhVector operator+(const ParikhVector& a, const ParikhVector& b) {
  ParikhVector out(a.coords);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] += b[j];
  return out;
}

ParikhVector parikh(std::span<const Letter> word, std::size_t k) {
  ParikhVector out(k);
  for (Letter a : word) {
    if (a >= k) throw Error(ErrorKind::kUnknownSymbol, "letter index " + std::to_string(a) + " outside alphabet");
    ++out[a];
  }
  return out;
}

ParikhVector parikh(std::string_view word, const std::vector<std::string>& alphabet) {
  return parikh(parse_word(alphabet, word), alphabet.size());
}

Box::Box(std::vector<std::size_t> extents) : extents_(std::move(extents)), strides_(extents_.size(), 1) {
  for (std::size_t j = 0; j < extents_.size(); ++j) {
    if (extents_[j] == 0) throw Error(ErrorKind::kPreconditionViolated, "box extent " + std::to_string(j) + " must be >= 1");
  }
  for (std::size_t j = extents_.size(); j-- > 0;) {
    strides_[j] = volume_;
    volume_ = checked_mul(volume_, extents_[j]);
  }
}

bool Box::contains(const ParikhVector& p) const {
  if (p.size() != extents_.size()) return false;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] >= extents_[j]) return false;
  }
  return true;
}

std::size_t Box::linear(const ParikhVector& p) const {
  std::size_t out = 0;
  for (std::size_t j = 0; j < p.size(); ++j) out += p[j] * strides_[j];
  return out;
}

ParikhVector Box::point(std::size_t linear) const {
  ParikhVector p(extents_.size());
  for (std::size_t j = 0; j < extents_.size(); ++j) {
    p[j] = linear / strides_[j];
    linear %= strides_[j];
  }
  return p;
}

LabelGrid sigma_grid(const Dfa& d, const Box& box, std::size_t point_budget) {
  if (!d.fits_state_set()) {
    throw Error(ErrorKind::kPreconditionViolated,
                "state labels support at most " + std::to_string(StateSet::kMaxStates) + " states");
  }
  if (box.dimension() != d.letter_count()) {
    throw Error(ErrorKind::kPreconditionViolated, "box dimension does not match alphabet size");
  }
  if (box.volume() > point_budget) {
    throw Error(ErrorKind::kBoxTooLarge,
                "box has " + std::to_string(box.volume()) + " points, budget is " + std::to_string(point_budget));
  }
  const std::size_t k = box.dimension();
  std::vector<StateSet> labels(box.volume());
  labels[0] = StateSet::singleton(d.start());

  // Row-major order visits every p - e_b before p, so a single sweep suffices.
  // The coordinates are advanced as an odometer alongside the linear index.
  std::vector<std::size_t> coord(k, 0);
  for (std::size_t idx = 1; idx < labels.size(); ++idx) {
    for (std::size_t j = k; j-- > 0;) {
      if (++coord[j] < box.extent(j)) break;
      coord[j] = 0;
    }
    StateSet label;
    for (Letter b = 0; b < k; ++b) {
      if (coord[b] > 0) label |= d.image(labels[idx - box.stride(b)], b);
    }
    labels[idx] = label;
  }
  return LabelGrid(d, box, std::move(labels));
}

StateSet sigma(const LabelGrid& grid, const ParikhVector& p) {
  if (!grid.box().contains(p)) throw Error(ErrorKind::kOutOfBox, "point outside label grid");
  return grid.at(grid.box().linear(p));
}

bool parikh_image_membership(const LabelGrid& grid, const ParikhVector& p) {
  return sigma(grid, p).intersects(grid.dfa().final_set());
}

std::vector<LinePhase> AxisPhases::unstabilized_lines(Letter axis) const {
  std::vector<LinePhase> out;
  for (const LinePhase& line : axes.at(axis).lines) {
    if (!line.stabilized) out.push_back(line);
  }
  return out;
}

std::optional<UnaryProfile> detect_line_phase(std::span<const StateSet> sequence) {
  const std::size_t n = sequence.size();
  std::optional<UnaryProfile> best;
  for (std::size_t period = 1; 2 * period <= n; ++period) {
    // Smallest start from which `period` holds up to the end of the window.
    std::size_t start = n - period;
    while (start > 0 && sequence[start - 1] == sequence[start - 1 + period]) --start;
    if (start + 2 * period > n) continue;
    if (!best || start < best->index) best = UnaryProfile{start, period};
  }
  return best;
}

AxisPhases detect_axis_phases(const LabelGrid& grid) {
  const Box& box = grid.box();
  const std::size_t k = box.dimension();
  AxisPhases out;
  std::vector<StateSet> line;
  for (Letter axis = 0; axis < k; ++axis) {
    AxisPhase phase;
    phase.axis = axis;
    const std::size_t len = box.extent(axis);
    line.resize(len);
    for (std::size_t idx = 0; idx < box.volume(); ++idx) {
      if ((idx / box.stride(axis)) % len != 0) continue;
      for (std::size_t t = 0; t < len; ++t) line[t] = grid.at(idx + t * box.stride(axis));
      LinePhase lp;
      lp.base = box.point(idx);
      if (auto prof = detect_line_phase(line)) {
        lp.index = prof->index;
        lp.period = prof->period;
        lp.stabilized = true;
        phase.index = std::max(phase.index, lp.index);
        phase.period = checked_lcm(phase.period, lp.period);
      } else {
        phase.stabilized = false;
      }
      phase.lines.push_back(std::move(lp));
    }
    out.stabilized = out.stabilized && phase.stabilized;
    out.axes.push_back(std::move(phase));
  }
  return out;
}

}  // namespace permclosure
