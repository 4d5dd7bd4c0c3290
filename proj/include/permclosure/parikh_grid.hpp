#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "permclosure/dfa.hpp"

namespace permclosure {

/// Point of N_0^k: per-letter occurrence counts.
struct ParikhVector {
  std::vector<std::size_t> coords;

  ParikhVector() = default;
  explicit ParikhVector(std::size_t k) : coords(k, 0) {}
  explicit ParikhVector(std::vector<std::size_t> c) : coords(std::move(c)) {}

  std::size_t size() const { return coords.size(); }
  std::size_t operator[](std::size_t j) const { return coords[j]; }
  std::size_t& operator[](std::size_t j) { return coords[j]; }
  std::size_t total() const;

  friend ParikhVector operator+(const ParikhVector& a, const ParikhVector& b);
  friend bool operator==(const ParikhVector&, const ParikhVector&) = default;
  friend auto operator<=>(const ParikhVector&, const ParikhVector&) = default;
};

/// Letter counts of `word`. Throws `kUnknownSymbol` for indices >= k.
ParikhVector parikh(std::span<const Letter> word, std::size_t k);
ParikhVector parikh(std::string_view word, const std::vector<std::string>& alphabet);

/// Finite window [0, e_1) x ... x [0, e_k) of the grid, linearised row-major
/// (last axis fastest) so that linear order is lexicographic order.
class Box {
 public:
  explicit Box(std::vector<std::size_t> extents);
  static Box uniform(std::size_t k, std::size_t extent) { return Box(std::vector<std::size_t>(k, extent)); }

  std::size_t dimension() const { return extents_.size(); }
  const std::vector<std::size_t>& extents() const { return extents_; }
  std::size_t extent(std::size_t j) const { return extents_[j]; }
  std::size_t stride(std::size_t j) const { return strides_[j]; }
  /// Product of the extents; throws `kOverflow` if it does not fit.
  std::size_t volume() const { return volume_; }

  bool contains(const ParikhVector& p) const;
  std::size_t linear(const ParikhVector& p) const;
  ParikhVector point(std::size_t linear) const;

  friend bool operator==(const Box& a, const Box& b) { return a.extents_ == b.extents_; }

 private:
  std::vector<std::size_t> extents_;
  std::vector<std::size_t> strides_;
  std::size_t volume_ = 1;
};

inline constexpr std::size_t kDefaultPointBudget = 100'000'000;

/// State labels sigma(p) = { delta(s0, u) : psi(u) = p } over a box.
class LabelGrid {
 public:
  LabelGrid(Dfa dfa, Box box, std::vector<StateSet> labels)
      : dfa_(std::move(dfa)), box_(std::move(box)), labels_(std::move(labels)) {}

  const Dfa& dfa() const { return dfa_; }
  const Box& box() const { return box_; }
  std::span<const StateSet> labels() const { return labels_; }
  StateSet at(std::size_t linear) const { return labels_[linear]; }

 private:
  Dfa dfa_;
  Box box_;
  std::vector<StateSet> labels_;
};

/// Fills the box via sigma(0) = {s0}, sigma(p) = U_{b: p_b > 0} delta(sigma(p - e_b), b).
/// Throws `kBoxTooLarge` beyond `point_budget` points and `kPreconditionViolated`
/// for automata with more than StateSet::kMaxStates states.
LabelGrid sigma_grid(const Dfa& d, const Box& box, std::size_t point_budget = kDefaultPointBudget);

/// Stored label; throws `kOutOfBox`.
StateSet sigma(const LabelGrid& grid, const ParikhVector& p);

/// sigma(p) meets the final states, i.e. some word with Parikh vector p is accepted.
bool parikh_image_membership(const LabelGrid& grid, const ParikhVector& p);

struct LinePhase {
  ParikhVector base;  // base[axis] == 0
  std::size_t index = 0;
  std::size_t period = 1;
  bool stabilized = false;
};

struct AxisPhase {
  Letter axis = 0;
  std::size_t index = 0;   // max over stabilized lines
  std::size_t period = 1;  // lcm over stabilized lines
  bool stabilized = true;
  std::vector<LinePhase> lines;
};

struct AxisPhases {
  std::vector<AxisPhase> axes;
  bool stabilized = true;

  std::vector<LinePhase> unstabilized_lines(Letter axis) const;
};

/// Minimal (index, period) of a finite label sequence, or nullopt when no
/// candidate is witnessed twice (index + 2 * period must fit in the window).
std::optional<UnaryProfile> detect_line_phase(std::span<const StateSet> sequence);

/// Per-direction eventual periodicity of the labelling within the box.
AxisPhases detect_axis_phases(const LabelGrid& grid);

}  // namespace permclosure
