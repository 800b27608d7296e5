#pragma once

// Faces of the line arrangement cut out by the indicator boundaries of a
// piecewise sum, and the exact minimum of the sum over those faces.

#include "allin/expansion.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace allin {

struct Hyperplane {
  LinForm form;  // canonical

  friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
  friend auto operator<=>(const Hyperplane& a, const Hyperplane& b) { return a.form <=> b.form; }
};

/// Sign vector over a hyperplane list (entries -1, 0, +1) with a point that realizes it.
struct Cell {
  std::vector<std::int8_t> signs;
  Point rep;
};

/// Canonical hyperplanes of every term constraint and of the ambient, sorted and deduplicated.
std::vector<Hyperplane> collect_hyperplanes(const PiecewiseSum& ps);

/// Every sign vector over hs realized inside ambient, faces of all dimensions,
/// each with a primitive integer representative. The order is deterministic.
std::vector<Cell> enumerate_cells(const std::vector<Hyperplane>& hs, const Region& ambient,
                                  int threads = 0);

std::vector<std::int8_t> sign_vector(const std::vector<Hyperplane>& hs, const Point& p);

struct MinReport {
  Rat min_value;
  Point witness;
  std::vector<std::int8_t> witness_signs;
  std::vector<Hyperplane> hyperplanes;
  std::size_t cell_count = 0;
  std::size_t hyperplane_count = 0;
  std::size_t minimizing_faces = 0;
};

/// Exact minimum over all faces. The witness is the projectively smallest
/// representative among minimizing faces and is re-checked with evaluate().
MinReport global_min(const PiecewiseSum& ps, int threads = 0);

/// Value on every face, in the order of enumerate_cells.
std::vector<Rat> face_values(const PiecewiseSum& ps, const std::vector<Hyperplane>& hs,
                             const std::vector<Cell>& cells, int threads = 0);

struct MeshStep {
  int n = 0;
  Rat delta_min;  // min of Delta_n over the ambient
  Rat alpha;
  Point witness;
  std::size_t cell_count = 0;
  std::size_t hyperplane_count = 0;
  bool passed = false;
};

struct MeshResult {
  std::optional<int> n;      // first n that passed, if any
  std::optional<Rat> bound;  // min Delta_n at that n
  std::vector<MeshStep> steps;
};

/// Refines n = 2, 3, ... max_n until min Delta_n > alpha(n) (>= with weak).
/// Throws std::invalid_argument for max_n < 2.
/// on_step, if set, sees each step as soon as it is computed.
MeshResult meshitup(const Substitution& s, const Substitution& t, const Region& ambient, int max_n,
                    bool weak = false, int threads = 0,
                    const std::function<void(const MeshStep&)>& on_step = {});

}  // namespace allin
