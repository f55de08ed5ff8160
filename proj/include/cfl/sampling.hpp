#pragma once

#include "cfl/models.hpp"

#include <cstdint>
#include <vector>

namespace cfl {

/// Stratified points over a sample box: the box is cut into n x n x n
/// cells and one uniformly jittered point is drawn per cell, so any
/// count >= n^3 covers the box at resolution 1/n. Deterministic in the
/// seed. Returns exactly `count` points (the first `count` cells in
/// lexicographic order when count < n^3, cycling with fresh jitter
/// otherwise).
std::vector<ChartPoint> stratified_points(const SampleBox& box, int count,
                                          std::uint64_t seed);

/// Convenience overload drawing from the model's published sample box.
std::vector<ChartPoint> stratified_points(const ContactModel& model, int count,
                                          std::uint64_t seed);

}  // namespace cfl
