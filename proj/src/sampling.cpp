#include "cfl/sampling.hpp"

#include <cmath>
#include <random>

namespace cfl {

std::vector<ChartPoint> stratified_points(const SampleBox& box, int count,
                                          std::uint64_t seed) {
  if (count <= 0) {
    throw ParameterError("sample count must be positive");
  }
  int n = 1;
  while (n * n * n < count) ++n;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(0.0, 1.0);

  std::vector<ChartPoint> points;
  points.reserve(count);
  int cell = 0, total_cells = n * n * n;
  while (static_cast<int>(points.size()) < count) {
    int c = cell % total_cells;
    int i0 = c / (n * n), i1 = (c / n) % n, i2 = c % n;
    std::array<int, 3> idx = {i0, i1, i2};
    ChartPoint p;
    for (int d = 0; d < 3; ++d) {
      double lo = box[d][0], hi = box[d][1];
      double w = (hi - lo) / n;
      p.coords[d] = lo + (idx[d] + jitter(rng)) * w;
    }
    points.push_back(p);
    ++cell;
  }
  return points;
}

std::vector<ChartPoint> stratified_points(const ContactModel& model, int count,
                                          std::uint64_t seed) {
  return stratified_points(model.sample_box(), count, seed);
}

}  // namespace cfl
