// Scalar reference kernels. Compiled without FMA and with -ffp-contract=off;
// the vector variants must reproduce these results bit for bit.

#include <cmath>

#include "delve/simd.hpp"
#include "kernel_common.hpp"

namespace delve::simd::scalar {

void perlin_accumulate(const PerlinLattice& lat, std::uint32_t rows, std::uint32_t cols, double amplitude,
                       std::span<double> out) {
  const std::uint32_t dr = rows / lat.res;
  const std::uint32_t dc = cols / lat.res;
  const std::uint32_t stride = lat.res + 1;
  for (std::uint32_t r = 0; r < rows; ++r) {
    const std::uint32_t cell_r = r / dr;
    const double fr = detail::lattice_frac(r, dr);
    const double tr = detail::fade(fr);
    for (std::uint32_t c = 0; c < cols; ++c) {
      const std::uint32_t cell_c = c / dc;
      const double fc = detail::lattice_frac(c, dc);
      const double tc = detail::fade(fc);
      const std::size_t i00 = cell_r * stride + cell_c;
      const std::size_t i10 = i00 + stride;
      const std::size_t i01 = i00 + 1;
      const std::size_t i11 = i10 + 1;
      const double n00 = fr * lat.grad_row[i00] + fc * lat.grad_col[i00];
      const double n10 = (fr - 1.0) * lat.grad_row[i10] + fc * lat.grad_col[i10];
      const double n01 = fr * lat.grad_row[i01] + (fc - 1.0) * lat.grad_col[i01];
      const double n11 = (fr - 1.0) * lat.grad_row[i11] + (fc - 1.0) * lat.grad_col[i11];
      const double n0 = n00 * (1.0 - tr) + tr * n10;
      const double n1 = n01 * (1.0 - tr) + tr * n11;
      const double v = detail::kSqrt2 * ((1.0 - tc) * n0 + tc * n1);
      out[r * cols + c] += amplitude * v;
    }
  }
}

void tile_uniforms(std::uint64_t key, std::span<double> out) {
  const auto k0 = static_cast<std::uint32_t>(key);
  const auto k1 = static_cast<std::uint32_t>(key >> 32);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint32_t x = static_cast<std::uint32_t>(i) * detail::kGolden32 + k0;
    x = detail::mix32(x);
    x ^= k1;
    x = detail::mix32(x);
    out[i] = static_cast<double>(x >> 8) * 0x1.0p-24;
  }
}

void classify_terrain(const TerrainFields& in, const TerrainThresholds& th, std::span<Terrain> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double s = in.start[i];
    const double w = in.water[i] - th.start_suppress * s;
    const double m = in.mountain[i] - th.start_suppress * s;
    const double v = in.vegetation[i];
    const double u = in.uniform[i];
    Terrain t;
    if (s > th.start_clear) {
      t = Terrain::Grass;
    } else if (w > th.water) {
      t = Terrain::Water;
    } else if (w > th.sand) {
      t = Terrain::Sand;
    } else if (m > th.mountain) {
      if (m > th.tunnel_mountain && std::fabs(v) < th.tunnel_width) t = Terrain::Tunnel;
      else if (m > th.lava_mountain && v > th.lava_veg) t = Terrain::Lava;
      else if (m > th.diamond_mountain && u > th.diamond_u) t = Terrain::Diamond;
      else if (m > th.iron_mountain && u > th.iron_u) t = Terrain::Iron;
      else if (u > th.coal_u) t = Terrain::Coal;
      else t = Terrain::Stone;
    } else if ((v > th.tree_veg && u > th.tree_u) || (v > th.forest_veg && u > th.forest_u)) {
      t = Terrain::Tree;
    } else {
      t = Terrain::Grass;
    }
    out[i] = t;
  }
}

}  // namespace delve::simd::scalar
