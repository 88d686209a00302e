#pragma once
// Data-parallel kernels used by world generation.
//
// Every kernel has a scalar reference in `delve::simd::scalar` and a vector
// variant per instruction set. The public entry points dispatch at runtime
// to the best variant the CPU supports. Variants are bit-identical to the
// scalar reference (no FMA contraction, same operation order), so world
// generation does not depend on which machine produced it.

#include <cstdint>
#include <span>
#include <string_view>

#include "delve/types.hpp"

namespace delve::simd {

enum class Isa : std::uint8_t { Scalar = 0, Avx2 = 1 };

std::string_view isa_name(Isa isa);
/// Best instruction set supported by this CPU and this build.
Isa detected_isa();
/// Instruction set the dispatching entry points currently use. Defaults to
/// `detected_isa()`; the DELVE_SIMD=scalar environment variable forces scalar.
Isa active_isa();
/// Overrides the active instruction set. Throws std::invalid_argument if the
/// CPU does not support it.
void set_active_isa(Isa isa);

/// Gradient lattice of one Perlin octave: (res+1) x (res+1) unit gradients,
/// row-major. `grad_row` is the component along rows, `grad_col` along columns.
struct PerlinLattice {
  std::span<const double> grad_row;
  std::span<const double> grad_col;
  std::uint32_t res = 1;
};

/// out[r*cols + c] += amplitude * noise(r, c) for one octave.
/// Preconditions: rows and cols divisible by lattice.res, out.size() == rows*cols.
void perlin_accumulate(const PerlinLattice& lattice, std::uint32_t rows, std::uint32_t cols, double amplitude,
                       std::span<double> out);

/// Per-tile uniforms in [0, 1) with 24 random bits: a keyed integer hash of the
/// tile index, so tile i's value is independent of the rest of the grid.
void tile_uniforms(std::uint64_t key, std::span<double> out);

/// Terrain classes produced by `classify_terrain`; floors map them onto their
/// own block palette.
enum class Terrain : std::uint8_t { Grass = 0, Sand, Water, Stone, Tunnel, Lava, Diamond, Iron, Coal, Tree };
inline constexpr int kNumTerrainClasses = 10;

struct TerrainThresholds {
  double start_clear = 0.7;    // clearing around the spawn
  double start_suppress = 0.6; // how strongly spawn proximity lowers water/mountain
  double water = 0.30;
  double sand = 0.22;
  double mountain = 0.15;
  double tunnel_mountain = 0.18;
  double tunnel_width = 0.05;
  double lava_mountain = 0.25;
  double lava_veg = 0.28;
  double diamond_mountain = 0.20;
  double diamond_u = 0.985;
  double iron_mountain = 0.18;
  double iron_u = 0.965;
  double coal_u = 0.88;
  double tree_veg = 0.0;
  double tree_u = 0.75;
  double forest_veg = 0.35;
  double forest_u = 0.40;
};

struct TerrainFields {
  std::span<const double> water;
  std::span<const double> mountain;
  std::span<const double> vegetation;
  std::span<const double> uniform;
  std::span<const double> start;  // spawn proximity in [0, 1]
};

void classify_terrain(const TerrainFields& in, const TerrainThresholds& th, std::span<Terrain> out);

namespace scalar {
void perlin_accumulate(const PerlinLattice&, std::uint32_t, std::uint32_t, double, std::span<double>);
void tile_uniforms(std::uint64_t, std::span<double>);
void classify_terrain(const TerrainFields&, const TerrainThresholds&, std::span<Terrain>);
}  // namespace scalar

#if defined(DELVE_HAVE_AVX2)
namespace avx2 {
void perlin_accumulate(const PerlinLattice&, std::uint32_t, std::uint32_t, double, std::span<double>);
void tile_uniforms(std::uint64_t, std::span<double>);
void classify_terrain(const TerrainFields&, const TerrainThresholds&, std::span<Terrain>);
}  // namespace avx2
#endif

}  // namespace delve::simd
