#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "delve/simd.hpp"

namespace delve::simd {

namespace {

bool cpu_has_avx2() {
#if defined(DELVE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa initial_isa() {
  if (const char* env = std::getenv("DELVE_SIMD"); env != nullptr && std::string_view(env) == "scalar")
    return Isa::Scalar;
  return detected_isa();
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

Isa detected_isa() { return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar; }

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (isa == Isa::Avx2 && !cpu_has_avx2()) throw std::invalid_argument("AVX2 kernels are not available on this CPU");
  active().store(isa, std::memory_order_relaxed);
}

void perlin_accumulate(const PerlinLattice& lattice, std::uint32_t rows, std::uint32_t cols, double amplitude,
                       std::span<double> out) {
#if defined(DELVE_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return avx2::perlin_accumulate(lattice, rows, cols, amplitude, out);
#endif
  scalar::perlin_accumulate(lattice, rows, cols, amplitude, out);
}

void tile_uniforms(std::uint64_t key, std::span<double> out) {
#if defined(DELVE_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return avx2::tile_uniforms(key, out);
#endif
  scalar::tile_uniforms(key, out);
}

void classify_terrain(const TerrainFields& in, const TerrainThresholds& th, std::span<Terrain> out) {
#if defined(DELVE_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return avx2::classify_terrain(in, th, out);
#endif
  scalar::classify_terrain(in, th, out);
}

}  // namespace delve::simd
