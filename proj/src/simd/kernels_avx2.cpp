// AVX2 kernels. Built with -mavx2 only (no -mfma) so every multiply and add
// rounds exactly like the scalar reference.

#include <immintrin.h>

#include <vector>

#include "delve/simd.hpp"
#include "kernel_common.hpp"

namespace delve::simd::avx2 {

namespace {

// Per-column lattice data, expanded so the inner loop is plain loads.
struct ColumnTables {
  std::vector<double> frac, fade;
  // For every lattice row L: gradients of the left and right lattice column
  // of each pixel column, packed as [L][component][col].
  std::vector<double> left_row, left_col, right_row, right_col;
};

ColumnTables& scratch() {
  thread_local ColumnTables t;
  return t;
}

}  // namespace

void perlin_accumulate(const PerlinLattice& lat, std::uint32_t rows, std::uint32_t cols, double amplitude,
                       std::span<double> out) {
  const std::uint32_t dr = rows / lat.res;
  const std::uint32_t dc = cols / lat.res;
  const std::uint32_t stride = lat.res + 1;

  ColumnTables& t = scratch();
  t.frac.resize(cols);
  t.fade.resize(cols);
  const std::size_t expanded = static_cast<std::size_t>(stride) * cols;
  t.left_row.resize(expanded);
  t.left_col.resize(expanded);
  t.right_row.resize(expanded);
  t.right_col.resize(expanded);
  for (std::uint32_t c = 0; c < cols; ++c) {
    t.frac[c] = detail::lattice_frac(c, dc);
    t.fade[c] = detail::fade(t.frac[c]);
  }
  for (std::uint32_t L = 0; L < stride; ++L) {
    for (std::uint32_t c = 0; c < cols; ++c) {
      const std::size_t g = static_cast<std::size_t>(L) * stride + c / dc;
      const std::size_t e = static_cast<std::size_t>(L) * cols + c;
      t.left_row[e] = lat.grad_row[g];
      t.left_col[e] = lat.grad_col[g];
      t.right_row[e] = lat.grad_row[g + 1];
      t.right_col[e] = lat.grad_col[g + 1];
    }
  }

  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d sqrt2 = _mm256_set1_pd(detail::kSqrt2);
  const __m256d amp = _mm256_set1_pd(amplitude);

  for (std::uint32_t r = 0; r < rows; ++r) {
    const std::uint32_t cell_r = r / dr;
    const double fr_s = detail::lattice_frac(r, dr);
    const double tr_s = detail::fade(fr_s);
    const __m256d fr = _mm256_set1_pd(fr_s);
    const __m256d fr1 = _mm256_set1_pd(fr_s - 1.0);
    const __m256d tr = _mm256_set1_pd(tr_s);
    const __m256d one_tr = _mm256_set1_pd(1.0 - tr_s);
    const double* top_lr = t.left_row.data() + static_cast<std::size_t>(cell_r) * cols;
    const double* top_lc = t.left_col.data() + static_cast<std::size_t>(cell_r) * cols;
    const double* top_rr = t.right_row.data() + static_cast<std::size_t>(cell_r) * cols;
    const double* top_rc = t.right_col.data() + static_cast<std::size_t>(cell_r) * cols;
    const double* bot_lr = top_lr + cols;
    const double* bot_lc = top_lc + cols;
    const double* bot_rr = top_rr + cols;
    const double* bot_rc = top_rc + cols;
    double* dst = out.data() + static_cast<std::size_t>(r) * cols;

    std::uint32_t c = 0;
    for (; c + 4 <= cols; c += 4) {
      const __m256d fc = _mm256_loadu_pd(t.frac.data() + c);
      const __m256d tc = _mm256_loadu_pd(t.fade.data() + c);
      const __m256d fc1 = _mm256_sub_pd(fc, one);
      const __m256d n00 = _mm256_add_pd(_mm256_mul_pd(fr, _mm256_loadu_pd(top_lr + c)),
                                        _mm256_mul_pd(fc, _mm256_loadu_pd(top_lc + c)));
      const __m256d n10 = _mm256_add_pd(_mm256_mul_pd(fr1, _mm256_loadu_pd(bot_lr + c)),
                                        _mm256_mul_pd(fc, _mm256_loadu_pd(bot_lc + c)));
      const __m256d n01 = _mm256_add_pd(_mm256_mul_pd(fr, _mm256_loadu_pd(top_rr + c)),
                                        _mm256_mul_pd(fc1, _mm256_loadu_pd(top_rc + c)));
      const __m256d n11 = _mm256_add_pd(_mm256_mul_pd(fr1, _mm256_loadu_pd(bot_rr + c)),
                                        _mm256_mul_pd(fc1, _mm256_loadu_pd(bot_rc + c)));
      const __m256d n0 = _mm256_add_pd(_mm256_mul_pd(n00, one_tr), _mm256_mul_pd(tr, n10));
      const __m256d n1 = _mm256_add_pd(_mm256_mul_pd(n01, one_tr), _mm256_mul_pd(tr, n11));
      const __m256d one_tc = _mm256_sub_pd(one, tc);
      const __m256d v =
          _mm256_mul_pd(sqrt2, _mm256_add_pd(_mm256_mul_pd(one_tc, n0), _mm256_mul_pd(tc, n1)));
      _mm256_storeu_pd(dst + c, _mm256_add_pd(_mm256_loadu_pd(dst + c), _mm256_mul_pd(amp, v)));
    }
    for (; c < cols; ++c) {
      const double fc = t.frac[c];
      const double tc = t.fade[c];
      const double n00 = fr_s * top_lr[c] + fc * top_lc[c];
      const double n10 = (fr_s - 1.0) * bot_lr[c] + fc * bot_lc[c];
      const double n01 = fr_s * top_rr[c] + (fc - 1.0) * top_rc[c];
      const double n11 = (fr_s - 1.0) * bot_rr[c] + (fc - 1.0) * bot_rc[c];
      const double n0 = n00 * (1.0 - tr_s) + tr_s * n10;
      const double n1 = n01 * (1.0 - tr_s) + tr_s * n11;
      dst[c] += amplitude * (detail::kSqrt2 * ((1.0 - tc) * n0 + tc * n1));
    }
  }
}

namespace {

inline __m256i mix32x8(__m256i x) {
  x = _mm256_xor_si256(x, _mm256_srli_epi32(x, 16));
  x = _mm256_mullo_epi32(x, _mm256_set1_epi32(static_cast<int>(0x7FEB352Du)));
  x = _mm256_xor_si256(x, _mm256_srli_epi32(x, 15));
  x = _mm256_mullo_epi32(x, _mm256_set1_epi32(static_cast<int>(0x846CA68Bu)));
  x = _mm256_xor_si256(x, _mm256_srli_epi32(x, 16));
  return x;
}

}  // namespace

void tile_uniforms(std::uint64_t key, std::span<double> out) {
  const auto k0 = static_cast<std::uint32_t>(key);
  const auto k1 = static_cast<std::uint32_t>(key >> 32);
  const __m256i vk0 = _mm256_set1_epi32(static_cast<int>(k0));
  const __m256i vk1 = _mm256_set1_epi32(static_cast<int>(k1));
  const __m256i golden = _mm256_set1_epi32(static_cast<int>(detail::kGolden32));
  const __m256d scale = _mm256_set1_pd(0x1.0p-24);
  const __m256i lane = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);

  std::size_t i = 0;
  for (; i + 8 <= out.size(); i += 8) {
    const __m256i idx = _mm256_add_epi32(_mm256_set1_epi32(static_cast<int>(i)), lane);
    __m256i x = _mm256_add_epi32(_mm256_mullo_epi32(idx, golden), vk0);
    x = mix32x8(x);
    x = _mm256_xor_si256(x, vk1);
    x = mix32x8(x);
    x = _mm256_srli_epi32(x, 8);
    const __m256d lo = _mm256_mul_pd(_mm256_cvtepi32_pd(_mm256_castsi256_si128(x)), scale);
    const __m256d hi = _mm256_mul_pd(_mm256_cvtepi32_pd(_mm256_extracti128_si256(x, 1)), scale);
    _mm256_storeu_pd(out.data() + i, lo);
    _mm256_storeu_pd(out.data() + i + 4, hi);
  }
  for (; i < out.size(); ++i) {
    std::uint32_t x = static_cast<std::uint32_t>(i) * detail::kGolden32 + k0;
    x = detail::mix32(x);
    x ^= k1;
    x = detail::mix32(x);
    out[i] = static_cast<double>(x >> 8) * 0x1.0p-24;
  }
}

namespace {

inline __m256d gt(__m256d a, double b) { return _mm256_cmp_pd(a, _mm256_set1_pd(b), _CMP_GT_OQ); }
inline __m256d cls(Terrain t) { return _mm256_set1_pd(static_cast<double>(t)); }

}  // namespace

void classify_terrain(const TerrainFields& in, const TerrainThresholds& th, std::span<Terrain> out) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  const __m256d suppress = _mm256_set1_pd(th.start_suppress);
  std::size_t i = 0;
  for (; i + 4 <= out.size(); i += 4) {
    const __m256d s = _mm256_loadu_pd(in.start.data() + i);
    const __m256d w = _mm256_sub_pd(_mm256_loadu_pd(in.water.data() + i), _mm256_mul_pd(suppress, s));
    const __m256d m = _mm256_sub_pd(_mm256_loadu_pd(in.mountain.data() + i), _mm256_mul_pd(suppress, s));
    const __m256d v = _mm256_loadu_pd(in.vegetation.data() + i);
    const __m256d u = _mm256_loadu_pd(in.uniform.data() + i);
    const __m256d abs_v = _mm256_andnot_pd(sign, v);

    // Mountain sub-classes, lowest priority first.
    __m256d mtn = cls(Terrain::Stone);
    mtn = _mm256_blendv_pd(mtn, cls(Terrain::Coal), gt(u, th.coal_u));
    mtn = _mm256_blendv_pd(mtn, cls(Terrain::Iron), _mm256_and_pd(gt(m, th.iron_mountain), gt(u, th.iron_u)));
    mtn = _mm256_blendv_pd(mtn, cls(Terrain::Diamond),
                           _mm256_and_pd(gt(m, th.diamond_mountain), gt(u, th.diamond_u)));
    mtn = _mm256_blendv_pd(mtn, cls(Terrain::Lava), _mm256_and_pd(gt(m, th.lava_mountain), gt(v, th.lava_veg)));
    mtn = _mm256_blendv_pd(
        mtn, cls(Terrain::Tunnel),
        _mm256_and_pd(gt(m, th.tunnel_mountain),
                      _mm256_cmp_pd(abs_v, _mm256_set1_pd(th.tunnel_width), _CMP_LT_OQ)));

    const __m256d tree = _mm256_or_pd(_mm256_and_pd(gt(v, th.tree_veg), gt(u, th.tree_u)),
                                      _mm256_and_pd(gt(v, th.forest_veg), gt(u, th.forest_u)));
    __m256d t = _mm256_blendv_pd(cls(Terrain::Grass), cls(Terrain::Tree), tree);
    t = _mm256_blendv_pd(t, mtn, gt(m, th.mountain));
    t = _mm256_blendv_pd(t, cls(Terrain::Sand), gt(w, th.sand));
    t = _mm256_blendv_pd(t, cls(Terrain::Water), gt(w, th.water));
    t = _mm256_blendv_pd(t, cls(Terrain::Grass), gt(s, th.start_clear));

    alignas(16) std::int32_t codes[4];
    _mm_store_si128(reinterpret_cast<__m128i*>(codes), _mm256_cvttpd_epi32(t));
    for (int k = 0; k < 4; ++k) out[i + k] = static_cast<Terrain>(codes[k]);
  }
  if (i < out.size()) {
    const std::size_t n = out.size() - i;
    scalar::classify_terrain({in.water.subspan(i, n), in.mountain.subspan(i, n), in.vegetation.subspan(i, n),
                              in.uniform.subspan(i, n), in.start.subspan(i, n)},
                             th, out.subspan(i, n));
  }
}

}  // namespace delve::simd::avx2
