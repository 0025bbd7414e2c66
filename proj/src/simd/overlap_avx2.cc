//
// Copyright 2026 The formattack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Built with -mavx2. Only reached through runtime dispatch.

#include <immintrin.h>

#include "formattack/geometry.h"
#include "formattack/overlap_kernels.h"

namespace formattack::simd {
namespace {

// Intersection area, the word areas and the zone area for four boxes. The
// operation order mirrors the scalar Iou/WordCoverage so results are
// bit-identical.
struct Overlap4 {
  __m256d inter;
  __m256d word_area;
};

inline Overlap4 Intersect4(const BoxColumns& c, size_t i, __m256d zx1,
                           __m256d zy1, __m256d zx2, __m256d zy2) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d x1 = _mm256_loadu_pd(&c.x1[i]);
  const __m256d y1 = _mm256_loadu_pd(&c.y1[i]);
  const __m256d x2 = _mm256_loadu_pd(&c.x2[i]);
  const __m256d y2 = _mm256_loadu_pd(&c.y2[i]);
  const __m256d iw = _mm256_max_pd(
      zero, _mm256_sub_pd(_mm256_min_pd(x2, zx2), _mm256_max_pd(x1, zx1)));
  const __m256d ih = _mm256_max_pd(
      zero, _mm256_sub_pd(_mm256_min_pd(y2, zy2), _mm256_max_pd(y1, zy1)));
  return {_mm256_mul_pd(iw, ih),
          _mm256_mul_pd(_mm256_sub_pd(x2, x1), _mm256_sub_pd(y2, y1))};
}

// out = denom > 0 ? num / denom : 0
inline __m256d SafeDiv(__m256d num, __m256d denom) {
  const __m256d positive =
      _mm256_cmp_pd(denom, _mm256_setzero_pd(), _CMP_GT_OQ);
  return _mm256_and_pd(positive, _mm256_div_pd(num, denom));
}

}  // namespace

void IouAvx2(const BoxColumns& columns, const BoundingBox& zone,
             std::span<double> out) {
  const size_t n = columns.size();
  const __m256d zx1 = _mm256_set1_pd(zone.x1);
  const __m256d zy1 = _mm256_set1_pd(zone.y1);
  const __m256d zx2 = _mm256_set1_pd(zone.x2);
  const __m256d zy2 = _mm256_set1_pd(zone.y2);
  const __m256d zone_area = _mm256_set1_pd(zone.Area());
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const Overlap4 o = Intersect4(columns, i, zx1, zy1, zx2, zy2);
    const __m256d uni =
        _mm256_sub_pd(_mm256_add_pd(o.word_area, zone_area), o.inter);
    _mm256_storeu_pd(&out[i], SafeDiv(o.inter, uni));
  }
  for (; i < n; ++i) {
    out[i] = Iou({columns.x1[i], columns.y1[i], columns.x2[i], columns.y2[i]},
                 zone);
  }
}

void CoverageAvx2(const BoxColumns& columns, const BoundingBox& zone,
                  std::span<double> out) {
  const size_t n = columns.size();
  const __m256d zx1 = _mm256_set1_pd(zone.x1);
  const __m256d zy1 = _mm256_set1_pd(zone.y1);
  const __m256d zx2 = _mm256_set1_pd(zone.x2);
  const __m256d zy2 = _mm256_set1_pd(zone.y2);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const Overlap4 o = Intersect4(columns, i, zx1, zy1, zx2, zy2);
    _mm256_storeu_pd(&out[i], SafeDiv(o.inter, o.word_area));
  }
  for (; i < n; ++i) {
    out[i] = WordCoverage(
        {columns.x1[i], columns.y1[i], columns.x2[i], columns.y2[i]}, zone);
  }
}

}  // namespace formattack::simd
