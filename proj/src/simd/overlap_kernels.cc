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

#include "formattack/overlap_kernels.h"

#include <cstdlib>
#include <string>

#include "formattack/geometry.h"

namespace formattack::simd {

BoxColumns BoxColumns::FromWords(std::span<const Word> words) {
  BoxColumns columns;
  columns.x1.reserve(words.size());
  columns.y1.reserve(words.size());
  columns.x2.reserve(words.size());
  columns.y2.reserve(words.size());
  for (const Word& w : words) {
    columns.x1.push_back(w.box.x1);
    columns.y1.push_back(w.box.y1);
    columns.x2.push_back(w.box.x2);
    columns.y2.push_back(w.box.y2);
  }
  return columns;
}

std::string_view IsaName(Isa isa) {
  return isa == Isa::kAvx2 ? "avx2" : "scalar";
}

void IouScalar(const BoxColumns& columns, const BoundingBox& zone,
               std::span<double> out) {
  for (size_t i = 0; i < columns.size(); ++i) {
    out[i] = Iou({columns.x1[i], columns.y1[i], columns.x2[i], columns.y2[i]},
                 zone);
  }
}

void CoverageScalar(const BoxColumns& columns, const BoundingBox& zone,
                    std::span<double> out) {
  for (size_t i = 0; i < columns.size(); ++i) {
    out[i] = WordCoverage(
        {columns.x1[i], columns.y1[i], columns.x2[i], columns.y2[i]}, zone);
  }
}

bool CpuHasAvx2() {
#if (defined(__x86_64__) || defined(_M_X64)) && defined(__GNUC__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa SelectIsa(const char* request) {
  if (request != nullptr && std::string_view(request) == "scalar") {
    return Isa::kScalar;
  }
  return CpuHasAvx2() ? Isa::kAvx2 : Isa::kScalar;
}

Isa ActiveIsa() {
  static const Isa isa = SelectIsa(std::getenv("FORMATTACK_SIMD"));
  return isa;
}

void ComputeIou(const BoxColumns& columns, const BoundingBox& zone,
                std::span<double> out) {
#if defined(__x86_64__) || defined(_M_X64)
  if (ActiveIsa() == Isa::kAvx2) return IouAvx2(columns, zone, out);
#endif
  IouScalar(columns, zone, out);
}

void ComputeCoverage(const BoxColumns& columns, const BoundingBox& zone,
                     std::span<double> out) {
#if defined(__x86_64__) || defined(_M_X64)
  if (ActiveIsa() == Isa::kAvx2) return CoverageAvx2(columns, zone, out);
#endif
  CoverageScalar(columns, zone, out);
}

}  // namespace formattack::simd
