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

#ifndef FORMATTACK_OVERLAP_KERNELS_H_
#define FORMATTACK_OVERLAP_KERNELS_H_

#include <span>
#include <string_view>
#include <vector>

#include "formattack/document.h"

// Batch overlap of many word boxes against one zone. The scalar kernels are
// the reference; vector variants must produce bit-identical ratios.
namespace formattack::simd {

// Structure-of-arrays view of word boxes.
struct BoxColumns {
  std::vector<double> x1;
  std::vector<double> y1;
  std::vector<double> x2;
  std::vector<double> y2;

  static BoxColumns FromWords(std::span<const Word> words);
  size_t size() const { return x1.size(); }
};

enum class Isa { kScalar, kAvx2 };

std::string_view IsaName(Isa isa);

// out[i] = Iou(box i, zone). `out` must have columns.size() elements.
void IouScalar(const BoxColumns& columns, const BoundingBox& zone,
               std::span<double> out);
// out[i] = WordCoverage(box i, zone).
void CoverageScalar(const BoxColumns& columns, const BoundingBox& zone,
                    std::span<double> out);

#if defined(__x86_64__) || defined(_M_X64)
void IouAvx2(const BoxColumns& columns, const BoundingBox& zone,
             std::span<double> out);
void CoverageAvx2(const BoxColumns& columns, const BoundingBox& zone,
                  std::span<double> out);
#endif

bool CpuHasAvx2();

// Kernel family for a FORMATTACK_SIMD value: "scalar" forces the reference
// kernels, anything else (or null) picks the best one the CPU supports.
Isa SelectIsa(const char* request);

// SelectIsa(getenv("FORMATTACK_SIMD")), decided once per process.
Isa ActiveIsa();

// Dispatching entry points.
void ComputeIou(const BoxColumns& columns, const BoundingBox& zone,
                std::span<double> out);
void ComputeCoverage(const BoxColumns& columns, const BoundingBox& zone,
                     std::span<double> out);

}  // namespace formattack::simd

#endif  // FORMATTACK_OVERLAP_KERNELS_H_
