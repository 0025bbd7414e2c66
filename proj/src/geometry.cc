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

#include "formattack/geometry.h"

#include <algorithm>

#include "formattack/errors.h"
#include "formattack/overlap_kernels.h"

namespace formattack {
namespace {

// Intersection area of `word` and `zone`. Argument order of min/max matches
// the vector kernels (zone operand wins ties) so signed zeros agree.
double IntersectionArea(const BoundingBox& word, const BoundingBox& zone) {
  const double iw =
      std::max(std::min(zone.x2, word.x2) - std::max(zone.x1, word.x1), 0.0);
  const double ih =
      std::max(std::min(zone.y2, word.y2) - std::max(zone.y1, word.y1), 0.0);
  return iw * ih;
}

}  // namespace

double Iou(const BoundingBox& a, const BoundingBox& b) {
  const double inter = IntersectionArea(a, b);
  const double uni = a.Area() + b.Area() - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

double WordCoverage(const BoundingBox& word, const BoundingBox& zone) {
  const double inter = IntersectionArea(word, zone);
  const double area = word.Area();
  return area > 0.0 ? inter / area : 0.0;
}

ZoneExpansion ParseZoneExpansion(std::string_view name) {
  if (name == "page_relative") return ZoneExpansion::kPageRelative;
  if (name == "box_relative") return ZoneExpansion::kBoxRelative;
  throw ConfigError("unknown zone expansion '" + std::string(name) + "'");
}

std::string_view ZoneExpansionName(ZoneExpansion expansion) {
  return expansion == ZoneExpansion::kBoxRelative ? "box_relative"
                                                  : "page_relative";
}

OverlapMetric ParseOverlapMetric(std::string_view name) {
  if (name == "iou") return OverlapMetric::kIou;
  if (name == "word_coverage") return OverlapMetric::kWordCoverage;
  throw ConfigError("unknown overlap metric '" + std::string(name) + "'");
}

std::string_view OverlapMetricName(OverlapMetric metric) {
  return metric == OverlapMetric::kWordCoverage ? "word_coverage" : "iou";
}

BoundingBox ValueBox(const Document& doc, const FieldAnnotation& ann) {
  BoundingBox box = doc.words[ann.value_indices.front()].box;
  for (int v : ann.value_indices) box = Union(box, doc.words[v].box);
  return box;
}

NeighborZone ValueZone(const Document& doc, const FieldAnnotation& ann,
                       const NeighborOptions& options) {
  NeighborZone zone;
  zone.value_box = ValueBox(doc, ann);
  zone.expand_rate = options.expand_rate;
  zone.order_neighbors = options.order_neighbors;
  const bool page_relative = options.expansion == ZoneExpansion::kPageRelative;
  const double dx = options.expand_rate *
                    (page_relative ? doc.page_width : zone.value_box.Width());
  const double dy = options.expand_rate *
                    (page_relative ? doc.page_height : zone.value_box.Height());
  const BoundingBox& v = zone.value_box;
  zone.box = {std::max(0.0, v.x1 - dx), std::max(0.0, v.y1 - dy),
              std::min(doc.page_width, v.x2 + dx),
              std::min(doc.page_height, v.y2 + dy)};
  return zone;
}

std::vector<int> GeometricNeighbors(const Document& doc,
                                    const FieldAnnotation& ann,
                                    const NeighborOptions& options) {
  const NeighborZone zone = ValueZone(doc, ann, options);
  const simd::BoxColumns columns = simd::BoxColumns::FromWords(doc.words);
  std::vector<double> ratio(columns.size());
  if (options.metric == OverlapMetric::kIou) {
    simd::ComputeIou(columns, zone.box, ratio);
  } else {
    simd::ComputeCoverage(columns, zone.box, ratio);
  }
  for (int v : ann.value_indices) ratio[v] = 0.0;
  std::vector<int> out;
  for (size_t i = 0; i < ratio.size(); ++i) {
    if (ratio[i] > 0.5) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> Neighbors(const Document& doc, const FieldAnnotation& ann,
                           const NeighborOptions& options) {
  const int n = static_cast<int>(doc.words.size());
  std::vector<bool> selected(doc.words.size(), false);
  for (int i : GeometricNeighbors(doc, ann, options)) selected[i] = true;
  const auto [lo, hi] =
      std::minmax_element(ann.value_indices.begin(), ann.value_indices.end());
  for (int k = 1; k <= options.order_neighbors; ++k) {
    if (*lo - k >= 0) selected[*lo - k] = true;
    if (*hi + k < n) selected[*hi + k] = true;
  }
  for (int v : ann.value_indices) selected[v] = false;
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    if (selected[i]) out.push_back(i);
  }
  return out;
}

std::vector<bool> NeighborMask(const Document& doc,
                               const NeighborOptions& options) {
  std::vector<bool> mask(doc.words.size(), false);
  for (const FieldAnnotation& ann : doc.annotations) {
    for (int i : Neighbors(doc, ann, options)) mask[i] = true;
  }
  for (const FieldAnnotation& ann : doc.annotations) {
    for (int v : ann.value_indices) mask[v] = false;
  }
  return mask;
}

}  // namespace formattack
