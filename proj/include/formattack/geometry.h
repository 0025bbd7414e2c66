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

#ifndef FORMATTACK_GEOMETRY_H_
#define FORMATTACK_GEOMETRY_H_

#include <string_view>
#include <vector>

#include "formattack/document.h"

namespace formattack {

// Intersection over union; 0 when the union has no area.
double Iou(const BoundingBox& a, const BoundingBox& b);

// Fraction of `word`'s area covered by `zone`; 0 for a zero-area word.
double WordCoverage(const BoundingBox& word, const BoundingBox& zone);

// How the neighbor zone grows around a value box. Page-relative expands each
// side by rate * page dimension; box-relative by rate * value box dimension.
enum class ZoneExpansion { kPageRelative, kBoxRelative };

enum class OverlapMetric { kIou, kWordCoverage };

ZoneExpansion ParseZoneExpansion(std::string_view name);
std::string_view ZoneExpansionName(ZoneExpansion expansion);
OverlapMetric ParseOverlapMetric(std::string_view name);
std::string_view OverlapMetricName(OverlapMetric metric);

struct NeighborOptions {
  double expand_rate = 0.02;
  // Words taken on each side of the value span in reading order.
  int order_neighbors = 2;
  ZoneExpansion expansion = ZoneExpansion::kPageRelative;
  OverlapMetric metric = OverlapMetric::kIou;
};

struct NeighborZone {
  BoundingBox value_box;
  BoundingBox box;
  double expand_rate = 0.0;
  int order_neighbors = 0;
};

// Tight box around the annotation's value words.
BoundingBox ValueBox(const Document& doc, const FieldAnnotation& ann);

// The value box grown on each side and clamped to the page.
NeighborZone ValueZone(const Document& doc, const FieldAnnotation& ann,
                       const NeighborOptions& options);

// Words whose overlap with the zone is strictly greater than 0.5, excluding
// the annotation's own value words. Sorted ascending.
std::vector<int> GeometricNeighbors(const Document& doc,
                                    const FieldAnnotation& ann,
                                    const NeighborOptions& options);

// Geometric neighbors plus `order_neighbors` words on each side of the value
// span in reading order. Sorted ascending; never contains this annotation's
// value words.
std::vector<int> Neighbors(const Document& doc, const FieldAnnotation& ann,
                           const NeighborOptions& options);

// Union of Neighbors() over every annotation, minus every value word of any
// field. This is the set the neighbor-based transforms operate on.
std::vector<bool> NeighborMask(const Document& doc,
                               const NeighborOptions& options);

}  // namespace formattack

#endif  // FORMATTACK_GEOMETRY_H_
