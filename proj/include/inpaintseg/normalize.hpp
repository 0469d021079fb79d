// Copyright 2026 The inpaintseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "inpaintseg/slice.hpp"

namespace inpaintseg {

/// Affine map of [min, max] onto [0, 255]. A constant slice maps to all zeros.
Slice minmax_normalize(const Slice& slice);

/// Centers `slice` on a black canvas of the target size.
Slice pad_to(const Slice& slice, int target_w, int target_h);

/// [0, 255] -> [0, 1]. Throws ValueError on out-of-range input.
Slice to_unit_range(const Slice& slice);
/// [0, 1] -> [0, 255]. Throws ValueError on out-of-range input.
Slice from_unit_range(const Slice& slice);

}  // namespace inpaintseg
