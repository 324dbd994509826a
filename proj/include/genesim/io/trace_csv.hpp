// Copyright 2026 The genesim Authors
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

#ifndef GENESIM_IO_TRACE_CSV_HPP
#define GENESIM_IO_TRACE_CSV_HPP

#include <iosfwd>
#include <string>
#include <string_view>

#include "genesim/engine.hpp"

namespace genesim::io {

/// Long-format trace: header `iteration,kind,name,value`, one row per value,
/// kinds gamma, r, alpha_gene, alpha_organism, delta_bar (from iteration 1)
/// and clamp (raw accumulated delta of a clamped gene). Values carry 17
/// significant digits; lines end in LF.
void write_trace_csv(std::ostream& out, const Trace<double>& trace);
std::string trace_csv(const Trace<double>& trace);

/// Inverse of write_trace_csv. Accumulated deltas are not stored; the
/// terminal status is recomputed from the last step using `epsilon` and
/// `mode`.
Trace<double> read_trace_csv(std::string_view text, double epsilon, MixMode mode);

}  // namespace genesim::io

#endif  // GENESIM_IO_TRACE_CSV_HPP
