// Copyright 2026 pwlship contributors
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

#ifndef PWLSHIP_MIPEXPORT_HPP
#define PWLSHIP_MIPEXPORT_HPP

#include <iosfwd>
#include <set>
#include <string>

#include "pwlship/model.hpp"

namespace pwlship {

enum class MipVariant { Sos2, Alpha, Beta };

MipVariant mip_variant_from_string(const std::string& s);
std::string to_string(MipVariant v);

// Writes the piecewise-linear MIP in LP exchange format: flow balance,
// visit linking, prefix capacity rows, the optional duration row, the
// convex-combination rows over the profit breakpoints, and one of three
// interchangeable linearizations (SOS2 sections, pair-selection binaries,
// or the segment-selection binaries that performed best).  Variable names
// are deterministic: x_i_j, y_i, Y_i, lam_i_k, alp_i_k, bet_i_k.
// Variant-specific lines live between "\ begin linearization" markers so
// the three exports differ only there.
void export_mip(const Instance& inst, MipVariant variant, std::ostream& out);
void export_mip_file(const Instance& inst, MipVariant variant,
                     const std::string& path);

// Lightweight reader for the emitted files: enough structure to compare
// variable and constraint counts against the writer.
struct LpSummary {
  int n_rows = 0;       // constraint rows
  int n_sos_sets = 0;
  std::set<std::string> variables;
  std::set<std::string> binaries;
};

LpSummary read_lp_summary(std::istream& in);
LpSummary read_lp_summary_file(const std::string& path);

// Expected counts from the instance, for cross-checking a summary.
struct LpExpectedCounts {
  int n_rows = 0;
  int n_variables = 0;
  int n_binaries = 0;
  int n_sos_sets = 0;
};

LpExpectedCounts expected_counts(const Instance& inst, MipVariant variant);

}  // namespace pwlship

#endif  // PWLSHIP_MIPEXPORT_HPP
