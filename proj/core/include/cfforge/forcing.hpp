// Copyright 2026 The cfforge Authors
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

#include <string>
#include <vector>

#include "cfforge/cfcore.hpp"
#include "cfforge/filling.hpp"

namespace cfforge {

/// Partition of the one-dimensional cube F_n = [0, h_n) into intervals.
struct Partition {
    int level = 0;
    std::vector<Box> atoms;  ///< sorted, d = 1

    /// Common atom length, or 0 when the atoms differ in length.
    Rat uniform_length() const;
    Rat mesh() const;
};

/// The partition {[0, h_0)} of F_0 cut into `pieces` equal intervals.
Partition initial_partition(const CFSchedule& s, int pieces = 1);

/// Level-n partition refining `prev`: every translate Δ + c (Δ in prev,
/// c in C_n) plus the spacer intervals of F_n ∖ (F_{n-1} + C_n), all cut so
/// that no atom is longer than 1/n. A common atom length is used whenever the
/// spacer lengths allow it.
Partition make_partition(const CFSchedule& s, int n, const Partition& prev);

struct PartitionIssue {
    bool cover = true;       ///< atoms disjoint with union F_n
    bool mesh = true;        ///< atom length <= 1/n
    bool refinement = true;  ///< Δ + c is a union of next-level atoms
};

PartitionIssue check_partition(const CFSchedule& s, const Partition& p, const Partition* next);

/// p-fold products of the atoms of a one-dimensional partition, in
/// lexicographic order (first factor slowest).
std::vector<BoxSet> product_atoms(const Partition& part, int p);

/// Rank-one staircase family. Stage k cuts F_k into r_k copies placed at
///   c_i = i (h_k + gap_k) + lin_k i + quad_k i (i - 1) / 2,   0 <= i < r_k,
/// and sets h_{k+1} = c_{r_k - 1} + h_k + 1 + slack_k, which satisfies strong
/// containment. Per-stage lists repeat their last entry.
struct AuxFlowSpec {
    std::vector<int> cuts{2};
    std::vector<Rat> gap{Rat(1)};
    std::vector<Rat> stair_lin{Rat(0)};
    std::vector<Rat> stair_quad{Rat(1)};
    std::vector<Rat> slack{Rat(0)};
    int depth = 8;

    friend bool operator==(const AuxFlowSpec&, const AuxFlowSpec&) = default;
};

/// Schedule with F_0 = [0, base_h) and `levels` generated stages; strong-valid.
CFSchedule gen_aux(const AuxFlowSpec& spec, const Rat& base_h, int levels);

/// max_k h_k / (r_0 ... r_{k-1}) over the schedule, the finite-measure diagnostic.
Rat aux_mass_ratio(const CFSchedule& aux);

struct Certificate {
    int step = 0;
    int p = 0;
    int a = 0;
    int b = 0;
    int base_level = 0;  ///< m_{n-1}; Δ and Δ' are subsets of F_{m_{n-1}}^p
    BoxSet delta{1};
    BoxSet delta_prime{1};
    Rat t;
    int n_fill = 0;
    int d_n = 0;
    /// A_0, ..., A_{D_n} as main-schedule cylinders, padded with empty sets;
    /// A_i is moved into [Δ'] by V_t^i.
    std::vector<Cylinder> parts;
    Rat mass_fraction;
    bool mass_ok = false;
    bool contained_ok = false;
    bool disjoint_ok = false;
    std::vector<Rat> grid;

    friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct StepLog {
    int n = 0;
    int p = 0;
    int grid_d = 0;  ///< raw grid maximum
    int d_n = 0;     ///< after margin and the D_n >= 1 floor
    std::vector<Rat> grid;
    AuxFlowSpec aux;
    int first_grafted = 0;  ///< m_{n-1} + 1
    int marker = 0;         ///< m_n
    Rat top_edge;           ///< edge of the last grafted cube before doubling
    std::size_t certificates = 0;
};

struct ForcingState {
    std::vector<int> p_seq;
    CFSchedule schedule = CFSchedule::validate(1, {CFLevel{Rat(1), {}}}, true);
    std::vector<Partition> partitions;
    std::vector<int> markers{0};  ///< m_0 = 0, m_1, ...
    std::vector<StepLog> log;
};

/// F_0 = [0,1) with partition {[0,1)}.
ForcingState initial_state(std::vector<int> p_seq);

struct ForcingOptions {
    int grid_density = 4;
    FillOptions fill{64, -1, true};
    Rat d_margin{1};
    int threads = 1;
};

struct StepResult {
    ForcingState state;
    std::vector<Certificate> certificates;
    GridMax grid;
};

/// One step of the inductive construction: grid maximum D_n of the filling
/// number on the p_n-th power of the auxiliary flow, graft of n*D_n auxiliary
/// levels, doubling of the top cube, and one certificate per (Δ, Δ', t).
StepResult run_step(const ForcingState& state, int n, const AuxFlowSpec& aux, const ForcingOptions& opts);

struct CertificateFailure {
    std::size_t index;
    std::string reason;
};

struct Verdict {
    std::size_t checked = 0;
    std::vector<CertificateFailure> failures;
    bool ok() const { return failures.empty(); }
};

/// Re-verifies every certificate from scratch on the main schedule using
/// only cylinder primitives.
Verdict check_certificates(const CFSchedule& main, const std::vector<int>& markers,
                           const std::vector<Certificate>& certs, int threads = 1);

struct MarkerCheck {
    int level = 0;
    Rat ratio_jump;      ///< r_m / r_{m-1}
    bool doubled = false;  ///< h_m = 2 * (grafted top edge)
    bool strict_growth = false;  ///< λ(F_m) > 2 λ(F_{m-1}) #C_m
};

struct BuildReport {
    std::vector<int> markers;
    std::vector<int> d_values;
    std::vector<Rat> ratios;
    std::vector<MarkerCheck> marker_checks;
    bool strong_valid = false;
    Verdict verdict;
};

struct BuildResult {
    ForcingState state;
    std::vector<Certificate> certificates;
    BuildReport report;
};

/// 2, 2, 3, 2, 3, 4, ... truncated to `steps` entries.
std::vector<int> auto_p_seq(int steps);

/// Runs steps n = 1..steps from F_0 = [0,1); aux_specs[n-1] (or the last
/// entry) configures the auxiliary flow of step n.
BuildResult build_flow(const std::vector<int>& p_seq, int steps, const std::vector<AuxFlowSpec>& aux_specs,
                       const ForcingOptions& opts);

}  // namespace cfforge
