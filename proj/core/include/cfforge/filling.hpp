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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfforge/cfcore.hpp"

namespace cfforge {

/// The auxiliary action did not move more than half of A into B within the
/// allowed number of filling sets.
class BudgetExhausted : public std::runtime_error {
public:
    BudgetExhausted(std::size_t iterations, Rat accumulated, Rat target);
    BudgetExhausted(const std::string& what, std::size_t iterations, Rat accumulated, Rat target);
    std::size_t iterations;
    Rat accumulated;  ///< mu(A_0 ⊔ ... ) reached
    Rat target;       ///< mu(A) / 2
};

/// A set of the recursion grew past FillOptions::max_boxes.
class ComplexityExceeded : public BudgetExhausted {
public:
    ComplexityExceeded(std::size_t boxes, int level, std::size_t iterations, Rat accumulated, Rat target);
    std::size_t boxes;
    int level;
};

class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An internal consistency check on computed sets failed.
class CertificateViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct FillOptions {
    /// Maximum number of filling sets A_0, A_1, ... that may be computed;
    /// 0 exhausts immediately.
    std::size_t budget = 64;
    /// Highest schedule level the recursion may lift to; -1 means top().
    int max_level = -1;
    /// Enforce the structure-lemma hypotheses: strong schedule, q >= 0 and
    /// A, B at the same level.
    bool lemma_mode = false;
    /// Abort with ComplexityExceeded once A ∖ ⊔ A_j needs more boxes than
    /// this at the work level; 0 disables the guard.
    std::size_t max_boxes = 0;
};

struct FillingResult {
    Vec q;
    Cylinder a;
    Cylinder b;
    /// Level at which the parts are expressed: the lowest level where every
    /// translate used by the recursion stays inside the cube.
    int work_level = 0;
    /// A_0, ..., A_N, all at work_level.
    std::vector<Cylinder> parts;
    int n_fill = 0;
    /// Least integer exceeding ||q||.
    int q_bound = 1;
    /// a.level + Q * N: the level bound from the structure lemma.
    int lemma_level = 0;
    Rat measure_a;
    Rat filled;  ///< mu(A_0 ⊔ ... ⊔ A_N)
};

/// The filling recursion
///   A_0 = A ∩ B,
///   A_i = (A ∖ ⊔_{j<i} A_j) ∩ S^{-i}(B ∖ ⊔_{j<i} S^j A_j),
/// with S = T_q, stopped at the first N with mu(A_0 ⊔ ... ⊔ A_N) > mu(A)/2.
FillingResult fill(const CFSchedule& s, const Vec& q, const Cylinder& a, const Cylinder& b,
                   const FillOptions& opts = {});

/// [S^i A_i]_{i=0..N} at the work level, after checking the images lie in B,
/// are pairwise disjoint and carry the filled measure. Throws
/// CertificateViolation otherwise.
std::vector<Cylinder> image_stack(const CFSchedule& s, const FillingResult& r);

/// The uniform rational grid 1/n, 1/n + 1/density, ... on [1/n, n], with n
/// appended when the step does not land on it.
std::vector<Rat> time_grid(int n, int density);

struct GridEntry {
    int a = 0;
    int b = 0;
    int t = 0;  ///< index into the grid
    int n_fill = 0;
};

struct GridMax {
    int p = 1;
    int n_step = 1;
    std::vector<Rat> grid;
    std::vector<GridEntry> table;  ///< key order (a, b, t)
    int d_max = 0;
};

/// Fill results for every ordered atom pair and grid time, in key order.
struct GridFill {
    GridEntry key;
    FillingResult result;
};

/// Raised by grid evaluation with the offending atom pair and time.
class GridBudgetExhausted : public BudgetExhausted {
public:
    GridBudgetExhausted(const BudgetExhausted& inner, int a, int b, Rat t);
    int step = 0;  ///< forcing step, 0 outside the forcing loop
    int a;
    int b;
    Rat t;
};

struct GridOptions {
    int density = 1;
    FillOptions fill;
    int threads = 1;
};

/// Runs fill(S_t, [Δ]_0, [Δ']_0) for all ordered pairs of `atoms` (subsets
/// of F_0 of the power schedule) and every t of time_grid(n, density).
std::vector<GridFill> grid_fills(const CFSchedule& s_pow, const std::vector<BoxSet>& atoms, int n, int p,
                                 const GridOptions& opts);

/// Maximum of the filling number over the grid; a lower bound for the
/// supremum over the whole segment.
GridMax grid_max(const CFSchedule& s_pow, const std::vector<BoxSet>& atoms, int n, int p, const GridOptions& opts);
GridMax summarize(const std::vector<GridFill>& fills, int n, int p, std::vector<Rat> grid);

struct ProbePoint {
    Rat t;
    int n_fill = 0;
};

struct ProbeRow {
    Rat radius;
    std::vector<ProbePoint> neighbours;  ///< t0 - r (when positive) and t0 + r
    bool flagged = false;                ///< some neighbour exceeds N(t0)
};

struct SemicontinuityReport {
    Rat t0;
    int n_at_t0 = 0;
    std::vector<ProbeRow> rows;
};

/// Evaluates N(S_t, A, B) at t0 and t0 ± r for each radius. Diagnostic only.
SemicontinuityReport semicontinuity_probe(const CFSchedule& s_pow, const Cylinder& a, const Cylinder& b,
                                          const Rat& t0, const std::vector<Rat>& radii, const FillOptions& opts);

}  // namespace cfforge
