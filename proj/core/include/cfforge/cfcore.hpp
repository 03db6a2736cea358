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

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfforge/boxset.hpp"
#include "cfforge/rational.hpp"

namespace cfforge {

/// One level of a (C,F)-schedule: the cube F_n = [0,h)^d and the finite
/// translation set C_{n+1} used to place copies of F_n inside F_{n+1}.
struct CFLevel {
    Rat h;
    std::vector<Vec> c_next;  ///< empty only at the open top of a schedule

    friend bool operator==(const CFLevel&, const CFLevel&) = default;
};

enum class Violation {
    BadCube,
    Independence,
    Containment,
    StrongContainment,
};

const char* to_string(Violation v);

class ValidationError : public std::runtime_error {
public:
    ValidationError(Violation kind, int level, const std::string& detail);
    Violation kind;
    int level;
};

class ScheduleTooShort : public std::runtime_error {
public:
    explicit ScheduleTooShort(const std::string& what) : std::runtime_error(what) {}
};

class LevelOutOfRange : public std::out_of_range {
public:
    LevelOutOfRange(int level, int top);
};

class PowerOverflow : public std::runtime_error {
public:
    explicit PowerOverflow(const std::string& what) : std::runtime_error(what) {}
};

struct ValidationIssue {
    Violation kind;
    int level;
    std::string detail;
};

/// Checks levels without throwing; returns the first violated condition.
/// Independence is (F_n - F_n) ∩ (C_{n+1} - C_{n+1}) = {0}, containment is
/// F_n + C_{n+1} ⊆ F_{n+1}; strong mode also requires a + F_n + C_{n+1} ⊆
/// F_{n+1} for 0 <= a_i <= 1, which only needs checking at a = (1,...,1).
std::optional<ValidationIssue> find_violation(int dim, const std::vector<CFLevel>& levels, bool strong);

/// A validated, immutable (C,F)-schedule with levels n = 0..top().
class CFSchedule {
public:
    /// Throws ValidationError naming the first violated condition.
    static CFSchedule validate(int dim, std::vector<CFLevel> levels, bool strong);

    int dim() const { return dim_; }
    int top() const { return static_cast<int>(levels_.size()) - 1; }
    bool strong() const { return strong_; }
    const std::vector<CFLevel>& levels() const { return levels_; }
    const CFLevel& level(int n) const;
    const Rat& h(int n) const { return level(n).h; }
    /// C_n for 1 <= n <= top().
    const std::vector<Vec>& translations(int n) const;
    /// F_n as a BoxSet.
    BoxSet cube(int n) const;
    /// #C_1 * ... * #C_n.
    Rat copies_up_to(int n) const;

    /// Appends levels and revalidates; the receiver is unchanged.
    CFSchedule extended(std::vector<CFLevel> more) const;

    friend bool operator==(const CFSchedule&, const CFSchedule&) = default;

private:
    CFSchedule(int dim, std::vector<CFLevel> levels, bool strong)
        : dim_(dim), levels_(std::move(levels)), strong_(strong) {}

    int dim_ = 1;
    std::vector<CFLevel> levels_;
    bool strong_ = false;
};

/// [A]_n: the points of X whose level-n coordinate lies in A ⊆ F_n.
struct Cylinder {
    int level = 0;
    BoxSet base;

    friend bool operator==(const Cylinder&, const Cylinder&) = default;
};

/// Builds a cylinder after checking base ⊆ F_level.
Cylinder make_cylinder(const CFSchedule& s, int level, BoxSet base);

/// mu([A]_n) = vol(A) / (#C_1 ... #C_n).
Rat cylinder_measure(const CFSchedule& s, const Cylinder& c);

/// Same subset of X expressed at level m: base A + C_{n+1} + ... + C_m.
Cylinder lift(const CFSchedule& s, const Cylinder& c, int m);
/// One-level lift of a base: A + C_{n+1}.
BoxSet lift_base(const CFSchedule& s, const BoxSet& base, int from_level);

struct ActionResult {
    Cylinder image;
    Cylinder remainder;
};

/// T_g on a cylinder. Lifts to the lowest level m where the part of the
/// base that stays inside F_m after translation by g leaves a remainder of
/// measure < eps; returns [A_in + g]_m and the untranslated remainder.
/// Throws ScheduleTooShort when no level achieves the bound.
ActionResult apply_tg(const CFSchedule& s, const Cylinder& c, const Vec& g, const Rat& eps);

struct InfiniteMeasureReport {
    std::vector<Rat> ratios;  ///< r_n = h_n^d / (#C_1 ... #C_n)
    bool diverging = false;
};

/// Finite-prefix diagnostic for mu(X) = infinity: diverging iff the ratio
/// never decreases and r_top >= factor * r_0.
InfiniteMeasureReport check_infinite_measure(const CFSchedule& s, const Rat& factor);

/// The schedule of the p-fold Cartesian power (cubes F_n^p, sets C_{n+1}^p).
/// Throws PowerOverflow when some #C^p exceeds max_translations.
CFSchedule power_schedule(const CFSchedule& s, int p, std::size_t max_translations = std::size_t{1} << 20);

/// (t, ..., t) in R^(d*p).
Vec diag_time(const Rat& t, int p, int d = 1);

}  // namespace cfforge
