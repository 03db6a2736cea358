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

#include <memory>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cfforge/rational.hpp"

namespace cfforge {

class DimensionMismatch : public std::invalid_argument {
public:
    DimensionMismatch(int expected, int got);
    int expected;
    int got;
};

/// Half-open box prod_i [lo_i, hi_i). Never empty: lo_i < hi_i for every axis.
struct Box {
    Vec lo;
    Vec hi;

    Box() = default;
    /// Throws std::invalid_argument when the box would be empty or malformed.
    Box(Vec lo, Vec hi);

    int dim() const { return static_cast<int>(lo.size()); }
    Rat volume() const;
    bool contains(const Vec& p) const;

    friend bool operator==(const Box&, const Box&) = default;
};

namespace detail {
struct Node;
using NodePtr = std::shared_ptr<const Node>;

// One x-interval of a slab decomposition together with the (dim-1)
// dimensional cross-section that is constant over it.
struct Slab {
    Rat lo;
    Rat hi;
    NodePtr cross;
};

// Slabs are sorted, disjoint and non-empty; two neighbours that touch
// (a.hi == b.lo) never carry equal cross-sections. At depth 0 a non-null
// node means "the point is in the set".
struct Node {
    std::vector<Slab> slabs;
};
}  // namespace detail

/// Finite disjoint union of half-open rational boxes in R^D, kept in a
/// canonical recursive slab form so that two BoxSets are equal exactly when
/// they describe the same point set. Values are immutable and cheap to copy;
/// sub-structure is shared between sets.
class BoxSet {
public:
    /// The empty set in R^dim.
    explicit BoxSet(int dim = 1);

    static BoxSet from_box(const Box& box);
    /// Canonical set with the same point set as the union of `boxes`.
    static BoxSet canonicalize(std::span<const Box> boxes, int dim);
    /// The cube [0,h)^dim.
    static BoxSet cube(int dim, const Rat& h);

    int dim() const { return dim_; }
    bool empty() const { return root_ == nullptr; }
    Rat volume() const;
    bool contains(const Vec& point) const;

    /// Canonical box list (depth-first over the slab decomposition).
    std::vector<Box> boxes() const;
    std::size_t box_count() const;

    /// Per-axis (min lower endpoint, max upper endpoint); the set must be non-empty.
    std::vector<std::pair<Rat, Rat>> bounds() const;

    friend bool operator==(const BoxSet& a, const BoxSet& b);

    friend BoxSet unite(const BoxSet& a, const BoxSet& b);
    friend BoxSet intersect(const BoxSet& a, const BoxSet& b);
    friend BoxSet subtract(const BoxSet& a, const BoxSet& b);
    friend BoxSet translate(const BoxSet& a, const Vec& g);
    friend BoxSet product(const BoxSet& a, const BoxSet& b);

private:
    BoxSet(int dim, detail::NodePtr root) : dim_(dim), root_(std::move(root)) {}

    int dim_;
    detail::NodePtr root_;
};

BoxSet unite(const BoxSet& a, const BoxSet& b);
BoxSet intersect(const BoxSet& a, const BoxSet& b);
BoxSet subtract(const BoxSet& a, const BoxSet& b);
BoxSet translate(const BoxSet& a, const Vec& g);
/// Cartesian product a x b in R^(dim a + dim b).
BoxSet product(const BoxSet& a, const BoxSet& b);
/// Union of all translates a + c, c in `offsets`.
BoxSet translate_union(const BoxSet& a, std::span<const Vec> offsets);
bool is_subset(const BoxSet& a, const BoxSet& b);
bool disjoint(const BoxSet& a, const BoxSet& b);
inline Rat volume(const BoxSet& a) { return a.volume(); }

}  // namespace cfforge
