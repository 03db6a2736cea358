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

#include "cfforge/boxset.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <unordered_map>

namespace cfforge {

using detail::Node;
using detail::NodePtr;
using detail::Slab;

DimensionMismatch::DimensionMismatch(int e, int g)
    : std::invalid_argument("dimension mismatch: expected " + std::to_string(e) + ", got " + std::to_string(g)),
      expected(e),
      got(g) {}

Box::Box(Vec l, Vec h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo.size() != hi.size()) throw DimensionMismatch(static_cast<int>(lo.size()), static_cast<int>(hi.size()));
    if (lo.empty()) throw std::invalid_argument("box must have positive dimension");
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (!(lo[i] < hi[i])) {
            throw std::invalid_argument("empty box on axis " + std::to_string(i) + ": [" + lo[i].str() + ", " +
                                        hi[i].str() + ")");
        }
    }
}

Rat Box::volume() const {
    Rat v(1);
    for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
    return v;
}

bool Box::contains(const Vec& p) const {
    if (p.size() != lo.size()) throw DimensionMismatch(dim(), static_cast<int>(p.size()));
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (p[i] < lo[i] || !(p[i] < hi[i])) return false;
    }
    return true;
}

namespace {

const NodePtr& full_point() {
    static const NodePtr full = std::make_shared<const Node>();
    return full;
}

bool node_equal(const NodePtr& a, const NodePtr& b, int depth) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (depth == 0) return true;
    if (a->slabs.size() != b->slabs.size()) return false;
    for (std::size_t i = 0; i < a->slabs.size(); ++i) {
        const Slab& x = a->slabs[i];
        const Slab& y = b->slabs[i];
        if (x.lo != y.lo || x.hi != y.hi) return false;
    }
    for (std::size_t i = 0; i < a->slabs.size(); ++i) {
        if (!node_equal(a->slabs[i].cross, b->slabs[i].cross, depth - 1)) return false;
    }
    return true;
}

// Appends a slab, merging with the previous one when they touch and share
// a cross-section.
void push_slab(std::vector<Slab>& out, Rat lo, Rat hi, NodePtr cross, int depth) {
    if (!out.empty()) {
        Slab& prev = out.back();
        if (prev.hi == lo && node_equal(prev.cross, cross, depth - 1)) {
            prev.hi = std::move(hi);
            return;
        }
    }
    out.push_back(Slab{std::move(lo), std::move(hi), std::move(cross)});
}

enum class Op { Union, Intersect, Subtract };

struct PairHash {
    std::size_t operator()(const std::pair<const Node*, const Node*>& p) const noexcept {
        auto h1 = std::hash<const void*>{}(p.first);
        auto h2 = std::hash<const void*>{}(p.second);
        return h1 ^ (h2 + 0x9E3779B97F4A7C15ULL + (h1 << 6) + (h1 >> 2));
    }
};

class Combiner {
public:
    explicit Combiner(Op op) : op_(op) {}

    NodePtr run(const NodePtr& a, const NodePtr& b, int depth) {
        switch (op_) {
            case Op::Intersect:
                if (!a || !b) return nullptr;
                if (a == b) return a;
                break;
            case Op::Union:
                if (!a) return b;
                if (!b || a == b) return a;
                break;
            case Op::Subtract:
                if (!a || a == b) return nullptr;
                if (!b) return a;
                break;
        }
        if (depth == 0) return op_ == Op::Subtract ? nullptr : a;

        auto key = std::make_pair(a.get(), b.get());
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        NodePtr result = sweep(*a, *b, depth);
        memo_.emplace(key, result);
        return result;
    }

private:
    NodePtr sweep(const Node& a, const Node& b, int depth) {
        const auto& sa = a.slabs;
        const auto& sb = b.slabs;
        std::size_t ia = 0;
        std::size_t ib = 0;
        std::vector<Slab> out;
        out.reserve(sa.size() + sb.size());
        const Rat* cursor = nullptr;
        Rat cursor_store;
        while (true) {
            if (cursor) {
                while (ia < sa.size() && sa[ia].hi <= *cursor) ++ia;
                while (ib < sb.size() && sb[ib].hi <= *cursor) ++ib;
            }
            bool live_a = ia < sa.size();
            bool live_b = ib < sb.size();
            if (!live_a && !live_b) break;
            if (op_ == Op::Intersect && (!live_a || !live_b)) break;
            if (op_ == Op::Subtract && !live_a) break;
            if (op_ != Op::Intersect && (!live_a || !live_b)) {
                // Only one side remains: copy its tail (union) or a's tail (subtract).
                const auto& rest = live_a ? sa : sb;
                std::size_t i = live_a ? ia : ib;
                for (; i < rest.size(); ++i) {
                    Rat lo = (cursor && rest[i].lo < *cursor) ? *cursor : rest[i].lo;
                    push_slab(out, std::move(lo), rest[i].hi, rest[i].cross, depth);
                }
                break;
            }
            auto start_of = [&](const Slab& s) -> const Rat& { return (cursor && s.lo < *cursor) ? *cursor : s.lo; };
            const Rat& start_a = start_of(sa[ia]);
            const Rat& start_b = start_of(sb[ib]);
            const Rat& lo = std::min(start_a, start_b);
            bool cov_a = start_a == lo;
            bool cov_b = start_b == lo;
            const Rat& end_a = cov_a ? sa[ia].hi : start_a;
            const Rat& end_b = cov_b ? sb[ib].hi : start_b;
            const Rat& hi = std::min(end_a, end_b);
            NodePtr cross = run(cov_a ? sa[ia].cross : nullptr, cov_b ? sb[ib].cross : nullptr, depth - 1);
            if (cross) push_slab(out, lo, hi, std::move(cross), depth);
            cursor_store = hi;
            cursor = &cursor_store;
        }
        if (out.empty()) return nullptr;
        auto node = std::make_shared<Node>();
        node->slabs = std::move(out);
        return node;
    }

    Op op_;
    std::unordered_map<std::pair<const Node*, const Node*>, NodePtr, PairHash> memo_;
};

void check_dims(const BoxSet& a, const BoxSet& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
}

NodePtr single_box(const Box& box, int axis) {
    if (axis == box.dim()) return full_point();
    auto node = std::make_shared<Node>();
    node->slabs.push_back(Slab{box.lo[axis], box.hi[axis], single_box(box, axis + 1)});
    return node;
}

}  // namespace

BoxSet::BoxSet(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("BoxSet dimension must be positive");
}

BoxSet BoxSet::from_box(const Box& box) { return BoxSet(box.dim(), single_box(box, 0)); }

BoxSet BoxSet::canonicalize(std::span<const Box> boxes, int dim) {
    for (const auto& b : boxes) {
        if (b.dim() != dim) throw DimensionMismatch(dim, b.dim());
    }
    if (boxes.empty()) return BoxSet(dim);
    std::vector<BoxSet> layer;
    layer.reserve(boxes.size());
    for (const auto& b : boxes) layer.push_back(from_box(b));
    while (layer.size() > 1) {
        std::vector<BoxSet> next;
        next.reserve((layer.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < layer.size(); i += 2) next.push_back(unite(layer[i], layer[i + 1]));
        if (layer.size() % 2) next.push_back(layer.back());
        layer = std::move(next);
    }
    return layer.front();
}

BoxSet BoxSet::cube(int dim, const Rat& h) {
    return from_box(Box(Vec(static_cast<std::size_t>(dim), Rat(0)), Vec(static_cast<std::size_t>(dim), h)));
}

Rat BoxSet::volume() const {
    std::unordered_map<const Node*, Rat> memo;
    std::function<Rat(const NodePtr&, int)> rec = [&](const NodePtr& n, int depth) -> Rat {
        if (!n) return Rat(0);
        if (depth == 0) return Rat(1);
        if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
        Rat v;
        for (const auto& s : n->slabs) v += (s.hi - s.lo) * rec(s.cross, depth - 1);
        memo.emplace(n.get(), v);
        return v;
    };
    return rec(root_, dim_);
}

bool BoxSet::contains(const Vec& p) const {
    if (static_cast<int>(p.size()) != dim_) throw DimensionMismatch(dim_, static_cast<int>(p.size()));
    const Node* n = root_.get();
    for (int axis = 0; axis < dim_; ++axis) {
        if (!n) return false;
        const auto& slabs = n->slabs;
        auto it = std::upper_bound(slabs.begin(), slabs.end(), p[axis],
                                   [](const Rat& x, const Slab& s) { return x < s.hi; });
        if (it == slabs.end() || p[axis] < it->lo) return false;
        n = it->cross.get();
    }
    return n != nullptr;
}

std::vector<Box> BoxSet::boxes() const {
    std::vector<Box> out;
    Vec lo(static_cast<std::size_t>(dim_));
    Vec hi(static_cast<std::size_t>(dim_));
    std::function<void(const Node*, int)> rec = [&](const Node* n, int axis) {
        if (axis == dim_) {
            Box b;
            b.lo = lo;
            b.hi = hi;
            out.push_back(std::move(b));
            return;
        }
        for (const auto& s : n->slabs) {
            lo[axis] = s.lo;
            hi[axis] = s.hi;
            rec(s.cross.get(), axis + 1);
        }
    };
    if (root_) rec(root_.get(), 0);
    return out;
}

std::size_t BoxSet::box_count() const {
    std::unordered_map<const Node*, std::size_t> memo;
    std::function<std::size_t(const Node*, int)> rec = [&](const Node* n, int depth) -> std::size_t {
        if (depth == 0) return 1;
        if (auto it = memo.find(n); it != memo.end()) return it->second;
        std::size_t c = 0;
        for (const auto& s : n->slabs) c += rec(s.cross.get(), depth - 1);
        memo.emplace(n, c);
        return c;
    };
    return root_ ? rec(root_.get(), dim_) : 0;
}

std::vector<std::pair<Rat, Rat>> BoxSet::bounds() const {
    if (!root_) throw std::logic_error("bounds of an empty BoxSet");
    using Bounds = std::vector<std::pair<Rat, Rat>>;
    std::unordered_map<const Node*, Bounds> memo;
    std::function<Bounds(const Node*, int)> rec = [&](const Node* n, int depth) -> Bounds {
        if (depth == 0) return {};
        if (auto it = memo.find(n); it != memo.end()) return it->second;
        Bounds b;
        b.emplace_back(n->slabs.front().lo, n->slabs.back().hi);
        for (const auto& s : n->slabs) {
            Bounds sub = rec(s.cross.get(), depth - 1);
            if (b.size() == 1) {
                b.insert(b.end(), sub.begin(), sub.end());
                continue;
            }
            for (std::size_t i = 0; i < sub.size(); ++i) {
                if (sub[i].first < b[i + 1].first) b[i + 1].first = sub[i].first;
                if (b[i + 1].second < sub[i].second) b[i + 1].second = sub[i].second;
            }
        }
        memo.emplace(n, b);
        return b;
    };
    return rec(root_.get(), dim_);
}

bool operator==(const BoxSet& a, const BoxSet& b) { return a.dim_ == b.dim_ && node_equal(a.root_, b.root_, a.dim_); }

BoxSet unite(const BoxSet& a, const BoxSet& b) {
    check_dims(a, b);
    return BoxSet(a.dim_, Combiner(Op::Union).run(a.root_, b.root_, a.dim_));
}

BoxSet intersect(const BoxSet& a, const BoxSet& b) {
    check_dims(a, b);
    return BoxSet(a.dim_, Combiner(Op::Intersect).run(a.root_, b.root_, a.dim_));
}

BoxSet subtract(const BoxSet& a, const BoxSet& b) {
    check_dims(a, b);
    return BoxSet(a.dim_, Combiner(Op::Subtract).run(a.root_, b.root_, a.dim_));
}

BoxSet translate(const BoxSet& a, const Vec& g) {
    if (static_cast<int>(g.size()) != a.dim_) throw DimensionMismatch(a.dim_, static_cast<int>(g.size()));
    // Axes from which on every shift component is zero need no copying.
    int last_nonzero = -1;
    for (int i = 0; i < a.dim_; ++i) {
        if (g[static_cast<std::size_t>(i)].sign() != 0) last_nonzero = i;
    }
    if (last_nonzero < 0 || !a.root_) return a;
    std::unordered_map<const Node*, NodePtr> memo;
    std::function<NodePtr(const NodePtr&, int)> rec = [&](const NodePtr& n, int axis) -> NodePtr {
        if (axis > last_nonzero) return n;
        if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
        auto out = std::make_shared<Node>();
        out->slabs.reserve(n->slabs.size());
        const Rat& shift = g[static_cast<std::size_t>(axis)];
        for (const auto& s : n->slabs) out->slabs.push_back(Slab{s.lo + shift, s.hi + shift, rec(s.cross, axis + 1)});
        NodePtr r = out;
        memo.emplace(n.get(), r);
        return r;
    };
    return BoxSet(a.dim_, rec(a.root_, 0));
}

BoxSet product(const BoxSet& a, const BoxSet& b) {
    int dim = a.dim_ + b.dim_;
    if (!a.root_ || !b.root_) return BoxSet(dim);
    std::unordered_map<const Node*, NodePtr> memo;
    std::function<NodePtr(const NodePtr&, int)> rec = [&](const NodePtr& n, int depth) -> NodePtr {
        if (depth == 0) return b.root_;
        if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
        auto out = std::make_shared<Node>();
        out->slabs.reserve(n->slabs.size());
        for (const auto& s : n->slabs) out->slabs.push_back(Slab{s.lo, s.hi, rec(s.cross, depth - 1)});
        NodePtr r = out;
        memo.emplace(n.get(), r);
        return r;
    };
    return BoxSet(dim, rec(a.root_, a.dim_));
}

BoxSet translate_union(const BoxSet& a, std::span<const Vec> offsets) {
    if (offsets.empty()) return BoxSet(a.dim());
    std::vector<BoxSet> layer;
    layer.reserve(offsets.size());
    for (const auto& c : offsets) layer.push_back(translate(a, c));
    while (layer.size() > 1) {
        std::vector<BoxSet> next;
        next.reserve((layer.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < layer.size(); i += 2) next.push_back(unite(layer[i], layer[i + 1]));
        if (layer.size() % 2) next.push_back(layer.back());
        layer = std::move(next);
    }
    return layer.front();
}

bool is_subset(const BoxSet& a, const BoxSet& b) { return subtract(a, b).empty(); }

bool disjoint(const BoxSet& a, const BoxSet& b) { return intersect(a, b).empty(); }

}  // namespace cfforge
