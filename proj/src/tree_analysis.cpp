#include "sumner/tree_analysis.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

#include "sumner/error.hpp"

namespace sumner {

WeightProfile::WeightProfile(const DirectedTree& t)
    : order_(t.order()), subtree_(t.order(), 1), inweight_(t.order(), 0), outweight_(t.order(), 0) {
    const auto h = t.hang(0);
    parent_ = h.parent;
    for (auto it = h.order.rbegin(); it != h.order.rend(); ++it) {
        const Vertex p = parent_[static_cast<std::size_t>(*it)];
        if (p >= 0) subtree_[static_cast<std::size_t>(p)] += subtree_[static_cast<std::size_t>(*it)];
    }
    for (std::size_t x = 0; x < t.order(); ++x)
        for (const auto& nb : t.neighbours(static_cast<Vertex>(x))) {
            const std::size_t w = edge_weight(static_cast<Vertex>(x), nb.vertex);
            (nb.outgoing ? outweight_[x] : inweight_[x]) += w;
        }
}

std::size_t WeightProfile::edge_weight(Vertex x, Vertex y) const {
    if (parent_.at(static_cast<std::size_t>(y)) == x) return subtree_[static_cast<std::size_t>(y)];
    if (parent_.at(static_cast<std::size_t>(x)) == y) return order_ - subtree_[static_cast<std::size_t>(x)];
    throw InvalidArgument("edge {" + std::to_string(x) + "," + std::to_string(y) + "} is not incident to " + std::to_string(x));
}

std::size_t edge_weight(const DirectedTree& t, Vertex x, Vertex y) { return WeightProfile(t).edge_weight(x, y); }

std::size_t ComponentSplit::max_component_size() const {
    std::size_t m = 0;
    for (const auto& c : components) m = std::max(m, c.size());
    return m;
}

ComponentSplit components_against(const DirectedTree& t, const VertexSet& c) {
    const std::size_t n = t.order();
    if (c.universe() != n) throw InvalidArgument("vertex set universe does not match tree order");
    if (c.empty()) throw InvalidArgument("components_against needs a nonempty set");
    {
        // Connectivity of C in the underlying tree.
        std::vector<Vertex> stack{c.first()};
        VertexSet seen(n);
        seen.insert(c.first());
        while (!stack.empty()) {
            const Vertex x = stack.back();
            stack.pop_back();
            for (const auto& nb : t.neighbours(x))
                if (c.contains(nb.vertex) && !seen.contains(nb.vertex)) {
                    seen.insert(nb.vertex);
                    stack.push_back(nb.vertex);
                }
        }
        if (seen.count() != c.count()) throw InvalidArgument("set is not connected in the underlying tree");
    }

    ComponentSplit out;
    VertexSet assigned = c;
    for (Vertex start = 0; static_cast<std::size_t>(start) < n; ++start) {
        if (assigned.contains(start)) continue;
        AttachedComponent comp{VertexSet(n), Direction::in, -1, -1};
        std::vector<Vertex> stack{start};
        assigned.insert(start);
        while (!stack.empty()) {
            const Vertex x = stack.back();
            stack.pop_back();
            comp.vertices.insert(x);
            for (const auto& nb : t.neighbours(x)) {
                if (c.contains(nb.vertex)) {
                    comp.attachment = nb.vertex;
                    comp.entry = x;
                    comp.side = nb.outgoing ? Direction::in : Direction::out;
                } else if (!assigned.contains(nb.vertex)) {
                    assigned.insert(nb.vertex);
                    stack.push_back(nb.vertex);
                }
            }
        }
        (comp.side == Direction::in ? out.inweight : out.outweight) += comp.size();
        out.components.push_back(std::move(comp));
    }
    return out;
}

CoreTree core_tree(const DirectedTree& t, int delta) {
    if (delta < 2) throw InvalidArgument("core tree parameter must be at least 2, got " + std::to_string(delta));
    const WeightProfile w(t);
    const auto n = static_cast<std::int64_t>(t.order());
    CoreTree core{delta, VertexSet(t.order()), {}};
    for (std::size_t x = 0; x < t.order(); ++x) {
        bool keep = true;
        for (const auto& nb : t.neighbours(static_cast<Vertex>(x)))
            if (static_cast<std::int64_t>(delta) * static_cast<std::int64_t>(w.edge_weight(static_cast<Vertex>(x), nb.vertex)) >
                static_cast<std::int64_t>(delta - 1) * n) {
                keep = false;
                break;
            }
        if (keep) core.vertices.insert(static_cast<Vertex>(x));
    }
    for (const Arc& a : t.arcs())
        if (core.vertices.contains(a.tail) && core.vertices.contains(a.head)) core.arcs.push_back(a);
    return core;
}

VertexSet leading_paths(const DirectedTree& t, const VertexSet& h, int k) {
    if (!t.root()) throw InvalidArgument("leading_paths needs a rooted tree");
    if (k < 1) throw InvalidArgument("leading_paths needs k >= 1");
    if (h.universe() != t.order()) throw InvalidArgument("vertex set universe does not match tree order");
    const auto parent = t.hang(*t.root()).parent;
    const auto add_prefix = [&](Vertex x, VertexSet& into) {
        for (int step = 0; step < k && x >= 0; ++step) {
            into.insert(x);
            x = parent[static_cast<std::size_t>(x)];
        }
    };
    VertexSet current(t.order());
    h.for_each([&](Vertex x) { add_prefix(x, current); });
    while (true) {
        std::vector<int> children_inside(t.order(), 0);
        current.for_each([&](Vertex x) {
            const Vertex p = parent[static_cast<std::size_t>(x)];
            if (p >= 0 && current.contains(p)) ++children_inside[static_cast<std::size_t>(p)];
        });
        VertexSet next = current;
        current.for_each([&](Vertex x) {
            if (children_inside[static_cast<std::size_t>(x)] >= 2) add_prefix(x, next);
        });
        if (next == current) return current;
        current = std::move(next);
    }
}

} // namespace sumner
