#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sumner/error.hpp"
#include "sumner/vertex_set.hpp"

namespace sumner {

/// Orientation of the complete graph on [0, n). Immutable after construction;
/// both out- and in-rows are stored so either neighbourhood is a word-parallel
/// bitset.
class Tournament {
public:
    Tournament() = default;

    /// `u_beats_v(u, v)` is queried once per pair with u < v; true means u→v.
    template <typename Pred>
    static Tournament from_predicate(std::size_t n, Pred&& u_beats_v) {
        if (n == 0) throw InvalidArgument("tournament needs at least one vertex");
        Tournament g(n);
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v) {
                if (u_beats_v(static_cast<Vertex>(u), static_cast<Vertex>(v)))
                    g.orient(static_cast<Vertex>(u), static_cast<Vertex>(v));
                else
                    g.orient(static_cast<Vertex>(v), static_cast<Vertex>(u));
            }
        return g;
    }

    /// Rows must describe a tournament (checked).
    static Tournament from_out_rows(std::vector<VertexSet> rows);

    std::size_t order() const noexcept { return out_.size(); }

    /// True iff u→v. Always false for u == v.
    bool arc(Vertex u, Vertex v) const { return out_.at(static_cast<std::size_t>(u)).contains(v); }

    const VertexSet& out(Vertex v) const { return out_.at(static_cast<std::size_t>(v)); }
    const VertexSet& in(Vertex v) const { return in_.at(static_cast<std::size_t>(v)); }

    std::size_t outdegree(Vertex v) const { return out(v).count(); }
    std::size_t indegree(Vertex v) const { return in(v).count(); }

    VertexSet all_vertices() const { return VertexSet::full(order()); }

    friend bool operator==(const Tournament& a, const Tournament& b) { return a.out_ == b.out_; }

private:
    explicit Tournament(std::size_t n);
    void orient(Vertex u, Vertex v);

    std::vector<VertexSet> out_;
    std::vector<VertexSet> in_;
};

} // namespace sumner
