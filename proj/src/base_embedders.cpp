#include "sumner/base_embedders.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <tuple>

#include "sumner/error.hpp"
#include "sumner/generators.hpp"
#include "sumner/graph_ops.hpp"
#include "sumner/tree_analysis.hpp"

namespace sumner {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::found: return "Found";
        case Verdict::not_found: return "NotFound";
        case Verdict::budget_exhausted: return "BudgetExhausted";
        case Verdict::unknown: return "Unknown";
    }
    return "Unknown";
}

Verdict verdict_from_string(const std::string& s) {
    if (s == "Found") return Verdict::found;
    if (s == "NotFound") return Verdict::not_found;
    if (s == "BudgetExhausted") return Verdict::budget_exhausted;
    if (s == "Unknown") return Verdict::unknown;
    throw InvalidArgument("unknown verdict '" + s + "'");
}

namespace {

/// Constraints resolved against a concrete (T, G) pair.
struct Prepared {
    VertexSet usable;           // domain minus forbidden
    VertexSet reserved;         // hosts claimed by pins
    std::vector<Vertex> pin;    // per tree vertex, -1 when free
    std::vector<const VertexSet*> allowed;
    std::uint64_t budget = default_node_budget;
};

Prepared prepare(const DirectedTree& t, const Tournament& g, const SearchConstraints& c) {
    const std::size_t n = g.order(), m = t.order();
    if (m == 0) throw InvalidArgument("empty tree");
    const auto check_universe = [&](const VertexSet& s, const char* what) {
        if (s.universe() != n)
            throw InvalidArgument(std::string(what) + " universe " + std::to_string(s.universe()) +
                                  " does not match host order " + std::to_string(n));
    };
    Prepared p;
    p.usable = VertexSet::full(n);
    if (c.domain) {
        check_universe(*c.domain, "domain");
        p.usable &= *c.domain;
    }
    if (c.forbidden) {
        check_universe(*c.forbidden, "forbidden set");
        p.usable -= *c.forbidden;
    }
    if (c.allowed.size() > m) throw InvalidArgument("allowed sets given for more vertices than the tree has");
    p.allowed.assign(m, nullptr);
    for (std::size_t x = 0; x < c.allowed.size(); ++x)
        if (c.allowed[x]) {
            check_universe(*c.allowed[x], "allowed set");
            p.allowed[x] = &*c.allowed[x];
        }
    p.pin.assign(m, -1);
    p.reserved = VertexSet(n);
    for (const auto& [x, v] : c.pinned) {
        if (x < 0 || static_cast<std::size_t>(x) >= m) throw InvalidArgument("pinned tree vertex out of range");
        if (v < 0 || static_cast<std::size_t>(v) >= n) throw InvalidArgument("pinned host vertex out of range");
        if (p.pin[static_cast<std::size_t>(x)] >= 0) throw InvalidArgument("tree vertex pinned twice");
        if (!p.usable.contains(v)) throw InvalidArgument("pinned host vertex is forbidden or outside the domain");
        if (p.allowed[static_cast<std::size_t>(x)] && !p.allowed[static_cast<std::size_t>(x)]->contains(v))
            throw InvalidArgument("pinned host vertex is not allowed for its tree vertex");
        if (p.reserved.contains(v))
            throw InfeasiblePinning("host vertex " + std::to_string(v) + " pinned to two tree vertices");
        p.pin[static_cast<std::size_t>(x)] = v;
        p.reserved.insert(v);
    }
    for (const Arc& a : t.arcs()) {
        const Vertex pu = p.pin[static_cast<std::size_t>(a.tail)], pv = p.pin[static_cast<std::size_t>(a.head)];
        if (pu >= 0 && pv >= 0 && !g.arc(pu, pv))
            throw InfeasiblePinning("pinned arc " + std::to_string(a.tail) + "->" + std::to_string(a.head) +
                                    " maps to missing arc " + std::to_string(pu) + "->" + std::to_string(pv));
    }
    if (c.node_budget) p.budget = *c.node_budget;
    return p;
}

/// Tree vertices in BFS order with the per-vertex child demand.
struct Plan {
    std::vector<Vertex> order;
    std::vector<Vertex> parent;
    std::vector<bool> from_parent;  // arc parent→x
    std::vector<int> out_kids, in_kids;
    std::vector<std::size_t> out_weight, in_weight;
};

Plan make_plan(const DirectedTree& t, Vertex start) {
    const std::size_t m = t.order();
    const auto h = t.hang(start);
    Plan plan;
    plan.order = h.order;
    plan.parent = h.parent;
    plan.from_parent.assign(m, false);
    plan.out_kids.assign(m, 0);
    plan.in_kids.assign(m, 0);
    plan.out_weight.assign(m, 0);
    plan.in_weight.assign(m, 0);
    std::vector<std::size_t> size(m, 1);
    for (auto it = plan.order.rbegin(); it != plan.order.rend(); ++it) {
        const Vertex x = *it;
        const Vertex p = plan.parent[static_cast<std::size_t>(x)];
        if (p < 0) continue;
        const auto xi = static_cast<std::size_t>(x), pi = static_cast<std::size_t>(p);
        size[pi] += size[xi];
        plan.from_parent[xi] = t.has_arc(p, x);
        if (plan.from_parent[xi]) {
            ++plan.out_kids[pi];
            plan.out_weight[pi] += size[xi];
        } else {
            ++plan.in_kids[pi];
            plan.in_weight[pi] += size[xi];
        }
    }
    return plan;
}

Vertex start_vertex(const DirectedTree& t, const Prepared& p) {
    for (std::size_t x = 0; x < t.order(); ++x)
        if (p.pin[x] >= 0) return static_cast<Vertex>(x);
    return core_tree(t, 2).vertices.first();
}

/// Shared search state over one plan.
class Search {
public:
    Search(const DirectedTree& t, const Tournament& g, const Prepared& p)
        : t_(t), g_(g), p_(p), plan_(make_plan(t, start_vertex(t, p))), phi_(t.order()), free_(p.usable),
          rem_out_(plan_.out_kids), rem_in_(plan_.in_kids) {}

    std::uint64_t nodes() const noexcept { return nodes_; }
    bool exhausted() const noexcept { return exhausted_; }
    const Embedding& embedding() const noexcept { return phi_; }

    bool exhaustive() { return descend(0); }

    /// One pass; false when some vertex has no admissible image.
    bool greedy() {
        for (std::size_t i = 0; i < plan_.order.size(); ++i) {
            const Vertex x = plan_.order[i];
            const VertexSet cand = candidates(x);
            Vertex best = -1;
            std::tuple<long, long> best_score{};
            bool stop = false;
            cand.for_each([&](Vertex c) {
                if (stop) return;
                if (++nodes_ > p_.budget) {
                    exhausted_ = true;
                    stop = true;
                    return;
                }
                place(i, x, c);
                long slack = 0;
                if (feasible(i, &slack)) {
                    const auto score = std::make_tuple(own_margin(x, c), slack);
                    if (best < 0 || score > best_score) {
                        best = c;
                        best_score = score;
                    }
                }
                unplace(x, c);
            });
            if (stop || best < 0) return false;
            place(i, x, best);
        }
        return true;
    }

private:
    VertexSet candidates(Vertex x) const {
        const auto xi = static_cast<std::size_t>(x);
        VertexSet cand(g_.order());
        if (p_.pin[xi] >= 0) {
            cand.insert(p_.pin[xi]);
            cand &= free_;
        } else {
            cand = free_ - p_.reserved;
            if (p_.allowed[xi]) cand &= *p_.allowed[xi];
        }
        const Vertex parent = plan_.parent[xi];
        if (parent >= 0) {
            const Vertex img = phi_[parent];
            cand &= plan_.from_parent[xi] ? g_.out(img) : g_.in(img);
        }
        return cand;
    }

    void place(std::size_t, Vertex x, Vertex c) {
        phi_.assign(x, c);
        free_.erase(c);
        const Vertex parent = plan_.parent[static_cast<std::size_t>(x)];
        if (parent >= 0) --(plan_.from_parent[static_cast<std::size_t>(x)] ? rem_out_ : rem_in_)[static_cast<std::size_t>(parent)];
    }

    void unplace(Vertex x, Vertex c) {
        phi_.unassign(x);
        free_.insert(c);
        const Vertex parent = plan_.parent[static_cast<std::size_t>(x)];
        if (parent >= 0) ++(plan_.from_parent[static_cast<std::size_t>(x)] ? rem_out_ : rem_in_)[static_cast<std::size_t>(parent)];
    }

    /// Every placed vertex (order[0..i]) still has room for its unplaced
    /// children. `slack` receives the tightest margin.
    bool feasible(std::size_t i, long* slack) const {
        if (free_.count() < plan_.order.size() - i - 1) return false;
        long tight = std::numeric_limits<long>::max();
        for (std::size_t k = 0; k <= i; ++k) {
            const auto u = static_cast<std::size_t>(plan_.order[k]);
            if (rem_out_[u] == 0 && rem_in_[u] == 0) continue;
            const Vertex img = phi_[plan_.order[k]];
            if (rem_out_[u] > 0) {
                const auto room = static_cast<long>(count_and(g_.out(img), free_)) - rem_out_[u];
                if (room < 0) return false;
                tight = std::min(tight, room);
            }
            if (rem_in_[u] > 0) {
                const auto room = static_cast<long>(count_and(g_.in(img), free_)) - rem_in_[u];
                if (room < 0) return false;
                tight = std::min(tight, room);
            }
        }
        if (slack) *slack = tight == std::numeric_limits<long>::max() ? static_cast<long>(free_.count()) : tight;
        return true;
    }

    /// Residual room at c against the subtree weight hanging off x.
    long own_margin(Vertex x, Vertex c) const {
        const auto xi = static_cast<std::size_t>(x);
        long margin = std::numeric_limits<long>::max();
        if (plan_.out_kids[xi] > 0)
            margin = std::min(margin, static_cast<long>(count_and(g_.out(c), free_)) - static_cast<long>(plan_.out_weight[xi]));
        if (plan_.in_kids[xi] > 0)
            margin = std::min(margin, static_cast<long>(count_and(g_.in(c), free_)) - static_cast<long>(plan_.in_weight[xi]));
        return margin == std::numeric_limits<long>::max() ? 0 : margin;
    }

    bool descend(std::size_t i) {
        if (i == plan_.order.size()) return true;
        const Vertex x = plan_.order[i];
        const VertexSet cand = candidates(x);
        for (Vertex c = cand.first(); c >= 0; c = cand.next(c)) {
            if (++nodes_ > p_.budget) {
                exhausted_ = true;
                return false;
            }
            place(i, x, c);
            if (feasible(i, nullptr) && descend(i + 1)) return true;
            unplace(x, c);
            if (exhausted_) return false;
        }
        return false;
    }

    const DirectedTree& t_;
    const Tournament& g_;
    const Prepared& p_;
    Plan plan_;
    Embedding phi_;
    VertexSet free_;
    std::vector<int> rem_out_, rem_in_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
};

EmbedOutcome checked_found(const DirectedTree& t, const Tournament& g, const SearchConstraints& c, Embedding phi,
                           std::uint64_t nodes, std::string strategy) {
    if (!satisfies_constraints(t, g, c, phi))
        throw VerificationFailure(strategy + " produced an embedding that fails validation");
    EmbedOutcome out;
    out.verdict = Verdict::found;
    out.embedding = std::move(phi);
    out.nodes = nodes;
    out.strategy = std::move(strategy);
    return out;
}

} // namespace

bool satisfies_constraints(const DirectedTree& t, const Tournament& g, const SearchConstraints& c, const Embedding& phi) {
    if (phi.tree_order() != t.order() || !phi.is_total()) return false;
    for (Vertex v : phi.images())
        if (static_cast<std::size_t>(v) >= g.order()) return false;
    if (!is_valid_embedding(t, g, phi)) return false;
    for (const auto& [x, v] : c.pinned)
        if (phi[x] != v) return false;
    for (std::size_t x = 0; x < t.order(); ++x) {
        const Vertex v = phi[static_cast<Vertex>(x)];
        if (c.domain && !c.domain->contains(v)) return false;
        if (c.forbidden && c.forbidden->contains(v)) return false;
        if (x < c.allowed.size() && c.allowed[x] && !c.allowed[x]->contains(v)) return false;
    }
    return true;
}

EmbedOutcome exhaustive_embed(const DirectedTree& t, const Tournament& g, const SearchConstraints& c) {
    const Prepared p = prepare(t, g, c);
    EmbedOutcome out;
    out.strategy = "exhaustive";
    if (p.usable.count() < t.order()) {
        out.verdict = Verdict::not_found;
        return out;
    }
    Search search(t, g, p);
    const bool ok = search.exhaustive();
    if (ok) return checked_found(t, g, c, search.embedding(), search.nodes(), "exhaustive");
    out.nodes = search.nodes();
    out.verdict = search.exhausted() ? Verdict::budget_exhausted : Verdict::not_found;
    return out;
}

EmbedOutcome greedy_embed(const DirectedTree& t, const Tournament& g, const SearchConstraints& c) {
    const Prepared p = prepare(t, g, c);
    EmbedOutcome out;
    out.strategy = "greedy";
    out.verdict = Verdict::budget_exhausted;
    if (p.usable.count() < t.order()) return out;
    Search search(t, g, p);
    if (search.greedy()) return checked_found(t, g, c, search.embedding(), search.nodes(), "greedy");
    out.nodes = search.nodes();
    return out;
}

EmbedOutcome greedy_then_exhaustive(const DirectedTree& t, const Tournament& g, const SearchConstraints& c) {
    EmbedOutcome first = greedy_embed(t, g, c);
    if (first.found()) return first;
    EmbedOutcome second = exhaustive_embed(t, g, c);
    second.nodes += first.nodes;
    return second;
}

std::vector<Vertex> redei_path(const Tournament& g) {
    std::vector<Vertex> path;
    path.reserve(g.order());
    for (std::size_t k = 0; k < g.order(); ++k) {
        const auto v = static_cast<Vertex>(k);
        auto it = std::find_if(path.begin(), path.end(), [&](Vertex w) { return g.arc(v, w); });
        path.insert(it, v);
    }
    return path;
}

Embedding redei_path_embedding(const Tournament& g) { return Embedding::from_images(redei_path(g)); }

std::size_t forward_arc_count(const Tournament& g, const std::vector<Vertex>& order) {
    VertexSet before(g.order());
    std::size_t forward = 0;
    for (Vertex v : order) {
        forward += count_and(g.in(v), before);
        before.insert(v);
    }
    return forward;
}

namespace {

MedianOrder exact_median(const Tournament& g) {
    const std::size_t n = g.order();
    if (n > exact_median_cap)
        throw CapExceeded("exact median order limited to n <= " + std::to_string(exact_median_cap));
    std::vector<std::uint32_t> in_mask(n, 0);
    for (std::size_t v = 0; v < n; ++v)
        g.in(static_cast<Vertex>(v)).for_each([&](Vertex u) { in_mask[v] |= std::uint32_t{1} << u; });
    const std::uint32_t states = std::uint32_t{1} << n;
    std::vector<std::int32_t> best(states, -1);
    std::vector<std::uint8_t> last(states, 0);
    best[0] = 0;
    for (std::uint32_t mask = 0; mask < states; ++mask) {
        const std::int32_t base = best[mask];
        for (std::size_t v = 0; v < n; ++v) {
            const std::uint32_t bit = std::uint32_t{1} << v;
            if (mask & bit) continue;
            const std::int32_t value = base + std::popcount(in_mask[v] & mask);
            if (value > best[mask | bit]) {
                best[mask | bit] = value;
                last[mask | bit] = static_cast<std::uint8_t>(v);
            }
        }
    }
    MedianOrder out;
    out.order.resize(n);
    std::uint32_t mask = states - 1;
    for (std::size_t k = n; k-- > 0;) {
        out.order[k] = last[mask];
        mask &= ~(std::uint32_t{1} << last[mask]);
    }
    out.forward_arcs = static_cast<std::size_t>(best[states - 1]);
    return out;
}

/// Applies improving single-vertex interval moves until none exists.
void interval_move_search(const Tournament& g, std::vector<Vertex>& order) {
    const std::size_t n = order.size();
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t i = 0; i < n; ++i) {
            const Vertex v = order[i];
            long gain = 0, best_gain = 0;
            std::size_t best_j = i;
            for (std::size_t j = i + 1; j < n; ++j) {
                gain += (g.arc(order[j], v) ? 1 : 0) - (g.arc(v, order[j]) ? 1 : 0);
                if (gain > best_gain) {
                    best_gain = gain;
                    best_j = j;
                }
            }
            gain = 0;
            for (std::size_t j = i; j-- > 0;) {
                gain += (g.arc(v, order[j]) ? 1 : 0) - (g.arc(order[j], v) ? 1 : 0);
                if (gain > best_gain) {
                    best_gain = gain;
                    best_j = j;
                }
            }
            if (best_gain > 0) {
                order.erase(order.begin() + static_cast<long>(i));
                order.insert(order.begin() + static_cast<long>(best_j), v);
                improved = true;
            }
        }
    }
}

MedianOrder local_median(const Tournament& g) {
    const std::vector<Vertex> path = redei_path(g);
    const std::size_t n = path.size();
    MedianOrder best;
    for (std::size_t r = 0; r < 5; ++r) {
        const std::size_t shift = n * r / 5;
        if (r > 0 && shift == n * (r - 1) / 5) continue;
        std::vector<Vertex> order(n);
        for (std::size_t k = 0; k < n; ++k) order[k] = path[(k + shift) % n];
        interval_move_search(g, order);
        const std::size_t forward = forward_arc_count(g, order);
        if (best.order.empty() || forward > best.forward_arcs) best = {std::move(order), forward};
    }
    return best;
}

} // namespace

MedianOrder median_order(const Tournament& g, MedianMode mode) {
    return mode == MedianMode::exact ? exact_median(g) : local_median(g);
}

std::optional<Vertex> outbranching_root(const DirectedTree& t) {
    std::optional<Vertex> root;
    for (std::size_t v = 0; v < t.order(); ++v) {
        const std::size_t in = t.in_degree(static_cast<Vertex>(v));
        if (in > 1) return std::nullopt;
        if (in == 0) {
            if (root) return std::nullopt;
            root = static_cast<Vertex>(v);
        }
    }
    return root;
}

namespace {

/// Greedy placement along `order`; children visited in `visit` order.
std::optional<Embedding> median_greedy(const DirectedTree& t, const Tournament& g, const std::vector<Vertex>& order,
                                       const std::vector<Vertex>& visit, const std::vector<Vertex>& parent) {
    const std::size_t n = g.order();
    std::vector<std::size_t> pos(n);
    for (std::size_t k = 0; k < n; ++k) pos[static_cast<std::size_t>(order[k])] = k;
    std::vector<bool> used(n, false);
    Embedding phi(t.order());
    for (Vertex x : visit) {
        const Vertex p = parent[static_cast<std::size_t>(x)];
        Vertex image = -1;
        if (p < 0) {
            image = order[0];
        } else {
            const Vertex pi = phi[p];
            for (std::size_t k = pos[static_cast<std::size_t>(pi)] + 1; k < n && image < 0; ++k)
                if (!used[static_cast<std::size_t>(order[k])] && g.arc(pi, order[k])) image = order[k];
            for (std::size_t k = 0; k < n && image < 0; ++k)
                if (!used[static_cast<std::size_t>(order[k])] && g.arc(pi, order[k])) image = order[k];
        }
        if (image < 0) return std::nullopt;
        used[static_cast<std::size_t>(image)] = true;
        phi.assign(x, image);
    }
    return phi;
}

std::vector<Vertex> dfs_preorder(const DirectedTree& t, Vertex root) {
    std::vector<Vertex> out, stack{root};
    std::vector<bool> seen(t.order(), false);
    seen[static_cast<std::size_t>(root)] = true;
    while (!stack.empty()) {
        const Vertex v = stack.back();
        stack.pop_back();
        out.push_back(v);
        const auto& nb = t.neighbours(v);
        for (auto it = nb.rbegin(); it != nb.rend(); ++it)
            if (!seen[static_cast<std::size_t>(it->vertex)]) {
                seen[static_cast<std::size_t>(it->vertex)] = true;
                stack.push_back(it->vertex);
            }
    }
    return out;
}

} // namespace

EmbedOutcome embed_outbranching(const DirectedTree& t, const Tournament& g, const OutbranchingOptions& options) {
    const auto root = outbranching_root(t);
    if (!root) throw InvalidArgument("tree is not an outbranching");
    if (g.order() + 2 < 2 * t.order())
        throw InvalidArgument("outbranching embedding needs |G| >= 2|T|-2 (|T|=" + std::to_string(t.order()) +
                              ", |G|=" + std::to_string(g.order()) + ")");
    const MedianOrder mo = median_order(g, g.order() <= 16 ? MedianMode::exact : MedianMode::local);
    const auto h = t.hang(*root);
    for (const auto& visit : {h.order, dfs_preorder(t, *root)}) {
        if (auto phi = median_greedy(t, g, mo.order, visit, h.parent); phi && is_valid_embedding(t, g, *phi)) {
            EmbedOutcome out = checked_found(t, g, {}, std::move(*phi), t.order(), "outbranching-median");
            return out;
        }
    }
    EmbedOutcome out;
    out.strategy = "outbranching-fallback";
    out.used_fallback = true;
    if (g.order() > options.fallback_cap) {
        out.verdict = Verdict::budget_exhausted;
        return out;
    }
    SearchConstraints c;
    c.node_budget = options.node_budget;
    EmbedOutcome ex = exhaustive_embed(t, g, c);
    ex.strategy = out.strategy;
    ex.used_fallback = true;
    return ex;
}

} // namespace sumner
