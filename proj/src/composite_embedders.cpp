#include "sumner/composite_embedders.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sumner/error.hpp"
#include "sumner/graph_ops.hpp"
#include "sumner/rng.hpp"
#include "sumner/tree_analysis.hpp"

namespace sumner {

namespace {

constexpr double tolerance = 1e-9;

void require(bool ok, const char* hypothesis, const std::string& detail) {
    if (!ok) throw HypothesisViolation(hypothesis, detail);
}

std::string str(std::size_t x) { return std::to_string(x); }

/// Copies the images of sub's vertices into `phi` through `to_parent`.
void lift(const Embedding& sub_phi, const std::vector<Vertex>& to_parent, Embedding& phi) {
    for (std::size_t i = 0; i < to_parent.size(); ++i) phi.assign(to_parent[i], sub_phi[static_cast<Vertex>(i)]);
}

VertexSet occupied_set(const Embedding& phi, std::size_t host_order) { return phi.image_set(host_order); }

/// Components of T − C sorted by decreasing order, ties by smallest id.
std::vector<AttachedComponent> by_decreasing_size(std::vector<AttachedComponent> comps) {
    std::stable_sort(comps.begin(), comps.end(),
                     [](const AttachedComponent& a, const AttachedComponent& b) { return a.size() > b.size(); });
    return comps;
}

void check_universe(const VertexSet& s, std::size_t n, const char* hypothesis, const char* what) {
    require(s.universe() == n, hypothesis, std::string(what) + " universe does not match");
}

} // namespace

Embedding embed_inside(const DirectedTree& sub, const Tournament& g, const VertexSet& domain, std::uint64_t node_budget) {
    if (domain.count() < sub.order())
        throw InnerEmbeddingFailure("inner embedding of " + str(sub.order()) + " vertices into " + str(domain.count()) +
                                    " available vertices");
    SearchConstraints c;
    c.domain = domain;
    c.node_budget = node_budget;
    EmbedOutcome out = greedy_then_exhaustive(sub, g, c);
    if (!out.found())
        throw InnerEmbeddingFailure("inner embedding of " + str(sub.order()) + " vertices into " + str(domain.count()) +
                                    " available vertices: " + to_string(out.verdict));
    return std::move(*out.embedding);
}

// ---- round the back -------------------------------------------------------

namespace {

VertexSet n_prime_of(const RoundTheBackInstance& inst) {
    VertexSet np(inst.host.order());
    const std::size_t need = 6 * inst.d;
    inst.n_set.for_each([&](Vertex u) {
        if (count_and(inst.host.in(u), inst.x_set) >= need && count_and(inst.host.out(u), inst.x_set) >= need) np.insert(u);
    });
    return np;
}

} // namespace

void validate(const RoundTheBackInstance& inst) {
    const std::size_t n = inst.host.order();
    require(inst.tree.root().has_value(), "rooted", "tree has no root");
    const Vertex t = *inst.tree.root();
    require(inst.tree.in_degree(t) == 0, "root-no-in-arcs", "root has " + str(inst.tree.in_degree(t)) + " in-arcs");
    check_universe(inst.n_set, n, "partition", "N");
    check_universe(inst.x_set, n, "partition", "X");
    require(inst.v >= 0 && static_cast<std::size_t>(inst.v) < n, "partition", "v out of range");
    VertexSet all = inst.n_set | inst.x_set;
    all.insert(inst.v);
    require(!inst.n_set.intersects(inst.x_set) && !inst.n_set.contains(inst.v) && !inst.x_set.contains(inst.v) &&
                all.count() == n,
            "partition", "{v}, N, X do not partition V(G)");
    const ComponentSplit split = components_against(inst.tree, VertexSet(inst.tree.order(), {t}));
    require(split.max_component_size() <= inst.d, "component-size",
            "a component of T - t has " + str(split.max_component_size()) + " > d = " + str(inst.d) + " vertices");
    require(inst.n_set.count() + 1 >= inst.tree.order(), "N-size",
            "|N| = " + str(inst.n_set.count()) + " < |T| - 1 = " + str(inst.tree.order() - 1));
    require(inst.n_set.is_subset_of(inst.host.out(inst.v)), "N-outneighbours", "N is not inside N+(v)");
    const std::size_t np = n_prime_of(inst).count();
    require(np >= 3 * inst.d, "N-prime",
            str(np) + " vertices of N have 6d in- and out-neighbours in X, need " + str(3 * inst.d));
}

RoundTheBackResult round_the_back(const RoundTheBackInstance& inst) {
    validate(inst);
    const DirectedTree& tree = inst.tree;
    const Tournament& g = inst.host;
    const std::size_t n = g.order();
    const Vertex t = *tree.root();
    const std::size_t d = inst.d;
    const VertexSet np = n_prime_of(inst);

    Embedding phi(tree.order());
    phi.assign(t, inst.v);
    VertexSet occ(n, {inst.v});

    const auto comps = by_decreasing_size(components_against(tree, VertexSet(tree.order(), {t})).components);
    for (const AttachedComponent& comp : comps) {
        const std::size_t x_occ = count_and(occ, inst.x_set);
        const Vertex vi = (np - occ).first();
        const InducedSubtree sub = induced_subtree(tree, comp.vertices);
        if (vi >= 0 && x_occ < 3 * d) {
            // t_i at a fresh N′ vertex, the rest of T_i inside X around it.
            phi.assign(comp.entry, vi);
            occ.insert(vi);
            Vertex local_entry = -1;
            for (std::size_t k = 0; k < sub.to_parent.size(); ++k)
                if (sub.to_parent[k] == comp.entry) local_entry = static_cast<Vertex>(k);
            const ComponentSplit inner = components_against(sub.tree, VertexSet(sub.tree.order(), {local_entry}));
            for (const Direction side : {Direction::out, Direction::in})
                for (const AttachedComponent& c : inner.components) {
                    if (c.side != side) continue;
                    const InducedSubtree piece = induced_subtree(sub.tree, c.vertices);
                    const VertexSet domain = ((side == Direction::out ? g.out(vi) : g.in(vi)) & inst.x_set) - occ;
                    const Embedding piece_phi = embed_inside(piece.tree, g, domain);
                    for (std::size_t k = 0; k < piece.to_parent.size(); ++k) {
                        const Vertex image = piece_phi[static_cast<Vertex>(k)];
                        phi.assign(sub.to_parent[static_cast<std::size_t>(piece.to_parent[k])], image);
                        occ.insert(image);
                    }
                }
        } else {
            // Whole of T_i inside the unoccupied part of N.
            const Embedding sub_phi = embed_inside(sub.tree, g, inst.n_set - occ);
            lift(sub_phi, sub.to_parent, phi);
            occ |= occupied_set(sub_phi, n);
        }
    }
    RoundTheBackResult out{std::move(phi), 0};
    out.x_occupied = count_and(out.embedding.image_set(n), inst.x_set);
    if (!is_valid_embedding(tree, g, out.embedding) || out.embedding[t] != inst.v)
        throw VerificationFailure("round_the_back produced an invalid embedding");
    if (out.x_occupied > 4 * d)
        throw VerificationFailure("round_the_back occupied " + str(out.x_occupied) + " > 4d vertices of X");
    return out;
}

// ---- one by one -----------------------------------------------------------

namespace {

struct OneByOneShape {
    ComponentSplit split;
    std::size_t outside = 0;  // |T − T_c|
    bool arcs_out = false;    // some arc T_c → T − T_c
    bool arcs_in = false;     // some arc T − T_c → T_c
    VertexSet n_prime;
    std::size_t r = 0;
};

OneByOneShape shape_of(const OneByOneInstance& inst) {
    OneByOneShape s;
    s.split = components_against(inst.tree, inst.core);
    s.outside = inst.tree.order() - inst.core.count();
    for (const AttachedComponent& c : s.split.components) (c.side == Direction::out ? s.arcs_out : s.arcs_in) = true;
    if (inst.n_prime) {
        s.n_prime = *inst.n_prime;
        s.r = inst.r;
    } else {
        s.n_prime = inst.n_set;
        s.r = s.outside;
    }
    return s;
}

} // namespace

void validate(const OneByOneInstance& inst) {
    const Tournament& g = inst.host;
    const std::size_t n = g.order();
    require(inst.core.universe() == inst.tree.order() && !inst.core.empty(), "core-connected", "T_c is empty");
    try {
        (void)induced_subtree(inst.tree, inst.core);
    } catch (const InvalidArgument&) {
        throw HypothesisViolation("core-connected", "T_c does not induce a subtree");
    }
    check_universe(inst.s_set, n, "sets", "S");
    check_universe(inst.n_set, n, "sets", "N");
    require(!inst.s_set.intersects(inst.n_set), "sets", "S and N intersect");
    require(inst.partial.tree_order() == inst.tree.order(), "partial-embedding", "embedding has the wrong length");
    for (std::size_t x = 0; x < inst.tree.order(); ++x) {
        const auto xv = static_cast<Vertex>(x);
        require(inst.partial.is_mapped(xv) == inst.core.contains(xv), "partial-embedding",
                "mapped vertices differ from T_c at tree vertex " + str(x));
        if (inst.partial.is_mapped(xv))
            require(inst.s_set.contains(inst.partial[xv]), "partial-embedding", "T_c image leaves S");
    }
    require(is_valid_partial_embedding(inst.tree, g, inst.partial), "partial-embedding", "T_c embedding is not valid");

    const OneByOneShape s = shape_of(inst);
    require(s.split.max_component_size() <= inst.d, "component-size",
            "a component of T - T_c has " + str(s.split.max_component_size()) + " > d = " + str(inst.d) + " vertices");
    if (inst.variant == OneByOneVariant::b) require(inst.n_prime.has_value(), "N-prime-subset", "variant b needs N'");
    if (inst.n_prime) {
        check_universe(*inst.n_prime, n, "N-prime-subset", "N'");
        require(inst.n_prime->is_subset_of(inst.n_set), "N-prime-subset", "N' is not inside N");
        require(inst.r <= s.outside, "r-bound", "r = " + str(inst.r) + " > |T - T_c| = " + str(s.outside));
    }
    bool need_out = true, need_in = true;
    if (inst.variant == OneByOneVariant::c) {
        require(!(s.arcs_out && s.arcs_in), "direction",
                "T has arcs in both directions between T_c and T - T_c");
        need_out = s.arcs_out;
        need_in = s.arcs_in;
    }
    const std::size_t need = s.outside + 2 * inst.d;
    const std::size_t need_prime = s.r + 2 * inst.d;
    const bool check_prime = inst.n_prime.has_value();
    inst.s_set.for_each([&](Vertex v) {
        if (need_out)
            require(count_and(g.out(v), inst.n_set) >= need, "(i)",
                    "vertex " + str(static_cast<std::size_t>(v)) + " has " + str(count_and(g.out(v), inst.n_set)) +
                        " out-neighbours in N, need " + str(need));
        if (need_in)
            require(count_and(g.in(v), inst.n_set) >= need, "(ii)",
                    "vertex " + str(static_cast<std::size_t>(v)) + " has " + str(count_and(g.in(v), inst.n_set)) +
                        " in-neighbours in N, need " + str(need));
        if (check_prime && need_out)
            require(count_and(g.out(v), s.n_prime) >= need_prime, "(iii)",
                    "vertex " + str(static_cast<std::size_t>(v)) + " has too few out-neighbours in N'");
        if (check_prime && need_in)
            require(count_and(g.in(v), s.n_prime) >= need_prime, "(iv)",
                    "vertex " + str(static_cast<std::size_t>(v)) + " has too few in-neighbours in N'");
    });
}

OneByOneResult extend_one_by_one(const OneByOneInstance& inst) {
    validate(inst);
    const Tournament& g = inst.host;
    const std::size_t n = g.order();
    const OneByOneShape s = shape_of(inst);
    Embedding phi = inst.partial;
    VertexSet occ = phi.image_set(n);

    for (const AttachedComponent& comp : s.split.components) {
        const Vertex v = phi[comp.attachment];
        const VertexSet& nb = comp.side == Direction::out ? g.out(v) : g.in(v);
        const VertexSet pool = (nb & inst.n_set) - occ;
        const VertexSet pool_prime = pool & s.n_prime;
        const std::size_t used_prime = count_and_and_not(nb, s.n_prime, pool_prime);
        const std::size_t size = comp.size();
        VertexSet domain(n);
        if (used_prime + size <= s.r) {
            domain = pool_prime;
        } else if (used_prime < s.r) {
            // k = r − used′ of T_s must land in N′: top up with |T_s| − k others.
            const std::size_t k = s.r - used_prime;
            domain = pool_prime;
            std::size_t extra = size - k;
            const VertexSet rest = pool - s.n_prime;
            for (Vertex u = rest.first(); u >= 0 && extra > 0; u = rest.next(u), --extra) domain.insert(u);
        } else {
            domain = pool;
        }
        const InducedSubtree sub = induced_subtree(inst.tree, comp.vertices);
        Embedding sub_phi;
        try {
            sub_phi = embed_inside(sub.tree, g, domain);
        } catch (const InnerEmbeddingFailure&) {
            if (domain == pool) throw;
            sub_phi = embed_inside(sub.tree, g, pool);
        }
        lift(sub_phi, sub.to_parent, phi);
        occ |= sub_phi.image_set(n);
    }

    OneByOneResult out{std::move(phi), 0};
    if (!is_valid_embedding(inst.tree, g, out.embedding))
        throw VerificationFailure("extend_one_by_one produced an invalid embedding");
    for (std::size_t x = 0; x < inst.tree.order(); ++x) {
        const auto xv = static_cast<Vertex>(x);
        if (inst.core.contains(xv)) {
            if (out.embedding[xv] != inst.partial[xv]) throw VerificationFailure("extend_one_by_one moved a T_c vertex");
        } else {
            if (!inst.n_set.contains(out.embedding[xv])) throw VerificationFailure("extend_one_by_one left N");
            if (s.n_prime.contains(out.embedding[xv])) ++out.landed_in_n_prime;
        }
    }
    if (inst.n_prime && out.landed_in_n_prime < inst.r)
        throw VerificationFailure("extend_one_by_one landed " + str(out.landed_in_n_prime) + " < r = " + str(inst.r) +
                                  " vertices in N'");
    return out;
}

// ---- component by component ----------------------------------------------

namespace {

/// Components of the forest induced by `part`, each as a vertex set.
std::vector<VertexSet> forest_components(const DirectedTree& t, const VertexSet& part) {
    std::vector<VertexSet> comps;
    VertexSet seen(t.order());
    part.for_each([&](Vertex start) {
        if (seen.contains(start)) return;
        VertexSet comp(t.order());
        std::vector<Vertex> stack{start};
        seen.insert(start);
        while (!stack.empty()) {
            const Vertex x = stack.back();
            stack.pop_back();
            comp.insert(x);
            for (const auto& nb : t.neighbours(x))
                if (part.contains(nb.vertex) && !seen.contains(nb.vertex)) {
                    seen.insert(nb.vertex);
                    stack.push_back(nb.vertex);
                }
        }
        comps.push_back(std::move(comp));
    });
    return comps;
}

std::pair<std::size_t, std::size_t> two_largest(const std::vector<VertexSet>& comps) {
    std::size_t first = 0, second = 0;
    for (const VertexSet& c : comps) {
        const std::size_t k = c.count();
        if (k > first) {
            second = first;
            first = k;
        } else if (k > second) {
            second = k;
        }
    }
    return {first, second};
}

} // namespace

void validate(const TwoSetInstance& inst) {
    const DirectedTree& t = inst.tree;
    const Tournament& g = inst.host;
    const std::size_t n = t.order(), hn = g.order();
    require(inst.f_minus.universe() == n && inst.f_plus.universe() == n, "partition-forests", "forest universe mismatch");
    require(!inst.f_minus.intersects(inst.f_plus) && (inst.f_minus | inst.f_plus).count() == n, "partition-forests",
            "V(F-) and V(F+) do not partition V(T)");
    for (const Arc& a : t.arcs())
        require(!(inst.f_plus.contains(a.tail) && inst.f_minus.contains(a.head)), "cross-arc-direction",
                "arc " + str(static_cast<std::size_t>(a.tail)) + "->" + str(static_cast<std::size_t>(a.head)) +
                    " runs from F+ to F-");
    require(!inst.f_plus.empty(), "partition-forests", "F+ is empty");
    check_universe(inst.y_set, hn, "sets", "Y");
    check_universe(inst.z_set, hn, "sets", "Z");
    require(!inst.y_set.intersects(inst.z_set), "sets", "Y and Z intersect");
    const auto plus = forest_components(t, inst.f_plus);
    const auto [t1, t2] = two_largest(plus);
    const double an = inst.alpha * static_cast<double>(n), gn = inst.gamma * static_cast<double>(n);
    require(static_cast<double>(inst.y_set.count()) + tolerance >= static_cast<double>(inst.f_plus.count() + t2) + an,
            "Y-size", "|Y| = " + str(inst.y_set.count()) + " too small");
    require(static_cast<double>(inst.z_set.count()) + tolerance >= static_cast<double>(2 * inst.f_minus.count()) + an,
            "Z-size", "|Z| = " + str(inst.z_set.count()) + " too small");
    inst.y_set.for_each([&](Vertex v) {
        require(static_cast<double>(count_and(g.out(v), inst.z_set)) <= gn + tolerance, "Y-out-degree-into-Z",
                "vertex " + str(static_cast<std::size_t>(v)) + " has too many out-neighbours in Z");
    });
    inst.z_set.for_each([&](Vertex v) {
        require(static_cast<double>(count_and(g.in(v), inst.y_set)) <= gn + tolerance, "Z-in-degree-from-Y",
                "vertex " + str(static_cast<std::size_t>(v)) + " has too many in-neighbours in Y");
    });
    require(inst.seed.tree_order() == n, "seed", "seed embedding has the wrong length");
    VertexSet mapped(n);
    for (std::size_t x = 0; x < n; ++x)
        if (inst.seed.is_mapped(static_cast<Vertex>(x))) mapped.insert(static_cast<Vertex>(x));
    const bool matches = std::any_of(plus.begin(), plus.end(), [&, t1 = t1](const VertexSet& c) { return c == mapped && c.count() == t1; });
    require(matches, "seed", "seed does not map exactly a largest component of F+");
    mapped.for_each([&](Vertex x) { require(inst.y_set.contains(inst.seed[x]), "seed", "seed image leaves Y"); });
    require(is_valid_partial_embedding(t, g, inst.seed), "seed", "seed embedding is not valid");
}

Embedding component_by_component(const TwoSetInstance& inst) {
    validate(inst);
    const DirectedTree& t = inst.tree;
    const Tournament& g = inst.host;
    const std::size_t n = t.order(), hn = g.order();
    std::vector<VertexSet> comps = forest_components(t, inst.f_plus);
    for (VertexSet& c : forest_components(t, inst.f_minus)) comps.push_back(std::move(c));

    Embedding phi = inst.seed;
    VertexSet done(n);
    for (std::size_t x = 0; x < n; ++x)
        if (phi.is_mapped(static_cast<Vertex>(x))) done.insert(static_cast<Vertex>(x));
    VertexSet occ = phi.image_set(hn);
    std::vector<bool> placed(comps.size(), false);
    for (std::size_t i = 0; i < comps.size(); ++i)
        if (comps[i] == done) placed[i] = true;

    for (std::size_t round = 1; round < comps.size(); ++round) {
        // Next component: smallest id among those joined to the embedded part.
        std::size_t pick = comps.size();
        Vertex anchor = -1, entry = -1;
        Vertex best_id = -1;
        for (std::size_t i = 0; i < comps.size(); ++i) {
            if (placed[i]) continue;
            for (const Arc& a : t.arcs()) {
                Vertex in_done = -1, in_comp = -1;
                if (done.contains(a.tail) && comps[i].contains(a.head)) in_done = a.tail, in_comp = a.head;
                if (done.contains(a.head) && comps[i].contains(a.tail)) in_done = a.head, in_comp = a.tail;
                if (in_done < 0) continue;
                const Vertex id = comps[i].first();
                if (best_id < 0 || id < best_id) {
                    best_id = id;
                    pick = i;
                    anchor = in_done;
                    entry = in_comp;
                }
                break;
            }
        }
        if (pick == comps.size()) throw InnerEmbeddingFailure("component ordering stalled");
        (void)entry;
        const Vertex v = phi[anchor];
        const bool plus = inst.f_plus.contains(comps[pick].first());
        const VertexSet domain = plus ? (g.out(v) & inst.y_set) - occ : (g.in(v) & inst.z_set) - occ;
        const InducedSubtree sub = induced_subtree(t, comps[pick]);
        const Embedding sub_phi = embed_inside(sub.tree, g, domain);
        lift(sub_phi, sub.to_parent, phi);
        occ |= sub_phi.image_set(hn);
        done |= comps[pick];
        placed[pick] = true;
    }
    if (!is_valid_embedding(t, g, phi)) throw VerificationFailure("component_by_component produced an invalid embedding");
    for (std::size_t x = 0; x < n; ++x) {
        const auto xv = static_cast<Vertex>(x);
        const VertexSet& target = inst.f_plus.contains(xv) ? inst.y_set : inst.z_set;
        if (!target.contains(phi[xv])) throw VerificationFailure("component_by_component placed a vertex on the wrong side");
    }
    return phi;
}

TwoSetInstance reverse(const TwoSetInstance& inst) {
    TwoSetInstance r;
    r.tree = reverse(inst.tree);
    r.host = reverse(inst.host);
    r.f_minus = inst.f_plus;
    r.f_plus = inst.f_minus;
    r.y_set = inst.z_set;
    r.z_set = inst.y_set;
    r.gamma = inst.gamma;
    r.alpha = inst.alpha;
    r.seed = inst.seed;
    return r;
}

void validate_dual(const TwoSetInstance& inst) { validate(reverse(inst)); }

Embedding dual_component_by_component(const TwoSetInstance& inst) {
    const Embedding phi = component_by_component(reverse(inst));
    if (!is_valid_embedding(inst.tree, inst.host, phi))
        throw VerificationFailure("dual_component_by_component produced an invalid embedding");
    return phi;
}

// ---- almost-regular tournaments ------------------------------------------

bool is_almost_regular(const Tournament& g, double gamma) {
    const double bound = (1.0 - gamma) * static_cast<double>(g.order() - 1) / 2.0;
    for (std::size_t v = 0; v < g.order(); ++v) {
        const auto d = degrees(g, static_cast<Vertex>(v));
        if (static_cast<double>(d.out) + tolerance < bound || static_cast<double>(d.in) + tolerance < bound) return false;
    }
    return true;
}

DegreeCase degree_case_from_string(const std::string& s) {
    if (s == "i") return DegreeCase::i;
    if (s == "ii") return DegreeCase::ii;
    if (s == "iii") return DegreeCase::iii;
    if (s == "iv") return DegreeCase::iv;
    throw InvalidArgument("unknown degree case '" + s + "'");
}

std::string to_string(DegreeCase c) {
    switch (c) {
        case DegreeCase::i: return "i";
        case DegreeCase::ii: return "ii";
        case DegreeCase::iii: return "iii";
        case DegreeCase::iv: return "iv";
    }
    return "i";
}

bool degree_case_holds(const Tournament& g, double alpha, DegreeCase c) {
    const double half = static_cast<double>(g.order() - 1) / 2.0;
    for (std::size_t v = 0; v < g.order(); ++v) {
        const auto d = degrees(g, static_cast<Vertex>(v));
        const auto out = static_cast<double>(d.out), in = static_cast<double>(d.in);
        bool ok = true;
        switch (c) {
            case DegreeCase::i: ok = out + tolerance >= (1 - alpha) * half; break;
            case DegreeCase::ii: ok = in + tolerance >= (1 - alpha) * half; break;
            case DegreeCase::iii: ok = out <= (1 + alpha) * half + tolerance; break;
            case DegreeCase::iv: ok = in <= (1 + alpha) * half + tolerance; break;
        }
        if (!ok) return false;
    }
    return true;
}

VertexSet almost_regular_subtournament(const Tournament& g, double alpha, DegreeCase c, double gamma) {
    if (alpha < 0 || alpha >= 1) throw InvalidArgument("alpha must lie in [0, 1)");
    if (!degree_case_holds(g, alpha, c))
        throw HypothesisViolation("case (" + to_string(c) + ")", "degree condition fails for some vertex");
    // (iv) is (i) and (iii) is (ii); (ii) is (i) on the reversed tournament.
    const bool flip = c == DegreeCase::ii || c == DegreeCase::iii;
    const Tournament h = flip ? reverse(g) : g;
    const double cut = (1 + std::sqrt(alpha)) * static_cast<double>(g.order() - 1) / 2.0;
    VertexSet kept(g.order());
    for (std::size_t v = 0; v < g.order(); ++v)
        if (static_cast<double>(h.outdegree(static_cast<Vertex>(v))) <= cut + tolerance) kept.insert(static_cast<Vertex>(v));
    const double floor = (1 - gamma) * static_cast<double>(g.order());
    if (static_cast<double>(kept.count()) + tolerance < floor)
        throw VerificationFailure("kept " + str(kept.count()) + " vertices, fewer than (1-gamma)n");
    if (kept.empty() || !is_almost_regular(induced_subtournament(g, kept).tournament, gamma))
        throw VerificationFailure("kept subtournament is not gamma-almost-regular");
    return kept;
}

// ---- star-shaped strategy ------------------------------------------------

namespace {

struct StarShape {
    Vertex t = -1;
    std::size_t y = 0, z = 0, d = 0;
    VertexSet t1, t2;  // t with its out-components / in-components
};

StarShape star_shape(const DirectedTree& tree, int delta) {
    const CoreTree core = core_tree(tree, delta);
    if (core.size() != 1) throw InvalidArgument("star-shaped strategy needs |core(T, delta)| = 1");
    StarShape s;
    s.t = core.vertices.first();
    const ComponentSplit split = components_against(tree, core.vertices);
    s.y = split.outweight;
    s.z = split.inweight;
    s.d = split.max_component_size();
    s.t1 = VertexSet(tree.order(), {s.t});
    s.t2 = s.t1;
    for (const auto& c : split.components) (c.side == Direction::out ? s.t1 : s.t2) |= c.vertices;
    return s;
}

Vertex local_id(const InducedSubtree& sub, Vertex original) {
    const auto it = std::find(sub.to_parent.begin(), sub.to_parent.end(), original);
    return static_cast<Vertex>(it - sub.to_parent.begin());
}

/// One-by-one extension of {t ↦ v} over the subtree `part` inside `pool`.
Embedding extend_star_part(const DirectedTree& tree, const Tournament& g, const VertexSet& part, Vertex t, Vertex v,
                           const VertexSet& pool, std::size_t d) {
    const InducedSubtree sub = induced_subtree(tree, part);
    const Vertex lt = local_id(sub, t);
    OneByOneInstance inst;
    inst.tree = sub.tree;
    inst.core = VertexSet(sub.tree.order(), {lt});
    inst.partial = Embedding(sub.tree.order());
    inst.partial.assign(lt, v);
    inst.host = g;
    inst.s_set = VertexSet(g.order(), {v});
    inst.n_set = pool;
    inst.n_set.erase(v);
    inst.d = d;
    inst.variant = OneByOneVariant::c;
    const OneByOneResult r = extend_one_by_one(inst);
    Embedding phi(tree.order());
    lift(r.embedding, sub.to_parent, phi);
    return phi;
}

void merge_into(Embedding& phi, const Embedding& part) {
    for (std::size_t x = 0; x < part.tree_order(); ++x)
        if (part.is_mapped(static_cast<Vertex>(x))) phi.assign(static_cast<Vertex>(x), part[static_cast<Vertex>(x)]);
}

std::optional<Embedding> star_direct(const DirectedTree& tree, const Tournament& g, const StarShape& s, Vertex v) {
    try {
        Embedding phi(tree.order());
        phi.assign(s.t, v);
        if (s.y > 0) merge_into(phi, extend_star_part(tree, g, s.t1, s.t, v, g.out(v), s.d));
        if (s.z > 0) merge_into(phi, extend_star_part(tree, g, s.t2, s.t, v, g.in(v), s.d));
        if (phi.is_total() && is_valid_embedding(tree, g, phi)) return phi;
    } catch (const HypothesisViolation&) {
    } catch (const InnerEmbeddingFailure&) {
    }
    return std::nullopt;
}

std::optional<Embedding> star_round_the_back(const DirectedTree& tree, const Tournament& g, const StarShape& s,
                                             const VertexSet& ys) {
    const InducedSubtournament gy = induced_subtournament(g, ys);
    const Tournament& h = gy.tournament;
    for (std::size_t lv = 0; lv < h.order(); ++lv) {
        const auto v = static_cast<Vertex>(lv);
        const VertexSet out = h.out(v);
        if (out.count() < s.y) continue;
        VertexSet np(h.order());
        std::size_t k = 0;
        for (Vertex u = out.first(); u >= 0 && k < s.y; u = out.next(u), ++k) np.insert(u);
        const InducedSubtree sub = induced_subtree(tree, s.t1);
        RoundTheBackInstance inst;
        inst.tree = sub.tree.with_root(local_id(sub, s.t));
        inst.d = s.d;
        inst.host = h;
        inst.v = v;
        inst.n_set = np;
        inst.x_set = VertexSet::full(h.order()) - np;
        inst.x_set.erase(v);
        try {
            const RoundTheBackResult r = round_the_back(inst);
            Embedding phi(tree.order());
            for (std::size_t i = 0; i < sub.to_parent.size(); ++i)
                phi.assign(sub.to_parent[i], gy.to_host[static_cast<std::size_t>(r.embedding[static_cast<Vertex>(i)])]);
            const Vertex hv = gy.to_host[lv];
            if (s.z > 0) {
                const VertexSet pool = g.all_vertices() - phi.image_set(g.order());
                merge_into(phi, extend_star_part(tree, g, s.t2, s.t, hv, g.in(hv) & pool, s.d));
            }
            if (phi.is_total() && is_valid_embedding(tree, g, phi)) return phi;
        } catch (const HypothesisViolation&) {
            return std::nullopt;  // hypotheses fail for the first candidate v: branch not applicable
        } catch (const InnerEmbeddingFailure&) {
        }
        return std::nullopt;
    }
    return std::nullopt;
}

std::optional<Embedding> star_outbranching(const DirectedTree& tree, const Tournament& g, const StarShape& s,
                                           const VertexSet& ys, std::uint64_t budget) {
    // T₃: everything reachable from t along directed paths.
    VertexSet t3(tree.order(), {s.t});
    std::vector<Vertex> stack{s.t};
    while (!stack.empty()) {
        const Vertex x = stack.back();
        stack.pop_back();
        for (const auto& nb : tree.neighbours(x))
            if (nb.outgoing && !t3.contains(nb.vertex)) {
                t3.insert(nb.vertex);
                stack.push_back(nb.vertex);
            }
    }
    if (ys.count() + 2 < 2 * t3.count()) return std::nullopt;
    const InducedSubtree sub = induced_subtree(tree, t3);
    const InducedSubtournament gy = induced_subtournament(g, ys);
    OutbranchingOptions opts;
    opts.node_budget = budget;
    EmbedOutcome ob;
    try {
        ob = embed_outbranching(sub.tree.with_root(local_id(sub, s.t)), gy.tournament, opts);
    } catch (const InvalidArgument&) {
        return std::nullopt;
    }
    if (!ob.found()) return std::nullopt;
    Embedding partial(tree.order());
    for (std::size_t i = 0; i < sub.to_parent.size(); ++i)
        partial.assign(sub.to_parent[i], gy.to_host[static_cast<std::size_t>((*ob.embedding)[static_cast<Vertex>(i)])]);
    if (t3.count() == tree.order()) return partial;
    OneByOneInstance inst;
    inst.tree = tree;
    inst.core = t3;
    inst.partial = partial;
    inst.host = g;
    inst.s_set = partial.image_set(g.order());
    inst.n_set = g.all_vertices() - inst.s_set;
    inst.d = components_against(tree, t3).max_component_size();
    inst.variant = OneByOneVariant::c;
    try {
        return extend_one_by_one(inst).embedding;
    } catch (const HypothesisViolation&) {
    } catch (const InnerEmbeddingFailure&) {
    }
    return std::nullopt;
}

std::optional<std::pair<Embedding, std::string>> star_attempt(const DirectedTree& tree, const Tournament& g, int delta,
                                                              const StarShapedOptions& options, bool reversed) {
    const StarShape s = star_shape(tree, delta);
    const auto n = static_cast<long long>(tree.order());
    const long long dl = delta;
    const auto big_out = [&](Vertex v) {
        return s.y == 0 || dl * static_cast<long long>(g.outdegree(v)) >= dl * static_cast<long long>(s.y) + 2 * n;
    };
    const auto big_in = [&](Vertex v) {
        return s.z == 0 || dl * static_cast<long long>(g.indegree(v)) >= dl * static_cast<long long>(s.z) + 2 * n;
    };
    const std::string tag = reversed ? "star-shaped-reversed:" : "star-shaped:";
    if (!reversed) {
        Vertex paper = -1, relaxed = -1;
        for (std::size_t u = 0; u < g.order(); ++u) {
            const auto v = static_cast<Vertex>(u);
            if (paper < 0 && big_out(v) && big_in(v)) paper = v;
            if (relaxed < 0 && v != paper && (s.y == 0 || g.outdegree(v) >= s.y + 2 * s.d) &&
                (s.z == 0 || g.indegree(v) >= s.z + 2 * s.d))
                relaxed = v;
        }
        for (const Vertex v : {paper, relaxed})
            if (v >= 0)
                if (auto phi = star_direct(tree, g, s, v)) return std::make_pair(std::move(*phi), tag + "direct");
    }
    VertexSet ys(g.order());
    for (std::size_t u = 0; u < g.order(); ++u)
        if (!big_out(static_cast<Vertex>(u))) ys.insert(static_cast<Vertex>(u));
    if (!(ys.count() >= 2 * s.y && s.y > 0)) {
        if (reversed) return std::nullopt;
        auto r = star_attempt(reverse(tree), reverse(g), delta, options, true);
        return r;
    }
    if (static_cast<double>(s.y) >= options.alpha * static_cast<double>(n))
        if (auto phi = star_round_the_back(tree, g, s, ys)) return std::make_pair(std::move(*phi), tag + "round-the-back");
    if (auto phi = star_outbranching(tree, g, s, ys, options.node_budget))
        return std::make_pair(std::move(*phi), tag + "outbranching");
    if (!reversed) return star_attempt(reverse(tree), reverse(g), delta, options, true);
    return std::nullopt;
}

} // namespace

EmbedOutcome embed_star_shaped(const DirectedTree& t, const Tournament& g, int delta, const StarShapedOptions& options) {
    if (g.order() + 2 < 2 * t.order()) throw InvalidArgument("star-shaped strategy needs |G| >= 2|T| - 2");
    (void)star_shape(t, delta);
    EmbedOutcome out;
    out.strategy = "star-shaped";
    out.verdict = Verdict::budget_exhausted;
    auto r = star_attempt(t, g, delta, options, false);
    if (!r) return out;
    if (!is_valid_embedding(t, g, r->first)) throw VerificationFailure("star-shaped strategy produced an invalid embedding");
    out.verdict = Verdict::found;
    out.embedding = std::move(r->first);
    out.strategy = std::move(r->second);
    return out;
}

// ---- two-set attempt -----------------------------------------------------

namespace {

/// Sets of the two sides of `t` once arc `a` is cut: (side of tail, side of head).
std::pair<VertexSet, VertexSet> cut_sides(const DirectedTree& t, const Arc& a) {
    VertexSet tail_side(t.order());
    std::vector<Vertex> stack{a.tail};
    tail_side.insert(a.tail);
    while (!stack.empty()) {
        const Vertex x = stack.back();
        stack.pop_back();
        for (const auto& nb : t.neighbours(x)) {
            if (x == a.tail && nb.vertex == a.head) continue;
            if (!tail_side.contains(nb.vertex)) {
                tail_side.insert(nb.vertex);
                stack.push_back(nb.vertex);
            }
        }
    }
    return {tail_side, VertexSet::full(t.order()) - tail_side};
}

double cross_gamma(const Tournament& g, const VertexSet& ys, const VertexSet& zs, std::size_t n) {
    std::size_t worst = 0;
    ys.for_each([&](Vertex v) { worst = std::max(worst, count_and(g.out(v), zs)); });
    zs.for_each([&](Vertex v) { worst = std::max(worst, count_and(g.in(v), ys)); });
    return static_cast<double>(worst) / static_cast<double>(n);
}

} // namespace

EmbedOutcome embed_two_set(const DirectedTree& t, const Tournament& g, int delta, std::uint64_t node_budget) {
    EmbedOutcome out;
    out.strategy = "two-set";
    out.verdict = Verdict::budget_exhausted;
    const CoreTree core = core_tree(t, delta);
    if (core.arcs.empty() || g.order() < t.order()) return out;
    const MedianOrder mo = median_order(g, g.order() <= 16 ? MedianMode::exact : MedianMode::local);
    const std::size_t hn = g.order(), n = t.order();
    const Arc a = core.arcs.front();
    const auto [minus, plus] = cut_sides(t, a);
    for (const bool dual : {false, true}) {
        // Z is a prefix of the median order, Y the remaining suffix.
        const std::size_t lo = dual ? minus.count() : 2 * minus.count();
        const std::size_t y_need = dual ? 2 * plus.count() : plus.count();
        if (lo + y_need > hn) continue;
        std::size_t best_k = lo;
        double best_gamma = 2.0;
        for (std::size_t k = lo; k + y_need <= hn; ++k) {
            VertexSet zs(hn), ys(hn);
            for (std::size_t i = 0; i < hn; ++i) (i < k ? zs : ys).insert(mo.order[i]);
            const double gm = cross_gamma(g, ys, zs, n);
            if (gm < best_gamma) {
                best_gamma = gm;
                best_k = k;
            }
        }
        TwoSetInstance inst;
        inst.tree = t;
        inst.f_minus = minus;
        inst.f_plus = plus;
        inst.host = g;
        inst.y_set = VertexSet(hn);
        inst.z_set = VertexSet(hn);
        for (std::size_t i = 0; i < hn; ++i) (i < best_k ? inst.z_set : inst.y_set).insert(mo.order[i]);
        inst.gamma = best_gamma;
        inst.alpha = 0.0;
        try {
            const VertexSet& seed_part = dual ? minus : plus;
            const InducedSubtree sub = induced_subtree(t, seed_part);
            const Embedding sub_phi = embed_inside(sub.tree, g, dual ? inst.z_set : inst.y_set, node_budget);
            inst.seed = Embedding(n);
            lift(sub_phi, sub.to_parent, inst.seed);
            Embedding phi = dual ? dual_component_by_component(inst) : component_by_component(inst);
            out.verdict = Verdict::found;
            out.embedding = std::move(phi);
            out.strategy = dual ? "two-set-dual" : "two-set";
            return out;
        } catch (const HypothesisViolation&) {
        } catch (const InnerEmbeddingFailure&) {
        }
    }
    return out;
}

// ---- portfolio -------------------------------------------------------------

EmbedOutcome portfolio_embed(const DirectedTree& t, const Tournament& g, const PortfolioConfig& config) {
    std::uint64_t nodes = 0;
    const auto finish = [&](EmbedOutcome out) {
        out.nodes += nodes;
        if (out.found() && !is_valid_embedding(t, g, *out.embedding))
            throw VerificationFailure(out.strategy + " returned an invalid embedding");
        return out;
    };
    SearchConstraints c;
    c.node_budget = config.node_budget;
    if (config.use_greedy) {
        EmbedOutcome r = greedy_embed(t, g, c);
        if (r.found()) return finish(std::move(r));
        nodes += r.nodes;
    }
    const bool roomy = g.order() + 2 >= 2 * t.order();
    if (config.use_outbranching && roomy && outbranching_root(t)) {
        OutbranchingOptions opts;
        opts.node_budget = config.node_budget;
        opts.fallback_cap = 0;  // the portfolio's own exhaustive stage decides
        EmbedOutcome r = embed_outbranching(t, g, opts);
        if (r.found()) return finish(std::move(r));
    }
    if (config.use_star_shaped && roomy && core_tree(t, config.delta).size() == 1) {
        StarShapedOptions opts;
        opts.node_budget = config.node_budget;
        EmbedOutcome r = embed_star_shaped(t, g, config.delta, opts);
        if (r.found()) return finish(std::move(r));
    }
    if (config.use_two_set) {
        EmbedOutcome r = embed_two_set(t, g, config.delta, config.node_budget);
        if (r.found()) return finish(std::move(r));
    }
    if (config.use_exhaustive && g.order() <= config.exhaustive_cap) return finish(exhaustive_embed(t, g, c));
    EmbedOutcome out;
    out.strategy = "portfolio";
    out.verdict = Verdict::budget_exhausted;
    return finish(std::move(out));
}

// ---- instance builders -----------------------------------------------------

namespace {

/// Dense orientation matrix filled by builders, then frozen.
class ArcMatrix {
public:
    explicit ArcMatrix(std::size_t n) : n_(n), m_(n * n, 0) {}
    void orient(Vertex u, Vertex v) {
        m_[idx(u, v)] = 1;
        m_[idx(v, u)] = 0;
    }
    void random(Vertex u, Vertex v, Rng& rng) { rng.bit() ? orient(u, v) : orient(v, u); }
    Tournament freeze() const {
        return Tournament::from_predicate(n_, [&](Vertex u, Vertex v) { return m_[idx(u, v)] != 0; });
    }

private:
    std::size_t idx(Vertex u, Vertex v) const { return static_cast<std::size_t>(u) * n_ + static_cast<std::size_t>(v); }
    std::size_t n_;
    std::vector<unsigned char> m_;
};

void randomise_block(ArcMatrix& m, Vertex begin, Vertex end, Rng& rng) {
    for (Vertex u = begin; u < end; ++u)
        for (Vertex v = u + 1; v < end; ++v) m.random(u, v, rng);
}

/// Random subset of [begin, end) with exactly `k` members.
std::vector<Vertex> random_subset(Vertex begin, Vertex end, std::size_t k, Rng& rng) {
    std::vector<Vertex> all(static_cast<std::size_t>(end - begin));
    std::iota(all.begin(), all.end(), begin);
    for (std::size_t i = 0; i < k && i < all.size(); ++i) std::swap(all[i], all[i + rng.below(all.size() - i)]);
    all.resize(std::min(k, all.size()));
    return all;
}

} // namespace

RoundTheBackInstance random_round_the_back_instance(std::size_t tree_order, std::size_t d, Seed seed) {
    if (tree_order == 0 || d == 0) throw InvalidArgument("round-the-back instance needs |T| >= 1 and d >= 1");
    Rng rng(seed, "round_the_back_instance");
    DirectedTree tree = random_out_rooted_tree(tree_order, d, rng.next());
    const std::size_t n_size = std::max(tree_order - 1, 3 * d) + rng.below(3);
    const std::size_t x_size = 12 * d;
    const std::size_t total = 1 + n_size + x_size;
    const auto n_begin = Vertex{1}, x_begin = static_cast<Vertex>(1 + n_size), end = static_cast<Vertex>(total);
    ArcMatrix m(total);
    randomise_block(m, 0, end, rng);
    for (Vertex u = n_begin; u < x_begin; ++u) m.orient(0, u);
    const std::size_t good = 3 * d + rng.below(n_size - 3 * d + 1);
    for (Vertex u = n_begin; u < x_begin; ++u) {
        if (static_cast<std::size_t>(u - n_begin) < good) {
            for (Vertex x = x_begin; x < end; ++x) m.orient(x, u);
            for (Vertex x : random_subset(x_begin, end, 6 * d, rng)) m.orient(u, x);
        } else {
            for (Vertex x = x_begin; x < end; ++x) m.orient(x, u);
        }
    }
    RoundTheBackInstance inst;
    inst.tree = std::move(tree);
    inst.d = d;
    inst.host = m.freeze();
    inst.v = 0;
    inst.n_set = VertexSet(total);
    inst.x_set = VertexSet(total);
    for (Vertex u = n_begin; u < x_begin; ++u) inst.n_set.insert(u);
    for (Vertex x = x_begin; x < end; ++x) inst.x_set.insert(x);
    return inst;
}

OneByOneInstance random_one_by_one_instance(std::size_t tree_order, OneByOneVariant variant, Seed seed) {
    if (tree_order < 2) throw InvalidArgument("one-by-one instance needs at least 2 tree vertices");
    Rng rng(seed, "one_by_one_instance");
    DirectedTree tree = random_oriented_tree(tree_order, rng.next());
    const VertexSet core = core_tree(tree, 3).vertices;
    ComponentSplit split = components_against(tree, core);
    if (variant == OneByOneVariant::c) {
        // Every connecting arc points into T_c.
        std::vector<Arc> arcs = tree.arcs();
        for (Arc& a : arcs)
            if (core.contains(a.tail) && !core.contains(a.head)) std::swap(a.tail, a.head);
        tree = DirectedTree(tree_order, std::move(arcs));
        split = components_against(tree, core);
    }
    const std::size_t d = split.max_component_size();
    const std::size_t q = tree_order - core.count();
    const std::size_t r = variant == OneByOneVariant::b ? rng.below(q + 1) : q;
    const std::size_t s_size = core.count();
    const std::size_t np_size = variant == OneByOneVariant::b ? 2 * (r + 2 * d) : 0;
    const std::size_t rest_size = std::max(2 * (q + 2 * d), np_size) - np_size + 2 * rng.below(3);
    const std::size_t total = s_size + np_size + rest_size;
    const auto np_begin = static_cast<Vertex>(s_size), rest_begin = static_cast<Vertex>(s_size + np_size),
               end = static_cast<Vertex>(total);

    ArcMatrix m(total);
    randomise_block(m, 0, end, rng);
    const std::vector<Vertex> core_ids = core.to_vector();
    std::vector<Vertex> slot(tree_order, -1);
    for (std::size_t i = 0; i < core_ids.size(); ++i) slot[static_cast<std::size_t>(core_ids[i])] = static_cast<Vertex>(i);
    for (const Arc& a : tree.arcs())
        if (core.contains(a.tail) && core.contains(a.head))
            m.orient(slot[static_cast<std::size_t>(a.tail)], slot[static_cast<std::size_t>(a.head)]);
    for (Vertex v = 0; v < np_begin; ++v) {
        if (variant == OneByOneVariant::c) {
            for (Vertex u = np_begin; u < end; ++u) m.orient(u, v);
            continue;
        }
        // Exactly half of N′ and half of the rest of N are out-neighbours.
        for (Vertex u = np_begin; u < end; ++u) m.orient(u, v);
        for (Vertex u : random_subset(np_begin, rest_begin, np_size / 2, rng)) m.orient(v, u);
        for (Vertex u : random_subset(rest_begin, end, rest_size / 2, rng)) m.orient(v, u);
    }
    OneByOneInstance inst;
    inst.tree = std::move(tree);
    inst.core = core;
    inst.partial = Embedding(tree_order);
    for (Vertex x : core_ids) inst.partial.assign(x, slot[static_cast<std::size_t>(x)]);
    inst.host = m.freeze();
    inst.s_set = VertexSet(total);
    for (Vertex v = 0; v < np_begin; ++v) inst.s_set.insert(v);
    inst.n_set = VertexSet(total);
    for (Vertex u = np_begin; u < end; ++u) inst.n_set.insert(u);
    inst.d = d;
    inst.variant = variant;
    if (variant == OneByOneVariant::b) {
        inst.n_prime = VertexSet(total);
        for (Vertex u = np_begin; u < rest_begin; ++u) inst.n_prime->insert(u);
        inst.r = r;
    }
    return inst;
}

TwoSetInstance random_two_set_instance(std::size_t tree_order, Seed seed) {
    if (tree_order == 0) throw InvalidArgument("two-set instance needs a nonempty tree");
    Rng rng(seed, "two_set_instance");
    const DirectedTree base = random_oriented_tree(tree_order, rng.next());
    VertexSet plus(tree_order, {0});
    for (std::size_t x = 1; x < tree_order; ++x)
        if (rng.bit()) plus.insert(static_cast<Vertex>(x));
    const VertexSet minus = VertexSet::full(tree_order) - plus;
    std::vector<Arc> arcs = base.arcs();
    for (Arc& a : arcs)
        if (plus.contains(a.tail) && minus.contains(a.head)) std::swap(a.tail, a.head);
    DirectedTree tree(tree_order, std::move(arcs));

    const auto plus_comps = forest_components(tree, plus);
    std::size_t t1 = 0;
    for (std::size_t i = 1; i < plus_comps.size(); ++i)
        if (plus_comps[i].count() > plus_comps[t1].count()) t1 = i;
    const std::size_t second = two_largest(plus_comps).second;
    const double alpha = 0.1, gamma = 0.05;
    const auto an = static_cast<std::size_t>(std::ceil(alpha * static_cast<double>(tree_order)));
    const std::size_t y_size = std::max(plus.count() + second + an, 3 * plus.count());
    const std::size_t z_size = std::max(2 * minus.count() + an, 3 * minus.count());
    const std::size_t total = y_size + z_size;
    const auto z_begin = static_cast<Vertex>(y_size), end = static_cast<Vertex>(total);

    ArcMatrix m(total);
    randomise_block(m, 0, z_begin, rng);
    randomise_block(m, z_begin, end, rng);
    for (Vertex y = 0; y < z_begin; ++y)
        for (Vertex z = z_begin; z < end; ++z) m.orient(z, y);
    // A few back arcs Y→Z within the γn allowance on both ends.
    const auto cap = static_cast<std::size_t>(std::floor(gamma * static_cast<double>(tree_order)));
    std::vector<std::size_t> y_out(y_size, 0), z_in(z_size, 0);
    if (cap > 0 && z_size > 0)
        for (std::size_t k = 0; k < y_size; ++k) {
            const auto y = static_cast<Vertex>(rng.below(y_size));
            const auto z = static_cast<Vertex>(y_size + rng.below(z_size));
            if (y_out[static_cast<std::size_t>(y)] < cap && z_in[static_cast<std::size_t>(z) - y_size] < cap) {
                m.orient(y, z);
                ++y_out[static_cast<std::size_t>(y)];
                ++z_in[static_cast<std::size_t>(z) - y_size];
            }
        }
    // Plant T₁⁺ on the first Y vertices.
    const std::vector<Vertex> seed_ids = plus_comps[t1].to_vector();
    std::vector<Vertex> slot(tree_order, -1);
    for (std::size_t i = 0; i < seed_ids.size(); ++i) slot[static_cast<std::size_t>(seed_ids[i])] = static_cast<Vertex>(i);
    for (const Arc& a : tree.arcs())
        if (slot[static_cast<std::size_t>(a.tail)] >= 0 && slot[static_cast<std::size_t>(a.head)] >= 0)
            m.orient(slot[static_cast<std::size_t>(a.tail)], slot[static_cast<std::size_t>(a.head)]);

    TwoSetInstance inst;
    inst.tree = std::move(tree);
    inst.f_minus = minus;
    inst.f_plus = plus;
    inst.host = m.freeze();
    inst.y_set = VertexSet(total);
    inst.z_set = VertexSet(total);
    for (Vertex y = 0; y < z_begin; ++y) inst.y_set.insert(y);
    for (Vertex z = z_begin; z < end; ++z) inst.z_set.insert(z);
    inst.gamma = gamma;
    inst.alpha = alpha;
    inst.seed = Embedding(tree_order);
    for (Vertex x : seed_ids) inst.seed.assign(x, slot[static_cast<std::size_t>(x)]);
    return inst;
}

} // namespace sumner
