#include "sumner/expander.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>

#include "sumner/base_embedders.hpp"
#include "sumner/error.hpp"
#include "sumner/graph_ops.hpp"
#include "sumner/rng.hpp"

namespace sumner {

namespace {

constexpr double tolerance = 1e-9;

void check_fraction(double x, const char* name, bool allow_zero = false) {
    if (!(allow_zero ? x >= 0 : x > 0) || x > 1) throw InvalidArgument(std::string(name) + " must lie in (0, 1]");
}

/// Admissible sizes ⌈νn⌉ … ⌊(1−ν)n⌋.
std::pair<std::size_t, std::size_t> admissible_sizes(double nu, std::size_t n) {
    const std::size_t lo = ceil_fraction(nu, n);
    const auto hi = static_cast<std::size_t>(std::floor((1.0 - nu) * static_cast<double>(n) + tolerance));
    return {std::max<std::size_t>(lo, 0), hi};
}

std::size_t rn_count(const Tournament& g, const VertexSet& s, std::size_t threshold) {
    std::size_t c = 0;
    for (std::size_t v = 0; v < g.order(); ++v)
        if (count_and(g.in(static_cast<Vertex>(v)), s) >= threshold) ++c;
    return c;
}

} // namespace

std::size_t ceil_fraction(double x, std::size_t n) {
    return static_cast<std::size_t>(std::ceil(x * static_cast<double>(n) - tolerance));
}

VertexSet robust_out_neighbourhood(const Tournament& g, const VertexSet& s, double mu) {
    check_fraction(mu, "mu");
    if (s.universe() != g.order()) throw InvalidArgument("set universe does not match the tournament");
    const std::size_t threshold = ceil_fraction(mu, g.order());
    VertexSet out(g.order());
    for (std::size_t v = 0; v < g.order(); ++v)
        if (count_and(g.in(static_cast<Vertex>(v)), s) >= threshold) out.insert(static_cast<Vertex>(v));
    return out;
}

std::string to_string(ExpanderStatus s) {
    switch (s) {
        case ExpanderStatus::expander: return "Expander";
        case ExpanderStatus::not_expander: return "NotExpander";
        case ExpanderStatus::unknown: return "Unknown";
    }
    return "Unknown";
}

std::string to_string(CheckMode m) { return m == CheckMode::exact ? "exact" : "sampled"; }

std::string to_string(PieceClass c) {
    switch (c) {
        case PieceClass::expander: return "Expander";
        case PieceClass::small: return "Small";
        case PieceClass::unknown: return "Unknown";
    }
    return "Unknown";
}

bool is_expansion_witness(const Tournament& g, const VertexSet& s, double mu, double nu) {
    const std::size_t n = g.order();
    const auto [lo, hi] = admissible_sizes(nu, n);
    const std::size_t k = s.count();
    if (k < lo || k > hi) return false;
    const std::size_t threshold = ceil_fraction(mu, n);
    return rn_count(g, s, threshold) < k + threshold;
}

namespace {

ExpanderVerdict exact_check(const Tournament& g, double mu, double nu) {
    const std::size_t n = g.order();
    if (n > exact_expander_cap) throw CapExceeded("exact expander check limited to n <= " + std::to_string(exact_expander_cap));
    ExpanderVerdict out;
    out.mode = CheckMode::exact;
    out.mu = mu;
    out.nu = nu;
    const auto [lo, hi] = admissible_sizes(nu, n);
    const std::size_t threshold = ceil_fraction(mu, n);
    std::vector<std::uint32_t> in_mask(n, 0);
    for (std::size_t v = 0; v < n; ++v)
        g.in(static_cast<Vertex>(v)).for_each([&](Vertex u) { in_mask[v] |= std::uint32_t{1} << u; });
    const std::uint32_t states = std::uint32_t{1} << n;
    for (std::uint32_t mask = 1; mask < states; ++mask) {
        const auto k = static_cast<std::size_t>(std::popcount(mask));
        if (k < lo || k > hi) continue;
        ++out.checked;
        std::size_t rn = 0;
        for (std::size_t v = 0; v < n; ++v)
            if (static_cast<std::size_t>(std::popcount(in_mask[v] & mask)) >= threshold) ++rn;
        if (rn < k + threshold) {
            out.status = ExpanderStatus::not_expander;
            VertexSet w(n);
            for (std::size_t v = 0; v < n; ++v)
                if (mask & (std::uint32_t{1} << v)) w.insert(static_cast<Vertex>(v));
            out.witness = std::move(w);
            return out;
        }
    }
    out.status = ExpanderStatus::expander;
    return out;
}

ExpanderVerdict sampled_check(const Tournament& g, double mu, double nu, std::uint64_t budget, Seed seed) {
    const std::size_t n = g.order();
    ExpanderVerdict out;
    out.mode = CheckMode::sampled;
    out.mu = mu;
    out.nu = nu;
    const auto [lo, hi] = admissible_sizes(nu, n);
    if (lo > hi) {
        out.status = ExpanderStatus::expander;  // no admissible set at all
        return out;
    }
    const auto attempt = [&](const VertexSet& s) {
        ++out.checked;
        if (is_expansion_witness(g, s, mu, nu)) {
            out.status = ExpanderStatus::not_expander;
            out.witness = s;
            return true;
        }
        return false;
    };
    // Degree order: highest outdegree first, ties by id.
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return g.outdegree(a) > g.outdegree(b); });
    for (std::size_t k = lo; k <= hi; ++k) {
        VertexSet prefix(n), suffix(n);
        for (std::size_t i = 0; i < k; ++i) {
            prefix.insert(order[i]);
            suffix.insert(order[n - 1 - i]);
        }
        if (attempt(suffix) || attempt(prefix)) return out;
    }
    for (std::size_t v = 0; v < n; ++v) {
        const auto x = static_cast<Vertex>(v);
        VertexSet closed_out = g.out(x), closed_in = g.in(x);
        closed_out.insert(x);
        closed_in.insert(x);
        for (const VertexSet* s : std::initializer_list<const VertexSet*>{&g.out(x), &g.in(x), &closed_out, &closed_in})
            if (attempt(*s)) return out;
    }
    Rng rng(seed, "expander_sample");
    std::vector<Vertex> pool(n);
    for (std::uint64_t i = 0; i < budget; ++i) {
        const std::size_t k = lo + rng.below(hi - lo + 1);
        std::iota(pool.begin(), pool.end(), 0);
        VertexSet s(n);
        for (std::size_t j = 0; j < k; ++j) {
            std::swap(pool[j], pool[j + rng.below(n - j)]);
            s.insert(pool[j]);
        }
        if (attempt(s)) return out;
    }
    out.status = ExpanderStatus::unknown;
    return out;
}

} // namespace

ExpanderVerdict is_robust_outexpander(const Tournament& g, double mu, double nu, CheckMode mode, std::uint64_t sample_budget,
                                      Seed seed) {
    check_fraction(mu, "mu");
    check_fraction(nu, "nu");
    return mode == CheckMode::exact ? exact_check(g, mu, nu) : sampled_check(g, mu, nu, sample_budget, seed);
}

ExpanderChecker default_expander_checker(double mu, double nu, std::size_t exact_limit, std::uint64_t sample_budget, Seed seed) {
    exact_limit = std::min(exact_limit, exact_expander_cap);
    return [=](const Tournament& g) {
        return is_robust_outexpander(g, mu, nu, g.order() <= exact_limit ? CheckMode::exact : CheckMode::sampled,
                                     sample_budget, seed);
    };
}

// ---- non-expander split ----------------------------------------------------

namespace {

struct CutSearch {
    const Tournament& g;
    std::size_t n;
    double lo, hi;  // strict size bounds
    NonExpanderSplit best;
    long best_balance = 0;

    bool admissible(std::size_t k) const {
        return static_cast<double>(k) > lo + tolerance && static_cast<double>(k) < hi - tolerance;
    }

    void offer(const VertexSet& s, std::size_t cross) {
        const std::size_t k = s.count();
        if (!admissible(k) || !admissible(n - k)) return;
        const long balance = std::labs(static_cast<long>(2 * k) - static_cast<long>(n));
        if (best.found && (cross > best.cross || (cross == best.cross && balance >= best_balance))) return;
        best.found = true;
        best.s = s;
        best.s_prime = VertexSet::full(n) - s;
        best.cross = cross;
        best_balance = balance;
    }

    /// Every prefix/suffix cut of `order`, both orientations.
    void sweep(const std::vector<Vertex>& order) {
        VertexSet a(n), b = VertexSet::full(n);
        std::size_t ab = 0;  // e(A → B)
        for (std::size_t k = 0; k + 1 < n; ++k) {
            const Vertex x = order[k];
            b.erase(x);
            ab = ab + count_and(g.out(x), b) - count_and(g.in(x), a);
            a.insert(x);
            const std::size_t ba = (k + 1) * (n - k - 1) - ab;
            offer(a, ab);
            offer(b, ba);
        }
    }

    /// Single-vertex moves lowering e(S → S′) while sizes stay admissible.
    void polish() {
        if (!best.found) return;
        VertexSet s = best.s, sp = best.s_prime;
        std::size_t cross = best.cross;
        bool improved = true;
        while (improved) {
            improved = false;
            for (std::size_t u = 0; u < n && !improved; ++u) {
                const auto v = static_cast<Vertex>(u);
                const bool in_s = s.contains(v);
                const long gain = in_s ? static_cast<long>(count_and(g.out(v), sp)) - static_cast<long>(count_and(g.in(v), s))
                                       : static_cast<long>(count_and(g.in(v), s)) - static_cast<long>(count_and(g.out(v), sp));
                const std::size_t new_k = in_s ? s.count() - 1 : s.count() + 1;
                if (gain > 0 && admissible(new_k) && admissible(n - new_k)) {
                    if (in_s) {
                        s.erase(v);
                        sp.insert(v);
                    } else {
                        sp.erase(v);
                        s.insert(v);
                    }
                    cross -= static_cast<std::size_t>(gain);
                    improved = true;
                }
            }
        }
        offer(s, cross);
    }
};

} // namespace

NonExpanderSplit non_expander_split(const Tournament& g, double mu, double nu, const std::optional<VertexSet>& witness,
                                    std::uint64_t sample_budget, Seed seed) {
    check_fraction(mu, "mu");
    check_fraction(nu, "nu");
    const std::size_t n = g.order();
    std::optional<VertexSet> w = witness;
    if (w) {
        if (!is_expansion_witness(g, *w, mu, nu)) throw InvalidArgument("supplied set is not an expansion witness");
    } else {
        const ExpanderVerdict v =
            is_robust_outexpander(g, mu, nu, n <= exact_expander_cap ? CheckMode::exact : CheckMode::sampled, sample_budget, seed);
        if (v.status == ExpanderStatus::expander && v.mode == CheckMode::exact)
            throw InvalidArgument("tournament is a certified robust outexpander; nothing to split");
        w = v.witness;
    }
    CutSearch search{g, n, nu * static_cast<double>(n), (1.0 - nu) * static_cast<double>(n), {}, 0};
    std::vector<Vertex> by_degree(n);
    std::iota(by_degree.begin(), by_degree.end(), 0);
    std::stable_sort(by_degree.begin(), by_degree.end(), [&](Vertex a, Vertex b) { return g.outdegree(a) > g.outdegree(b); });
    search.sweep(by_degree);
    search.sweep(median_order(g, n <= 16 ? MedianMode::exact : MedianMode::local).order);
    if (w) {
        // W, then RN(W) ∖ W, then the rest.
        const VertexSet rn = robust_out_neighbourhood(g, *w, mu);
        std::vector<Vertex> order = w->to_vector();
        for (Vertex v : (rn - *w).to_vector()) order.push_back(v);
        for (Vertex v : (VertexSet::full(n) - *w - rn).to_vector()) order.push_back(v);
        search.sweep(order);
    }
    search.polish();
    NonExpanderSplit out = search.best;
    out.bound = 4.0 * mu * static_cast<double>(n) * static_cast<double>(n);
    if (out.found) {
        if (directed_edge_count(g, out.s, out.s_prime) != out.cross) throw VerificationFailure("cut bookkeeping drifted");
        if (static_cast<double>(out.cross) > out.bound + tolerance) out.found = false;
    }
    return out;
}

// ---- tournament split --------------------------------------------------------

namespace {

struct CachedVerdict {
    ExpanderVerdict verdict;
    bool min_semidegree_ok = false;
};

} // namespace

SplitResult tournament_split(const Tournament& g, const SplitParameters& p, const ExpanderChecker& checker) {
    for (const auto& [value, name] : {std::pair{p.mu, "mu"}, {p.nu, "nu"}, {p.eta, "eta"}, {p.gamma, "gamma"}})
        if (!(value > 0 && value < 1)) throw InvalidArgument(std::string(name) + " must lie in (0, 1)");
    if (!checker) throw InvalidArgument("an expander checker is required");
    const std::size_t n = g.order();
    const double nd = static_cast<double>(n);
    const double eta_n = p.eta * nd, sqrt_eta_n = std::sqrt(p.eta) * nd, gamma_n = p.gamma * nd;

    SplitResult r;
    r.parameters = p;
    r.deleted = VertexSet(n);
    std::vector<VertexSet> pieces{VertexSet::full(n)};
    std::vector<VertexSet> bad_out(n, VertexSet(n));
    std::vector<std::size_t> bad_degree(n, 0);
    std::map<std::vector<VertexSet::Word>, CachedVerdict> cache;
    std::map<std::vector<VertexSet::Word>, bool> unresolved;  // pieces that could not be split

    const auto add_bad = [&](Vertex u, Vertex v) {
        if (bad_out[static_cast<std::size_t>(u)].contains(v)) return;
        bad_out[static_cast<std::size_t>(u)].insert(v);
        ++bad_degree[static_cast<std::size_t>(u)];
        ++bad_degree[static_cast<std::size_t>(v)];
        r.bad_edges.emplace_back(u, v);
    };
    const auto add_bad_between = [&](const VertexSet& from, const VertexSet& to) {
        from.for_each([&](Vertex u) { (g.out(u) & to).for_each([&](Vertex v) { add_bad(u, v); }); });
    };
    const auto verdict_of = [&](const VertexSet& piece) -> const CachedVerdict& {
        auto it = cache.find(piece.words());
        if (it != cache.end()) return it->second;
        const InducedSubtournament sub = induced_subtournament(g, piece);
        CachedVerdict cv;
        cv.verdict = checker(sub.tournament);
        cv.min_semidegree_ok = true;
        piece.for_each([&](Vertex v) {
            if (static_cast<double>(count_and(g.out(v), piece)) + tolerance < eta_n ||
                static_cast<double>(count_and(g.in(v), piece)) + tolerance < eta_n)
                cv.min_semidegree_ok = false;
        });
        return cache.emplace(piece.words(), std::move(cv)).first->second;
    };
    const auto settled = [&](const VertexSet& piece) {
        if (unresolved.count(piece.words())) return true;
        const CachedVerdict& cv = verdict_of(piece);
        return cv.verdict.status == ExpanderStatus::expander && cv.min_semidegree_ok;
    };

    for (std::size_t tau = 1; tau <= 4 * n + 4; ++tau) {
        // (1) largest piece that is not a settled expander; lowest index on ties.
        std::size_t ell = pieces.size();
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            if (static_cast<double>(pieces[i].count()) + tolerance < gamma_n) continue;
            if (ell < pieces.size() && pieces[i].count() <= pieces[ell].count()) continue;
            if (settled(pieces[i])) continue;
            ell = i;
        }
        if (ell == pieces.size()) break;
        ++r.iterations;
        const VertexSet s = pieces[ell];
        Vertex low_out = -1, low_in = -1;
        s.for_each([&](Vertex v) {
            if (low_out < 0 && static_cast<double>(count_and(g.out(v), s)) < eta_n - tolerance) low_out = v;
            if (low_in < 0 && static_cast<double>(count_and(g.in(v), s)) < eta_n - tolerance) low_in = v;
        });
        if (low_out >= 0) {
            // (2) (…, S ∖ {v}, {v}, …)
            const VertexSet single(n, {low_out});
            const VertexSet rest = s - single;
            add_bad_between(single, rest);
            pieces[ell] = rest;
            pieces.insert(pieces.begin() + static_cast<long>(ell) + 1, single);
        } else if (low_in >= 0) {
            // (3) (…, {v}, S ∖ {v}, …)
            const VertexSet single(n, {low_in});
            const VertexSet rest = s - single;
            add_bad_between(rest, single);
            pieces[ell] = single;
            pieces.insert(pieces.begin() + static_cast<long>(ell) + 1, rest);
        } else {
            // (4) split a non-expander as (S′, S″) with few S″ → S′ arcs.
            const CachedVerdict& cv = verdict_of(s);
            bool split = false;
            if (cv.verdict.status == ExpanderStatus::not_expander) {
                const InducedSubtournament sub = induced_subtournament(g, s);
                const NonExpanderSplit ns = non_expander_split(sub.tournament, p.mu, p.nu, cv.verdict.witness);
                if (ns.found) {
                    VertexSet s1(n), s2(n);
                    ns.s_prime.for_each([&](Vertex v) { s1.insert(sub.to_host[static_cast<std::size_t>(v)]); });
                    ns.s.for_each([&](Vertex v) { s2.insert(sub.to_host[static_cast<std::size_t>(v)]); });
                    add_bad_between(s2, s1);
                    pieces[ell] = s1;
                    pieces.insert(pieces.begin() + static_cast<long>(ell) + 1, s2);
                    split = true;
                }
            }
            if (!split) {
                // Unknown verdict or no verified split: leave the piece, flag it.
                unresolved[s.words()] = true;
                r.flagged = true;
                continue;
            }
        }
        // (5) delete vertices in more than √η·n bad edges.
        for (VertexSet& piece : pieces) {
            VertexSet drop(n);
            piece.for_each([&](Vertex v) {
                if (static_cast<double>(bad_degree[static_cast<std::size_t>(v)]) > sqrt_eta_n + tolerance) drop.insert(v);
            });
            piece -= drop;
            r.deleted |= drop;
        }
        pieces.erase(std::remove_if(pieces.begin(), pieces.end(), [](const VertexSet& s) { return s.empty(); }),
                     pieces.end());
    }

    r.pieces = pieces;
    for (const VertexSet& piece : pieces) {
        if (static_cast<double>(piece.count()) + tolerance < gamma_n) {
            r.classes.push_back(PieceClass::small);
            r.verdicts.emplace_back(std::nullopt);
            continue;
        }
        const CachedVerdict& cv = verdict_of(piece);
        const bool ok = cv.verdict.status == ExpanderStatus::expander && cv.min_semidegree_ok;
        r.classes.push_back(ok ? PieceClass::expander : PieceClass::unknown);
        r.verdicts.emplace_back(cv.verdict);
        if (!ok) r.flagged = true;
    }
    return r;
}

SplitAudit audit_split(const Tournament& g, const SplitResult& r) {
    const std::size_t n = g.order();
    const double nd = static_cast<double>(n);
    const auto& p = r.parameters;
    SplitAudit a;
    VertexSet covered(n);
    bool disjoint = true;
    for (const VertexSet& s : r.pieces) {
        if (covered.intersects(s)) disjoint = false;
        covered |= s;
    }
    a.covered = covered.count();
    a.coverage = disjoint && static_cast<double>(a.covered) + tolerance >= (1.0 - p.gamma) * nd;
    a.ordering = true;
    VertexSet before(n), after = covered;
    for (const VertexSet& s : r.pieces) {
        after -= s;
        s.for_each([&](Vertex v) {
            const std::size_t back = std::max(count_and(g.in(v), after), count_and(g.out(v), before));
            a.worst_back_degree = std::max(a.worst_back_degree, back);
            if (static_cast<double>(back) > p.gamma * nd + tolerance) a.ordering = false;
        });
        before |= s;
    }
    a.classification = r.classes.size() == r.pieces.size();
    for (std::size_t i = 0; i < r.pieces.size() && a.classification; ++i) {
        const bool big = static_cast<double>(r.pieces[i].count()) + tolerance >= p.gamma * nd;
        if (!big) {
            a.classification = r.classes[i] == PieceClass::small;
            continue;
        }
        if (r.classes[i] != PieceClass::expander || !r.verdicts[i] || r.verdicts[i]->status != ExpanderStatus::expander) {
            a.classification = false;
            continue;
        }
        r.pieces[i].for_each([&](Vertex v) {
            if (static_cast<double>(count_and(g.out(v), r.pieces[i])) + tolerance < p.eta * nd ||
                static_cast<double>(count_and(g.in(v), r.pieces[i])) + tolerance < p.eta * nd)
                a.classification = false;
        });
    }
    std::vector<std::size_t> bad_degree(n, 0);
    for (const auto& [u, v] : r.bad_edges) {
        if (!g.arc(u, v)) return a;  // a bad edge that is not an arc: deletions stays false
        ++bad_degree[static_cast<std::size_t>(u)];
        ++bad_degree[static_cast<std::size_t>(v)];
    }
    a.deletions = true;
    r.deleted.for_each([&](Vertex v) {
        if (static_cast<double>(bad_degree[static_cast<std::size_t>(v)]) <= std::sqrt(p.eta) * nd + tolerance) a.deletions = false;
    });
    return a;
}

// ---- clusters and regularity -----------------------------------------------------

ClusterDensities cluster_densities(const Tournament& g, const std::vector<VertexSet>& clusters) {
    if (clusters.empty()) throw InvalidArgument("no clusters");
    ClusterDensities cd;
    cd.k = clusters.size();
    cd.m = clusters.front().count();
    VertexSet seen(g.order());
    for (const VertexSet& c : clusters) {
        if (c.universe() != g.order()) throw InvalidArgument("cluster universe does not match the tournament");
        if (c.count() != cd.m || c.empty()) throw InvalidArgument("clusters must be nonempty and of equal size");
        if (seen.intersects(c)) throw InvalidArgument("clusters must be disjoint");
        seen |= c;
    }
    cd.d.assign(cd.k, std::vector<double>(cd.k, 0.0));
    for (std::size_t i = 0; i < cd.k; ++i)
        for (std::size_t j = 0; j < cd.k; ++j)
            if (i != j) cd.d[i][j] = density(g, clusters[i], clusters[j]).value();
    return cd;
}

std::size_t Digraph::arc_count() const {
    std::size_t c = 0;
    for (const auto& row : arc) c += static_cast<std::size_t>(std::count(row.begin(), row.end(), true));
    return c;
}

bool Digraph::is_oriented() const {
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (arc[i][j] && arc[j][i]) return false;
    return true;
}

Digraph reduced_digraph(const ClusterDensities& cd, double d) {
    check_fraction(d, "d");
    Digraph r;
    r.k = cd.k;
    r.arc.assign(cd.k, std::vector<bool>(cd.k, false));
    for (std::size_t i = 0; i < cd.k; ++i)
        for (std::size_t j = 0; j < cd.k; ++j)
            if (i != j && cd.d[i][j] + tolerance >= d) r.arc[i][j] = true;
    if (d > 0.5 && !r.is_oriented()) throw VerificationFailure("reduced digraph with d > 1/2 has a 2-cycle");
    return r;
}

RegularityCheck regularity_falsifier(const Tournament& g, const VertexSet& u, const VertexSet& v, double eps,
                                     std::uint64_t sample_budget, Seed seed) {
    check_fraction(eps, "eps");
    if (u.universe() != g.order() || v.universe() != g.order()) throw InvalidArgument("set universe mismatch");
    if (u.intersects(v)) throw InvalidArgument("U and V must be disjoint");
    const double need = 1.0 / eps;
    if (static_cast<double>(u.count()) + tolerance < need || static_cast<double>(v.count()) + tolerance < need)
        throw InvalidArgument("regularity check needs |U|, |V| >= 1/eps");
    RegularityCheck out;
    out.pair_density = density(g, u, v).value();
    const std::size_t min_u = static_cast<std::size_t>(std::floor(eps * static_cast<double>(u.count()) + tolerance)) + 1;
    const std::size_t min_v = static_cast<std::size_t>(std::floor(eps * static_cast<double>(v.count()) + tolerance)) + 1;
    const auto attempt = [&](const VertexSet& a, const VertexSet& b) {
        ++out.samples;
        const double dd = density(g, a, b).value();
        if (std::fabs(dd - out.pair_density) > eps + tolerance) {
            out.irregular = true;
            out.u_prime = a;
            out.v_prime = b;
            out.sub_density = dd;
            return true;
        }
        return false;
    };
    // Sort by density towards the other side, high first.
    std::vector<Vertex> us = u.to_vector(), vs = v.to_vector();
    std::stable_sort(us.begin(), us.end(), [&](Vertex a, Vertex b) { return count_and(g.out(a), v) > count_and(g.out(b), v); });
    std::stable_sort(vs.begin(), vs.end(), [&](Vertex a, Vertex b) { return count_and(g.in(a), u) > count_and(g.in(b), u); });
    const auto take = [&](const std::vector<Vertex>& xs, std::size_t k, bool from_front) {
        VertexSet s(g.order());
        for (std::size_t i = 0; i < k; ++i) s.insert(from_front ? xs[i] : xs[xs.size() - 1 - i]);
        return s;
    };
    for (std::size_t ku = min_u; ku <= us.size(); ++ku) {
        const std::size_t kv = std::max(min_v, vs.size() * ku / us.size());
        for (const bool fu : {true, false})
            for (const bool fv : {true, false})
                if (attempt(take(us, ku, fu), take(vs, std::min(kv, vs.size()), fv))) return out;
    }
    Rng rng(seed, "regularity_sample");
    for (std::uint64_t i = 0; i < sample_budget; ++i) {
        const std::size_t ku = min_u + rng.below(us.size() - min_u + 1);
        const std::size_t kv = min_v + rng.below(vs.size() - min_v + 1);
        std::vector<Vertex> a = us, b = vs;
        for (std::size_t j = 0; j < ku; ++j) std::swap(a[j], a[j + rng.below(a.size() - j)]);
        for (std::size_t j = 0; j < kv; ++j) std::swap(b[j], b[j + rng.below(b.size() - j)]);
        a.resize(ku);
        b.resize(kv);
        if (attempt(VertexSet::from_vector(g.order(), a), VertexSet::from_vector(g.order(), b))) return out;
    }
    return out;
}

} // namespace sumner
