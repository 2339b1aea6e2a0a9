#include "sumner/vertex_set.hpp"

#include <algorithm>
#include <string>

#include "sumner/error.hpp"

namespace sumner {

namespace {

void require_same_universe(const VertexSet& a, const VertexSet& b) {
    if (a.universe() != b.universe())
        throw InvalidArgument("vertex sets over different universes (" + std::to_string(a.universe()) + " vs " +
                              std::to_string(b.universe()) + ")");
}

} // namespace

VertexSet::VertexSet(std::size_t universe, std::initializer_list<Vertex> members) : VertexSet(universe) {
    for (Vertex v : members) insert(v);
}

VertexSet VertexSet::full(std::size_t universe) {
    VertexSet s(universe);
    std::fill(s.words_.begin(), s.words_.end(), ~Word{0});
    s.trim();
    return s;
}

VertexSet VertexSet::from_vector(std::size_t universe, const std::vector<Vertex>& members) {
    VertexSet s(universe);
    for (Vertex v : members) s.insert(v);
    return s;
}

void VertexSet::insert(Vertex v) {
    if (v < 0 || static_cast<std::size_t>(v) >= universe_)
        throw InvalidArgument("vertex " + std::to_string(v) + " outside universe of size " + std::to_string(universe_));
    words_[v / word_bits] |= Word{1} << (v % word_bits);
}

void VertexSet::erase(Vertex v) {
    if (v < 0 || static_cast<std::size_t>(v) >= universe_)
        throw InvalidArgument("vertex " + std::to_string(v) + " outside universe of size " + std::to_string(universe_));
    words_[v / word_bits] &= ~(Word{1} << (v % word_bits));
}

void VertexSet::clear() noexcept { std::fill(words_.begin(), words_.end(), Word{0}); }

std::size_t VertexSet::count() const noexcept {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

bool VertexSet::empty() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

Vertex VertexSet::first() const noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w]) return static_cast<Vertex>(w * word_bits + std::countr_zero(words_[w]));
    return -1;
}

Vertex VertexSet::next(Vertex v) const noexcept {
    std::size_t start = static_cast<std::size_t>(v + 1);
    if (start >= universe_) return -1;
    std::size_t w = start / word_bits;
    Word bits = words_[w] & (~Word{0} << (start % word_bits));
    while (true) {
        if (bits) return static_cast<Vertex>(w * word_bits + std::countr_zero(bits));
        if (++w == words_.size()) return -1;
        bits = words_[w];
    }
}

std::vector<Vertex> VertexSet::to_vector() const {
    std::vector<Vertex> out;
    out.reserve(count());
    for_each([&](Vertex v) { out.push_back(v); });
    return out;
}

VertexSet& VertexSet::operator&=(const VertexSet& o) {
    require_same_universe(*this, o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
}

VertexSet& VertexSet::operator|=(const VertexSet& o) {
    require_same_universe(*this, o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
}

VertexSet& VertexSet::operator-=(const VertexSet& o) {
    require_same_universe(*this, o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
}

VertexSet VertexSet::complement() const {
    VertexSet c(universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) c.words_[i] = ~words_[i];
    c.trim();
    return c;
}

bool VertexSet::is_subset_of(const VertexSet& o) const {
    require_same_universe(*this, o);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~o.words_[i]) return false;
    return true;
}

bool VertexSet::intersects(const VertexSet& o) const {
    require_same_universe(*this, o);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & o.words_[i]) return true;
    return false;
}

void VertexSet::trim() noexcept {
    if (universe_ % word_bits != 0 && !words_.empty())
        words_.back() &= (Word{1} << (universe_ % word_bits)) - 1;
}

VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

std::size_t count_and(const VertexSet& a, const VertexSet& b) noexcept {
    const auto& x = a.words();
    const auto& y = b.words();
    const std::size_t m = std::min(x.size(), y.size());
    std::size_t c = 0;
    for (std::size_t i = 0; i < m; ++i) c += static_cast<std::size_t>(std::popcount(x[i] & y[i]));
    return c;
}

std::size_t count_and_not(const VertexSet& a, const VertexSet& b) noexcept {
    const auto& x = a.words();
    const auto& y = b.words();
    std::size_t c = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        c += static_cast<std::size_t>(std::popcount(x[i] & ~(i < y.size() ? y[i] : 0)));
    return c;
}

std::size_t count_and_and_not(const VertexSet& a, const VertexSet& b, const VertexSet& c) noexcept {
    const auto& x = a.words();
    const auto& y = b.words();
    const auto& z = c.words();
    const std::size_t m = std::min(x.size(), y.size());
    std::size_t total = 0;
    for (std::size_t i = 0; i < m; ++i)
        total += static_cast<std::size_t>(std::popcount(x[i] & y[i] & ~(i < z.size() ? z[i] : 0)));
    return total;
}

} // namespace sumner
