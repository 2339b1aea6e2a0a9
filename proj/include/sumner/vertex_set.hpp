#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace sumner {

using Vertex = int;

/// Fixed-universe bitset over [0, universe). Word-parallel set algebra is the
/// workhorse of neighbourhood queries.
class VertexSet {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    VertexSet() = default;
    explicit VertexSet(std::size_t universe) : universe_(universe), words_((universe + word_bits - 1) / word_bits, 0) {}
    VertexSet(std::size_t universe, std::initializer_list<Vertex> members);

    static VertexSet full(std::size_t universe);
    static VertexSet from_vector(std::size_t universe, const std::vector<Vertex>& members);

    std::size_t universe() const noexcept { return universe_; }

    bool contains(Vertex v) const noexcept {
        return v >= 0 && static_cast<std::size_t>(v) < universe_ && ((words_[v / word_bits] >> (v % word_bits)) & 1U);
    }
    void insert(Vertex v);
    void erase(Vertex v);
    void clear() noexcept;

    std::size_t count() const noexcept;
    bool empty() const noexcept;

    /// Smallest member, or -1.
    Vertex first() const noexcept;
    /// Smallest member strictly greater than v, or -1.
    Vertex next(Vertex v) const noexcept;

    std::vector<Vertex> to_vector() const;

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            Word bits = words_[w];
            while (bits) {
                const int b = std::countr_zero(bits);
                f(static_cast<Vertex>(w * word_bits + b));
                bits &= bits - 1;
            }
        }
    }

    VertexSet& operator&=(const VertexSet& o);
    VertexSet& operator|=(const VertexSet& o);
    /// Set difference.
    VertexSet& operator-=(const VertexSet& o);
    VertexSet complement() const;

    bool is_subset_of(const VertexSet& o) const;
    bool intersects(const VertexSet& o) const;

    friend bool operator==(const VertexSet& a, const VertexSet& b) = default;

    const std::vector<Word>& words() const noexcept { return words_; }

private:
    void trim() noexcept;

    std::size_t universe_ = 0;
    std::vector<Word> words_;
};

VertexSet operator&(VertexSet a, const VertexSet& b);
VertexSet operator|(VertexSet a, const VertexSet& b);
VertexSet operator-(VertexSet a, const VertexSet& b);

/// |a ∩ b| without materialising the intersection.
std::size_t count_and(const VertexSet& a, const VertexSet& b) noexcept;
/// |a ∖ b| without materialising the difference.
std::size_t count_and_not(const VertexSet& a, const VertexSet& b) noexcept;
/// |a ∩ b ∖ c|.
std::size_t count_and_and_not(const VertexSet& a, const VertexSet& b, const VertexSet& c) noexcept;

} // namespace sumner
