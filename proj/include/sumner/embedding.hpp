#pragma once

#include <cstddef>
#include <vector>

#include "sumner/vertex_set.hpp"

namespace sumner {

/// Tree-vertex → tournament-vertex map, partial while a procedure extends it.
/// Unmapped entries hold -1.
class Embedding {
public:
    Embedding() = default;
    explicit Embedding(std::size_t tree_order) : image_(tree_order, -1) {}
    static Embedding from_images(std::vector<Vertex> images);

    std::size_t tree_order() const noexcept { return image_.size(); }

    void assign(Vertex t, Vertex v);
    void unassign(Vertex t) { image_.at(static_cast<std::size_t>(t)) = -1; }

    bool is_mapped(Vertex t) const { return image_.at(static_cast<std::size_t>(t)) >= 0; }
    /// Image of t, or -1.
    Vertex operator[](Vertex t) const { return image_.at(static_cast<std::size_t>(t)); }

    std::size_t mapped_count() const noexcept;
    bool is_total() const noexcept { return mapped_count() == image_.size(); }

    /// Images of mapped vertices as a set over the host's vertices.
    VertexSet image_set(std::size_t host_order) const;

    const std::vector<Vertex>& images() const noexcept { return image_; }

    friend bool operator==(const Embedding&, const Embedding&) = default;

private:
    std::vector<Vertex> image_;
};

} // namespace sumner
