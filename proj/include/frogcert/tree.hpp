#pragma once

// The 3,2-alternating tree: even-generation vertices (root = generation 0)
// have three children, odd-generation vertices have two. Vertices are
// addressed by their child-index path from the root and materialized lazily
// in a per-episode arena, so a depth-capped episode never allocates the
// full ball.

#include <array>
#include <cstdint>
#include <vector>

namespace frogcert {

struct NodeAddress {
    std::vector<std::uint8_t> digits; // child indices; even depth: 0..2, odd: 0..1

    std::size_t depth() const { return digits.size(); }
    bool is_root() const { return digits.empty(); }

    NodeAddress parent() const {
        NodeAddress p = *this;
        p.digits.pop_back();
        return p;
    }
    NodeAddress child(std::uint8_t i) const {
        NodeAddress c = *this;
        c.digits.push_back(i);
        return c;
    }

    bool operator==(const NodeAddress& o) const { return digits == o.digits; }
};

inline int child_count(std::size_t depth) { return depth % 2 == 0 ? 3 : 2; }

// Root: 3 children. Any other vertex: parent first, then its children.
std::vector<NodeAddress> neighbors(const NodeAddress& addr);

// Schedule-independent 64-bit identity of a vertex, used to key per-frog
// RNG streams by origin.
std::uint64_t address_hash(const NodeAddress& addr);

// Lazily-materialized vertex table for one episode. Vertex 0 is the root.
class TreeArena {
public:
    using VertexId = std::uint32_t;
    static constexpr VertexId kRoot = 0;
    static constexpr VertexId kNone = 0xffffffffu;

    TreeArena();

    VertexId parent(VertexId v) const { return parent_[v]; }
    std::uint32_t depth(VertexId v) const { return depth_[v]; }
    std::uint8_t digit(VertexId v) const { return digit_[v]; }
    int degree_down(VertexId v) const { return child_count(depth_[v]); }

    VertexId child(VertexId v, int i); // materializes on demand

    // The other child of v's parent; only meaningful when the parent has
    // exactly two children (v at even depth >= 2).
    VertexId sibling(VertexId v);

    NodeAddress address(VertexId v) const;
    std::uint64_t hash(VertexId v) const { return hash_[v]; }
    std::size_t size() const { return parent_.size(); }

private:
    std::vector<VertexId> parent_;
    std::vector<std::uint32_t> depth_;
    std::vector<std::uint8_t> digit_;
    std::vector<std::array<VertexId, 3>> children_;
    std::vector<std::uint64_t> hash_;
};

} // namespace frogcert
