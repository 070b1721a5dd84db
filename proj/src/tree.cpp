#include "frogcert/tree.hpp"

#include <array>

#include "frogcert/rng.hpp"

namespace frogcert {

std::vector<NodeAddress> neighbors(const NodeAddress& addr) {
    std::vector<NodeAddress> out;
    if (!addr.is_root())
        out.push_back(addr.parent());
    const int k = child_count(addr.depth());
    for (int i = 0; i < k; ++i)
        out.push_back(addr.child(static_cast<std::uint8_t>(i)));
    return out;
}

std::uint64_t address_hash(const NodeAddress& addr) {
    std::uint64_t h = 0x6a09e667f3bcc909ull;
    for (std::uint8_t d : addr.digits)
        h = rng_detail::mix64(h ^ (d + 0x9e3779b97f4a7c15ull));
    return h;
}

TreeArena::TreeArena() {
    parent_.push_back(kNone);
    depth_.push_back(0);
    digit_.push_back(0);
    children_.push_back({kNone, kNone, kNone});
    hash_.push_back(address_hash(NodeAddress{}));
}

TreeArena::VertexId TreeArena::child(VertexId v, int i) {
    VertexId c = children_[v][i];
    if (c != kNone)
        return c;
    c = static_cast<VertexId>(parent_.size());
    children_[v][i] = c;
    parent_.push_back(v);
    depth_.push_back(depth_[v] + 1);
    digit_.push_back(static_cast<std::uint8_t>(i));
    children_.push_back({kNone, kNone, kNone});
    hash_.push_back(rng_detail::mix64(
        hash_[v] ^ (static_cast<std::uint64_t>(i) + 0x9e3779b97f4a7c15ull)));
    return c;
}

TreeArena::VertexId TreeArena::sibling(VertexId v) {
    const VertexId p = parent_[v];
    return child(p, digit_[v] == 0 ? 1 : 0);
}

NodeAddress TreeArena::address(VertexId v) const {
    NodeAddress a;
    a.digits.resize(depth_[v]);
    for (VertexId w = v; w != kRoot; w = parent_[w])
        a.digits[depth_[w] - 1] = digit_[w];
    return a;
}

} // namespace frogcert
