#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

namespace riscleanse {

// Disjoint-set union with path compression and union by rank.
class UnionFind {
  public:
    explicit UnionFind(size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), size_t{0});
    }

    size_t find(size_t x) {
        size_t root = x;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[x] != root) {
            size_t next = parent_[x];
            parent_[x] = root;
            x = next;
        }
        return root;
    }

    void unite(size_t a, size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
    }

    bool connected(size_t a, size_t b) { return find(a) == find(b); }

  private:
    std::vector<size_t> parent_;
    std::vector<uint8_t> rank_;
};

}  // namespace riscleanse
