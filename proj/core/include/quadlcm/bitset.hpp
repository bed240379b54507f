#ifndef QUADLCM_BITSET_HPP
#define QUADLCM_BITSET_HPP

#include <atomic>
#include <vector>

#include "quadlcm/int128.hpp"

namespace quadlcm {

// Flat bit vector. Concurrent marking uses fetch_or on the backing words;
// the final content is the union of all marks, so it does not depend on
// write order or thread count.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(u64 n) : size_(n), words_((n + 63) / 64, 0) {}

    u64 size() const { return size_; }

    void set(u64 i) { words_[i >> 6] |= u64(1) << (i & 63); }
    void setAtomic(u64 i) {
        std::atomic_ref<u64>(words_[i >> 6])
            .fetch_or(u64(1) << (i & 63), std::memory_order_relaxed);
    }
    bool test(u64 i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    u64 popcount() const {
        u64 c = 0;
        for (u64 w : words_) c += (u64)__builtin_popcountll(w);
        return c;
    }

    // number of set bits with index < n
    u64 popcountPrefix(u64 n) const {
        if (n >= size_) return popcount();
        u64 c = 0;
        u64 full = n >> 6;
        for (u64 w = 0; w < full; ++w) c += (u64)__builtin_popcountll(words_[w]);
        unsigned rem = unsigned(n & 63);
        if (rem) c += (u64)__builtin_popcountll(words_[full] & ((u64(1) << rem) - 1));
        return c;
    }

    const std::vector<u64>& words() const { return words_; }

private:
    u64 size_ = 0;
    std::vector<u64> words_;
};

} // namespace quadlcm

#endif
