#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "emoforge/hash.hpp"

namespace emoforge {

// Deterministic RNG wrapper. std::uniform_int_distribution is
// implementation-defined, so bounded draws and shuffles are done by hand to
// keep run outputs bit-identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // unbiased draw in [0, n)
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % n;
    }

    // uniform double in [0, 1)
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    // derive an independent child stream; tag keeps sibling streams apart
    Rng fork(std::uint64_t tag) { return Rng(hash_combine(gen_(), tag)); }

private:
    std::mt19937_64 gen_;
};

// Stable seed derivation for named sub-streams (per fold, per emotion, ...).
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view name) {
    return hash_combine(master, fnv1a64(name));
}

inline std::uint64_t derive_seed(std::uint64_t master, std::string_view name, std::uint64_t index) {
    return hash_combine(derive_seed(master, name), index + 1);
}

}  // namespace emoforge
