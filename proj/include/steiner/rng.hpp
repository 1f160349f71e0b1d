#pragma once

#include <cstdint>
#include <vector>

namespace steiner {

/// Deterministic splitmix64 stream. Used everywhere a seed is taken so that
/// runs are byte-identical across platforms (no reliance on std::
/// distribution implementations).
class SeededRng {
public:
    explicit SeededRng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, n), n > 0. Rejection keeps the distribution exact.
    uint64_t below(uint64_t n) {
        uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t v = next();
        while (v >= limit)
            v = next();
        return v % n;
    }

    /// Signed uniform in [-bound, bound].
    long long signed_range(long long bound) {
        return static_cast<long long>(below(2 * static_cast<uint64_t>(bound) + 1)) - bound;
    }

    /// k distinct values from [0, n), in draw order.
    std::vector<uint64_t> sample_distinct(uint64_t n, size_t k) {
        std::vector<uint64_t> out;
        out.reserve(k);
        while (out.size() < k) {
            uint64_t v = below(n);
            bool seen = false;
            for (uint64_t u : out)
                if (u == v) { seen = true; break; }
            if (!seen)
                out.push_back(v);
        }
        return out;
    }

    /// Independent substream for item `index` of a seeded run.
    static uint64_t derive(uint64_t seed, uint64_t index) {
        SeededRng r(seed ^ (0x517cc1b727220a95ull * (index + 1)));
        return r.next();
    }

private:
    uint64_t state_;
};

} // namespace steiner
