#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace wsd {

/// 64-bit FNV-1a. Used for content hashes in file headers and for deriving
/// per-task seeds from (global seed, task id).
inline uint64_t fnv1a64(std::string_view bytes, uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline uint64_t fnv1a64(uint64_t value, uint64_t h = 0xcbf29ce484222325ULL) {
    for (int i = 0; i < 8; ++i) {
        h ^= (value >> (8 * i)) & 0xffU;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Seed for one word task: hash(global seed, task_id).
inline uint64_t task_seed(uint64_t global_seed, std::string_view task_id) {
    return fnv1a64(task_id, fnv1a64(global_seed));
}

inline std::string to_hex(uint64_t v) {
    static const char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

inline uint64_t parse_hex(std::string_view s) {
    uint64_t v = 0;
    for (char c : s) {
        int d = (c >= '0' && c <= '9')   ? c - '0'
                : (c >= 'a' && c <= 'f') ? c - 'a' + 10
                : (c >= 'A' && c <= 'F') ? c - 'A' + 10
                                         : -1;
        if (d < 0) break;
        v = (v << 4) | static_cast<uint64_t>(d);
    }
    return v;
}

/// Seeded generator with fully specified derived draws. mt19937_64 output is
/// pinned by the standard; the uniform/shuffle transformations below are ours,
/// so streams are reproducible across platforms and library versions.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next() { return gen_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

    /// Uniform integer in [0, n). Rejection-free modulo is fine here: n is
    /// always tiny compared to 2^64, bias is unobservable at our scales.
    uint64_t below(uint64_t n) { return gen_() % n; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 gen_;
};

} // namespace wsd
