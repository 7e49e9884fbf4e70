#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace emt {

// Deterministic random stream. All randomness in the solvers flows through
// explicitly passed Rng instances so that runs are reproducible per seed and
// independent components (demes, migration, init) own independent streams.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(mix(seed)) {}

    // Derive an independent stream from (seed, path...). Used to give each
    // deme / migration tick / solver its own stream: derive(seed, {kDeme, k}).
    static Rng derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
        std::uint64_t s = mix(seed);
        for (std::uint64_t p : path) s = mix(s ^ mix(p + 0x9e3779b97f4a7c15ULL));
        return Rng(raw(s));
    }

    std::uint64_t next_u64() { return gen_(); }

    // Unbiased integer in [0, n). Lemire's multiply-shift rejection method.
    std::uint64_t bounded(std::uint64_t n) {
        unsigned __int128 m = (unsigned __int128)next_u64() * n;
        auto lo = (std::uint64_t)m;
        if (lo < n) {
            std::uint64_t t = (0 - n) % n;
            while (lo < t) {
                m = (unsigned __int128)next_u64() * n;
                lo = (std::uint64_t)m;
            }
        }
        return (std::uint64_t)(m >> 64);
    }

    // Inclusive range [lo, hi].
    int uniform_int(int lo, int hi) {
        return lo + (int)bounded((std::uint64_t)(hi - lo) + 1);
    }

    // [0, 1)
    double uniform01() { return (double)(next_u64() >> 11) * 0x1.0p-53; }

    double uniform_real(double a, double b) { return a + (b - a) * uniform01(); }

    // Fisher-Yates
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = bounded(i);
            std::swap(v[i - 1], v[j]);
        }
    }

  private:
    struct raw {
        std::uint64_t v;
        explicit raw(std::uint64_t v) : v(v) {}
    };
    explicit Rng(raw r) : gen_(r.v) {}

    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 gen_;
};

// Stream tags for Rng::derive paths.
enum StreamTag : std::uint64_t {
    kStreamInit = 1,
    kStreamDeme = 2,
    kStreamMigration = 3,
    kStreamMfea = 4,
};

} // namespace emt
