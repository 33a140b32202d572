#pragma once

#include <cmath>
#include <cstdint>

namespace ucpt {

// splitmix64 step; also used as a 64-bit mixing finalizer.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// xoshiro256++ with splitmix64 seeding.
//
// Streams: substream(seed, k) derives an independent generator for each
// 64-bit stream index k. Simulation results must not depend on how work is
// scheduled across threads, so every unit of parallel work owns the stream
// keyed by its logical index, never by its worker.
class Xoshiro256pp {
  public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& w : state_) w = splitmix64_next(s);
    }

    static Xoshiro256pp substream(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t s = seed;
        std::uint64_t a = splitmix64_next(s);
        s = a ^ (stream + 0xD1B54A32D192ED03ULL);
        std::uint64_t b = splitmix64_next(s);
        return Xoshiro256pp(b ^ (stream * 0x9E3779B97F4A7C15ULL));
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on [0,1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform on (-1,1); never exactly 0 in the polar rejection loop below.
    double uniform_pm1() { return 2.0 * uniform01() - 1.0; }

    // Standard normal via the Marsaglia polar method; the second variate of
    // each accepted pair is cached. Fixed per build: stream stability matters
    // for reproducing seeded simulation tables.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = uniform_pm1();
            v = uniform_pm1();
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    double exponential(double rate) { return -std::log1p(-uniform01()) / rate; }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace ucpt
