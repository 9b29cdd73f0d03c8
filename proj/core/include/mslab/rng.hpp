#pragma once

#include <cmath>
#include <cstdint>

namespace mslab {

// Counter-based generator: output i is a pure function of (seed, i), so any
// consumer that draws the same number of values sees the same stream
// regardless of platform or thread schedule.
class CounterRng {
  public:
    explicit CounterRng(uint64_t seed, uint64_t counter = 0) : seed_(seed), counter_(counter) {}

    uint64_t next() { return value_at(counter_++); }

    uint64_t value_at(uint64_t i) const {
        uint64_t z = seed_ ^ (i * 0x9e3779b97f4a7c15ULL + 0xd1b54a32d192ed03ULL);
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n) by the fixed-point multiply; bias ~ n/2^64 is
    // irrelevant for test sampling and keeps draws one-call deterministic.
    uint64_t below(uint64_t n) {
        return uint64_t((unsigned __int128)next() * n >> 64);
    }

    // Uniform in [lo, hi] inclusive.
    uint64_t range(uint64_t lo, uint64_t hi) { return lo + below(hi - lo + 1); }

    double real01() { return double(next() >> 11) * 0x1.0p-53; }

    // Log-uniform over [lo, hi], lo >= 1.
    uint64_t log_range(uint64_t lo, uint64_t hi) {
        double u = real01();
        double v = std::exp(std::log(double(lo)) + u * (std::log(double(hi)) - std::log(double(lo))));
        uint64_t r = uint64_t(v);
        if (r < lo) r = lo;
        if (r > hi) r = hi;
        return r;
    }

    uint64_t counter() const { return counter_; }

  private:
    uint64_t seed_;
    uint64_t counter_;
};

}  // namespace mslab
