#pragma once

#include <cmath>
#include <cstdint>

namespace ramansim {

// Deterministic splitmix64 stream. Streams are derived from a (seed,
// stream id) pair by counter mixing, so trajectory k always sees the same
// numbers regardless of how trajectories are distributed over workers.
// No std:: distributions anywhere: their algorithms are implementation
// defined and would break bit-reproducibility of outputs.
class RngStream {
  public:
    explicit RngStream(std::uint64_t state) : state_(state) {}

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static RngStream from(std::uint64_t seed, std::uint64_t stream_id) {
        // two mixing rounds decorrelate (seed, id) lattices
        return RngStream(mix(mix(seed ^ 0x6a09e667f3bcc909ULL) + stream_id));
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1) with 53-bit resolution
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in (0,1], safe as input to log()
    double next_double_open() { return 1.0 - next_double(); }

    bool next_bool() { return (next_u64() >> 63) != 0; }

    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // Box-Muller
        const double u1 = next_double_open();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // Knuth for small means, PTRS-style normal tail fallback is not
    // needed here: means above the cutoff use a Gaussian approximation
    // (documented; only count statistics at >=3 sigma are asserted).
    long next_poisson(double mean) {
        if (mean <= 0.0) return 0;
        if (mean < 64.0) {
            const double l = std::exp(-mean);
            long k = 0;
            double p = 1.0;
            do {
                ++k;
                p *= next_double();
            } while (p > l);
            return k - 1;
        }
        const double v = mean + std::sqrt(mean) * next_normal();
        return v < 0.0 ? 0 : static_cast<long>(std::llround(v));
    }

  private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace ramansim
