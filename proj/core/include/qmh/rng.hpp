#ifndef QMH_RNG_HPP
#define QMH_RNG_HPP

#include <cstdint>

// Reproducible stream-splittable pseudorandom source. A (seed, stream_id)
// pair fully determines the output sequence; no standard-library
// distributions are involved, so sequences are identical across platforms.

namespace qmh::rng {

constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : state_(mix64(seed) ^ mix64(mix64(stream_id) + 0x632be59bd9b4e019ULL)),
          seed_(seed),
          stream_id_(stream_id) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

    /// Index into a probability vector (values summing to ~1).
    template <typename Container>
    int pick(const Container& probs) {
        double r = next_double();
        int last = 0;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            last = static_cast<int>(i);
            r -= probs[i];
            if (r < 0.0) return last;
        }
        return last;  // rounding slack lands on the final entry
    }

  private:
    std::uint64_t state_;
    std::uint64_t seed_;
    std::uint64_t stream_id_;
};

}  // namespace qmh::rng

#endif
