#ifndef STANCEKIT_RNG_HPP
#define STANCEKIT_RNG_HPP

#include <cstdint>

namespace stancekit {

// Deterministic splitmix64 generator. Every stochastic component (sampling,
// shuffling, initialization, dropout, Monte-Carlo baselines) draws from this
// so that a seed pins the run bit-for-bit on any platform. std::shuffle and
// the <random> distributions are implementation-defined and never used.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Unbiased-enough bounded draw via 128-bit multiply-shift.
    std::uint64_t bounded(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Uniform in [0,1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

    // Independent stream derived from this seed and a tag; forking never
    // advances the parent, so adding a consumer does not shift the others.
    DetRng fork(std::uint64_t tag) const {
        std::uint64_t z = state_ ^ (0x9e3779b97f4a7c15ull * (tag + 0x632be59bd9b4e019ull));
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        return DetRng(z ^ (z >> 27));
    }

    template <typename T>
    void shuffle(T& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(bounded(i));
            auto tmp = v[i - 1];
            v[i - 1] = v[j];
            v[j] = tmp;
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace stancekit

#endif
