#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

#include "accomplice/profile.hpp"

namespace accomplice {

inline constexpr std::string_view kRngAlgorithm =
    "mt19937_64 seeded with splitmix64(seed, stream...); Fisher-Yates shuffle with rejection-sampled bounds";

// splitmix64 finalizer applied to a combination of the inputs. Used to derive
// independent per-trial streams from (seed, n, trial) so that results do not
// depend on evaluation order.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept;
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) noexcept;

// Thin wrapper over mt19937_64 whose derived draws (bounded integers,
// shuffles) are implemented here rather than through the standard
// distributions, which are not portable across standard libraries.
class Random {
public:
    explicit Random(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);

    // Uniform integer in [lo, hi].
    std::int64_t between(std::int64_t lo, std::int64_t hi);

    bool coin() { return (engine_() >> 63) != 0; }

    template <class T>
    void shuffle(std::span<T> values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(i));
            std::swap(values[i - 1], values[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

PreferenceList random_permutation(int n, Random& rng);

// Every one of the 2n lists is an independent uniform permutation.
PreferenceProfile random_profile(int n, Random& rng);

}  // namespace accomplice
