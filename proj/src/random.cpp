#include "accomplice/random.hpp"

#include <limits>

#include "accomplice/error.hpp"

namespace accomplice {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept {
    return splitmix64(splitmix64(a) ^ (b + 0x632BE59BD9B4E019ULL));
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) noexcept {
    return mix_seed(mix_seed(a, b), c);
}

std::uint64_t Random::below(std::uint64_t bound) {
    // Reject the top partial bucket so every residue is equally likely.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

std::int64_t Random::between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

PreferenceList random_permutation(int n, Random& rng) {
    PreferenceList list(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) list[i] = i;
    rng.shuffle(std::span<Agent>(list));
    return list;
}

PreferenceProfile random_profile(int n, Random& rng) {
    if (n < 1) throw Error(ErrorCode::ConfigInvalid, "profile size must be at least 1");
    std::vector<PreferenceList> men;
    std::vector<PreferenceList> women;
    men.reserve(static_cast<std::size_t>(n));
    women.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) men.push_back(random_permutation(n, rng));
    for (int i = 0; i < n; ++i) women.push_back(random_permutation(n, rng));
    return PreferenceProfile::from_lists(men, women);
}

}  // namespace accomplice
