// Counter-based random streams for reproducible, order-independent
// Monte Carlo. Every draw is a pure function of
// (master_seed, replication_index, counter), so distinct replications own
// disjoint streams no matter how the work is scheduled.

#ifndef PRODSUM_SEED_STREAM_HPP
#define PRODSUM_SEED_STREAM_HPP

#include <cstdint>

namespace prodsum {

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// splitmix64 finalizer (Vigna, 2015). Public-domain mixing constants.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace detail

/// One replication's private random stream. Output i is
/// mix64(key + (i+1)*golden) where key is derived from
/// (master_seed, replication_index); no sequential jumping is involved.
class SeedStream {
public:
    SeedStream(std::uint64_t master_seed, std::uint64_t replication_index)
        : master_seed_(master_seed),
          replication_index_(replication_index),
          key_(detail::mix64(detail::mix64(master_seed + detail::kGolden) ^
                             (replication_index * 0xD2B74407B1CE6E93ULL))) {}

    std::uint64_t next_u64() {
        ++counter_;
        return detail::mix64(key_ + counter_ * detail::kGolden);
    }

    /// Uniform draw strictly inside (0,1); safe as input to inverse CDFs.
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal draw (Box-Muller; the paired value is cached).
    double next_gaussian();

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t replication_index() const { return replication_index_; }

private:
    std::uint64_t master_seed_;
    std::uint64_t replication_index_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double cached_gaussian_ = 0.0;
    bool has_cached_gaussian_ = false;
};

/// Per-replication stream derivation; collision-free by construction.
inline SeedStream derive_stream(std::uint64_t master_seed,
                                std::uint64_t replication_index) {
    return SeedStream(master_seed, replication_index);
}

}  // namespace prodsum

#endif  // PRODSUM_SEED_STREAM_HPP
