#pragma once

#include <cstdint>
#include <limits>

#include <boost/random/normal_distribution.hpp>

namespace votesim {

/// Reproducible stream of random numbers identified by (seed, stream_id).
///
/// The state is a xoshiro256** generator whose four words are produced by a
/// splitmix64 sequence keyed on both identifiers, so per-trial streams can be
/// derived in any order without touching a shared generator. A source is
/// single-owner; parallel code derives one source per work item.
class RandomSource {
public:
    using result_type = std::uint64_t;

    RandomSource(std::uint64_t seed, std::uint64_t stream_id);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    /// Uniform double in [0, 1) built from the top 53 bits.
    double uniform();

    /// One draw from N(mu, sigma^2).
    double normal(double mu, double sigma);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t state_[4];
    boost::random::normal_distribution<double> normal_;
};

}  // namespace votesim
