#include "votesim/random.hpp"

#include <bit>

namespace votesim {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
    // Key the splitmix sequence on the seed, then fold the stream id through a
    // second round so neighbouring ids land far apart.
    std::uint64_t key = seed;
    std::uint64_t mixed = splitmix64(key) ^ stream_id;
    std::uint64_t sm = splitmix64(mixed);
    for (auto& word : state_) {
        word = splitmix64(sm);
    }
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
        state_[0] = 1;
    }
}

RandomSource::result_type RandomSource::operator()() {
    const std::uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
}

double RandomSource::uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double RandomSource::normal(double mu, double sigma) {
    return mu + sigma * normal_(*this);
}

}  // namespace votesim
