#include "orderstats/random.hpp"

#include <cmath>

namespace orderstats {

namespace {

__extension__ using u128 = unsigned __int128;

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

// SplitMix64 finalizer, used only to derive child keys.
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

SampleStream::SampleStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index),
      engine_(make_engine(master_seed, stream_index)) {}

double SampleStream::uniform_open() {
    constexpr double kScale = 0x1.0p-53;
    return (static_cast<double>(engine_() >> 11) + 0.5) * kScale;
}

double SampleStream::standard_exponential() { return -std::log(uniform_open()); }

std::uint64_t SampleStream::uniform_index(std::uint64_t bound) {
    // Lemire's nearly divisionless rejection.
    u128 product = static_cast<u128>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            product = static_cast<u128>(engine_()) * bound;
            low = static_cast<std::uint64_t>(product);
        }
    }
    return static_cast<std::uint64_t>(product >> 64);
}

SampleStream SampleStream::child(std::uint64_t sub_index) const {
    return SampleStream(master_seed_, mix64(stream_index_ ^ mix64(sub_index + 1)));
}

}  // namespace orderstats
