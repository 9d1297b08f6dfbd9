#pragma once

#include <cstdint>
#include <random>

namespace orderstats {

/// Reproducible random stream keyed by (master_seed, stream_index).
///
/// The engine is std::mt19937_64 seeded through std::seed_seq from the four
/// 32-bit halves of the key, so the draw sequence is fixed by the C++
/// standard and does not depend on the library vendor. Uniform variates are
/// built directly from the top 53 bits; std::uniform_real_distribution is
/// avoided because its output is implementation-defined.
///
/// Streams are cheap to create and are meant to be owned by a single worker.
class SampleStream {
public:
    SampleStream(std::uint64_t master_seed, std::uint64_t stream_index);

    [[nodiscard]] std::uint64_t master_seed() const noexcept { return master_seed_; }
    [[nodiscard]] std::uint64_t stream_index() const noexcept { return stream_index_; }

    /// Raw 64-bit output.
    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on the open interval (0,1); never returns 0 or 1.
    double uniform_open();

    /// Standard exponential by inversion, -log(U).
    double standard_exponential();

    /// Uniform integer on [0, bound) without modulo bias.
    std::uint64_t uniform_index(std::uint64_t bound);

    /// A new independent stream derived from this stream's key.
    [[nodiscard]] SampleStream child(std::uint64_t sub_index) const;

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_index_;
    std::mt19937_64 engine_;
};

}  // namespace orderstats
