#pragma once

#include <cstdint>

namespace bass {

/// Counter-based random stream (Philox 4x32-10). A stream is identified by
/// (seed, stream id); draws advance a 128-bit counter, so streams with
/// distinct ids are statistically independent and any stream can be split
/// into child streams without coordination. Every stochastic operation in
/// the library takes one of these explicitly; there is no global RNG state.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

    /// Independent child stream; deterministic in (parent stream, child index).
    RngStream split(std::uint64_t child) const;

    std::uint64_t next_u64();

    /// Uniform on the open interval (0, 1).
    double uniform01();

    /// Standard normal (Box-Muller).
    double normal();

    /// Gamma(shape, rate) with mean shape/rate (Marsaglia-Tsang).
    double gamma(double shape, double rate);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_; }

private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t pos_ = 0;
    std::uint32_t buf_[4] = {0, 0, 0, 0};
    int buf_left_ = 0;
};

} // namespace bass
