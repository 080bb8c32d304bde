#pragma once

#include <cstdint>
#include <random>

namespace rissec {

/// Seeded, splittable random stream.
///
/// Backed by std::mt19937_64, whose output sequence is fixed by the standard,
/// and seeded through std::seed_seq (also fully specified), so draws are
/// reproducible across platforms. Uniforms are built from raw bits rather
/// than std::uniform_real_distribution, whose algorithm is unspecified.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

    /// Independent child stream. Depends only on (seed, stream_id, index).
    RngStream split(std::uint64_t index) const;

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on the open interval (0, 1), 53 random bits.
    double uniform() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
};

}  // namespace rissec
