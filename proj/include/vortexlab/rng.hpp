#ifndef VORTEXLAB_RNG_HPP
#define VORTEXLAB_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "vortexlab/vec2.hpp"

namespace vortexlab {

// Philox-4x32-10 counter-based generator (Salmon et al., SC 2011).
// A stream is the pure function block(key, counter); replicas get disjoint
// streams by placing the stream id in the upper counter words, so draw k of
// stream i is identical no matter which thread produces it.
namespace philox {

constexpr std::uint32_t kWeylA = 0x9E3779B9u;
constexpr std::uint32_t kWeylB = 0xBB67AE85u;
constexpr std::uint32_t kMultA = 0xD2511F53u;
constexpr std::uint32_t kMultB = 0xCD9E8D57u;

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

inline void round_once(Counter& c, const Key& k) {
    const std::uint64_t p0 = std::uint64_t(kMultA) * c[0];
    const std::uint64_t p1 = std::uint64_t(kMultB) * c[2];
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

inline Counter block(Counter c, Key k) {
    for (int r = 0; r < 10; ++r) {
        if (r > 0) {
            k[0] += kWeylA;
            k[1] += kWeylB;
        }
        round_once(c, k);
    }
    return c;
}

} // namespace philox

/// One reproducible random stream, identified by (master_seed, stream_id).
/// The stream id lives in the upper counter words and the seed in the key,
/// so distinct ids index statistically independent sequences.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
        : key_{static_cast<std::uint32_t>(master_seed),
               static_cast<std::uint32_t>(master_seed >> 32)},
          hi_{static_cast<std::uint32_t>(stream_id),
              static_cast<std::uint32_t>(stream_id >> 32)} {}

    /// Uniform on (0, 1), open at both ends.
    double uniform() {
        if (!have_spare_u32_) {
            const auto b = next_block();
            spare_[0] = b[2];
            spare_[1] = b[3];
            have_spare_u32_ = true;
            return to_unit(b[0], b[1]);
        }
        have_spare_u32_ = false;
        return to_unit(spare_[0], spare_[1]);
    }

    std::uint64_t next_u64() {
        if (!have_spare_u32_) {
            const auto b = next_block();
            spare_[0] = b[2];
            spare_[1] = b[3];
            have_spare_u32_ = true;
            return (std::uint64_t(b[0]) << 32) | b[1];
        }
        have_spare_u32_ = false;
        return (std::uint64_t(spare_[0]) << 32) | spare_[1];
    }

    /// Uniform index in [0, n).
    std::size_t uniform_index(std::size_t n) {
        return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
    }

    /// Pair of independent standard Gaussians (Box-Muller), one block each.
    Vec2 normal_pair() {
        const auto b = next_block();
        const double u1 = to_unit(b[0], b[1]);
        const double u2 = to_unit(b[2], b[3]);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(th), r * std::sin(th)};
    }

    double normal() {
        if (have_spare_normal_) {
            have_spare_normal_ = false;
            return spare_normal_;
        }
        const Vec2 g = normal_pair();
        spare_normal_ = g.y;
        have_spare_normal_ = true;
        return g.x;
    }

    philox::Counter next_block() {
        const philox::Counter c{static_cast<std::uint32_t>(pos_),
                                static_cast<std::uint32_t>(pos_ >> 32), hi_[0],
                                hi_[1]};
        ++pos_;
        return philox::block(c, key_);
    }

private:
    static double to_unit(std::uint32_t hi, std::uint32_t lo) {
        const std::uint64_t bits = (std::uint64_t(hi) << 32) | lo;
        return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
    }

    philox::Key key_;
    std::array<std::uint32_t, 2> hi_;
    std::uint64_t pos_ = 0;
    std::array<std::uint32_t, 2> spare_{};
    bool have_spare_u32_ = false;
    double spare_normal_ = 0.0;
    bool have_spare_normal_ = false;
};

/// Independent reproducible streams for `replica_count` replicas of one
/// master seed; stream i is RngStream(master_seed, i) regardless of which
/// worker asks for it.
inline std::vector<RngStream> make_streams(std::uint64_t master_seed,
                                           std::size_t replica_count) {
    if (replica_count < 1) throw std::invalid_argument("make_streams: replica_count must be >= 1");
    std::vector<RngStream> streams;
    streams.reserve(replica_count);
    for (std::size_t i = 0; i < replica_count; ++i) streams.emplace_back(master_seed, i);
    return streams;
}

} // namespace vortexlab

#endif
