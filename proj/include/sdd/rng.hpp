#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace sdd {

// Philox4x32-10 counter-based generator. Every (seed, point, walk, epoch)
// tuple names an independent stream, so Monte Carlo results are a pure
// function of those ids and never depend on thread scheduling.
struct Philox4x32 {
    static std::array<std::uint32_t, 4> block(std::uint32_t k0, std::uint32_t k1,
                                              std::array<std::uint32_t, 4> c) {
        constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
        constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
        for (int r = 0; r < 10; ++r) {
            const std::uint64_t p0 = static_cast<std::uint64_t>(M0) * c[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(M1) * c[2];
            c = {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k0,
                 static_cast<std::uint32_t>(p1),
                 static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k1,
                 static_cast<std::uint32_t>(p0)};
            k0 += W0;
            k1 += W1;
        }
        return c;
    }
};

class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t point_id, std::uint32_t walk,
                 std::uint32_t epoch = 0)
        : k0_(static_cast<std::uint32_t>(seed)),
          k1_(static_cast<std::uint32_t>(seed >> 32)),
          c1_(walk),
          c2_(static_cast<std::uint32_t>(point_id)),
          c3_(static_cast<std::uint32_t>((point_id >> 32) & 0xFFFFu) | (epoch << 16)) {}

    std::uint64_t next_u64() {
        if (have_ == 0) {
            out_ = Philox4x32::block(k0_, k1_, {block_++, c1_, c2_, c3_});
            have_ = 4;
        }
        const std::uint32_t lo = out_[4 - have_];
        --have_;
        if (have_ == 0) {
            out_ = Philox4x32::block(k0_, k1_, {block_++, c1_, c2_, c3_});
            have_ = 4;
        }
        const std::uint32_t hi = out_[4 - have_];
        --have_;
        return (static_cast<std::uint64_t>(hi) << 32) | lo;
    }

    // Uniform in [0, 1).
    double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1); safe inside log().
    double u01_open() {
        return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
    }

    // Box-Muller pair of independent standard normals.
    void normal_pair(double& z0, double& z1) {
        const double u1 = u01_open();
        const double u2 = u01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        z0 = r * std::cos(a);
        z1 = r * std::sin(a);
    }

    double exponential(double lambda) { return -std::log(u01_open()) / lambda; }

private:
    std::uint32_t k0_, k1_;
    std::uint32_t c1_, c2_, c3_;
    std::uint32_t block_ = 0;
    std::array<std::uint32_t, 4> out_{};
    int have_ = 0;
};

}  // namespace sdd
