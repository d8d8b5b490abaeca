#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "irsim/scenario.hpp"

namespace irsim {

using cplx = std::complex<double>;

// Counter-based substream generator: state is a splitmix64 walk whose start
// is hashed from (seed, stream_id). Identical (seed, stream_id) always
// yields the identical sample sequence, so one stream per Monte Carlo trial
// makes parallel and serial runs agree bit for bit.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    std::uint64_t next_u64() noexcept;

    // Uniform on [0, 1), 53-bit resolution.
    double next_unit() noexcept;

private:
    std::uint64_t state_;
    std::uint64_t seed_;
    std::uint64_t stream_id_;
};

// One draw of CN(0,1): real and imaginary parts are independent
// N(0, 1/2), so E|h|^2 = 1. Uses the Marsaglia polar method (two uniforms
// per accepted pair, no trig).
cplx sample_cn01(RngStream& rng);

// All fading quantities for one trial. g0/g1/g2 have length N.
struct ChannelRealization {
    std::vector<cplx> g0;  // source -> IRS
    std::vector<cplx> g1;  // IRS -> U1
    std::vector<cplx> g2;  // IRS -> U2
    cplx h2{};             // source -> U2 direct
    cplx h12{};            // U2 -> U1
};

// Fading gains stay unit-variance here; geometry enters only in the SINR
// computation. Draw order is g0, g1, g2, h2, h12.
void draw_realization(const ScenarioConfig& cfg, RngStream& rng,
                      ChannelRealization& out);
ChannelRealization draw_realization(const ScenarioConfig& cfg, RngStream& rng);

}  // namespace irsim
