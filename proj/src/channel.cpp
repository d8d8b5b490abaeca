#include "irsim/channel.hpp"

#include <cmath>

namespace irsim {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : state_(mix64(seed + kGolden) ^ mix64(stream_id * kGolden + 0xD1B54A32D192ED03ULL)),
      seed_(seed),
      stream_id_(stream_id) {}

std::uint64_t RngStream::next_u64() noexcept {
    state_ += kGolden;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double RngStream::next_unit() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

cplx sample_cn01(RngStream& rng) {
    double u, v, s;
    do {
        u = 2.0 * rng.next_unit() - 1.0;
        v = 2.0 * rng.next_unit() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    // Polar method scaled so each component has variance 1/2.
    const double f = std::sqrt(-std::log(s) / s);
    return {u * f, v * f};
}

void draw_realization(const ScenarioConfig& cfg, RngStream& rng,
                      ChannelRealization& out) {
    const std::size_t n = static_cast<std::size_t>(cfg.N);
    out.g0.resize(n);
    out.g1.resize(n);
    out.g2.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.g0[i] = sample_cn01(rng);
    for (std::size_t i = 0; i < n; ++i) out.g1[i] = sample_cn01(rng);
    for (std::size_t i = 0; i < n; ++i) out.g2[i] = sample_cn01(rng);
    out.h2 = sample_cn01(rng);
    out.h12 = sample_cn01(rng);
}

ChannelRealization draw_realization(const ScenarioConfig& cfg, RngStream& rng) {
    ChannelRealization out;
    draw_realization(cfg, rng, out);
    return out;
}

}  // namespace irsim
