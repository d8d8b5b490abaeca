#pragma once

#include <span>
#include <vector>

#include "irsim/channel.hpp"

namespace irsim {

// Reflection angles, one per element, each in [0, 2*pi).
using PhaseShiftVector = std::vector<double>;

// The effective scalar channel xi = sum_n e^{-j theta_n} g0_n gi_n and its
// squared magnitude. The second factor enters unconjugated; relabeling a
// circularly symmetric CN(0,1) entry by its conjugate changes no
// distribution, so this convention is equivalent to the Hermitian form.
struct EffectiveGain {
    cplx xi{};
    double gain_sq = 0.0;
};

// Throws std::invalid_argument on length mismatch.
EffectiveGain effective_gain(std::span<const cplx> g0, std::span<const cplx> gi,
                             std::span<const double> theta);

// Phases matched to the element-wise products, so every summand of xi is
// real nonnegative and xi = sum_n |g0_n gi_n|. A zero product maps to
// angle 0.
PhaseShiftVector coherent_phases(std::span<const cplx> g0,
                                 std::span<const cplx> gi);

// i.i.d. uniform angles on [0, 2*pi).
void random_phases(std::size_t n, RngStream& rng, PhaseShiftVector& out);
PhaseShiftVector random_phases(std::size_t n, RngStream& rng);

// Draws q independent random phase vectors and returns the one maximizing
// |xi| for the (g0, g1) pair; ties keep the earliest candidate. Candidates
// are drawn in order, so runs with smaller q see a prefix of the same pool.
PhaseShiftVector select_phases(std::span<const cplx> g0,
                               std::span<const cplx> g1, std::size_t q,
                               RngStream& rng);

// Allocation-free variant for hot loops; also reports the winning gain.
// `best` receives the selected vector, `scratch` is candidate storage.
EffectiveGain select_phases(std::span<const cplx> g0, std::span<const cplx> g1,
                            std::size_t q, RngStream& rng,
                            PhaseShiftVector& best, PhaseShiftVector& scratch);

}  // namespace irsim
