#pragma once

#include <optional>
#include <random>

#include "elac/chain.hpp"

namespace elac {

// A random G2 chain of `segments` pieces: a fixed-alpha first segment, then append_g2 steps that
// keep turning the same way with the chord off the bisector. Empty when a draw is infeasible.
std::optional<Chain> random_g2_chain(std::mt19937_64& rng, int segments, const AlphaConfig& cfg = {});

}  // namespace elac
