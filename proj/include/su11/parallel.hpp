#pragma once

#include <cstdint>

namespace su11 {

enum class Exec { serial, parallel };

// honours SU11KIT_THREADS; returns the thread count in effect
int configure_threads();
int max_threads();

// counter-based generator: every (seed, stream, counter) triple maps to an
// independent 64-bit word, so parallel draws are reproducible
std::uint64_t splitmix64(std::uint64_t x);
double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);

}  // namespace su11
