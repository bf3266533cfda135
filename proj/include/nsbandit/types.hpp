#pragma once

#include <cstddef>
#include <cstdint>

namespace nsb {

/// Zero-based arm identifier.
using ArmId = std::size_t;

/// One-based time step of the game.
using Step = std::uint64_t;

}  // namespace nsb
