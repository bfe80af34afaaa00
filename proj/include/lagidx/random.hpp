#pragma once

#include <cstdint>
#include <random>

#include "lagidx/hermitian.hpp"

namespace lagidx {

using Rng = std::mt19937_64;

/// Derives an independent seed for stream `stream`, item `index` from a
/// master seed by two rounds of splitmix64. Used for per-trial seeding so that
/// results do not depend on scheduling order.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index = 0);

/// Stable 64-bit hash of a label, for turning suite names into streams.
std::uint64_t label_stream(const char* label);

/// Entries with independent standard normal real and imaginary parts.
Matrix random_complex(Index rows, Index cols, Rng& rng);

/// (G + G*) / 2 scaled by `scale`, G from random_complex.
HermitianMatrix random_hermitian(Index n, Rng& rng, double scale = 1.0);

/// Random Hermitian matrix whose kernel has exactly dimension `nullity`.
HermitianMatrix random_hermitian_with_nullity(Index n, Index nullity, Rng& rng);

/// Haar-like unitary from the QR factor of a Gaussian matrix.
Matrix random_unitary(Index n, Rng& rng);

/// Orthogonal projector onto a random subspace of dimension `rank`.
HermitianMatrix random_projector(Index n, Index rank, Rng& rng);

double uniform(Rng& rng, double lo, double hi);
int uniform_int(Rng& rng, int lo, int hi);

}  // namespace lagidx
