// Copyright 2026 The qcap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QCAP_RANDOM_HPP
#define QCAP_RANDOM_HPP

#include <cstdint>
#include <random>

#include "qcap/numerics.hpp"

namespace qcap {

using Rng = std::mt19937_64;

/// Deterministic child seed for stream `index` of a master seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Matrix with i.i.d. standard complex Gaussian entries.
ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng);

/// Haar-distributed d x d unitary (QR of a Ginibre matrix with phase fix).
ComplexMatrix haar_unitary(std::size_t d, Rng& rng);

/// Haar-random isometry of shape rows x cols (rows >= cols).
ComplexMatrix haar_isometry(std::size_t rows, std::size_t cols, Rng& rng);

/// Uniformly random unit vector.
ComplexVector random_pure_state(std::size_t d, Rng& rng);

/// Density matrix GG^dag / Tr(GG^dag) with G a d x rank Ginibre matrix.
/// rank = 0 means full rank.
ComplexMatrix random_density_matrix(std::size_t d, Rng& rng, std::size_t rank = 0);

/// Uniform point on the probability simplex of size n.
RealVector random_simplex(std::size_t n, Rng& rng);

}  // namespace qcap

#endif  // QCAP_RANDOM_HPP
