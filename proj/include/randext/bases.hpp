#pragma once

#include "randext/core.hpp"

namespace randext {

// Pairwise map 01 -> 0, 10 -> 1, 00/11 -> nothing; an odd trailing symbol is
// dropped.  Input must be binary.
SymbolString von_neumann(const SymbolString& x);

// Exact binomial coefficient; needs 0 <= k <= n <= 64.
uint64_t binomial_u64(int n, int k);

// Lexicographic rank of a binary string within its composition class.
uint64_t class_rank(const SymbolString& x);

// Canonical batch map on a binary block of length 2..24: the block's class,
// in lexicographic order, splits into maximal power-of-two chunks (largest
// first); the block's chunk-local rank is emitted in binary, big-endian, with
// the chunk's bit width.  A width-0 chunk emits nothing.
SymbolString elias(const SymbolString& x);

bool is_prime(int m);

// Lexicographically minimal rotation representatives of all non-constant
// binary strings of length m, sorted.  For prime m every orbit has exactly m
// elements and there are (2^m - 2)/m of them.
std::vector<SymbolString> rotation_orbit_reps(int m);

// Number of right cyclic shifts (last symbol to front) taking the block to
// its orbit's lexicographic minimum; -1 for constant blocks (nothing
// emitted).  The block length must be prime.
int dijkstra_base(const SymbolString& x);

}  // namespace randext
