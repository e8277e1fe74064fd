#pragma once

#include <cstdint>
#include <vector>

#include "mgw/oracles.hpp"

namespace mgw {

// Concrete catalog families. Each returns a group whose spec() is the
// canonical catalog text.

MarkedGroup free_group(int n);
MarkedGroup abelian_group(int n);
// Z/k marked by (1, 0).
MarkedGroup cyclic_group(long k);
// Integer Heisenberg group marked by x, y.
MarkedGroup heisenberg_group();
// B(m,n) = <a, t | t a^m t^-1 = a^n>, marked by (a, t).
MarkedGroup baumslag_solitar(long m, long n);
// Z/2 wr Z marked by (lamp toggle, shift).
MarkedGroup lamplighter_group();
// Finitely supported permutations of Z extended by the shift, marked by
// the transposition (0 1) and the shift.
MarkedGroup symshift_group();
// S_k x| Z_k marked by ((0 1), 0) and (id, 1).
MarkedGroup symshift_fin_group(long k);
// <g_1..g_n | relators>; decide() never certifies nontriviality.
MarkedGroup fp_group(int n, std::vector<Word> relators, std::uint64_t budget);

}  // namespace mgw
