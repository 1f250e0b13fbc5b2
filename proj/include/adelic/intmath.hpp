#pragma once

// Exact 64-bit integer helpers shared by the arithmetic modules.
// Products are formed in 128 bits; anything that would not fit back into
// int64_t raises ErrorKind::Overflow instead of wrapping.

#include <cstdint>
#include <utility>
#include <vector>

namespace adelic::intmath {

using i64 = std::int64_t;
using i128 = __int128;

i64 checked_add(i64 a, i64 b);
i64 checked_mul(i64 a, i64 b);
i64 checked_pow(i64 base, int exp);

/// Least nonnegative residue of a modulo m (m > 0).
i64 mod(i64 a, i64 m);
i64 mod(i128 a, i64 m);
i64 mulmod(i64 a, i64 b, i64 m);

/// Inverse of a modulo m; throws DivisionByZero when gcd(a, m) != 1.
i64 invmod(i64 a, i64 m);

bool is_prime(i64 n);

/// Prime factorization by trial division, ascending primes with multiplicities.
std::vector<std::pair<i64, int>> factor(i64 n);

/// Number of times p divides n (n != 0).
int valuation(i64 n, i64 p);

/// Removes every factor p from n, returning the cofactor.
i64 strip(i64 n, i64 p);

}  // namespace adelic::intmath
