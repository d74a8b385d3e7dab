#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

// Word-sized integer helpers: modular arithmetic, primality and
// factorization of the group orders that show up in field computations.
namespace fflab::nt {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 base, u64 exp, u64 m);

/// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(u64 n);

/// Prime factorization as (prime, exponent) pairs sorted by prime.
std::vector<std::pair<u64, unsigned>> factor(u64 n);

/// Distinct prime divisors, ascending.
std::vector<u64> prime_divisors(u64 n);

/// Returns (p, k) with n = p^k, p prime, or nullopt if n is not a prime power.
std::optional<std::pair<u64, unsigned>> prime_power(u64 n);

/// n^e, throwing TooLarge on overflow.
u64 checked_pow(u64 n, unsigned e);

}  // namespace fflab::nt
