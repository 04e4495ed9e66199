#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "phicong/integer.hpp"

namespace phicong {

// Rightmost `alpha` binary digits of m and the quantities gamma is built from.
struct BinaryProfile {
    std::uint64_t m = 0;
    unsigned alpha = 0;
    // digits[i - 1] = a_i for 1 <= i <= alpha (a_1 is the least significant digit).
    std::vector<std::uint8_t> digits;
    // Index of the rightmost 1 inside the window, 1-based.
    std::optional<unsigned> i_prime;
    // Zero digits a_i with i_prime < i <= alpha; meaningful only when i_prime is set.
    unsigned zeros_above = 0;
};

BinaryProfile binary_profile(std::uint64_t m, unsigned alpha);

// n = 2^alpha n' with n' odd.
struct TwoFactorization {
    unsigned alpha = 0;
    std::uint64_t n_prime = 1;
};

TwoFactorization factor_two(std::uint64_t n);

// ell -> ceil(ell / 2), applied k times.
std::uint64_t f_iter(std::uint64_t ell, unsigned k);

// gamma(m, alpha) from the binary window: zeros above the rightmost 1, plus one; 0 if no 1.
unsigned gamma_binary(std::uint64_t m, unsigned alpha);
// gamma(m, alpha) as the number of odd values among m, f(m), ..., f^{alpha-1}(m).
unsigned gamma_via_f(std::uint64_t m, unsigned alpha);

// -1 if f^{alpha-1}(m) is even and differs from 2j, else 0. alpha >= 1.
int c_term(std::uint64_t m, std::uint64_t j, unsigned alpha);

// 8(j - f^alpha(m)) + 3 gamma(m, alpha) + c(m, j, alpha)
std::int64_t better_bound(std::uint64_t m, std::uint64_t j, unsigned alpha);
// 8(j - 1) + 3(alpha - m + 1) + (1 - m); can be negative.
std::int64_t lehner_bound(std::uint64_t m, std::uint64_t j, unsigned alpha);

// The alpha = 1 base-case correction: 3 if m odd, 0 if m = 2j, -1 otherwise.
int base_case_c(std::uint64_t m, std::uint64_t j);

// A point (m, n) of the main congruence with its modulus exponent 3 gamma(m, alpha).
struct CongruenceCase {
    std::uint64_t m = 0;
    std::uint64_t n = 0;
    unsigned alpha = 0;
    std::uint64_t n_prime = 0;
    unsigned gamma = 0;
    unsigned modulus_exponent = 0;
};

CongruenceCase make_congruence_case(std::uint64_t m, std::uint64_t n);

std::uint64_t isqrt(std::uint64_t n);
bool is_odd_square(std::uint64_t n);
bool is_triangular(std::uint64_t n);

// Partitions of n with every part repeated at most 3 times.
Integer t_count(std::uint64_t n);
// t_count(0..n_max).
std::vector<Integer> t_counts(std::uint64_t n_max);

}  // namespace phicong
