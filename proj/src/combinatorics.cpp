#include "phicong/combinatorics.hpp"

#include <bit>
#include <stdexcept>

namespace phicong {

BinaryProfile binary_profile(std::uint64_t m, unsigned alpha)
{
    if (m == 0) {
        throw std::invalid_argument("binary_profile requires m >= 1");
    }
    BinaryProfile p;
    p.m = m;
    p.alpha = alpha;
    p.digits.resize(alpha, 0);
    for (unsigned i = 1; i <= alpha && i <= 64; ++i) {
        p.digits[i - 1] = static_cast<std::uint8_t>((m >> (i - 1)) & 1U);
    }
    for (unsigned i = 1; i <= alpha; ++i) {
        if (p.digits[i - 1] != 0) {
            p.i_prime = i;
            break;
        }
    }
    if (p.i_prime) {
        for (unsigned i = *p.i_prime + 1; i <= alpha; ++i) {
            p.zeros_above += p.digits[i - 1] == 0 ? 1U : 0U;
        }
    }
    return p;
}

TwoFactorization factor_two(std::uint64_t n)
{
    if (n == 0) {
        throw std::invalid_argument("factor_two requires n >= 1");
    }
    const auto alpha = static_cast<unsigned>(std::countr_zero(n));
    return {alpha, n >> alpha};
}

std::uint64_t f_iter(std::uint64_t ell, unsigned k)
{
    if (ell == 0) {
        throw std::invalid_argument("f_iter requires ell >= 1");
    }
    for (unsigned i = 0; i < k && ell > 1; ++i) {
        ell = ell / 2 + (ell & 1U);
    }
    return ell;
}

unsigned gamma_binary(std::uint64_t m, unsigned alpha)
{
    if (m == 0) {
        throw std::invalid_argument("gamma requires m >= 1");
    }
    // Digits above bit 64 are zero padding.
    const std::uint64_t window = alpha >= 64 ? m : (m & ((std::uint64_t{1} << alpha) - 1));
    if (window == 0) {
        return 0;
    }
    const auto i_prime = static_cast<unsigned>(std::countr_zero(window)) + 1;
    const std::uint64_t above = i_prime >= 64 ? 0 : (window >> i_prime);
    const unsigned ones_above = static_cast<unsigned>(std::popcount(above));
    return (alpha - i_prime - ones_above) + 1;
}

unsigned gamma_via_f(std::uint64_t m, unsigned alpha)
{
    if (m == 0) {
        throw std::invalid_argument("gamma requires m >= 1");
    }
    unsigned odd = 0;
    std::uint64_t v = m;
    for (unsigned k = 0; k < alpha; ++k) {
        odd += (v & 1U) != 0 ? 1U : 0U;
        v = f_iter(v, 1);
    }
    return odd;
}

int c_term(std::uint64_t m, std::uint64_t j, unsigned alpha)
{
    if (alpha == 0) {
        throw std::invalid_argument("c_term requires alpha >= 1");
    }
    const std::uint64_t s = f_iter(m, alpha - 1);
    return (s % 2 == 0 && s != 2 * j) ? -1 : 0;
}

std::int64_t better_bound(std::uint64_t m, std::uint64_t j, unsigned alpha)
{
    if (alpha == 0) {
        throw std::invalid_argument("better_bound requires alpha >= 1");
    }
    const auto fa = static_cast<std::int64_t>(f_iter(m, alpha));
    return 8 * (static_cast<std::int64_t>(j) - fa) + 3 * static_cast<std::int64_t>(gamma_binary(m, alpha)) +
           c_term(m, j, alpha);
}

std::int64_t lehner_bound(std::uint64_t m, std::uint64_t j, unsigned alpha)
{
    if (alpha == 0) {
        throw std::invalid_argument("lehner_bound requires alpha >= 1");
    }
    const auto mm = static_cast<std::int64_t>(m);
    return 8 * (static_cast<std::int64_t>(j) - 1) + 3 * (static_cast<std::int64_t>(alpha) - mm + 1) + (1 - mm);
}

int base_case_c(std::uint64_t m, std::uint64_t j)
{
    if (m % 2 == 1) {
        return 3;
    }
    return m == 2 * j ? 0 : -1;
}

CongruenceCase make_congruence_case(std::uint64_t m, std::uint64_t n)
{
    const auto [alpha, n_prime] = factor_two(n);
    const unsigned g = gamma_binary(m, alpha);
    return {m, n, alpha, n_prime, g, 3 * g};
}

std::uint64_t isqrt(std::uint64_t n)
{
    if (n < 2) {
        return n;
    }
    // Newton from above: x_{k+1} = (x_k + n / x_k) / 2 decreases to floor(sqrt(n)).
    std::uint64_t x = std::uint64_t{1} << ((std::bit_width(n) + 1) / 2);
    while (true) {
        const std::uint64_t y = (x + n / x) / 2;
        if (y >= x) {
            return x;
        }
        x = y;
    }
}

bool is_odd_square(std::uint64_t n)
{
    if (n % 2 == 0) {
        return false;
    }
    const std::uint64_t r = isqrt(n);
    return r * r == n;
}

bool is_triangular(std::uint64_t n)
{
    // n = k(k+1)/2  <=>  8n + 1 is a square.
    if (n > (UINT64_MAX - 1) / 8) {
        throw std::overflow_error("is_triangular argument too large");
    }
    const std::uint64_t d = 8 * n + 1;
    const std::uint64_t r = isqrt(d);
    return r * r == d;
}

std::vector<Integer> t_counts(std::uint64_t n_max)
{
    const auto n = static_cast<std::size_t>(n_max) + 1;
    std::vector<Integer> c(n);
    c[0] = 1;
    for (std::size_t k = 1; k < n; ++k) {
        // multiply by 1 + x^k + x^{2k} + x^{3k}, top-down so each read is of the old value
        for (std::size_t e = n - 1; e >= k; --e) {
            for (std::size_t i = 1; i <= 3 && i * k <= e; ++i) {
                c[e] += c[e - i * k];
            }
        }
    }
    return c;
}

Integer t_count(std::uint64_t n)
{
    return t_counts(n).back();
}

}  // namespace phicong
