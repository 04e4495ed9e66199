#pragma once

// Test-only reference computations. Nothing here calls into the library's series
// arithmetic, so agreement with it is evidence rather than tautology.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace oracle {

// Coefficients c[e] of q prod_{n>=1} (1 + q^n)^24 for e < precision, by 24 separate
// multiplications with (1 + q^n) per n.
inline std::vector<mpz_class> phi_coeffs(std::size_t precision)
{
    std::vector<mpz_class> body(precision, 0);
    body[0] = 1;
    for (std::size_t n = 1; n < precision; ++n) {
        for (int rep = 0; rep < 24; ++rep) {
            for (std::size_t e = precision - 1; e >= n; --e) {
                body[e] += body[e - n];
            }
        }
    }
    std::vector<mpz_class> out(precision, 0);
    for (std::size_t e = 1; e < precision; ++e) {
        out[e] = body[e - 1];
    }
    return out;
}

inline std::vector<mpz_class> naive_mul(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                                        std::size_t limit)
{
    std::vector<mpz_class> r(limit, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size() && i + j < limit; ++j) {
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

// Number of partitions of n in which every part appears at most 3 times, by enumeration
// over the multiplicity of each part size from the largest down.
inline std::uint64_t t_count_enumerate(unsigned n, unsigned largest)
{
    if (n == 0) {
        return 1;
    }
    if (largest == 0) {
        return 0;
    }
    std::uint64_t total = 0;
    for (unsigned mult = 0; mult <= 3 && mult * largest <= n; ++mult) {
        total += t_count_enumerate(n - mult * largest, largest - 1);
    }
    return total;
}

inline std::uint64_t t_count_enumerate(unsigned n)
{
    return t_count_enumerate(n, n);
}

// gamma(m, alpha) read off a printed binary string.
inline unsigned gamma_from_string(std::uint64_t m, unsigned alpha)
{
    std::string digits;  // digits[0] = a_1
    for (unsigned i = 0; i < alpha; ++i) {
        digits.push_back(i < 64 && ((m >> i) & 1U) != 0 ? '1' : '0');
    }
    const auto pos = digits.find('1');
    if (pos == std::string::npos) {
        return 0;
    }
    unsigned zeros = 0;
    for (std::size_t i = pos + 1; i < digits.size(); ++i) {
        zeros += digits[i] == '0' ? 1U : 0U;
    }
    return zeros + 1;
}

// Random signed integers of up to `bits` bits, zero with probability ~1/8.
class IntegerGen {
public:
    explicit IntegerGen(std::uint64_t seed) : rng_(seed), gmp_(gmp_randinit_default)
    {
        gmp_.seed(static_cast<unsigned long>(seed));
    }

    mpz_class next(unsigned max_bits)
    {
        if (rng_() % 8 == 0) {
            return 0;
        }
        const unsigned bits = 1 + static_cast<unsigned>(rng_() % max_bits);
        mpz_class x = gmp_.get_z_bits(bits);
        if (rng_() % 2 == 0) {
            x = -x;
        }
        return x;
    }

    std::vector<mpz_class> vector(std::size_t n, unsigned max_bits)
    {
        std::vector<mpz_class> v(n);
        for (auto& x : v) {
            x = next(max_bits);
        }
        return v;
    }

    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi)
    {
        return lo + rng_() % (hi - lo + 1);
    }

private:
    std::mt19937_64 rng_;
    gmp_randclass gmp_;
};

}  // namespace oracle
