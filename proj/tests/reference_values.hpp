#pragma once

#include <array>
#include <cstdint>
#include <utility>

namespace reference {

// Every odd a(1, n) with n <= 225.
inline constexpr std::array<std::pair<std::uint64_t, const char*>, 8> kOddCoefficients{{
    {1, "1"},
    {9, "10400997"},
    {25, "254038914924791"},
    {49, "8032568516459357451913"},
    {81, "288274504516836871723618295721"},
    {121, "11156646861439805613118172199024038253"},
    {169, "453988290543887189391963063089337222684846687"},
    {225, "19146547947132951990683661128349583597266368489785587"},
}};

// gamma(40, alpha) for alpha = 0..9
inline constexpr std::array<unsigned, 10> kGamma40{0, 0, 0, 0, 1, 2, 2, 3, 4, 5};

}  // namespace reference
