// Copyright 2026 the qk developers. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "qk/util.hpp"

namespace qk
{

uint64_t
binomial(uint64_t n, uint64_t k)
{
    if (k > n)
    {
        return 0;
    }
    if (k > n - k)
    {
        k = n - k;
    }
    uint64_t result = 1;
    for (uint64_t i = 1; i <= k; ++i)
    {
        result = result * (n - k + i) / i;
    }
    return result;
}

bool
nextKSubset(uint64_t& mask, uint64_t limit)
{
    if (mask == 0)
    {
        return false;
    }
    uint64_t c = mask & (~mask + 1);
    uint64_t r = mask + c;
    mask = (((r ^ mask) >> 2) / c) | r;
    return mask < limit;
}

uint64_t
firstKSubset(unsigned k)
{
    return k == 0 ? 0 : (k >= 64 ? ~uint64_t{0} : (uint64_t{1} << k) - 1);
}

} // namespace qk
