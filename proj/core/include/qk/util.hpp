// Copyright 2026 the qk developers. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <string_view>

namespace qk
{

// Exact binomial coefficient; returns 0 when k > n. Callers stay within
// uint64 range at this toolkit's scale.
uint64_t binomial(uint64_t n, uint64_t k);

// FNV-1a, the digest used for trace hashing and schedule keys. Fixed
// algorithm (not std::hash) so output is identical across platforms.
inline constexpr uint64_t FNV_OFFSET = 0xcbf29ce484222325ull;

constexpr uint64_t
fnv1a(std::string_view bytes, uint64_t h = FNV_OFFSET)
{
    for (char c : bytes)
    {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

constexpr uint64_t
fnv1a(uint64_t value, uint64_t h = FNV_OFFSET)
{
    for (int i = 0; i < 8; ++i)
    {
        h ^= (value >> (8 * i)) & 0xff;
        h *= 0x100000001b3ull;
    }
    return h;
}

// Iterate all k-subsets of an n-bit universe in ascending numeric order
// (Gosper's hack). Returns false when exhausted.
bool nextKSubset(uint64_t& mask, uint64_t limit);

// First mask with k bits set, or nullopt when k > n.
uint64_t firstKSubset(unsigned k);

} // namespace qk
