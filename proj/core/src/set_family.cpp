// Copyright 2026 the qk developers. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "qk/set_family.hpp"

#include <algorithm>

namespace qk
{

namespace
{

// Canonicalize in place: sort by (cardinality, lex) and drop duplicates.
void
canonicalize(std::vector<uint64_t>& masks)
{
    std::sort(masks.begin(), masks.end(), setOrderLess);
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
}

bool
computeAntichain(std::vector<uint64_t> const& masks)
{
    // Masks are sorted by cardinality, so containment can only point forward.
    for (size_t i = 0; i < masks.size(); ++i)
    {
        for (size_t j = i + 1; j < masks.size(); ++j)
        {
            if ((masks[i] & ~masks[j]) == 0)
            {
                return false;
            }
        }
    }
    return true;
}

} // namespace

SetFamily
SetFamily::of(Ground const& g, std::vector<ProcessSet> const& sets)
{
    std::vector<uint64_t> masks;
    masks.reserve(sets.size());
    for (auto const& s : sets)
    {
        if (!(s.ground() == g))
        {
            throw InputError("ground-mismatch",
                             "family member ranges over a different ground");
        }
        masks.push_back(s.mask());
    }
    return fromMasks(g, std::move(masks));
}

SetFamily
SetFamily::fromMasks(Ground const& g, std::vector<uint64_t> masks)
{
    uint64_t full = g.fullMask();
    for (uint64_t m : masks)
    {
        if ((m & ~full) != 0)
        {
            throw InputError("mask-out-of-range",
                             "family member uses bits beyond the ground size");
        }
    }
    canonicalize(masks);
    bool antichain = computeAntichain(masks);
    return SetFamily(g, std::move(masks), antichain);
}

ProcessSet
SetFamily::at(size_t i) const
{
    return ProcessSet::fromMask(mGround, mMasks[i]);
}

bool
SetFamily::containsSet(uint64_t mask) const
{
    auto it =
        std::lower_bound(mMasks.begin(), mMasks.end(), mask, setOrderLess);
    return it != mMasks.end() && *it == mask;
}

SetFamily
SetFamily::regrounded(Ground const& g2) const
{
    std::vector<uint64_t> masks;
    masks.reserve(mMasks.size());
    for (uint64_t m : mMasks)
    {
        masks.push_back(
            ProcessSet::fromMask(mGround, m).regrounded(g2).mask());
    }
    return fromMasks(g2, std::move(masks));
}

SetFamily
SetFamily::restrictedTo(Ground const& g2) const
{
    std::vector<uint64_t> masks;
    masks.reserve(mMasks.size());
    for (uint64_t m : mMasks)
    {
        masks.push_back(
            ProcessSet::fromMask(mGround, m).restrictedTo(g2).mask());
    }
    return fromMasks(g2, std::move(masks));
}

bool
SetFamily::operator==(SetFamily const& other) const
{
    return mGround == other.mGround && mMasks == other.mMasks;
}

SetFamily
maximalize(SetFamily const& family)
{
    auto const& masks = family.masks();
    std::vector<uint64_t> keep;
    keep.reserve(masks.size());
    for (size_t i = 0; i < masks.size(); ++i)
    {
        bool dominated = false;
        // Strict supersets have strictly larger cardinality, hence sort later.
        for (size_t j = masks.size(); j-- > i + 1;)
        {
            if ((masks[i] & ~masks[j]) == 0)
            {
                dominated = true;
                break;
            }
        }
        if (!dominated)
        {
            keep.push_back(masks[i]);
        }
    }
    return SetFamily::fromMasks(family.ground(), std::move(keep));
}

bool
inClosure(ProcessSet const& s, SetFamily const& family)
{
    if (!(s.ground() == family.ground()))
    {
        throw InputError("ground-mismatch",
                         "closure membership requires the family's ground");
    }
    for (uint64_t m : family.masks())
    {
        if ((s.mask() & ~m) == 0)
        {
            return true;
        }
    }
    return false;
}

SetFamily
closureIntersectionCandidates(SetFamily const& a, SetFamily const& b)
{
    if (!(a.ground() == b.ground()))
    {
        throw InputError("ground-mismatch",
                         "closure intersection requires a common ground");
    }
    std::vector<uint64_t> masks;
    masks.reserve(a.size() * b.size());
    for (uint64_t ma : a.masks())
    {
        for (uint64_t mb : b.masks())
        {
            masks.push_back(ma & mb);
        }
    }
    return maximalize(SetFamily::fromMasks(a.ground(), std::move(masks)));
}

SetFamily
complementFamily(SetFamily const& family)
{
    uint64_t full = family.ground().fullMask();
    std::vector<uint64_t> masks;
    masks.reserve(family.size());
    for (uint64_t m : family.masks())
    {
        masks.push_back(full & ~m);
    }
    return SetFamily::fromMasks(family.ground(), std::move(masks));
}

} // namespace qk
