// Copyright 2026 the qk developers. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "qk/process_set.hpp"

#include <cstdint>
#include <vector>

namespace qk
{

// A family of process sets over one ground. Construction deduplicates and
// sorts into the canonical (cardinality, lexicographic) order, so iteration,
// equality, and rendering are deterministic. Subset closures (A*) are never
// materialized anywhere in this toolkit; quantification over a closure always
// goes through maximal elements plus subset tests, which is sound because
// every condition checked here is monotone under set inclusion.
class SetFamily
{
  public:
    SetFamily() = default;

    static SetFamily of(Ground const& g, std::vector<ProcessSet> const& sets);
    static SetFamily fromMasks(Ground const& g, std::vector<uint64_t> masks);

    Ground const&
    ground() const
    {
        return mGround;
    }

    size_t
    size() const
    {
        return mMasks.size();
    }

    bool
    empty() const
    {
        return mMasks.empty();
    }

    std::vector<uint64_t> const&
    masks() const
    {
        return mMasks;
    }

    uint64_t
    maskAt(size_t i) const
    {
        return mMasks[i];
    }

    ProcessSet at(size_t i) const;

    bool containsSet(uint64_t mask) const;

    // No member contains another.
    bool
    isAntichain() const
    {
        return mAntichain;
    }

    // Every member mapped onto the target universe. `regrounded` requires all
    // members to embed; `restrictedTo` intersects each member with `g2`
    // (restriction families may collapse duplicates).
    SetFamily regrounded(Ground const& g2) const;
    SetFamily restrictedTo(Ground const& g2) const;

    bool operator==(SetFamily const& other) const;

  private:
    SetFamily(Ground g, std::vector<uint64_t> masks, bool antichain)
        : mGround(std::move(g)), mMasks(std::move(masks)), mAntichain(antichain)
    {
    }

    Ground mGround;
    std::vector<uint64_t> mMasks; // canonical order, no duplicates
    bool mAntichain = true;
};

// The subfamily of inclusion-maximal sets. Idempotent; the subset closure of
// the output equals the subset closure of the input.
SetFamily maximalize(SetFamily const& family);

// True iff s is a subset of some member, i.e. s lies in the family's subset
// closure. Throws InputError when s ranges over a different ground.
bool inClosure(ProcessSet const& s, SetFamily const& family);

// Maximal elements of a* .. b* intersection: maximalize({A .. B}). The subset
// closure of the result equals the intersection of the two closures, which is
// how pairwise common fail-prone subsets are quantified everywhere.
SetFamily closureIntersectionCandidates(SetFamily const& a, SetFamily const& b);

// The bijective complement {ground \ A}. An involution on deduplicated
// families.
SetFamily complementFamily(SetFamily const& family);

} // namespace qk
