// Copyright 2026 the qk developers. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "qk/purify.hpp"

#include "qk/conditions.hpp"
#include "qk/document.hpp"

#include <algorithm>
#include <bit>

namespace qk
{

namespace
{

// Maximal subsets of `start` that do not violate, found by breadth-first
// descent one removed element at a time. Subsets dominated by an already
// accepted set are pruned; the caller re-maximalizes across sources anyway.
void
acceptMaximalNonViolating(uint64_t start,
                          std::function<bool(uint64_t)> const& violates,
                          std::vector<uint64_t>& accepted)
{
    std::vector<uint64_t> level{start};
    std::vector<uint64_t> next;
    std::vector<uint64_t> seen;
    while (!level.empty())
    {
        next.clear();
        for (uint64_t m : level)
        {
            bool dominated = false;
            for (uint64_t a : accepted)
            {
                if ((m & ~a) == 0)
                {
                    dominated = true;
                    break;
                }
            }
            if (dominated)
            {
                continue;
            }
            if (!violates(m))
            {
                accepted.push_back(m);
                continue;
            }
            uint64_t rest = m;
            while (rest)
            {
                uint64_t bit = rest & (~rest + 1);
                rest ^= bit;
                uint64_t child = m & ~bit;
                if (std::find(seen.begin(), seen.end(), child) == seen.end())
                {
                    seen.push_back(child);
                    next.push_back(child);
                }
            }
        }
        level.swap(next);
    }
}

} // namespace

AsymmetricFailProneSystem
purify(AsymmetricFailProneSystem const& af, ToleratedSystem const& t)
{
    if (!(t.family().ground() == af.ground()))
    {
        throw InputError("ground-mismatch",
                         "the tolerated system must range over the same "
                         "ground as the asymmetric system");
    }
    auto preB3 = checkB3(af);
    if (!preB3.holds)
    {
        throw InputError("precondition-b3",
                         "purification requires the input to satisfy the "
                         "B3-condition",
                         renderWitness(*preB3.witness));
    }
    auto preQ3 = checkQ3(t.family());
    if (!preQ3.holds)
    {
        throw InputError("precondition-q3-tolerated",
                         "purification requires the tolerated system to "
                         "satisfy the Q3-condition",
                         renderWitness(*preQ3.witness));
    }

    uint64_t full = af.ground().fullMask();
    std::vector<FailProneSystem> purified;
    purified.reserve(af.size());
    for (size_t i = 0; i < af.size(); ++i)
    {
        auto const& fam = af.at(i).family();
        // Candidate common subsets are fixed against the ORIGINAL family, so
        // replacement subsets are judged exactly like their parents and one
        // pass suffices.
        SetFamily cands = closureIntersectionCandidates(fam, t.family());
        auto violates = [&](uint64_t fi) {
            for (uint64_t tj : t.family().masks())
            {
                uint64_t fitj = fi | tj;
                for (uint64_t fij : cands.masks())
                {
                    if ((fitj | fij) == full)
                    {
                        return true;
                    }
                }
            }
            return false;
        };
        std::vector<uint64_t> accepted;
        for (uint64_t fi : fam.masks())
        {
            acceptMaximalNonViolating(fi, violates, accepted);
        }
        purified.emplace_back(
            maximalize(SetFamily::fromMasks(af.ground(), std::move(accepted))));
    }
    return AsymmetricFailProneSystem(af.ground(), std::move(purified));
}

} // namespace qk
