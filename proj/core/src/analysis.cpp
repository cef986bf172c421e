// Copyright 2026 the qk developers. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "qk/analysis.hpp"

#include "qk/util.hpp"

#include <bit>
#include <functional>

namespace qk
{

namespace
{

// Exhaustive subset enumeration below; anything bigger than this is outside
// the toolkit's desk scale and deserves an error instead of a hang.
constexpr size_t EXHAUSTIVE_GROUND_LIMIT = 20;

void
requireExhaustiveScale(Ground const& g, char const* what)
{
    if (g.size() > EXHAUSTIVE_GROUND_LIMIT)
    {
        throw InputError("ground-too-large-for-enumeration",
                         std::string(what) + " enumerates subsets and "
                                             "supports at most " +
                             std::to_string(EXHAUSTIVE_GROUND_LIMIT) +
                             " processes");
    }
}

void
requireSubsetOfGround(ProcessSet const& s, Ground const& g, char const* what)
{
    if (!(s.ground() == g))
    {
        throw InputError("ground-mismatch", std::string(what) +
                                                " requires a set over the "
                                                "system's ground");
    }
}

// Minimal subsets of `g`'s ground satisfying pred, by ascending-cardinality
// scan with superset pruning: any candidate containing an already-found
// minimal set cannot itself be minimal.
std::vector<uint64_t>
minimalSatisfyingMasks(Ground const& g,
                       std::function<bool(uint64_t)> const& pred)
{
    size_t n = g.size();
    uint64_t limit = uint64_t{1} << n;
    std::vector<uint64_t> found;
    for (unsigned k = 1; k <= n; ++k)
    {
        uint64_t mask = firstKSubset(k);
        bool more = mask != 0 && mask < limit;
        while (more)
        {
            bool dominated = false;
            for (uint64_t f : found)
            {
                if ((f & ~mask) == 0)
                {
                    dominated = true;
                    break;
                }
            }
            if (!dominated && pred(mask))
            {
                found.push_back(mask);
            }
            more = nextKSubset(mask, limit);
        }
    }
    return found;
}

} // namespace

std::string_view
roleName(ProcessRole role)
{
    switch (role)
    {
    case ProcessRole::Faulty:
        return "faulty";
    case ProcessRole::Naive:
        return "naive";
    case ProcessRole::Wise:
        return "wise";
    }
    return "unknown";
}

Classification::Classification(Ground ground, std::vector<ProcessRole> roles)
    : mGround(std::move(ground)), mRoles(std::move(roles))
{
    if (mRoles.size() != mGround.size())
    {
        throw InputError("per-process-mismatch",
                         "classification needs one role per process");
    }
}

ProcessRole
Classification::of(std::string_view name) const
{
    auto idx = mGround.indexOf(name);
    if (!idx)
    {
        throw InputError("unknown-process", "process '" + std::string(name) +
                                                "' is not in the ground set");
    }
    return mRoles[*idx];
}

ProcessSet
Classification::wiseSet() const
{
    uint64_t mask = 0;
    for (size_t i = 0; i < mRoles.size(); ++i)
    {
        if (mRoles[i] == ProcessRole::Wise)
        {
            mask |= uint64_t{1} << i;
        }
    }
    return ProcessSet::fromMask(mGround, mask);
}

ToleratedSystem::ToleratedSystem(SetFamily family) : mFamily(std::move(family))
{
    if (!mFamily.isAntichain())
    {
        throw InputError("not-an-antichain",
                         "a tolerated system is an antichain of maximal "
                         "tolerated sets");
    }
}

Classification
classify(AsymmetricFailProneSystem const& af, ProcessSet const& actualFailed)
{
    requireSubsetOfGround(actualFailed, af.ground(), "classify");
    std::vector<ProcessRole> roles;
    roles.reserve(af.size());
    for (size_t i = 0; i < af.size(); ++i)
    {
        if ((actualFailed.mask() >> i) & 1)
        {
            roles.push_back(ProcessRole::Faulty);
        }
        else if (inClosure(actualFailed, af.at(i).family()))
        {
            roles.push_back(ProcessRole::Wise);
        }
        else
        {
            roles.push_back(ProcessRole::Naive);
        }
    }
    return Classification(af.ground(), std::move(roles));
}

bool
isClosed(AsymmetricQuorumSystem const& aq, ProcessSet const& g)
{
    requireSubsetOfGround(g, aq.ground(), "isClosed");
    uint64_t gm = g.mask();
    for (size_t i = 0; i < aq.size(); ++i)
    {
        if (!((gm >> i) & 1))
        {
            continue;
        }
        bool hasQuorum = false;
        for (uint64_t q : aq.at(i).family().masks())
        {
            if ((q & ~gm) == 0)
            {
                hasQuorum = true;
                break;
            }
        }
        if (!hasQuorum)
        {
            return false;
        }
    }
    return true;
}

ProcessSet
greatestClosedSubset(AsymmetricQuorumSystem const& aq, ProcessSet const& within)
{
    requireSubsetOfGround(within, aq.ground(), "greatestClosedSubset");
    uint64_t gm = within.mask();
    bool changed = true;
    while (changed)
    {
        changed = false;
        for (size_t i = 0; i < aq.size(); ++i)
        {
            if (!((gm >> i) & 1))
            {
                continue;
            }
            bool hasQuorum = false;
            for (uint64_t q : aq.at(i).family().masks())
            {
                if ((q & ~gm) == 0)
                {
                    hasQuorum = true;
                    break;
                }
            }
            if (!hasQuorum)
            {
                gm &= ~(uint64_t{1} << i);
                changed = true;
            }
        }
    }
    return ProcessSet::fromMask(aq.ground(), gm);
}

bool
isGuild(AsymmetricQuorumSystem const& aq, AsymmetricFailProneSystem const& af,
        ProcessSet const& actualFailed, ProcessSet const& g)
{
    requireSubsetOfGround(actualFailed, af.ground(), "isGuild");
    requireSubsetOfGround(g, af.ground(), "isGuild");
    if (!(aq.ground() == af.ground()))
    {
        throw InputError("ground-mismatch",
                         "quorum and fail-prone systems must share a ground");
    }
    if (g.empty() || g.intersects(actualFailed))
    {
        return false;
    }
    for (size_t i = 0; i < af.size(); ++i)
    {
        if (!((g.mask() >> i) & 1))
        {
            continue;
        }
        // Wisdom.
        if (!inClosure(actualFailed, af.at(i).family()))
        {
            return false;
        }
        // Closure.
        bool hasQuorum = false;
        for (uint64_t q : aq.at(i).family().masks())
        {
            if ((q & ~g.mask()) == 0)
            {
                hasQuorum = true;
                break;
            }
        }
        if (!hasQuorum)
        {
            return false;
        }
    }
    return true;
}

ProcessSet
maxGuild(AsymmetricQuorumSystem const& aq, AsymmetricFailProneSystem const& af,
         ProcessSet const& actualFailed)
{
    // Guilds are exactly the nonempty closed subsets of the wise set, and
    // closed subsets are preserved under union, so the greatest closed subset
    // is the unique maximal guild.
    ProcessSet wise = classify(af, actualFailed).wiseSet();
    return greatestClosedSubset(aq, wise);
}

std::vector<ProcessSet>
minimalClosedSets(AsymmetricQuorumSystem const& aq)
{
    requireExhaustiveScale(aq.ground(), "minimal closed set search");
    auto masks = minimalSatisfyingMasks(aq.ground(), [&](uint64_t gm) {
        for (size_t i = 0; i < aq.size(); ++i)
        {
            if (!((gm >> i) & 1))
            {
                continue;
            }
            bool hasQuorum = false;
            for (uint64_t q : aq.at(i).family().masks())
            {
                if ((q & ~gm) == 0)
                {
                    hasQuorum = true;
                    break;
                }
            }
            if (!hasQuorum)
            {
                return false;
            }
        }
        return true;
    });
    std::vector<ProcessSet> out;
    out.reserve(masks.size());
    for (uint64_t m : masks)
    {
        out.push_back(ProcessSet::fromMask(aq.ground(), m));
    }
    return out;
}

ToleratedSystem
toleratedSystem(AsymmetricQuorumSystem const& aq,
                AsymmetricFailProneSystem const& af)
{
    if (!(aq.ground() == af.ground()))
    {
        throw InputError("ground-mismatch",
                         "quorum and fail-prone systems must share a ground");
    }
    // Maximal tolerated sets are complements of minimal nonempty closed sets
    // (minimal guilds); the full family is their subset closure.
    uint64_t full = aq.ground().fullMask();
    std::vector<uint64_t> masks;
    for (auto const& g : minimalClosedSets(aq))
    {
        masks.push_back(full & ~g.mask());
    }
    return ToleratedSystem(SetFamily::fromMasks(aq.ground(), std::move(masks)));
}

SetFamily
kernels(QuorumSystem const& q)
{
    if (q.family().empty())
    {
        throw InputError("empty-quorum-system",
                         "kernel computation needs at least one quorum");
    }
    requireExhaustiveScale(q.ground(), "kernel search");
    auto const& quorums = q.family().masks();
    auto masks = minimalSatisfyingMasks(q.ground(), [&](uint64_t km) {
        for (uint64_t qm : quorums)
        {
            if ((km & qm) == 0)
            {
                return false;
            }
        }
        return true;
    });
    return SetFamily::fromMasks(q.ground(), std::move(masks));
}

} // namespace qk
