// Copyright 2026 the qk developers. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "qk/systems.hpp"

namespace qk
{

FailProneSystem::FailProneSystem(SetFamily family) : mFamily(std::move(family))
{
    if (mFamily.empty())
    {
        throw InputError("empty-fail-prone",
                         "a fail-prone system needs at least one set; use "
                         "[[]] for 'no failures tolerated'");
    }
    if (!mFamily.isAntichain())
    {
        throw InputError("not-an-antichain",
                         "fail-prone sets must form an antichain (no set "
                         "contained in another)");
    }
}

FailProneSystem
FailProneSystem::normalized(SetFamily const& family)
{
    return FailProneSystem(maximalize(family));
}

QuorumSystem::QuorumSystem(SetFamily family) : mFamily(std::move(family))
{
    for (uint64_t m : mFamily.masks())
    {
        if (m == 0)
        {
            throw InputError("empty-quorum", "quorums must be nonempty");
        }
    }
}

namespace
{

template <typename System>
void
requireAligned(Ground const& ground, std::vector<System> const& perProcess)
{
    if (perProcess.size() != ground.size())
    {
        throw InputError("per-process-mismatch",
                         "asymmetric systems need exactly one entry per "
                         "ground process");
    }
    for (auto const& sys : perProcess)
    {
        if (!(sys.ground() == ground))
        {
            throw InputError("ground-mismatch",
                             "every per-process family must range over the "
                             "shared ground");
        }
    }
}

} // namespace

AsymmetricFailProneSystem::AsymmetricFailProneSystem(
    Ground ground, std::vector<FailProneSystem> perProcess)
    : mGround(std::move(ground)), mPerProcess(std::move(perProcess))
{
    requireAligned(mGround, mPerProcess);
}

AsymmetricFailProneSystem
AsymmetricFailProneSystem::symmetric(FailProneSystem const& shared)
{
    std::vector<FailProneSystem> per(shared.ground().size(), shared);
    return AsymmetricFailProneSystem(shared.ground(), std::move(per));
}

FailProneSystem const&
AsymmetricFailProneSystem::of(std::string_view name) const
{
    auto idx = mGround.indexOf(name);
    if (!idx)
    {
        throw InputError("unknown-process", "process '" + std::string(name) +
                                                "' is not in the ground set");
    }
    return mPerProcess[*idx];
}

AsymmetricQuorumSystem::AsymmetricQuorumSystem(
    Ground ground, std::vector<QuorumSystem> perProcess)
    : mGround(std::move(ground)), mPerProcess(std::move(perProcess))
{
    requireAligned(mGround, mPerProcess);
}

AsymmetricQuorumSystem
AsymmetricQuorumSystem::symmetric(QuorumSystem const& shared)
{
    std::vector<QuorumSystem> per(shared.ground().size(), shared);
    return AsymmetricQuorumSystem(shared.ground(), std::move(per));
}

QuorumSystem const&
AsymmetricQuorumSystem::of(std::string_view name) const
{
    auto idx = mGround.indexOf(name);
    if (!idx)
    {
        throw InputError("unknown-process", "process '" + std::string(name) +
                                                "' is not in the ground set");
    }
    return mPerProcess[*idx];
}

} // namespace qk
