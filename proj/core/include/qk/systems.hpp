// Copyright 2026 the qk developers. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "qk/set_family.hpp"

#include <vector>

namespace qk
{

// A fail-prone system: a nonempty antichain of process sets, each bounding
// the processes that may jointly fail in one execution. {[empty]} is the
// legal "no failures tolerated" assumption. Construction rejects non-antichain
// input rather than silently repairing it; callers opt into repair through
// `normalized`.
class FailProneSystem
{
  public:
    FailProneSystem() = default;
    explicit FailProneSystem(SetFamily family);

    // Maximalizes first, then constructs.
    static FailProneSystem normalized(SetFamily const& family);

    SetFamily const&
    family() const
    {
        return mFamily;
    }

    Ground const&
    ground() const
    {
        return mFamily.ground();
    }

    bool operator==(FailProneSystem const& other) const = default;

  private:
    SetFamily mFamily;
};

// A quorum system: a family of nonempty quorums, stored as given after
// deduplication. No antichain requirement; canonical constructions happen to
// produce antichains.
class QuorumSystem
{
  public:
    QuorumSystem() = default;
    explicit QuorumSystem(SetFamily family);

    SetFamily const&
    family() const
    {
        return mFamily;
    }

    Ground const&
    ground() const
    {
        return mFamily.ground();
    }

    bool operator==(QuorumSystem const& other) const = default;

  private:
    SetFamily mFamily;
};

// One fail-prone system per process, all over the same ground: the subjective
// trust assumptions of an asymmetric system. Entries are indexed by ground
// position (lexicographic by name).
class AsymmetricFailProneSystem
{
  public:
    AsymmetricFailProneSystem() = default;
    AsymmetricFailProneSystem(Ground ground,
                              std::vector<FailProneSystem> perProcess);

    // Every process shares the same assumption (the symmetric special case).
    static AsymmetricFailProneSystem symmetric(FailProneSystem const& shared);

    Ground const&
    ground() const
    {
        return mGround;
    }

    size_t
    size() const
    {
        return mPerProcess.size();
    }

    FailProneSystem const&
    at(size_t i) const
    {
        return mPerProcess[i];
    }

    FailProneSystem const& of(std::string_view name) const;

    bool operator==(AsymmetricFailProneSystem const& other) const = default;

  private:
    Ground mGround;
    std::vector<FailProneSystem> mPerProcess;
};

// One quorum system per process over a shared ground.
class AsymmetricQuorumSystem
{
  public:
    AsymmetricQuorumSystem() = default;
    AsymmetricQuorumSystem(Ground ground, std::vector<QuorumSystem> perProcess);

    static AsymmetricQuorumSystem symmetric(QuorumSystem const& shared);

    Ground const&
    ground() const
    {
        return mGround;
    }

    size_t
    size() const
    {
        return mPerProcess.size();
    }

    QuorumSystem const&
    at(size_t i) const
    {
        return mPerProcess[i];
    }

    QuorumSystem const& of(std::string_view name) const;

    bool operator==(AsymmetricQuorumSystem const& other) const = default;

  private:
    Ground mGround;
    std::vector<QuorumSystem> mPerProcess;
};

// A full asymmetric trust configuration: who each process suspects plus which
// quorums it accepts.
struct AsymmetricSystem
{
    AsymmetricFailProneSystem failProne;
    AsymmetricQuorumSystem quorums;

    bool operator==(AsymmetricSystem const& other) const = default;
};

} // namespace qk
