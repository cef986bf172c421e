// Copyright 2026 the qk developers. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "qk/systems.hpp"

#include <string_view>
#include <vector>

namespace qk
{

enum class ProcessRole
{
    Faulty, // member of the actual failed set
    Naive,  // correct, but the failed set lies outside its closure
    Wise,   // correct and the failed set lies inside its closure
};

std::string_view roleName(ProcessRole role);

// Per-process verdicts for one execution (one actual failed set).
class Classification
{
  public:
    Classification() = default;
    Classification(Ground ground, std::vector<ProcessRole> roles);

    Ground const&
    ground() const
    {
        return mGround;
    }

    ProcessRole
    at(size_t i) const
    {
        return mRoles[i];
    }

    ProcessRole of(std::string_view name) const;

    ProcessSet wiseSet() const;

    bool operator==(Classification const& other) const = default;

  private:
    Ground mGround;
    std::vector<ProcessRole> mRoles;
};

// The tolerated system of an asymmetric quorum system: maximal complements of
// possible guilds. Empty exactly when no nonempty closed set exists, i.e. the
// system can never form a guild. The resilience counterpart of a fail-prone
// system; maximal members correspond to minimal guilds.
class ToleratedSystem
{
  public:
    ToleratedSystem() = default;
    explicit ToleratedSystem(SetFamily family);

    SetFamily const&
    family() const
    {
        return mFamily;
    }

    bool
    empty() const
    {
        return mFamily.empty();
    }

    bool operator==(ToleratedSystem const& other) const = default;

  private:
    SetFamily mFamily; // antichain
};

// Classify every process for the execution in which exactly `actualFailed`
// fail.
Classification classify(AsymmetricFailProneSystem const& af,
                        ProcessSet const& actualFailed);

// True when g is closed under aq: every member has some quorum inside g.
// (The empty set is closed vacuously.)
bool isClosed(AsymmetricQuorumSystem const& aq, ProcessSet const& g);

// Largest closed subset of `within` (the union of all its closed subsets),
// found by the usual deletion fixed point.
ProcessSet greatestClosedSubset(AsymmetricQuorumSystem const& aq,
                                ProcessSet const& within);

// Whether g is a guild for the execution `actualFailed`: nonempty, disjoint
// from the failed set, all members wise, and each member has a quorum inside g.
bool isGuild(AsymmetricQuorumSystem const& aq,
             AsymmetricFailProneSystem const& af, ProcessSet const& actualFailed,
             ProcessSet const& g);

// The unique maximal guild of the execution, or the empty set when none
// exists. Every guild for the same execution is a subset of the result.
ProcessSet maxGuild(AsymmetricQuorumSystem const& aq,
                    AsymmetricFailProneSystem const& af,
                    ProcessSet const& actualFailed);

// All inclusion-minimal nonempty closed sets, in canonical order.
std::vector<ProcessSet> minimalClosedSets(AsymmetricQuorumSystem const& aq);

// The tolerated system: maximalize({ground \ G : G nonempty and closed}).
// Quantifying over closed sets rather than guilds of specific executions is
// exact because the failure-free execution makes every nonempty closed set a
// guild.
ToleratedSystem toleratedSystem(AsymmetricQuorumSystem const& aq,
                                AsymmetricFailProneSystem const& af);

// All inclusion-minimal transversals of the quorum family: the sets that
// intersect every quorum. Throws InputError on an empty quorum family.
SetFamily kernels(QuorumSystem const& q);

} // namespace qk
