// Copyright 2026 the qk developers. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "qk/check_report.hpp"
#include "qk/conditions.hpp"
#include "qk/systems.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qk
{

// Record of which rule produced a composite and under which flags, so output
// documents are self-describing.
struct Provenance
{
    std::string rule;
    bool allowOverlap = false;
    bool autoPurify = false;
    std::vector<std::string> notes;
};

// Outcome of a composition: exactly one of the symmetric pair
// (failProne, quorums) or the asymmetric pair is populated, together with the
// verdict of the rule's associated condition check.
struct CompositionResult
{
    std::optional<FailProneSystem> failProne;
    std::optional<QuorumSystem> quorums;
    std::optional<AsymmetricFailProneSystem> asymFailProne;
    std::optional<AsymmetricQuorumSystem> asymQuorums;
    CheckReport report;
    Provenance provenance;

    bool
    isAsymmetric() const
    {
        return asymFailProne.has_value();
    }
};

// Union composition over disjoint grounds: the composite tolerates exactly
// the failures each side tolerated on its own. Quorums are pairwise unions
// (canonical quorums unless supplied). Report: the composite checked as a
// BQS. Throws InputError on overlapping grounds or a failed Q3 precondition.
CompositionResult
unionCompose(FailProneSystem const& f1, FailProneSystem const& f2,
             std::optional<QuorumSystem> const& q1 = std::nullopt,
             std::optional<QuorumSystem> const& q2 = std::nullopt);

// Cartesian composition: tolerates any combination of one fail-prone set per
// side. Guaranteed to satisfy the Q3-condition only on disjoint grounds;
// `allowOverlap` exists to reproduce the negative overlapping case and marks
// the provenance as unsafe. Report: Q3 on the composite family.
CompositionResult
cartesianCompose(FailProneSystem const& f1, FailProneSystem const& f2,
                 bool allowOverlap = false,
                 std::optional<QuorumSystem> const& q1 = std::nullopt,
                 std::optional<QuorumSystem> const& q2 = std::nullopt);

// The composition operator on set families over possibly overlapping grounds:
// maximal unions of closure elements that agree exactly on the common
// processes. Implemented per pair of maximal sets as
// (A \ common) .. (B \ common) .. (A .. B), which dominates every realizable
// agreement pattern, then maximalized.
SetFamily otimes(SetFamily const& a, SetFamily const& b);

// General symmetric composition via otimes; quorums are pairwise unions.
// Report: the composite checked as a BQS (guaranteed under the Q3
// preconditions).
CompositionResult
composeSymmetric(FailProneSystem const& f1, FailProneSystem const& f2,
                 std::optional<QuorumSystem> const& q1 = std::nullopt,
                 std::optional<QuorumSystem> const& q2 = std::nullopt);

// Asymmetric composition: processes of one side extend their assumptions with
// the other side's tolerated system (their only possible view of strangers);
// common processes combine their two assumptions. Inputs must satisfy the
// B3-condition, have nonempty tolerated systems satisfying the Q3-condition,
// and be purified against them; `autoPurify` performs the purification
// internally instead of rejecting unpurified input. The composite quorum
// system is the canonical one, and the report checks the composite
// B3-condition (guaranteed under the preconditions).
CompositionResult composeAsymmetric(AsymmetricSystem const& s1,
                                    AsymmetricSystem const& s2,
                                    bool autoPurify = false);

} // namespace qk
