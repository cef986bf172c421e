// Copyright 2026 the qk developers. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "qk/check_report.hpp"
#include "qk/systems.hpp"

namespace qk
{

// Whether no three fail-prone sets (repetition allowed) cover the ground.
// Equivalent to the existence of a Byzantine quorum system for the family.
CheckReport checkQ3(SetFamily const& family);
CheckReport checkQ3(FailProneSystem const& f);

// The asymmetric analogue: for every pair of processes (i == j included) and
// every common fail-prone subset F_ij of their closures, F_i, F_j and F_ij
// never cover the ground. `extra`, when given, joins the quantification as
// one more fail-prone system (tagged "T" in witnesses); it must range over
// the same ground.
CheckReport checkB3(AsymmetricFailProneSystem const& af);
CheckReport checkB3(AsymmetricFailProneSystem const& af, SetFamily const& extra);

// The bijective complement of the fail-prone family. When the Q3-condition
// holds this is a Byzantine quorum system for f.
QuorumSystem canonicalQuorums(FailProneSystem const& f);

// Per-process canonical quorum systems of an asymmetric fail-prone system.
AsymmetricQuorumSystem canonicalQuorums(AsymmetricFailProneSystem const& af);

// Consistency (no two quorums intersect inside a fail-prone set) and
// availability (every fail-prone set avoids some quorum). The witness labels
// which clause failed.
CheckReport checkBqs(QuorumSystem const& q, FailProneSystem const& f);

// The asymmetric counterpart over all process pairs and their common
// fail-prone subsets, plus per-process availability.
CheckReport checkAbqs(AsymmetricQuorumSystem const& aq,
                      AsymmetricFailProneSystem const& af);

} // namespace qk
