// Copyright 2026 the qk developers. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "qk/analysis.hpp"
#include "qk/systems.hpp"

namespace qk
{

// Aligns each process's fail-prone system with the tolerated system: every
// set that, together with a tolerated set and a common subset, covers the
// ground is replaced by its maximal non-covering subsets, and the per-process
// family is re-maximalized.
//
// Preconditions (violations raise InputError with the witness attached):
// the input satisfies the B3-condition and t satisfies the Q3-condition.
//
// All violation tests run against the original input families, so the single
// simultaneous pass is order-independent and the result satisfies the
// B3-condition with t appended. Shrinking a family never introduces new
// covering triples, so no iteration is needed.
AsymmetricFailProneSystem purify(AsymmetricFailProneSystem const& af,
                                 ToleratedSystem const& t);

} // namespace qk
