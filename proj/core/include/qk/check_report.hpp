// Copyright 2026 the qk developers. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "qk/process_set.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qk
{

// A structured counterexample: the quantifier instantiation that violates a
// condition, labeled by role ("F1"/"F2"/"F3", "i"/"j"/"F_i"/"F_j"/"F_ij", ...)
// so it can be re-evaluated mechanically.
struct Witness
{
    // One of: "q3-cover", "b3-cover", "consistency", "availability".
    std::string kind;

    // Role -> process name, or the tag "T" for an appended tolerated system.
    std::vector<std::pair<std::string, std::string>> who;

    // Role -> instantiated set.
    std::vector<std::pair<std::string, ProcessSet>> sets;

    ProcessSet const& set(std::string_view role) const;
};

// Verdict of a decision procedure. `holds == false` implies a witness whose
// replay reproduces the violation.
struct CheckReport
{
    bool holds = true;
    std::optional<Witness> witness;

    static CheckReport
    ok()
    {
        return CheckReport{};
    }

    static CheckReport
    fail(Witness w)
    {
        return CheckReport{false, std::move(w)};
    }
};

} // namespace qk
