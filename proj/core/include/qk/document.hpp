// Copyright 2026 the qk developers. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "qk/analysis.hpp"
#include "qk/check_report.hpp"
#include "qk/compose.hpp"
#include "qk/sim.hpp"
#include "qk/systems.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qk
{

// In-memory form of a system file. Either the symmetric fields or the
// asymmetric fields are populated, matching "kind". Quorums are optional in
// both shapes and default to canonical ones.
struct SystemDocument
{
    enum class Kind
    {
        Symmetric,
        Asymmetric,
    };

    Kind kind = Kind::Symmetric;
    Ground ground;

    std::optional<FailProneSystem> failProne;
    std::optional<QuorumSystem> quorums;

    std::optional<AsymmetricFailProneSystem> failProneSystems;
    std::optional<AsymmetricQuorumSystem> quorumSystems;

    // Resolve the quorum default.
    QuorumSystem effectiveQuorums() const;
    AsymmetricQuorumSystem effectiveQuorumSystems() const;

    // Any document viewed as an asymmetric system (symmetric documents
    // replicate their shared assumption to every process).
    AsymmetricSystem asAsymmetric() const;

    bool operator==(SystemDocument const& other) const = default;
};

// Parses and validates a system document. Antichain violations in fail-prone
// input are an error unless `normalize` is set, which opts into
// maximalization. Throws InputError with a machine-readable code on any
// violation.
SystemDocument parseSystemDocument(std::string_view text,
                                   bool normalize = false);

// Canonical rendering: processes sorted, sets sorted lexicographically
// inside, families sorted by (size, lex). Parse of the output yields an equal
// document.
std::string serializeSystemDocument(SystemDocument const& doc);

// Scenario files for the simulator.
Scenario parseScenarioDocument(std::string_view text,
                               bool normalize = false);
std::string serializeScenarioDocument(Scenario const& scenario);

// Renderings shared by the CLI and tests; all deterministic.
std::string renderFamilyDocument(SetFamily const& family);
std::string renderWitness(Witness const& witness);
std::string renderCheckReport(CheckReport const& report);
std::string renderClassification(Classification const& c);
std::string renderProcessSetDocument(std::string_view key,
                                     ProcessSet const& set);
std::string renderCompositionResult(CompositionResult const& result);
std::string renderTrace(Trace const& trace);
std::string renderHistory(History const& h);

// Advisory lint: one note per process whose own fail-prone family contains
// itself. Never affects exit codes.
std::vector<std::string> lintSelfSuspicion(AsymmetricFailProneSystem const& af);

} // namespace qk
