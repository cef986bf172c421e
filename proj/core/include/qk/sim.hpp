// Copyright 2026 the qk developers. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "qk/systems.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qk
{

// One delivered protocol entry: opaque payload attributed to an origin with a
// per-origin sequence number.
struct HistoryEntry
{
    std::string origin;
    int64_t seq = 0;
    std::string payload;

    auto operator<=>(HistoryEntry const&) const = default;
};

// Ordered list of entries; valid histories have strictly increasing seq per
// origin.
using History = std::vector<HistoryEntry>;

// Throws InputError when the per-origin sequence numbers are not strictly
// increasing.
void validateHistory(History const& h);

enum class FaultBehavior
{
    Silent,     // drops every send
    Equivocate, // splits votes: "yes" to lexicographically smaller names,
                // "no" to the rest; silent outside vote phases
};

// Simulator input: two asymmetric systems, who initiates, which processes are
// faulty and how, the two cluster histories, and the scheduling seed. Equal
// scenarios (seed included) produce byte-identical traces.
struct Scenario
{
    AsymmetricSystem systemA;
    AsymmetricSystem systemB;
    std::string initiator; // must belong to system A's ground
    std::vector<std::string> faulty;
    // Keys must be faulty; faulty processes without an entry act Silent.
    std::map<std::string, FaultBehavior> behavior;
    History historyA;
    History historyB;
    uint64_t seed = 0;
    std::string mergeFn = "default";
};

enum class MessageKind
{
    CompositionRequest,
    Vote,
    CompositionResponse, // carries history B
    CompositionAck,      // carries history A
};

std::string_view messageKindName(MessageKind kind);

struct Message
{
    MessageKind kind;
    std::string sender;
    std::string recipient;
    std::string round; // "b-vote" / "a-vote" for votes, "handshake" otherwise
    std::string payload;
};

struct TraceEvent
{
    uint64_t step = 0;
    std::string event;
    std::string process;
    uint64_t digest = 0; // state digest of `process` after the event

    bool operator==(TraceEvent const&) const = default;
};

struct ProcessOutcome
{
    bool composed = false;
    History merged; // meaningful only when composed

    bool operator==(ProcessOutcome const&) const = default;
};

struct Trace
{
    std::vector<TraceEvent> events;
    std::map<std::string, ProcessOutcome> outcomes; // every process
    bool stepBoundExceeded = false;
    std::vector<std::string> flags; // e.g. merge conflicts

    bool operator==(Trace const&) const = default;
};

// Deterministic default merge: entries ordered by (seq, origin), duplicates
// collapsed. Conflicting duplicates (same origin and seq, different payload)
// keep the lexicographically smaller payload; `conflict`, when non-null, is
// set when that happens.
History mergeHistories(History const& h1, History const& h2,
                       bool* conflict = nullptr);

using MergeFunction =
    std::function<History(History const&, History const&, bool* conflict)>;

// Named merge registry; scenarios select by name, "default" is pre-registered.
// Returns false when the name is already taken. Registration is not
// synchronized; register before running simulations concurrently.
bool registerMergeFunction(std::string const& name, MergeFunction fn);
MergeFunction const* findMergeFunction(std::string const& name);

struct CertifiedPayload
{
    ProcessSet group;
    std::string payload;
};

// The largest set of identically-responding processes that is closed under
// aq, together with the shared payload; absent when no nonempty closed set
// agrees. Closure is observer-checkable because the trust assumptions are
// public; wisdom is not, so af participates only in validation.
std::optional<CertifiedPayload>
guildCertified(std::map<std::string, std::string> const& responses,
               AsymmetricQuorumSystem const& aq,
               AsymmetricFailProneSystem const& af);

// Deterministic single-threaded run of the composition handshake. The "round
// of Byzantine consensus" on each side is abstracted as one-shot
// quorum-certified voting: a process decides when one of its quorums votes
// identically. Weaker than full consensus (no retry, no view change), so
// adversarial vote splitting can leave processes Undecided, never in
// disagreement.
Trace run(Scenario const& scenario);

// Stable 64-bit hash of a rendered trace (events, outcomes, flags).
uint64_t traceHash(Trace const& trace);

} // namespace qk
