// Copyright 2026 the qk developers. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "qk/sim.hpp"

#include "qk/analysis.hpp"
#include "qk/util.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace qk
{

namespace
{

using nlohmann::json;

std::string
encodeHistory(History const& h)
{
    json arr = json::array();
    for (auto const& e : h)
    {
        arr.push_back(json::array({e.origin, e.seq, e.payload}));
    }
    return arr.dump();
}

History
decodeHistory(std::string_view text)
{
    json arr = json::parse(text, nullptr, false);
    if (!arr.is_array())
    {
        throw InputError("bad-history", "history payload is not a JSON array");
    }
    History h;
    for (auto const& e : arr)
    {
        if (!e.is_array() || e.size() != 3 || !e[0].is_string() ||
            !e[1].is_number_integer() || !e[2].is_string())
        {
            throw InputError("bad-history",
                             "history entries are [origin, seq, payload]");
        }
        h.push_back(HistoryEntry{e[0].get<std::string>(), e[1].get<int64_t>(),
                                 e[2].get<std::string>()});
    }
    return h;
}

std::map<std::string, MergeFunction>&
mergeRegistry()
{
    static std::map<std::string, MergeFunction> registry = {
        {"default",
         [](History const& a, History const& b, bool* conflict) {
             return mergeHistories(a, b, conflict);
         }},
    };
    return registry;
}

} // namespace

void
validateHistory(History const& h)
{
    std::map<std::string, int64_t> lastSeq;
    for (auto const& e : h)
    {
        ProcessId::parse(e.origin);
        auto it = lastSeq.find(e.origin);
        if (it != lastSeq.end() && e.seq <= it->second)
        {
            throw InputError("bad-history",
                             "history sequence numbers must be strictly "
                             "increasing per origin (origin '" +
                                 e.origin + "')");
        }
        lastSeq[e.origin] = e.seq;
    }
}

std::string_view
messageKindName(MessageKind kind)
{
    switch (kind)
    {
    case MessageKind::CompositionRequest:
        return "CompositionRequest";
    case MessageKind::Vote:
        return "Vote";
    case MessageKind::CompositionResponse:
        return "CompositionResponse";
    case MessageKind::CompositionAck:
        return "CompositionAck";
    }
    return "unknown";
}

History
mergeHistories(History const& h1, History const& h2, bool* conflict)
{
    validateHistory(h1);
    validateHistory(h2);
    History all;
    all.reserve(h1.size() + h2.size());
    all.insert(all.end(), h1.begin(), h1.end());
    all.insert(all.end(), h2.begin(), h2.end());
    std::sort(all.begin(), all.end(),
              [](HistoryEntry const& a, HistoryEntry const& b) {
                  return std::tie(a.seq, a.origin, a.payload) <
                         std::tie(b.seq, b.origin, b.payload);
              });
    History merged;
    for (auto const& e : all)
    {
        if (!merged.empty() && merged.back().origin == e.origin &&
            merged.back().seq == e.seq)
        {
            // Exact duplicates collapse; a differing payload is a conflict
            // and the lexicographically smaller one (sorted first) stays.
            if (conflict && merged.back().payload != e.payload)
            {
                *conflict = true;
            }
            continue;
        }
        merged.push_back(e);
    }
    return merged;
}

bool
registerMergeFunction(std::string const& name, MergeFunction fn)
{
    auto [it, inserted] = mergeRegistry().emplace(name, std::move(fn));
    return inserted;
}

MergeFunction const*
findMergeFunction(std::string const& name)
{
    auto& reg = mergeRegistry();
    auto it = reg.find(name);
    return it == reg.end() ? nullptr : &it->second;
}

std::optional<CertifiedPayload>
guildCertified(std::map<std::string, std::string> const& responses,
               AsymmetricQuorumSystem const& aq,
               AsymmetricFailProneSystem const& af)
{
    if (!(aq.ground() == af.ground()))
    {
        throw InputError("ground-mismatch",
                         "quorum and fail-prone systems must share a ground");
    }
    // Group identical payloads; only closure is observer-checkable, wisdom
    // depends on the unknowable actual failed set.
    std::map<std::string, std::vector<std::string>> byPayload;
    for (auto const& [name, payload] : responses)
    {
        if (!aq.ground().contains(name))
        {
            throw InputError("unknown-process",
                             "responder '" + name +
                                 "' is not in the system's ground");
        }
        byPayload[payload].push_back(name);
    }
    std::optional<CertifiedPayload> best;
    for (auto const& [payload, names] : byPayload)
    {
        ProcessSet group = ProcessSet::of(aq.ground(), names);
        ProcessSet closed = greatestClosedSubset(aq, group);
        if (closed.empty())
        {
            continue;
        }
        // Payloads iterate in lexicographic order, so ties keep the smaller
        // payload deterministically.
        if (!best || closed.size() > best->group.size())
        {
            best = CertifiedPayload{closed, payload};
        }
    }
    return best;
}

namespace
{

struct ProcState
{
    bool inA = false;
    bool inB = false;
    bool faulty = false;
    FaultBehavior behavior = FaultBehavior::Silent;

    bool requestSeen = false;
    bool votedB = false;
    bool votedA = false;
    std::map<std::string, std::string> votesB;
    std::map<std::string, std::string> votesA;
    std::optional<std::string> decidedB;
    std::optional<std::string> decidedA;
    std::map<std::string, std::string> responses;
    std::map<std::string, std::string> acks;
    std::optional<CertifiedPayload> certResp;
    std::optional<CertifiedPayload> certAck;
    bool composed = false;
    History merged;
};

class HandshakeRun
{
  public:
    HandshakeRun(Scenario const& scenario)
        : mScenario(scenario)
        , mGroundA(scenario.systemA.failProne.ground())
        , mGroundB(scenario.systemB.failProne.ground())
        , mGround3(Ground::merged(mGroundA, mGroundB))
    {
    }

    Trace
    execute()
    {
        validate();
        initState();
        initiate();
        loop();
        finishTrace();
        return std::move(mTrace);
    }

  private:
    void
    validate()
    {
        if (!(mScenario.systemA.quorums.ground() == mGroundA) ||
            !(mScenario.systemB.quorums.ground() == mGroundB))
        {
            throw InputError("ground-mismatch",
                             "each system's quorum and fail-prone parts must "
                             "share a ground");
        }
        if (!mGroundA.contains(mScenario.initiator))
        {
            throw InputError("bad-initiator",
                             "the initiator must belong to system A");
        }
        for (auto const& name : mScenario.faulty)
        {
            if (!mGround3.contains(name))
            {
                throw InputError("unknown-process",
                                 "faulty process '" + name +
                                     "' is not in either system");
            }
        }
        for (auto const& [name, b] : mScenario.behavior)
        {
            if (std::find(mScenario.faulty.begin(), mScenario.faulty.end(),
                          name) == mScenario.faulty.end())
            {
                throw InputError("bad-behavior",
                                 "behavior configured for non-faulty "
                                 "process '" +
                                     name + "'");
            }
        }
        validateHistory(mScenario.historyA);
        validateHistory(mScenario.historyB);
        mMerge = findMergeFunction(mScenario.mergeFn);
        if (!mMerge)
        {
            throw InputError("unknown-merge-function",
                             "no merge function registered under '" +
                                 mScenario.mergeFn + "'");
        }
    }

    void
    initState()
    {
        for (auto const& name : mGround3.names())
        {
            ProcState st;
            st.inA = mGroundA.contains(name);
            st.inB = mGroundB.contains(name);
            st.faulty = std::find(mScenario.faulty.begin(),
                                  mScenario.faulty.end(),
                                  name) != mScenario.faulty.end();
            if (auto it = mScenario.behavior.find(name);
                it != mScenario.behavior.end())
            {
                st.behavior = it->second;
            }
            mState.emplace(name, std::move(st));
        }
        mPayloadA = encodeHistory(mScenario.historyA);
        mPayloadB = encodeHistory(mScenario.historyB);
        mMaxDeliveries = 10 * mGround3.size() * mGround3.size();
    }

    void
    initiate()
    {
        auto& st = mState.at(mScenario.initiator);
        if (st.faulty)
        {
            // Faulty initiators never start the handshake: Silent drops all
            // sends and Equivocate only emits votes.
            record("initiate (dropped: faulty initiator)",
                   mScenario.initiator);
            return;
        }
        record("initiate", mScenario.initiator);
        for (auto const& p : mGroundB.names())
        {
            send(MessageKind::CompositionRequest, mScenario.initiator, p,
                 "handshake", "");
        }
    }

    void
    loop()
    {
        size_t deliveries = 0;
        while (!mQueue.empty())
        {
            if (++deliveries > mMaxDeliveries)
            {
                mTrace.stepBoundExceeded = true;
                mTrace.flags.push_back(
                    "step bound exceeded after " +
                    std::to_string(mMaxDeliveries) +
                    " deliveries; remaining processes stay undecided");
                break;
            }
            Message msg = mQueue.begin()->second;
            mQueue.erase(mQueue.begin());
            deliver(msg);
        }
    }

    void
    deliver(Message const& msg)
    {
        std::string ev = "deliver " + std::string(messageKindName(msg.kind));
        if (msg.kind == MessageKind::Vote)
        {
            ev += "(" + msg.payload + ") round=" + msg.round;
        }
        ev += " from " + msg.sender;
        record(ev, msg.recipient);

        auto& st = mState.at(msg.recipient);
        if (st.faulty)
        {
            deliverToFaulty(msg, st);
        }
        else
        {
            deliverToCorrect(msg, st);
            tryCompose(msg.recipient, st);
        }
    }

    void
    deliverToFaulty(Message const& msg, ProcState& st)
    {
        if (st.behavior != FaultBehavior::Equivocate)
        {
            return;
        }
        // Equivocators join each vote round once, splitting yes/no by
        // recipient name; they stay silent in every other phase.
        if (msg.kind == MessageKind::CompositionRequest && st.inB &&
            !st.votedB)
        {
            st.votedB = true;
            record("vote split round=b-vote", msg.recipient);
            sendSplitVotes(msg.recipient, "b-vote", mGroundB);
        }
        else if (msg.kind == MessageKind::CompositionResponse && st.inA &&
                 !st.votedA)
        {
            st.votedA = true;
            record("vote split round=a-vote", msg.recipient);
            sendSplitVotes(msg.recipient, "a-vote", mGroundA);
        }
    }

    void
    deliverToCorrect(Message const& msg, ProcState& st)
    {
        std::string const& self = msg.recipient;
        switch (msg.kind)
        {
        case MessageKind::CompositionRequest:
            if (st.inB && !st.requestSeen)
            {
                st.requestSeen = true;
                if (!st.votedB)
                {
                    st.votedB = true;
                    record("vote yes round=b-vote", self);
                    for (auto const& p : mGroundB.names())
                    {
                        send(MessageKind::Vote, self, p, "b-vote", "yes");
                    }
                }
            }
            break;
        case MessageKind::Vote:
            if (msg.round == "b-vote" && st.inB)
            {
                st.votesB.emplace(msg.sender, msg.payload);
                if (!st.decidedB)
                {
                    tryDecide(self, st, /*roundB=*/true);
                }
            }
            else if (msg.round == "a-vote" && st.inA)
            {
                st.votesA.emplace(msg.sender, msg.payload);
                if (!st.decidedA)
                {
                    tryDecide(self, st, /*roundB=*/false);
                }
            }
            break;
        case MessageKind::CompositionResponse:
            if (st.inA)
            {
                st.responses.emplace(msg.sender, msg.payload);
                if (!st.certResp)
                {
                    st.certResp =
                        guildCertified(st.responses,
                                       mScenario.systemB.quorums,
                                       mScenario.systemB.failProne);
                    if (st.certResp)
                    {
                        record("certify-response group=" +
                                   renderGroup(st.certResp->group),
                               self);
                        if (!st.votedA)
                        {
                            st.votedA = true;
                            record("vote yes round=a-vote", self);
                            for (auto const& p : mGroundA.names())
                            {
                                send(MessageKind::Vote, self, p, "a-vote",
                                     "yes");
                            }
                        }
                    }
                }
            }
            break;
        case MessageKind::CompositionAck:
            st.acks.emplace(msg.sender, msg.payload);
            if (!st.certAck)
            {
                st.certAck = guildCertified(st.acks,
                                            mScenario.systemA.quorums,
                                            mScenario.systemA.failProne);
                if (st.certAck)
                {
                    record("certify-ack group=" +
                               renderGroup(st.certAck->group),
                           self);
                }
            }
            break;
        }
    }

    void
    tryDecide(std::string const& self, ProcState& st, bool roundB)
    {
        auto const& tally = roundB ? st.votesB : st.votesA;
        auto const& aq =
            roundB ? mScenario.systemB.quorums : mScenario.systemA.quorums;
        Ground const& g = roundB ? mGroundB : mGroundA;

        std::set<std::string> values;
        for (auto const& [_, v] : tally)
        {
            values.insert(v);
        }
        for (auto const& value : values)
        {
            uint64_t voters = 0;
            for (auto const& [sender, v] : tally)
            {
                if (v == value)
                {
                    voters |= uint64_t{1} << *g.indexOf(sender);
                }
            }
            bool quorumAgrees = false;
            for (uint64_t q : aq.of(self).family().masks())
            {
                if ((q & ~voters) == 0)
                {
                    quorumAgrees = true;
                    break;
                }
            }
            if (!quorumAgrees)
            {
                continue;
            }
            std::string round = roundB ? "b-vote" : "a-vote";
            record("decide " + value + " round=" + round, self);
            if (roundB)
            {
                st.decidedB = value;
                if (value == "yes")
                {
                    record("send CompositionResponse", self);
                    for (auto const& p : mGroundA.names())
                    {
                        send(MessageKind::CompositionResponse, self, p,
                             "handshake", mPayloadB);
                    }
                }
            }
            else
            {
                st.decidedA = value;
                if (value == "yes")
                {
                    // Everyone finalizes on certified acks, so they go to the
                    // whole composite ground, not only to system B.
                    record("send CompositionAck", self);
                    for (auto const& p : mGround3.names())
                    {
                        send(MessageKind::CompositionAck, self, p, "handshake",
                             mPayloadA);
                    }
                }
            }
            return;
        }
    }

    void
    tryCompose(std::string const& self, ProcState& st)
    {
        if (st.composed || !st.certAck)
        {
            return;
        }
        // A process finalizes only after deciding a vote round of its own
        // cluster; a certified ack alone is hearsay for a process whose own
        // quorums never confirmed the composition.
        bool decided = (st.inB && st.decidedB && *st.decidedB == "yes") ||
                       (st.inA && st.decidedA && *st.decidedA == "yes");
        if (!decided)
        {
            return;
        }
        History h2;
        if (st.inB)
        {
            h2 = mScenario.historyB;
        }
        else if (st.certResp)
        {
            h2 = decodeHistory(st.certResp->payload);
        }
        else
        {
            return;
        }
        History h1 = decodeHistory(st.certAck->payload);
        bool conflict = false;
        st.merged = (*mMerge)(h1, h2, &conflict);
        st.composed = true;
        if (conflict)
        {
            mTrace.flags.push_back("merge conflict observed by " + self);
            record("merge-conflict", self);
        }
        record("compose", self);
    }

    void
    sendSplitVotes(std::string const& self, std::string const& round,
                   Ground const& g)
    {
        for (auto const& p : g.names())
        {
            send(MessageKind::Vote, self, p, round, p < self ? "yes" : "no");
        }
    }

    void
    send(MessageKind kind, std::string const& sender,
         std::string const& recipient, std::string const& round,
         std::string const& payload)
    {
        auto& st = mState.at(sender);
        if (st.faulty && st.behavior == FaultBehavior::Silent)
        {
            return;
        }
        Message msg{kind, sender, recipient, round, payload};
        uint64_t key = fnv1a(std::string(messageKindName(kind)) + "\n" +
                                 sender + "\n" + recipient + "\n" + round +
                                 "\n" + payload,
                             fnv1a(mScenario.seed));
        mQueue.emplace(std::make_pair(key, mEnqueueCounter++), std::move(msg));
    }

    std::string
    renderGroup(ProcessSet const& set)
    {
        std::string out = "[";
        bool first = true;
        for (auto const& n : set.names())
        {
            if (!first)
            {
                out += ",";
            }
            out += n;
            first = false;
        }
        out += "]";
        return out;
    }

    uint64_t
    stateDigest(std::string const& name) const
    {
        auto const& st = mState.at(name);
        std::ostringstream os;
        os << name << '\n'
           << st.inA << st.inB << st.faulty << st.requestSeen << st.votedB
           << st.votedA << st.composed << '\n'
           << st.decidedB.value_or("-") << '\n'
           << st.decidedA.value_or("-") << '\n';
        for (auto const& [k, v] : st.votesB)
        {
            os << k << '=' << v << ',';
        }
        os << '\n';
        for (auto const& [k, v] : st.votesA)
        {
            os << k << '=' << v << ',';
        }
        os << '\n';
        for (auto const& [k, v] : st.responses)
        {
            os << k << '#' << fnv1a(v) << ',';
        }
        os << '\n';
        for (auto const& [k, v] : st.acks)
        {
            os << k << '#' << fnv1a(v) << ',';
        }
        os << '\n';
        if (st.certResp)
        {
            os << st.certResp->group.mask() << '#'
               << fnv1a(st.certResp->payload);
        }
        os << '\n';
        if (st.certAck)
        {
            os << st.certAck->group.mask() << '#' << fnv1a(st.certAck->payload);
        }
        os << '\n' << encodeHistory(st.merged);
        return fnv1a(os.str());
    }

    void
    record(std::string event, std::string const& process)
    {
        mTrace.events.push_back(TraceEvent{++mStepCounter, std::move(event),
                                           process, stateDigest(process)});
    }

    void
    finishTrace()
    {
        for (auto const& name : mGround3.names())
        {
            auto const& st = mState.at(name);
            ProcessOutcome outcome;
            outcome.composed = st.composed;
            if (st.composed)
            {
                outcome.merged = st.merged;
            }
            mTrace.outcomes.emplace(name, std::move(outcome));
        }
    }

    Scenario const& mScenario;
    Ground mGroundA;
    Ground mGroundB;
    Ground mGround3;
    std::map<std::string, ProcState> mState;
    std::map<std::pair<uint64_t, uint64_t>, Message> mQueue;
    MergeFunction const* mMerge = nullptr;
    std::string mPayloadA;
    std::string mPayloadB;
    uint64_t mStepCounter = 0;
    uint64_t mEnqueueCounter = 0;
    size_t mMaxDeliveries = 0;
    Trace mTrace;
};

} // namespace

Trace
run(Scenario const& scenario)
{
    return HandshakeRun(scenario).execute();
}

uint64_t
traceHash(Trace const& trace)
{
    uint64_t h = FNV_OFFSET;
    for (auto const& e : trace.events)
    {
        h = fnv1a(e.step, h);
        h = fnv1a(e.event, h);
        h = fnv1a(e.process, h);
        h = fnv1a(e.digest, h);
    }
    for (auto const& [name, outcome] : trace.outcomes)
    {
        h = fnv1a(name, h);
        h = fnv1a(outcome.composed ? uint64_t{1} : uint64_t{0}, h);
        for (auto const& entry : outcome.merged)
        {
            h = fnv1a(entry.origin, h);
            h = fnv1a(static_cast<uint64_t>(entry.seq), h);
            h = fnv1a(entry.payload, h);
        }
    }
    for (auto const& f : trace.flags)
    {
        h = fnv1a(f, h);
    }
    h = fnv1a(trace.stepBoundExceeded ? uint64_t{1} : uint64_t{0}, h);
    return h;
}

} // namespace qk
