// Copyright 2026 the qk developers. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "qk/compose.hpp"

#include "qk/analysis.hpp"
#include "qk/document.hpp"
#include "qk/purify.hpp"

#include <string>

namespace qk
{

namespace
{

void
requireQ3(FailProneSystem const& f, char const* which)
{
    auto report = checkQ3(f);
    if (!report.holds)
    {
        throw InputError("precondition-q3",
                         std::string("composition requires the ") + which +
                             " fail-prone system to satisfy the Q3-condition",
                         renderWitness(*report.witness));
    }
}

QuorumSystem
resolveQuorums(FailProneSystem const& f, std::optional<QuorumSystem> const& q,
               char const* which)
{
    if (!q)
    {
        return canonicalQuorums(f);
    }
    if (!(q->ground() == f.ground()))
    {
        throw InputError("ground-mismatch",
                         std::string("the supplied ") + which +
                             " quorum system ranges over a different ground");
    }
    return *q;
}

// Pairwise unions of quorums, regrounded onto the composite universe.
QuorumSystem
pairwiseQuorumUnions(Ground const& g3, QuorumSystem const& q1,
                     QuorumSystem const& q2)
{
    SetFamily a = q1.family().regrounded(g3);
    SetFamily b = q2.family().regrounded(g3);
    std::vector<uint64_t> masks;
    masks.reserve(a.size() * b.size());
    for (uint64_t ma : a.masks())
    {
        for (uint64_t mb : b.masks())
        {
            masks.push_back(ma | mb);
        }
    }
    return QuorumSystem(SetFamily::fromMasks(g3, std::move(masks)));
}

} // namespace

CompositionResult
unionCompose(FailProneSystem const& f1, FailProneSystem const& f2,
             std::optional<QuorumSystem> const& q1,
             std::optional<QuorumSystem> const& q2)
{
    if (!Ground::disjoint(f1.ground(), f2.ground()))
    {
        throw InputError("grounds-overlap",
                         "union composition requires disjoint process sets");
    }
    requireQ3(f1, "first");
    requireQ3(f2, "second");

    Ground g3 = Ground::merged(f1.ground(), f2.ground());
    SetFamily a = f1.family().regrounded(g3);
    SetFamily b = f2.family().regrounded(g3);
    std::vector<uint64_t> masks;
    masks.insert(masks.end(), a.masks().begin(), a.masks().end());
    masks.insert(masks.end(), b.masks().begin(), b.masks().end());
    FailProneSystem f3(maximalize(SetFamily::fromMasks(g3, std::move(masks))));
    QuorumSystem q3 = pairwiseQuorumUnions(g3, resolveQuorums(f1, q1, "first"),
                                           resolveQuorums(f2, q2, "second"));

    CompositionResult result;
    result.failProne = f3;
    result.quorums = q3;
    result.report = checkBqs(q3, f3);
    result.provenance.rule = "union";
    return result;
}

CompositionResult
cartesianCompose(FailProneSystem const& f1, FailProneSystem const& f2,
                 bool allowOverlap, std::optional<QuorumSystem> const& q1,
                 std::optional<QuorumSystem> const& q2)
{
    bool disjoint = Ground::disjoint(f1.ground(), f2.ground());
    if (!disjoint && !allowOverlap)
    {
        throw InputError("grounds-overlap",
                         "cartesian composition requires disjoint process "
                         "sets; pass allow-overlap to force the raw product");
    }
    requireQ3(f1, "first");
    requireQ3(f2, "second");

    Ground g3 = Ground::merged(f1.ground(), f2.ground());
    SetFamily a = f1.family().regrounded(g3);
    SetFamily b = f2.family().regrounded(g3);
    std::vector<uint64_t> masks;
    masks.reserve(a.size() * b.size());
    for (uint64_t ma : a.masks())
    {
        for (uint64_t mb : b.masks())
        {
            masks.push_back(ma | mb);
        }
    }
    FailProneSystem f3(maximalize(SetFamily::fromMasks(g3, std::move(masks))));
    QuorumSystem q3 = pairwiseQuorumUnions(g3, resolveQuorums(f1, q1, "first"),
                                           resolveQuorums(f2, q2, "second"));

    CompositionResult result;
    result.failProne = f3;
    result.quorums = q3;
    result.report = checkQ3(f3);
    result.provenance.rule = "cartesian";
    result.provenance.allowOverlap = allowOverlap;
    if (allowOverlap && !disjoint)
    {
        result.provenance.notes.push_back(
            "unsafe: raw cartesian product over overlapping grounds");
    }
    return result;
}

SetFamily
otimes(SetFamily const& a, SetFamily const& b)
{
    Ground g3 = Ground::merged(a.ground(), b.ground());
    // Common processes, as a mask over the composite ground.
    uint64_t common = ProcessSet::all(a.ground())
                          .regrounded(g3)
                          .intersectionWith(
                              ProcessSet::all(b.ground()).regrounded(g3))
                          .mask();
    SetFamily ra = a.regrounded(g3);
    SetFamily rb = b.regrounded(g3);
    std::vector<uint64_t> masks;
    masks.reserve(ra.size() * rb.size());
    for (uint64_t ma : ra.masks())
    {
        for (uint64_t mb : rb.masks())
        {
            // Shrink each side to the agreed common part (their
            // intersection); every other realizable agreement yields a
            // subset of this union.
            masks.push_back((ma & ~common) | (mb & ~common) | (ma & mb));
        }
    }
    return maximalize(SetFamily::fromMasks(g3, std::move(masks)));
}

CompositionResult
composeSymmetric(FailProneSystem const& f1, FailProneSystem const& f2,
                 std::optional<QuorumSystem> const& q1,
                 std::optional<QuorumSystem> const& q2)
{
    requireQ3(f1, "first");
    requireQ3(f2, "second");

    Ground g3 = Ground::merged(f1.ground(), f2.ground());
    FailProneSystem f3(otimes(f1.family(), f2.family()));
    QuorumSystem q3 = pairwiseQuorumUnions(g3, resolveQuorums(f1, q1, "first"),
                                           resolveQuorums(f2, q2, "second"));

    CompositionResult result;
    result.failProne = f3;
    result.quorums = q3;
    result.report = checkBqs(q3, f3);
    result.provenance.rule = "general";
    return result;
}

CompositionResult
composeAsymmetric(AsymmetricSystem const& s1, AsymmetricSystem const& s2,
                  bool autoPurify)
{
    auto requireB3 = [](AsymmetricFailProneSystem const& af,
                        char const* which) {
        auto report = checkB3(af);
        if (!report.holds)
        {
            throw InputError("precondition-b3",
                             std::string("composition requires the ") + which +
                                 " system to satisfy the B3-condition",
                             renderWitness(*report.witness));
        }
    };
    requireB3(s1.failProne, "first");
    requireB3(s2.failProne, "second");

    auto tolerated = [](AsymmetricSystem const& s, char const* which) {
        ToleratedSystem t = toleratedSystem(s.quorums, s.failProne);
        if (t.empty())
        {
            throw InputError("no-guild",
                             std::string("the ") + which +
                                 " system admits no guild: no nonempty set is "
                                 "closed under its quorum systems");
        }
        auto q3 = checkQ3(t.family());
        if (!q3.holds)
        {
            throw InputError("precondition-q3-tolerated",
                             std::string("the tolerated system of the ") +
                                 which + " system fails the Q3-condition",
                             renderWitness(*q3.witness));
        }
        return t;
    };
    ToleratedSystem t1 = tolerated(s1, "first");
    ToleratedSystem t2 = tolerated(s2, "second");

    auto purified = [autoPurify](AsymmetricFailProneSystem const& af,
                                 ToleratedSystem const& t, char const* which) {
        if (autoPurify)
        {
            return purify(af, t);
        }
        auto report = checkB3(af, t.family());
        if (!report.holds)
        {
            throw InputError(
                "not-purified",
                std::string("the ") + which +
                    " system is not purified against its tolerated system; "
                    "purify it or pass auto-purify",
                renderWitness(*report.witness));
        }
        return af;
    };
    AsymmetricFailProneSystem af1 = purified(s1.failProne, t1, "first");
    AsymmetricFailProneSystem af2 = purified(s2.failProne, t2, "second");

    Ground const& g1 = af1.ground();
    Ground const& g2 = af2.ground();
    Ground g3 = Ground::merged(g1, g2);

    std::vector<FailProneSystem> perProcess;
    perProcess.reserve(g3.size());
    for (size_t i = 0; i < g3.size(); ++i)
    {
        std::string const& name = g3.name(i);
        bool in1 = g1.contains(name);
        bool in2 = g2.contains(name);
        SetFamily fam = in1 && in2
                            ? otimes(af1.of(name).family(),
                                     af2.of(name).family())
                            : in1 ? otimes(af1.of(name).family(), t2.family())
                                  : otimes(af2.of(name).family(), t1.family());
        perProcess.emplace_back(fam.regrounded(g3));
    }
    AsymmetricFailProneSystem af3(g3, std::move(perProcess));

    CompositionResult result;
    result.asymFailProne = af3;
    result.asymQuorums = canonicalQuorums(af3);
    result.report = checkB3(af3);
    result.provenance.rule = "asym";
    result.provenance.autoPurify = autoPurify;
    return result;
}

} // namespace qk
