// Copyright 2026 the qk developers. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "qk/conditions.hpp"

#include <bit>
#include <string>
#include <vector>

namespace qk
{

ProcessSet const&
Witness::set(std::string_view role) const
{
    for (auto const& [r, s] : sets)
    {
        if (r == role)
        {
            return s;
        }
    }
    throw InputError("unknown-witness-role",
                     "witness has no set labeled '" + std::string(role) + "'");
}

CheckReport
checkQ3(SetFamily const& family)
{
    uint64_t full = family.ground().fullMask();
    size_t n = family.ground().size();
    auto const& masks = family.masks();
    // Masks sort by cardinality, so the last one is the largest; a pair too
    // small for even that set to complete a cover can be skipped outright.
    size_t largest =
        masks.empty() ? 0 : static_cast<size_t>(std::popcount(masks.back()));
    // Repetition allowed; the cover predicate is symmetric, so scanning
    // ordered triples i <= j <= k is exhaustive.
    for (size_t i = 0; i < masks.size(); ++i)
    {
        for (size_t j = i; j < masks.size(); ++j)
        {
            uint64_t ij = masks[i] | masks[j];
            if (static_cast<size_t>(std::popcount(ij)) + largest < n)
            {
                continue;
            }
            for (size_t k = j; k < masks.size(); ++k)
            {
                if ((ij | masks[k]) == full)
                {
                    Witness w;
                    w.kind = "q3-cover";
                    w.sets = {
                        {"F1", family.at(i)},
                        {"F2", family.at(j)},
                        {"F3", family.at(k)},
                    };
                    return CheckReport::fail(std::move(w));
                }
            }
        }
    }
    return CheckReport::ok();
}

CheckReport
checkQ3(FailProneSystem const& f)
{
    return checkQ3(f.family());
}

namespace
{

// Shared quantification core for the B3-condition: one labeled family per
// process, optionally one extra ("T").
struct LabeledFamilies
{
    std::vector<std::string> labels;
    std::vector<SetFamily const*> families;
};

LabeledFamilies
gatherFamilies(AsymmetricFailProneSystem const& af, SetFamily const* extra)
{
    LabeledFamilies out;
    for (size_t i = 0; i < af.size(); ++i)
    {
        out.labels.push_back(af.ground().name(i));
        out.families.push_back(&af.at(i).family());
    }
    if (extra)
    {
        if (!(extra->ground() == af.ground()))
        {
            throw InputError("ground-mismatch",
                             "the extra family must range over the same "
                             "ground as the asymmetric system");
        }
        out.labels.push_back("T");
        out.families.push_back(extra);
    }
    return out;
}

CheckReport
checkB3Impl(AsymmetricFailProneSystem const& af, SetFamily const* extra)
{
    uint64_t full = af.ground().fullMask();
    auto fams = gatherFamilies(af, extra);
    for (size_t a = 0; a < fams.families.size(); ++a)
    {
        for (size_t b = a; b < fams.families.size(); ++b)
        {
            auto const& fa = *fams.families[a];
            auto const& fb = *fams.families[b];
            SetFamily cands = closureIntersectionCandidates(fa, fb);
            for (size_t i = 0; i < fa.size(); ++i)
            {
                for (size_t j = 0; j < fb.size(); ++j)
                {
                    uint64_t ij = fa.maskAt(i) | fb.maskAt(j);
                    for (size_t c = 0; c < cands.size(); ++c)
                    {
                        if ((ij | cands.maskAt(c)) == full)
                        {
                            Witness w;
                            w.kind = "b3-cover";
                            w.who = {{"i", fams.labels[a]},
                                     {"j", fams.labels[b]}};
                            w.sets = {{"F_i", fa.at(i)},
                                      {"F_j", fb.at(j)},
                                      {"F_ij", cands.at(c)}};
                            return CheckReport::fail(std::move(w));
                        }
                    }
                }
            }
        }
    }
    return CheckReport::ok();
}

} // namespace

CheckReport
checkB3(AsymmetricFailProneSystem const& af)
{
    return checkB3Impl(af, nullptr);
}

CheckReport
checkB3(AsymmetricFailProneSystem const& af, SetFamily const& extra)
{
    return checkB3Impl(af, &extra);
}

QuorumSystem
canonicalQuorums(FailProneSystem const& f)
{
    return QuorumSystem(complementFamily(f.family()));
}

AsymmetricQuorumSystem
canonicalQuorums(AsymmetricFailProneSystem const& af)
{
    std::vector<QuorumSystem> per;
    per.reserve(af.size());
    for (size_t i = 0; i < af.size(); ++i)
    {
        per.push_back(canonicalQuorums(af.at(i)));
    }
    return AsymmetricQuorumSystem(af.ground(), std::move(per));
}

CheckReport
checkBqs(QuorumSystem const& q, FailProneSystem const& f)
{
    if (!(q.ground() == f.ground()))
    {
        throw InputError("ground-mismatch",
                         "quorum and fail-prone systems must share a ground");
    }
    auto const& qm = q.family();
    auto const& fm = f.family();
    // An intersection bigger than the largest fail-prone set (the last one,
    // by sort order) cannot be contained in any of them.
    int largest = fm.empty() ? 0 : std::popcount(fm.masks().back());
    for (size_t i = 0; i < qm.size(); ++i)
    {
        for (size_t j = i; j < qm.size(); ++j)
        {
            uint64_t inter = qm.maskAt(i) & qm.maskAt(j);
            if (std::popcount(inter) > largest)
            {
                continue;
            }
            for (size_t k = 0; k < fm.size(); ++k)
            {
                if ((inter & ~fm.maskAt(k)) == 0)
                {
                    Witness w;
                    w.kind = "consistency";
                    w.sets = {{"Q1", qm.at(i)},
                              {"Q2", qm.at(j)},
                              {"F", fm.at(k)}};
                    return CheckReport::fail(std::move(w));
                }
            }
        }
    }
    for (size_t k = 0; k < fm.size(); ++k)
    {
        bool avail = false;
        for (size_t i = 0; i < qm.size(); ++i)
        {
            if ((qm.maskAt(i) & fm.maskAt(k)) == 0)
            {
                avail = true;
                break;
            }
        }
        if (!avail)
        {
            Witness w;
            w.kind = "availability";
            w.sets = {{"F", fm.at(k)}};
            return CheckReport::fail(std::move(w));
        }
    }
    return CheckReport::ok();
}

CheckReport
checkAbqs(AsymmetricQuorumSystem const& aq, AsymmetricFailProneSystem const& af)
{
    if (!(aq.ground() == af.ground()))
    {
        throw InputError("ground-mismatch",
                         "quorum and fail-prone systems must share a ground");
    }
    Ground const& g = af.ground();
    for (size_t a = 0; a < af.size(); ++a)
    {
        for (size_t b = a; b < af.size(); ++b)
        {
            SetFamily cands = closureIntersectionCandidates(
                af.at(a).family(), af.at(b).family());
            auto const& qa = aq.at(a).family();
            auto const& qb = aq.at(b).family();
            int largest =
                cands.empty() ? 0 : std::popcount(cands.masks().back());
            for (size_t i = 0; i < qa.size(); ++i)
            {
                for (size_t j = 0; j < qb.size(); ++j)
                {
                    uint64_t inter = qa.maskAt(i) & qb.maskAt(j);
                    if (std::popcount(inter) > largest)
                    {
                        continue;
                    }
                    for (size_t c = 0; c < cands.size(); ++c)
                    {
                        if ((inter & ~cands.maskAt(c)) == 0)
                        {
                            Witness w;
                            w.kind = "consistency";
                            w.who = {{"i", g.name(a)}, {"j", g.name(b)}};
                            w.sets = {{"Q_i", qa.at(i)},
                                      {"Q_j", qb.at(j)},
                                      {"F_ij", cands.at(c)}};
                            return CheckReport::fail(std::move(w));
                        }
                    }
                }
            }
        }
    }
    for (size_t a = 0; a < af.size(); ++a)
    {
        auto const& fa = af.at(a).family();
        auto const& qa = aq.at(a).family();
        for (size_t k = 0; k < fa.size(); ++k)
        {
            bool avail = false;
            for (size_t i = 0; i < qa.size(); ++i)
            {
                if ((qa.maskAt(i) & fa.maskAt(k)) == 0)
                {
                    avail = true;
                    break;
                }
            }
            if (!avail)
            {
                Witness w;
                w.kind = "availability";
                w.who = {{"i", g.name(a)}};
                w.sets = {{"F_i", fa.at(k)}};
                return CheckReport::fail(std::move(w));
            }
        }
    }
    return CheckReport::ok();
}

} // namespace qk
