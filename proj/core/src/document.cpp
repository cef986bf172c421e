// Copyright 2026 the qk developers. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "qk/document.hpp"

#include "qk/conditions.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>

namespace qk
{

namespace
{

using ordered_json = nlohmann::ordered_json;

// Deterministic rendering: objects and structured arrays go multiline with
// two-space indent, arrays of scalars stay inline. Leaf values reuse the
// library dump so escaping is uniform.
void
renderValue(ordered_json const& j, int indent, std::string& out)
{
    if (j.is_object())
    {
        if (j.empty())
        {
            out += "{}";
            return;
        }
        out += "{\n";
        size_t i = 0;
        for (auto it = j.begin(); it != j.end(); ++it, ++i)
        {
            out.append(indent + 2, ' ');
            out += ordered_json(it.key()).dump();
            out += ": ";
            renderValue(it.value(), indent + 2, out);
            if (i + 1 < j.size())
            {
                out += ",";
            }
            out += "\n";
        }
        out.append(indent, ' ');
        out += "}";
    }
    else if (j.is_array())
    {
        bool scalarsOnly = std::all_of(j.begin(), j.end(),
                                       [](ordered_json const& e) {
                                           return !e.is_structured();
                                       });
        if (j.empty())
        {
            out += "[]";
        }
        else if (scalarsOnly)
        {
            out += "[";
            for (size_t i = 0; i < j.size(); ++i)
            {
                if (i > 0)
                {
                    out += ", ";
                }
                out += j[i].dump();
            }
            out += "]";
        }
        else
        {
            out += "[\n";
            for (size_t i = 0; i < j.size(); ++i)
            {
                out.append(indent + 2, ' ');
                renderValue(j[i], indent + 2, out);
                if (i + 1 < j.size())
                {
                    out += ",";
                }
                out += "\n";
            }
            out.append(indent, ' ');
            out += "]";
        }
    }
    else
    {
        out += j.dump();
    }
}

std::string
renderToplevel(ordered_json const& j)
{
    std::string out;
    renderValue(j, 0, out);
    out += "\n";
    return out;
}

ordered_json
setToJson(ProcessSet const& s)
{
    ordered_json arr = ordered_json::array();
    for (auto const& n : s.names())
    {
        arr.push_back(n);
    }
    return arr;
}

ordered_json
familyToJson(SetFamily const& fam)
{
    ordered_json arr = ordered_json::array();
    for (size_t i = 0; i < fam.size(); ++i)
    {
        arr.push_back(setToJson(fam.at(i)));
    }
    return arr;
}

ordered_json
groundToJson(Ground const& g)
{
    ordered_json arr = ordered_json::array();
    for (auto const& n : g.names())
    {
        arr.push_back(n);
    }
    return arr;
}

ordered_json
parseText(std::string_view text)
{
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded())
    {
        throw InputError("bad-json", "input is not valid JSON");
    }
    return j;
}

void
requireObject(ordered_json const& j, char const* what)
{
    if (!j.is_object())
    {
        throw InputError("bad-document",
                         std::string(what) + " must be a JSON object");
    }
}

void
rejectUnknownKeys(ordered_json const& j,
                  std::initializer_list<std::string_view> known,
                  char const* what)
{
    for (auto it = j.begin(); it != j.end(); ++it)
    {
        // Output metadata from this tool round-trips harmlessly.
        if (it.key() == "provenance" || it.key() == "report")
        {
            continue;
        }
        if (std::find(known.begin(), known.end(), it.key()) == known.end())
        {
            throw InputError("unknown-field", std::string(what) +
                                                  " has unknown field '" +
                                                  it.key() + "'");
        }
    }
}

std::vector<std::string>
parseNameList(ordered_json const& j, char const* what)
{
    if (!j.is_array())
    {
        throw InputError("bad-document",
                         std::string(what) + " must be an array of names");
    }
    std::vector<std::string> names;
    names.reserve(j.size());
    for (auto const& e : j)
    {
        if (!e.is_string())
        {
            throw InputError("bad-document",
                             std::string(what) + " must contain only strings");
        }
        names.push_back(e.get<std::string>());
    }
    return names;
}

SetFamily
parseFamily(ordered_json const& j, Ground const& g, char const* what)
{
    if (!j.is_array())
    {
        throw InputError("bad-document", std::string(what) +
                                             " must be an array of sets");
    }
    std::vector<ProcessSet> sets;
    sets.reserve(j.size());
    for (auto const& e : j)
    {
        auto names = parseNameList(e, what);
        sets.push_back(ProcessSet::of(g, names));
    }
    return SetFamily::of(g, sets);
}

FailProneSystem
parseFailProne(ordered_json const& j, Ground const& g, bool normalize,
               char const* what)
{
    SetFamily fam = parseFamily(j, g, what);
    if (!fam.isAntichain() && !normalize)
    {
        throw InputError("not-an-antichain",
                         std::string(what) +
                             " is not an antichain; pass --normalize to "
                             "maximalize it");
    }
    return normalize ? FailProneSystem::normalized(fam) : FailProneSystem(fam);
}

// Per-process map with exactly the ground's names as keys.
template <typename System, typename ParseOne>
std::vector<System>
parsePerProcess(ordered_json const& j, Ground const& g, char const* what,
                ParseOne parseOne)
{
    requireObject(j, what);
    for (auto it = j.begin(); it != j.end(); ++it)
    {
        if (!g.contains(it.key()))
        {
            throw InputError("unknown-process",
                             std::string(what) + " has entry for '" +
                                 it.key() +
                                 "', which is not in the process list");
        }
    }
    std::vector<System> per;
    per.reserve(g.size());
    for (auto const& name : g.names())
    {
        auto it = j.find(name);
        if (it == j.end())
        {
            throw InputError("missing-process",
                             std::string(what) + " lacks an entry for '" +
                                 name + "'");
        }
        per.push_back(parseOne(*it, name));
    }
    return per;
}

ordered_json
witnessToJson(Witness const& w)
{
    ordered_json j;
    j["kind"] = w.kind;
    for (auto const& [role, name] : w.who)
    {
        j[role] = name;
    }
    ordered_json sets;
    for (auto const& [role, set] : w.sets)
    {
        sets[role] = setToJson(set);
    }
    j["sets"] = std::move(sets);
    return j;
}

ordered_json
reportToJson(CheckReport const& r)
{
    ordered_json j;
    j["holds"] = r.holds;
    if (r.witness)
    {
        j["witness"] = witnessToJson(*r.witness);
    }
    return j;
}

ordered_json
historyToJson(History const& h)
{
    ordered_json arr = ordered_json::array();
    for (auto const& e : h)
    {
        arr.push_back(ordered_json::array({e.origin, e.seq, e.payload}));
    }
    return arr;
}

ordered_json
systemDocumentToJson(SystemDocument const& doc)
{
    ordered_json j;
    if (doc.kind == SystemDocument::Kind::Symmetric)
    {
        j["kind"] = "symmetric";
        j["processes"] = groundToJson(doc.ground);
        j["fail_prone"] = familyToJson(doc.failProne->family());
        if (doc.quorums)
        {
            j["quorums"] = familyToJson(doc.quorums->family());
        }
    }
    else
    {
        j["kind"] = "asymmetric";
        j["processes"] = groundToJson(doc.ground);
        ordered_json fps;
        for (size_t i = 0; i < doc.ground.size(); ++i)
        {
            fps[doc.ground.name(i)] =
                familyToJson(doc.failProneSystems->at(i).family());
        }
        j["fail_prone_systems"] = std::move(fps);
        if (doc.quorumSystems)
        {
            ordered_json qss;
            for (size_t i = 0; i < doc.ground.size(); ++i)
            {
                qss[doc.ground.name(i)] =
                    familyToJson(doc.quorumSystems->at(i).family());
            }
            j["quorum_systems"] = std::move(qss);
        }
    }
    return j;
}

SystemDocument
systemDocumentFromJson(ordered_json const& j, bool normalize)
{
    requireObject(j, "a system document");
    rejectUnknownKeys(j,
                      {"kind", "processes", "fail_prone", "quorums",
                       "fail_prone_systems", "quorum_systems"},
                      "a system document");
    auto kindIt = j.find("kind");
    if (kindIt == j.end() || !kindIt->is_string())
    {
        throw InputError("bad-document",
                         "a system document needs a string field 'kind'");
    }
    std::string kind = kindIt->get<std::string>();
    auto procIt = j.find("processes");
    if (procIt == j.end())
    {
        throw InputError("bad-document",
                         "a system document needs a 'processes' list");
    }
    Ground ground = Ground::of(parseNameList(*procIt, "'processes'"));

    SystemDocument doc;
    doc.ground = ground;
    if (kind == "symmetric")
    {
        doc.kind = SystemDocument::Kind::Symmetric;
        auto fpIt = j.find("fail_prone");
        if (fpIt == j.end())
        {
            throw InputError("bad-document",
                             "a symmetric document needs 'fail_prone'");
        }
        doc.failProne = parseFailProne(*fpIt, ground, normalize, "'fail_prone'");
        if (auto qIt = j.find("quorums"); qIt != j.end())
        {
            doc.quorums = QuorumSystem(parseFamily(*qIt, ground, "'quorums'"));
        }
        if (j.contains("fail_prone_systems") || j.contains("quorum_systems"))
        {
            throw InputError("bad-document",
                             "symmetric documents use 'fail_prone' and "
                             "'quorums'");
        }
    }
    else if (kind == "asymmetric")
    {
        doc.kind = SystemDocument::Kind::Asymmetric;
        auto fpIt = j.find("fail_prone_systems");
        if (fpIt == j.end())
        {
            throw InputError("bad-document",
                             "an asymmetric document needs "
                             "'fail_prone_systems'");
        }
        auto perFp = parsePerProcess<FailProneSystem>(
            *fpIt, ground, "'fail_prone_systems'",
            [&](ordered_json const& e, std::string const& name) {
                return parseFailProne(e, ground, normalize,
                                      ("fail-prone system of '" + name + "'")
                                          .c_str());
            });
        doc.failProneSystems =
            AsymmetricFailProneSystem(ground, std::move(perFp));
        if (auto qIt = j.find("quorum_systems"); qIt != j.end())
        {
            auto perQ = parsePerProcess<QuorumSystem>(
                *qIt, ground, "'quorum_systems'",
                [&](ordered_json const& e, std::string const& name) {
                    return QuorumSystem(parseFamily(
                        e, ground,
                        ("quorum system of '" + name + "'").c_str()));
                });
            doc.quorumSystems = AsymmetricQuorumSystem(ground, std::move(perQ));
        }
        if (j.contains("fail_prone") || j.contains("quorums"))
        {
            throw InputError("bad-document",
                             "asymmetric documents use 'fail_prone_systems' "
                             "and 'quorum_systems'");
        }
    }
    else
    {
        throw InputError("bad-document",
                         "'kind' must be \"symmetric\" or \"asymmetric\"");
    }
    return doc;
}

} // namespace

QuorumSystem
SystemDocument::effectiveQuorums() const
{
    if (kind != Kind::Symmetric)
    {
        throw InputError("bad-document",
                         "symmetric quorums requested from an asymmetric "
                         "document");
    }
    return quorums ? *quorums : canonicalQuorums(*failProne);
}

AsymmetricQuorumSystem
SystemDocument::effectiveQuorumSystems() const
{
    if (kind == Kind::Symmetric)
    {
        return AsymmetricQuorumSystem::symmetric(effectiveQuorums());
    }
    return quorumSystems ? *quorumSystems : canonicalQuorums(*failProneSystems);
}

AsymmetricSystem
SystemDocument::asAsymmetric() const
{
    if (kind == Kind::Symmetric)
    {
        return AsymmetricSystem{AsymmetricFailProneSystem::symmetric(*failProne),
                                AsymmetricQuorumSystem::symmetric(
                                    effectiveQuorums())};
    }
    return AsymmetricSystem{*failProneSystems, effectiveQuorumSystems()};
}

SystemDocument
parseSystemDocument(std::string_view text, bool normalize)
{
    return systemDocumentFromJson(parseText(text), normalize);
}

std::string
serializeSystemDocument(SystemDocument const& doc)
{
    return renderToplevel(systemDocumentToJson(doc));
}

Scenario
parseScenarioDocument(std::string_view text, bool normalize)
{
    ordered_json j = parseText(text);
    requireObject(j, "a scenario document");
    rejectUnknownKeys(j,
                      {"system_a", "system_b", "initiator", "faulty",
                       "behavior", "history_a", "history_b", "seed", "merge"},
                      "a scenario document");
    for (char const* field : {"system_a", "system_b", "initiator", "faulty",
                              "history_a", "history_b", "seed"})
    {
        if (!j.contains(field))
        {
            throw InputError("bad-document",
                             std::string("a scenario document needs '") +
                                 field + "'");
        }
    }

    Scenario s;
    s.systemA = systemDocumentFromJson(j["system_a"], normalize).asAsymmetric();
    s.systemB = systemDocumentFromJson(j["system_b"], normalize).asAsymmetric();
    if (!j["initiator"].is_string())
    {
        throw InputError("bad-document", "'initiator' must be a name");
    }
    s.initiator = j["initiator"].get<std::string>();
    s.faulty = parseNameList(j["faulty"], "'faulty'");
    std::sort(s.faulty.begin(), s.faulty.end());
    s.faulty.erase(std::unique(s.faulty.begin(), s.faulty.end()),
                   s.faulty.end());
    if (auto it = j.find("behavior"); it != j.end())
    {
        requireObject(*it, "'behavior'");
        for (auto b = it->begin(); b != it->end(); ++b)
        {
            if (!b->is_string())
            {
                throw InputError("bad-document",
                                 "'behavior' values are \"silent\" or "
                                 "\"equivocate\"");
            }
            std::string v = b->get<std::string>();
            if (v == "silent")
            {
                s.behavior[b.key()] = FaultBehavior::Silent;
            }
            else if (v == "equivocate")
            {
                s.behavior[b.key()] = FaultBehavior::Equivocate;
            }
            else
            {
                throw InputError("bad-document",
                                 "unknown behavior '" + v + "'");
            }
        }
    }
    auto parseHist = [](ordered_json const& arr, char const* what) {
        if (!arr.is_array())
        {
            throw InputError("bad-document",
                             std::string(what) +
                                 " must be an array of [origin, seq, payload]");
        }
        History h;
        for (auto const& e : arr)
        {
            if (!e.is_array() || e.size() != 3 || !e[0].is_string() ||
                !e[1].is_number_integer() || !e[2].is_string())
            {
                throw InputError("bad-document",
                                 std::string(what) +
                                     " entries are [origin, seq, payload]");
            }
            h.push_back(HistoryEntry{e[0].get<std::string>(),
                                     e[1].get<int64_t>(),
                                     e[2].get<std::string>()});
        }
        validateHistory(h);
        return h;
    };
    s.historyA = parseHist(j["history_a"], "'history_a'");
    s.historyB = parseHist(j["history_b"], "'history_b'");
    if (!j["seed"].is_number_integer() && !j["seed"].is_number_unsigned())
    {
        throw InputError("bad-document", "'seed' must be an integer");
    }
    s.seed = j["seed"].get<uint64_t>();
    if (auto it = j.find("merge"); it != j.end())
    {
        if (!it->is_string())
        {
            throw InputError("bad-document", "'merge' must be a string");
        }
        s.mergeFn = it->get<std::string>();
    }
    return s;
}

std::string
serializeScenarioDocument(Scenario const& s)
{
    ordered_json j;
    auto sysToJson = [](AsymmetricSystem const& sys) {
        SystemDocument doc;
        doc.kind = SystemDocument::Kind::Asymmetric;
        doc.ground = sys.failProne.ground();
        doc.failProneSystems = sys.failProne;
        doc.quorumSystems = sys.quorums;
        return systemDocumentToJson(doc);
    };
    j["system_a"] = sysToJson(s.systemA);
    j["system_b"] = sysToJson(s.systemB);
    j["initiator"] = s.initiator;
    ordered_json faulty = ordered_json::array();
    for (auto const& f : s.faulty)
    {
        faulty.push_back(f);
    }
    j["faulty"] = std::move(faulty);
    ordered_json behavior;
    for (auto const& [name, b] : s.behavior)
    {
        behavior[name] =
            b == FaultBehavior::Silent ? "silent" : "equivocate";
    }
    j["behavior"] = std::move(behavior);
    j["history_a"] = historyToJson(s.historyA);
    j["history_b"] = historyToJson(s.historyB);
    j["seed"] = s.seed;
    j["merge"] = s.mergeFn;
    return renderToplevel(j);
}

std::string
renderFamilyDocument(SetFamily const& family)
{
    ordered_json j;
    j["processes"] = groundToJson(family.ground());
    j["family"] = familyToJson(family);
    return renderToplevel(j);
}

std::string
renderWitness(Witness const& witness)
{
    return renderToplevel(witnessToJson(witness));
}

std::string
renderCheckReport(CheckReport const& report)
{
    return renderToplevel(reportToJson(report));
}

std::string
renderClassification(Classification const& c)
{
    ordered_json j;
    for (size_t i = 0; i < c.ground().size(); ++i)
    {
        j[c.ground().name(i)] = std::string(roleName(c.at(i)));
    }
    return renderToplevel(j);
}

std::string
renderProcessSetDocument(std::string_view key, ProcessSet const& set)
{
    ordered_json j;
    j["processes"] = groundToJson(set.ground());
    j[std::string(key)] = setToJson(set);
    return renderToplevel(j);
}

std::string
renderCompositionResult(CompositionResult const& result)
{
    SystemDocument doc;
    if (result.isAsymmetric())
    {
        doc.kind = SystemDocument::Kind::Asymmetric;
        doc.ground = result.asymFailProne->ground();
        doc.failProneSystems = result.asymFailProne;
        doc.quorumSystems = result.asymQuorums;
    }
    else
    {
        doc.kind = SystemDocument::Kind::Symmetric;
        doc.ground = result.failProne->ground();
        doc.failProne = result.failProne;
        doc.quorums = result.quorums;
    }
    ordered_json j = systemDocumentToJson(doc);
    ordered_json prov;
    prov["rule"] = result.provenance.rule;
    if (result.provenance.allowOverlap)
    {
        prov["allow_overlap"] = true;
    }
    if (result.provenance.autoPurify)
    {
        prov["auto_purify"] = true;
    }
    if (!result.provenance.notes.empty())
    {
        ordered_json notes = ordered_json::array();
        for (auto const& n : result.provenance.notes)
        {
            notes.push_back(n);
        }
        prov["notes"] = std::move(notes);
    }
    j["provenance"] = std::move(prov);
    j["report"] = reportToJson(result.report);
    return renderToplevel(j);
}

std::string
renderHistory(History const& h)
{
    return historyToJson(h).dump();
}

std::string
renderTrace(Trace const& trace)
{
    std::string out;
    for (auto const& e : trace.events)
    {
        ordered_json j;
        j["step"] = e.step;
        j["event"] = e.event;
        j["process"] = e.process;
        char buf[17];
        snprintf(buf, sizeof(buf), "%016llx",
                 static_cast<unsigned long long>(e.digest));
        j["digest"] = buf;
        out += j.dump();
        out += "\n";
    }
    size_t composed = 0;
    for (auto const& [name, outcome] : trace.outcomes)
    {
        ordered_json j;
        j["process"] = name;
        j["outcome"] = outcome.composed ? "Composed" : "Undecided";
        if (outcome.composed)
        {
            j["merged"] = historyToJson(outcome.merged);
            ++composed;
        }
        out += j.dump();
        out += "\n";
    }
    ordered_json summary;
    summary["summary"]["composed"] = composed;
    summary["summary"]["undecided"] = trace.outcomes.size() - composed;
    summary["summary"]["step_bound_exceeded"] = trace.stepBoundExceeded;
    ordered_json flags = ordered_json::array();
    for (auto const& f : trace.flags)
    {
        flags.push_back(f);
    }
    summary["summary"]["flags"] = std::move(flags);
    out += summary.dump();
    out += "\n";
    return out;
}

std::vector<std::string>
lintSelfSuspicion(AsymmetricFailProneSystem const& af)
{
    std::vector<std::string> notes;
    for (size_t i = 0; i < af.size(); ++i)
    {
        auto const& name = af.ground().name(i);
        for (size_t k = 0; k < af.at(i).family().size(); ++k)
        {
            if ((af.at(i).family().maskAt(k) >> i) & 1)
            {
                notes.push_back("process '" + name +
                                "' appears in its own fail-prone set; most "
                                "deployments exclude self-suspicion");
                break;
            }
        }
    }
    return notes;
}

} // namespace qk
