// Copyright 2026 the qk developers. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "qk/cli.hpp"

#include "qk/analysis.hpp"
#include "qk/compose.hpp"
#include "qk/conditions.hpp"
#include "qk/document.hpp"
#include "qk/purify.hpp"
#include "qk/sim.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace qk
{

namespace
{

using ordered_json = nlohmann::ordered_json;

std::string
readInput(std::string const& path)
{
    if (path == "-")
    {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw InputError("unreadable-file", "cannot read '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string>
splitNames(std::string const& list)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : list)
    {
        if (c == ',')
        {
            if (!cur.empty())
            {
                out.push_back(cur);
                cur.clear();
            }
        }
        else
        {
            cur += c;
        }
    }
    if (!cur.empty())
    {
        out.push_back(cur);
    }
    return out;
}

void
emitLint(SystemDocument const& doc, std::ostream& err)
{
    if (doc.kind != SystemDocument::Kind::Asymmetric)
    {
        return;
    }
    for (auto const& note : lintSelfSuspicion(*doc.failProneSystems))
    {
        err << "warning: " << note << "\n";
    }
}

int
emitCheck(CheckReport const& report, std::ostream& out)
{
    if (report.holds)
    {
        out << "HOLDS\n";
        return 0;
    }
    out << "FAILS\n" << renderWitness(*report.witness);
    return 1;
}

AsymmetricSystem
loadAsymmetric(std::string const& path, bool normalize, std::ostream& err)
{
    SystemDocument doc = parseSystemDocument(readInput(path), normalize);
    emitLint(doc, err);
    return doc.asAsymmetric();
}

SystemDocument
loadSymmetric(std::string const& path, bool normalize, std::ostream& err)
{
    SystemDocument doc = parseSystemDocument(readInput(path), normalize);
    if (doc.kind != SystemDocument::Kind::Symmetric)
    {
        throw InputError("bad-document",
                         "'" + path + "' must be a symmetric document here");
    }
    emitLint(doc, err);
    return doc;
}

uint64_t
parseSeed(std::string const& text, char const* source)
{
    // stoull would wrap negative input silently.
    if (text.empty() || text[0] == '-')
    {
        throw InputError("bad-seed", std::string(source) +
                                         " is not a 64-bit unsigned integer");
    }
    try
    {
        size_t pos = 0;
        unsigned long long v = std::stoull(text, &pos);
        if (pos != text.size())
        {
            throw std::invalid_argument("trailing characters");
        }
        return static_cast<uint64_t>(v);
    }
    catch (std::exception const&)
    {
        throw InputError("bad-seed", std::string(source) +
                                         " is not a 64-bit unsigned integer");
    }
}

struct CliOptions
{
    std::string file;
    std::string fileB;
    std::string faulty;
    std::string processName;
    std::string rule;
    std::string seedFlag;
    bool normalize = false;
    bool allowOverlap = false;
    bool autoPurify = false;
    bool rederiveQuorums = false;
};

int
dispatch(std::string const& cmd, CliOptions const& opt, std::ostream& out,
         std::ostream& err)
{
    bool norm = opt.normalize;
    if (cmd == "check-q3")
    {
        auto doc = loadSymmetric(opt.file, norm, err);
        return emitCheck(checkQ3(*doc.failProne), out);
    }
    if (cmd == "check-b3")
    {
        auto sys = loadAsymmetric(opt.file, norm, err);
        return emitCheck(checkB3(sys.failProne), out);
    }
    if (cmd == "check-bqs")
    {
        auto doc = loadSymmetric(opt.file, norm, err);
        return emitCheck(checkBqs(doc.effectiveQuorums(), *doc.failProne), out);
    }
    if (cmd == "check-abqs")
    {
        auto sys = loadAsymmetric(opt.file, norm, err);
        return emitCheck(checkAbqs(sys.quorums, sys.failProne), out);
    }
    if (cmd == "canonical")
    {
        SystemDocument doc = parseSystemDocument(readInput(opt.file), norm);
        emitLint(doc, err);
        if (doc.kind == SystemDocument::Kind::Symmetric)
        {
            doc.quorums = canonicalQuorums(*doc.failProne);
        }
        else
        {
            doc.quorumSystems = canonicalQuorums(*doc.failProneSystems);
        }
        out << serializeSystemDocument(doc);
        return 0;
    }
    if (cmd == "classify")
    {
        auto sys = loadAsymmetric(opt.file, norm, err);
        auto failed = ProcessSet::of(sys.failProne.ground(),
                                     splitNames(opt.faulty));
        out << renderClassification(classify(sys.failProne, failed));
        return 0;
    }
    if (cmd == "guild")
    {
        auto sys = loadAsymmetric(opt.file, norm, err);
        auto failed = ProcessSet::of(sys.failProne.ground(),
                                     splitNames(opt.faulty));
        out << renderProcessSetDocument(
            "guild", maxGuild(sys.quorums, sys.failProne, failed));
        return 0;
    }
    if (cmd == "tolerated")
    {
        auto sys = loadAsymmetric(opt.file, norm, err);
        out << renderFamilyDocument(
            toleratedSystem(sys.quorums, sys.failProne).family());
        return 0;
    }
    if (cmd == "kernels")
    {
        SystemDocument doc = parseSystemDocument(readInput(opt.file), norm);
        emitLint(doc, err);
        if (doc.kind == SystemDocument::Kind::Symmetric)
        {
            out << renderFamilyDocument(kernels(doc.effectiveQuorums()));
            return 0;
        }
        auto aq = doc.effectiveQuorumSystems();
        if (opt.processName.empty())
        {
            throw InputError("missing-option",
                             "kernels on an asymmetric document needs "
                             "--process");
        }
        out << renderFamilyDocument(kernels(aq.of(opt.processName)));
        return 0;
    }
    if (cmd == "purify")
    {
        SystemDocument doc = parseSystemDocument(readInput(opt.file), norm);
        emitLint(doc, err);
        // Symmetric documents replicate into the asymmetric model first.
        auto sys = doc.asAsymmetric();
        ToleratedSystem t = toleratedSystem(sys.quorums, sys.failProne);
        AsymmetricFailProneSystem purified = purify(sys.failProne, t);
        SystemDocument result;
        result.kind = SystemDocument::Kind::Asymmetric;
        result.ground = sys.failProne.ground();
        result.failProneSystems = purified;
        // Purification leaves quorum systems alone, which keeps the tolerated
        // system invariant. The output pins them explicitly so a reader does
        // not re-derive canonical quorums from the purified families;
        // --rederive-quorums opts into exactly that, tolerated shift and all.
        result.quorumSystems = opt.rederiveQuorums ? canonicalQuorums(purified)
                                                   : sys.quorums;
        out << serializeSystemDocument(result);
        return 0;
    }
    if (cmd == "compose")
    {
        if (opt.rule == "asym")
        {
            auto s1 = loadAsymmetric(opt.file, norm, err);
            auto s2 = loadAsymmetric(opt.fileB, norm, err);
            auto result = composeAsymmetric(s1, s2, opt.autoPurify);
            out << renderCompositionResult(result);
            return result.report.holds ? 0 : 1;
        }
        auto d1 = loadSymmetric(opt.file, norm, err);
        auto d2 = loadSymmetric(opt.fileB, norm, err);
        CompositionResult result;
        if (opt.rule == "union")
        {
            result = unionCompose(*d1.failProne, *d2.failProne, d1.quorums,
                                  d2.quorums);
        }
        else if (opt.rule == "cartesian")
        {
            result = cartesianCompose(*d1.failProne, *d2.failProne,
                                      opt.allowOverlap, d1.quorums, d2.quorums);
        }
        else if (opt.rule == "general")
        {
            result = composeSymmetric(*d1.failProne, *d2.failProne, d1.quorums,
                                      d2.quorums);
        }
        else
        {
            throw InputError("bad-rule",
                             "--rule must be union, cartesian, general, or "
                             "asym");
        }
        out << renderCompositionResult(result);
        return result.report.holds ? 0 : 1;
    }
    if (cmd == "simulate")
    {
        Scenario scenario = parseScenarioDocument(readInput(opt.file), norm);
        // Seed precedence: flag > environment > scenario file.
        if (char const* env = std::getenv("QK_SEED"))
        {
            scenario.seed = parseSeed(env, "QK_SEED");
        }
        if (!opt.seedFlag.empty())
        {
            scenario.seed = parseSeed(opt.seedFlag, "--seed");
        }
        Trace trace = run(scenario);
        out << renderTrace(trace);

        Ground const& ga = scenario.systemA.failProne.ground();
        Ground const& gb = scenario.systemB.failProne.ground();
        auto faultyIn = [&](Ground const& g) {
            std::vector<std::string> names;
            for (auto const& f : scenario.faulty)
            {
                if (g.contains(f))
                {
                    names.push_back(f);
                }
            }
            return ProcessSet::of(g, names);
        };
        ProcessSet guildA = maxGuild(scenario.systemA.quorums,
                                     scenario.systemA.failProne, faultyIn(ga));
        ProcessSet guildB = maxGuild(scenario.systemB.quorums,
                                     scenario.systemB.failProne, faultyIn(gb));
        for (auto const& member : {guildA.names(), guildB.names()})
        {
            for (auto const& name : member)
            {
                auto it = trace.outcomes.find(name);
                if (it == trace.outcomes.end() || !it->second.composed)
                {
                    return 1;
                }
            }
        }
        return 0;
    }
    throw InputError("unknown-command", "unknown subcommand '" + cmd + "'");
}

} // namespace

int
runCommand(std::vector<std::string> const& args, std::ostream& out,
           std::ostream& err)
{
    CLI::App app{"qk - model, verify, and compose Byzantine quorum systems"};
    app.require_subcommand(1);

    CliOptions opt;
    auto addCommon = [&](CLI::App* sub, bool twoFiles = false) {
        sub->add_option("file", opt.file, "input document (- for stdin)")
            ->required();
        if (twoFiles)
        {
            sub->add_option("file_b", opt.fileB, "second input document")
                ->required();
        }
        sub->add_flag("--normalize", opt.normalize,
                      "maximalize non-antichain fail-prone input instead of "
                      "rejecting it");
    };

    addCommon(app.add_subcommand("check-q3",
                                 "check the Q3-condition of a symmetric "
                                 "fail-prone system"));
    addCommon(app.add_subcommand("check-b3",
                                 "check the B3-condition of an asymmetric "
                                 "fail-prone system"));
    addCommon(app.add_subcommand("check-bqs",
                                 "check consistency and availability of a "
                                 "symmetric quorum system"));
    addCommon(app.add_subcommand("check-abqs",
                                 "check consistency and availability of an "
                                 "asymmetric quorum system"));
    addCommon(app.add_subcommand("canonical",
                                 "fill in canonical quorums for a document"));

    auto* classifyCmd = app.add_subcommand(
        "classify", "classify processes as faulty, naive, or wise");
    addCommon(classifyCmd);
    classifyCmd->add_option("--faulty", opt.faulty,
                            "comma-separated actually-failed processes");

    auto* guildCmd =
        app.add_subcommand("guild", "compute the maximal guild of an execution");
    addCommon(guildCmd);
    guildCmd->add_option("--faulty", opt.faulty,
                         "comma-separated actually-failed processes");

    addCommon(app.add_subcommand("tolerated",
                                 "compute the tolerated system of an "
                                 "asymmetric system"));

    auto* kernelsCmd = app.add_subcommand(
        "kernels", "compute all minimal kernels of a quorum system");
    addCommon(kernelsCmd);
    kernelsCmd->add_option("--process", opt.processName,
                           "which process's quorum system (asymmetric "
                           "documents)");

    auto* purifyCmd = app.add_subcommand(
        "purify", "purify an asymmetric system against its tolerated system");
    addCommon(purifyCmd);
    purifyCmd->add_flag("--rederive-quorums", opt.rederiveQuorums,
                        "derive canonical quorums from the purified families "
                        "(changes the tolerated system)");

    auto* composeCmd =
        app.add_subcommand("compose", "compose two systems into one");
    addCommon(composeCmd, /*twoFiles=*/true);
    composeCmd
        ->add_option("--rule", opt.rule, "union | cartesian | general | asym")
        ->required();
    composeCmd->add_flag("--allow-overlap", opt.allowOverlap,
                         "allow the raw cartesian product over overlapping "
                         "grounds (unsafe)");
    composeCmd->add_flag("--auto-purify", opt.autoPurify,
                         "purify both inputs before asymmetric composition");

    auto* simulateCmd = app.add_subcommand(
        "simulate", "run the composition handshake on a scenario");
    addCommon(simulateCmd);
    simulateCmd->add_option("--seed", opt.seedFlag,
                            "override the scenario seed (beats QK_SEED)");

    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        return dispatch(app.get_subcommands().front()->get_name(), opt, out,
                        err);
    }
    catch (CLI::CallForHelp const& e)
    {
        out << app.help();
        return 0;
    }
    catch (CLI::ParseError const& e)
    {
        ordered_json detail;
        detail["error"]["code"] = "bad-arguments";
        detail["error"]["message"] = e.what();
        err << detail.dump() << "\n";
        return 2;
    }
    catch (InputError const& e)
    {
        ordered_json detail;
        detail["error"]["code"] = e.code();
        detail["error"]["message"] = e.what();
        if (!e.detail().empty())
        {
            ordered_json parsed =
                ordered_json::parse(e.detail(), nullptr, false);
            detail["error"]["detail"] =
                parsed.is_discarded() ? ordered_json(e.detail()) : parsed;
        }
        err << detail.dump() << "\n";
        return 2;
    }
    catch (std::exception const& e)
    {
        ordered_json detail;
        detail["error"]["code"] = "internal";
        detail["error"]["message"] = e.what();
        err << detail.dump() << "\n";
        return 2;
    }
}

} // namespace qk
