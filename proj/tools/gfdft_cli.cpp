// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: field info, conjugacy classes, compiled plans,
// transforms, the invariant suite, and complexity-table regeneration.
//
// Exit codes: 0 success, 1 verification failure, 2 input error,
// 3 unsupported configuration.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gfdft/dft.hpp"
#include "gfdft/random.hpp"
#include "gfdft/verify.hpp"

using json = nlohmann::ordered_json;
using namespace gfdft;

namespace {

struct RunConfig {
    int m = 4;
    std::string modulus;  // empty = built-in default
    std::string algo;     // empty = novel for even m, gb otherwise
    std::string format = "text";
    std::uint64_t seed = 0;
    int verbosity = 0;
};

std::uint32_t parse_modulus(const std::string& text) {
    if (text.empty())
        return 0;
    if (text.find('x') != std::string::npos && text.find("0x") != 0) {
        auto p = BinPoly::parse(text);
        return static_cast<std::uint32_t>(p.bits);
    }
    try {
        return static_cast<std::uint32_t>(std::stoul(text, nullptr, 0));
    } catch (const std::exception&) {
        throw ParseError("bad modulus '" + text + "': expected x^k+... form or an integer bit mask");
    }
}

FieldCtx make_field(const RunConfig& cfg) { return FieldCtx(cfg.m, parse_modulus(cfg.modulus)); }

DftPlan::Algo pick_algo(const RunConfig& cfg) {
    std::string a = cfg.algo;
    if (a.empty())
        a = (cfg.m % 2 == 0) ? "novel" : "gb";
    if (a == "naive")
        return DftPlan::Algo::naive;
    if (a == "gb")
        return DftPlan::Algo::goertzel_blahut;
    if (a == "cyclotomic")
        return DftPlan::Algo::cyclotomic;
    if (a == "novel") {
        if (cfg.m % 2 != 0)
            throw OddExtensionDegree("odd m: novel method unavailable; even extension degree required");
        return DftPlan::Algo::novel;
    }
    throw ParseError("unknown algorithm '" + a + "'; expected naive, gb, cyclotomic or novel");
}

json ops_json(const OpCounter& counter) {
    return json{{"mults", counter.mults},
                {"field_adds", counter.field_adds},
                {"binary_stage_adds", counter.binary_stage_adds},
                {"total_adds", counter.total_adds()}};
}

json class_json(const ConjugacyClass& cls) {
    return json{{"c", cls.c}, {"members", cls.members}, {"cardinality", cls.cardinality}};
}

std::string class_text(const FieldCtx& ctx, const ConjugacyClass& cls) {
    std::string s = "(";
    for (std::size_t i = 0; i < cls.members.size(); ++i) {
        if (i)
            s += ", ";
        s += ctx.to_string(ctx.from_exp(cls.members[i]));
    }
    return s + ")";
}

int cmd_info(const RunConfig& cfg) {
    FieldCtx ctx = make_field(cfg);
    if (cfg.format == "json") {
        std::cout << json{{"m", ctx.m()}, {"modulus_bits", ctx.modulus_bits()}}.dump(2) << "\n";
    } else {
        std::cout << "GF(2^" << ctx.m() << "), n = " << ctx.n() << "\n";
        std::cout << "modulus: " << BinPoly{ctx.modulus_bits()}.to_string() << " (0x" << std::hex
                  << ctx.modulus_bits() << std::dec << ")\n";
        std::cout << "conjugacy classes: " << enumerate_classes(ctx).size() << "\n";
    }
    return 0;
}

int cmd_classes(const RunConfig& cfg) {
    FieldCtx ctx = make_field(cfg);
    auto classes = enumerate_classes(ctx);
    std::optional<ConjugacyClass> special;
    if (ctx.m() % 2 == 0)
        special = find_special_class(ctx);
    if (cfg.format == "json") {
        json out;
        out["classes"] = json::array();
        for (const auto& cls : classes)
            out["classes"].push_back(class_json(cls));
        out["special"] = special ? class_json(*special) : json(nullptr);
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& cls : classes)
            std::cout << "c=" << cls.c << "  cardinality=" << cls.cardinality << "  "
                      << class_text(ctx, cls) << "\n";
        if (special)
            std::cout << "special class: c=" << special->c << "  " << class_text(ctx, *special)
                      << "\n";
        else
            std::cout << "special class: n/a (odd m)\n";
    }
    return 0;
}

json factor_chain(const FieldCtx& ctx, const FactoredEvaluator& ev) {
    json chain = json::array();
    auto bits = [](const BinMatrix& a) { return a.to_bit_strings(); };
    switch (ev.kind()) {
    case FactoredEvaluator::Kind::trivial:
        break;
    case FactoredEvaluator::Kind::base2: {
        chain.push_back({{"kind", "binary"}, {"payload", std::vector<std::string>{"10", "11"}}});
        chain.push_back({{"kind", "diag"},
                         {"payload", json{{"form", "upper-unit"},
                                          {"constants", {ctx.to_string(ev.base2_constant())}}}}});
        break;
    }
    case FactoredEvaluator::Kind::base3: {
        json consts = json::array();
        for (auto k : ev.base3_constants())
            consts.push_back(ctx.to_string(k));
        chain.push_back(
            {{"kind", "diag"}, {"payload", json{{"form", "short-convolution"}, {"constants", consts}}}});
        break;
    }
    case FactoredEvaluator::Kind::even: {
        BinMatrix lower(static_cast<std::size_t>(ev.degree()), static_cast<std::size_t>(ev.degree()));
        for (int i = 0; i < ev.degree(); ++i)
            lower.set(static_cast<std::size_t>(i), static_cast<std::size_t>(i), true);
        for (int i = 0; i < ev.degree() / 2; ++i)
            lower.set(static_cast<std::size_t>(ev.degree() / 2 + i), static_cast<std::size_t>(i), true);
        chain.push_back({{"kind", "binary"}, {"payload", bits(lower)}});
        json consts = json::array();
        for (auto d : ev.diag())
            consts.push_back(ctx.to_string(d));
        chain.push_back(
            {{"kind", "diag"}, {"payload", json{{"form", "upper-unit"}, {"constants", consts}}}});
        chain.push_back({{"kind", "sub"},
                         {"payload", json{{"degree", ev.sub()->degree()},
                                          {"chain", factor_chain(ctx, *ev.sub())},
                                          {"delta_pre", bits(ev.delta_pre())}}}});
        chain.push_back({{"kind", "perm"}, {"payload", ev.pi().image()}});
        chain.push_back({{"kind", "binary"}, {"payload", bits(ev.b_inv())}});
        break;
    }
    }
    if (!ev.bridge().empty())
        chain.push_back({{"kind", "binary"}, {"payload", bits(ev.bridge())}});
    return chain;
}

int cmd_plan(const RunConfig& cfg, bool dump, long dump_class) {
    FieldCtx ctx = make_field(cfg);
    if (dump) {
        auto cls = class_of_exponent(ctx, static_cast<std::uint32_t>(dump_class % ctx.n()));
        auto ev = FactoredEvaluator::build(ctx, cls);
        json out{{"class", class_json(cls)},
                 {"static_mults", ev->static_mults()},
                 {"static_field_adds", ev->static_adds()},
                 {"tail", ev->tail().to_bit_strings()},
                 {"chain", factor_chain(ctx, *ev)}};
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    DftPlan plan = make_plan(ctx, pick_algo(cfg));
    if (cfg.format == "json") {
        json out{{"algo", DftPlan::algo_name(plan.variant)},
                 {"m", ctx.m()},
                 {"n", ctx.n()},
                 {"static_mults", plan.static_mults},
                 {"static_field_adds", plan.static_field_adds},
                 {"static_adds_naive", plan.static_adds_naive()},
                 {"static_adds_cse", plan.static_adds_cse()},
                 {"cse_temps", plan.pre_schedule.temps.size() + plan.post_schedule.temps.size()}};
        out["output_perm"] = plan.output_perm.image();
        if (cfg.verbosity > 0) {
            out["pre_matrix"] = plan.pre_matrix.empty() ? json(nullptr)
                                                        : json(plan.pre_matrix.to_bit_strings());
            out["post_matrix"] =
                plan.post_matrix ? json(plan.post_matrix->to_bit_strings()) : json(nullptr);
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "algo: " << DftPlan::algo_name(plan.variant) << "\n"
                  << "n: " << ctx.n() << "\n"
                  << "static multiplications: " << plan.static_mults << "\n"
                  << "static field additions: " << plan.static_field_adds << "\n"
                  << "binary-stage additions: " << plan.static_binary_adds_cse << " scheduled ("
                  << plan.static_binary_adds_naive << " naive)\n"
                  << "total additions: " << plan.static_adds_cse() << "\n";
    }
    return 0;
}

FieldVector read_input(const FieldCtx& ctx, const RunConfig& cfg, const std::string& input,
                       const std::string& inline_csv, bool random) {
    int sources = (!input.empty() ? 1 : 0) + (!inline_csv.empty() ? 1 : 0) + (random ? 1 : 0);
    if (sources != 1)
        throw ParseError("choose exactly one input: --input, --inline or --random");
    if (random)
        return random_vector(ctx, cfg.seed);
    FieldVector f;
    if (!inline_csv.empty()) {
        std::istringstream ss(inline_csv);
        std::string tok;
        while (std::getline(ss, tok, ','))
            f.push_back(ctx.parse(tok));
    } else if (input == "zero") {
        f.assign(ctx.n(), {});
    } else if (input == "delta0") {
        f.assign(ctx.n(), {});
        f[0] = ctx.one();
    } else {
        std::ifstream in(input);
        if (!in.good())
            throw ParseError("cannot open input file '" + input + "'");
        std::string line;
        while (std::getline(in, line))
            if (!line.empty())
                f.push_back(ctx.parse(line));
    }
    if (f.size() != ctx.n())
        throw LengthMismatch("input has " + std::to_string(f.size()) + " elements, expected " +
                             std::to_string(ctx.n()));
    return f;
}

int cmd_transform(const RunConfig& cfg, const std::string& input, const std::string& inline_csv,
                  bool random) {
    FieldCtx ctx = make_field(cfg);
    DftPlan plan = make_plan(ctx, pick_algo(cfg));
    FieldVector f = read_input(ctx, cfg, input, inline_csv, random);
    OpCounter counter;
    FieldVector F = execute(plan, f, counter);
    if (cfg.format == "json") {
        json out;
        out["algo"] = DftPlan::algo_name(plan.variant);
        out["F"] = json::array();
        for (auto e : F)
            out["F"].push_back(ctx.to_string(e));
        out["ops"] = ops_json(counter);
        std::cout << out.dump(2) << "\n";
    } else {
        for (auto e : F)
            std::cout << ctx.to_string(e) << "\n";
        std::cout << "# mults=" << counter.mults << " field_adds=" << counter.field_adds
                  << " binary_adds=" << counter.binary_stage_adds
                  << " total_adds=" << counter.total_adds() << "\n";
    }
    return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& m_list, bool golden,
               const std::string& golden_dir, int vectors) {
    std::vector<int> ms;
    std::istringstream ss(m_list.empty() ? std::to_string(cfg.m) : m_list);
    std::string tok;
    while (std::getline(ss, tok, ','))
        ms.push_back(std::stoi(tok));
    bool all_ok = true;
    for (int m : ms) {
        RunConfig sub = cfg;
        sub.m = m;
        FieldCtx ctx = make_field(sub);
        auto results = run_verification(ctx, vectors, cfg.seed + 1);
        if (golden) {
            auto g = run_golden_verification(ctx, golden_dir);
            results.insert(results.end(), g.begin(), g.end());
        }
        for (const auto& r : results) {
            all_ok = all_ok && r.pass;
            std::cout << (r.pass ? "[ ok ] " : "[FAIL] ") << "m=" << m << " " << r.name;
            if (!r.detail.empty())
                std::cout << " (" << r.detail << ")";
            std::cout << "\n";
        }
    }
    return all_ok ? 0 : 1;
}

int cmd_tables(const RunConfig& cfg) {
    (void)cfg;
    std::cout << "multipoint evaluation, multiplications (factored method, even degrees)\n";
    std::cout << "  m   mults\n";
    for (int m = 1; m <= 12; ++m) {
        std::cout << "  " << m << (m < 10 ? "   " : "  ");
        if (m == 1 || m == 2 || (m % 2 == 0 && m != 10)) {
            std::cout << mult_count(m) << "\n";
        } else {
            std::cout << "n/a (out of scope)\n";
        }
    }
    std::cout << "\nDFT over GF(2^m), n = 2^m - 1, multiplications (reduced method)\n";
    std::cout << "  n      mults\n";
    for (int m : {4, 6, 8, 10, 12}) {
        std::uint32_t n = (1u << m) - 1;
        std::string pad(7 - std::to_string(n).size(), ' ');
        std::cout << "  " << n << pad;
        try {
            std::cout << total_mult_formula(m) << "\n";
        } catch (const UnsupportedDegree&) {
            std::cout << "n/a (out of scope: missing degree-5 base kernel)\n";
        }
    }
    std::cout << "\n15-point DFT, measured costs of the reduced pipeline\n";
    FieldCtx ctx(4);
    DftPlan plan = novel_plan(ctx);
    std::cout << "  multiplications: " << plan.static_mults << "\n";
    std::cout << "  field additions: " << plan.static_field_adds << "\n";
    std::cout << "  binary-stage additions: " << plan.static_binary_adds_cse
              << " (greedy schedule; naive bound " << plan.static_binary_adds_naive << ")\n";
    std::cout << "  total additions: " << plan.static_adds_cse() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"DFT over GF(2^m) with exact operation counting"};
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_option("-m,--m", cfg.m, "extension degree (1..16)")->capture_default_str();
    app.add_option("--modulus", cfg.modulus, "primitive modulus: x^k+... form or integer bit mask");
    app.add_option("--algo", cfg.algo,
                   "naive | gb | cyclotomic | novel (default: novel for even m, gb otherwise)");
    app.add_option("--format", cfg.format, "text | json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", cfg.seed, "seed for --random vectors");
    app.add_flag("-v,--verbose", cfg.verbosity, "more output (plan matrices in json)");

    auto* info = app.add_subcommand("info", "field parameters");
    auto* classes = app.add_subcommand("classes", "conjugacy class partition and the special class");

    auto* plan = app.add_subcommand("plan", "compile a plan and report its static costs");
    auto* dump = plan->add_subcommand("dump", "emit one class evaluator's factor chain as JSON");
    long dump_class = 1;
    dump->add_option("--class", dump_class, "class representative exponent")->required();

    auto* transform = app.add_subcommand("transform", "run a DFT");
    std::string input, inline_csv;
    bool random = false;
    transform->add_option("--input", input, "input file (one element per line), or zero | delta0");
    transform->add_option("--inline", inline_csv, "comma-separated element list");
    transform->add_flag("--random", random, "seeded random input (see --seed)");

    auto* verify = app.add_subcommand("verify", "run the invariant suite");
    std::string m_list, golden_dir = "golden";
    bool golden = false;
    int vectors = 100;
    verify->add_option("--m", m_list, "comma-separated extension degrees (overrides global --m)");
    verify->add_flag("--golden", golden, "also compare the 15-point matrices against golden files");
    verify->add_option("--golden-dir", golden_dir, "directory with golden matrices")
        ->capture_default_str();
    verify->add_option("--vectors", vectors, "random vectors per oracle check")->capture_default_str();

    auto* tables = app.add_subcommand("tables", "regenerate the complexity tables");

    for (auto* sub : {info, classes, plan, transform, verify, tables})
        sub->fallthrough();
    dump->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (info->parsed())
            return cmd_info(cfg);
        if (classes->parsed())
            return cmd_classes(cfg);
        if (plan->parsed())
            return cmd_plan(cfg, dump->parsed(), dump_class);
        if (transform->parsed())
            return cmd_transform(cfg, input, inline_csv, random);
        if (verify->parsed())
            return cmd_verify(cfg, m_list, golden, golden_dir, vectors);
        if (tables->parsed())
            return cmd_tables(cfg);
    } catch (const UnsupportedDegree& ex) {
        std::cerr << "unsupported: " << ex.what() << "\n";
        return 3;
    } catch (const OddExtensionDegree& ex) {
        std::cerr << "unsupported: " << ex.what() << "\n";
        return 3;
    } catch (const DegreeOutOfRange& ex) {
        std::cerr << "unsupported: " << ex.what() << "\n";
        return 3;
    } catch (const DegreeNotDivisor& ex) {
        std::cerr << "unsupported: " << ex.what() << "\n";
        return 3;
    } catch (const Error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}
