#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "spidergray/active_list.hpp"
#include "spidergray/analysis.hpp"
#include "spidergray/coroutine_engine.hpp"
#include "spidergray/digraph.hpp"
#include "spidergray/families.hpp"
#include "spidergray/oracle.hpp"

namespace sg = spidergray;

namespace {

std::string slurp(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw sg::ParseError("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct Pipeline {
    sg::RawDigraph raw;
    sg::SpiderForest forest;
    sg::Analysis analysis;
    sg::InitTable init;
    std::vector<int> label_perm;  // input-label position -> preorder index
};

Pipeline load(const std::string& path) {
    Pipeline p;
    p.raw = sg::parse_digraph(slurp(path));
    p.forest = sg::validate_and_normalize(p.raw);
    p.analysis = sg::analyze(p.forest);
    p.init = sg::init_table(p.forest, p.analysis);
    p.label_perm = sg::label_order_permutation(p.forest, p.raw);
    return p;
}

struct GenOptions {
    std::string input;
    std::string engine = "active-list";
    std::string emit = "patterns";
    std::string order = "original";
    int cycles = 1;
    bool tco = true;
    bool multipop = false;
};

std::string render(const Pipeline& p, const std::vector<std::uint8_t>& bits, bool original) {
    std::string s;
    s.reserve(static_cast<std::size_t>(p.forest.n));
    if (original) {
        for (int i = 0; i < p.forest.n; ++i)
            s += static_cast<char>('0' + bits[p.label_perm[static_cast<std::size_t>(i)]]);
    } else {
        for (int k = 1; k <= p.forest.n; ++k) s += static_cast<char>('0' + bits[k]);
    }
    return s;
}

template <class Engine>
int drive(const Pipeline& p, Engine& eng, const GenOptions& opt) {
    const bool original = opt.order == "original";
    const bool emit_patterns = opt.emit == "patterns" || opt.emit == "both";
    const bool emit_deltas = opt.emit == "deltas" || opt.emit == "both";
    std::ostream& out = std::cout;
    for (int cycle = 0; cycle < opt.cycles; ++cycle) {
        if (emit_patterns) out << render(p, eng.bits(), original) << '\n';
        for (;;) {
            sg::StepResult r = eng.step();
            if (r.is_end()) break;
            if (emit_deltas)
                out << p.forest.label_of[r.vertex] << " -> " << int(r.bit) << '\n';
            if (emit_patterns) out << render(p, eng.bits(), original) << '\n';
        }
        if (opt.cycles > 1) out << "-----\n";
    }
    return 0;
}

int cmd_gen(const GenOptions& opt) {
    Pipeline p = load(opt.input);
    if (opt.engine == "coroutine") {
        sg::CoroutineEngine::Options eo;
        eo.tail_calls = opt.tco;
        eo.multi_pop = opt.multipop;
        sg::CoroutineEngine eng(p.forest, p.analysis, p.init, eo);
        return drive(p, eng, opt);
    }
    sg::ActiveListEngine eng(p.forest, p.analysis, p.init);
    return drive(p, eng, opt);
}

int cmd_count(const std::string& input) {
    Pipeline p = load(input);
    std::cout << p.analysis.total_str() << '\n';
    return 0;
}

int cmd_analyze(const std::string& input) {
    Pipeline p = load(input);
    std::cout << sg::analysis_report(p.forest, p.analysis, p.init);
    return 0;
}

int cmd_mapping(const std::string& input) {
    Pipeline p = load(input);
    std::cout << sg::mapping_report(p.forest);
    return 0;
}

int cmd_trace(const std::string& input) {
    Pipeline p = load(input);
    sg::ActiveListEngine eng(p.forest, p.analysis, p.init);
    std::cout << eng.trace_row() << '\n';
    for (;;) {
        sg::StepResult r = eng.step();
        if (r.is_end()) break;
        std::cout << eng.trace_row() << '\n';
    }
    return 0;
}

int cmd_family(const std::string& kind, int n, int m, std::vector<int> endpoints) {
    sg::FamilySpec spec;
    if (kind == "unrestricted")
        spec = sg::FamilySpec::unrestricted(n);
    else if (kind == "chain")
        spec = sg::FamilySpec::chain(n);
    else if (kind == "cochain")
        spec = sg::FamilySpec::cochain(n);
    else if (kind == "mixed-chain")
        spec = sg::FamilySpec::mixed_chain(m, n);
    else if (kind == "multi-chain")
        spec = sg::FamilySpec::multi_chain(std::move(endpoints), n);
    else if (kind == "fence")
        spec = sg::FamilySpec::fence(n);
    else
        throw CLI::ValidationError("--kind", "unknown family kind: " + kind);
    std::cout << sg::to_edge_list(sg::family_digraph(spec));
    return 0;
}

int cmd_verify(const std::string& digraph_path, const std::string& patterns_path, int cap) {
    sg::RawDigraph g = sg::parse_digraph(slurp(digraph_path));
    sg::GrayPath path;
    {
        std::istringstream in(slurp(patterns_path));
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty() || g.n() == 0) path.push_back(line);
        }
    }
    auto rep = sg::oracle::verify_gray_path(path, g, cap);
    std::cout << rep.to_text();
    return rep.all_clear() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gray-sequence generator for bit patterns constrained by a totally acyclic digraph"};
    app.require_subcommand(1);

    GenOptions gen_opt;
    auto* gen = app.add_subcommand("gen", "generate patterns, one per line");
    gen->add_option("input", gen_opt.input, "constraint file ('-' or absent = stdin)");
    gen->add_option("--engine", gen_opt.engine, "active-list (default) or coroutine")
        ->check(CLI::IsMember({"active-list", "coroutine"}));
    gen->add_option("--emit", gen_opt.emit, "patterns (default), deltas, or both")
        ->check(CLI::IsMember({"patterns", "deltas", "both"}));
    gen->add_option("--order", gen_opt.order, "bit column order: original (default) or preorder")
        ->check(CLI::IsMember({"original", "preorder"}));
    gen->add_option("--cycles", gen_opt.cycles, "half-periods to emit (default 1)")
        ->check(CLI::PositiveNumber);
    gen->add_flag("--tco,!--no-tco", gen_opt.tco, "tail-call optimization (coroutine engine)");
    gen->add_flag("--multipop", gen_opt.multipop, "multi-frame pops (coroutine engine)");

    std::string count_input;
    auto* count = app.add_subcommand("count", "print the number of valid patterns");
    count->add_option("input", count_input, "constraint file");

    std::string analyze_input;
    auto* analyze = app.add_subcommand("analyze", "print the static analysis tables");
    analyze->add_option("input", analyze_input, "constraint file");

    std::string mapping_input;
    auto* mapping = app.add_subcommand("mapping", "print the preorder index <-> label map");
    mapping->add_option("input", mapping_input, "constraint file");

    std::string trace_input;
    auto* trace = app.add_subcommand("trace", "print pattern plus active list per step");
    trace->add_option("input", trace_input, "constraint file");

    std::string family_kind;
    int family_n = 0, family_m = 0;
    std::vector<int> family_endpoints;
    auto* family = app.add_subcommand("family", "emit a named constraint family as an edge list");
    family->add_option("--kind", family_kind, "unrestricted|chain|cochain|mixed-chain|multi-chain|fence")
        ->required();
    family->add_option("--n", family_n, "number of bits")->required();
    family->add_option("--m", family_m, "split point (mixed-chain)");
    family->add_option("--endpoints", family_endpoints, "chain endpoints (multi-chain)")
        ->delimiter(',');

    std::string verify_digraph, verify_patterns;
    int verify_cap = sg::oracle::kDefaultEnumerationCap;
    auto* verify = app.add_subcommand("verify", "certify a pattern listing against brute force");
    verify->add_option("digraph", verify_digraph, "constraint file")->required();
    verify->add_option("patterns", verify_patterns, "pattern listing, one per line")->required();
    verify->add_option("--cap", verify_cap,
                       "enumeration cap in bits (default 24; raising it may take very long)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 1;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_opt);
        if (count->parsed()) return cmd_count(count_input);
        if (analyze->parsed()) return cmd_analyze(analyze_input);
        if (mapping->parsed()) return cmd_mapping(mapping_input);
        if (trace->parsed()) return cmd_trace(trace_input);
        if (family->parsed())
            return cmd_family(family_kind, family_n, family_m, family_endpoints);
        if (verify->parsed()) return cmd_verify(verify_digraph, verify_patterns, verify_cap);
    } catch (const sg::UndirectedCycleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const sg::DuplicateArcError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const sg::CountOverflowError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const sg::CapExceededError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
