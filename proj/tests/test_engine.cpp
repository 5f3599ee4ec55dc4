#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "spidergray/analysis.hpp"
#include "spidergray/coroutine_engine.hpp"
#include "spidergray/digraph.hpp"
#include "spidergray/families.hpp"
#include "spidergray/oracle.hpp"

using namespace spidergray;
namespace orc = spidergray::oracle;

namespace {

std::string read_file(const std::string& name) {
    std::ifstream in(std::string(SPIDERGRAY_TEST_DATA_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct Pipeline {
    RawDigraph raw;
    SpiderForest forest;
    Analysis analysis;
    InitTable init;
};

Pipeline pipeline(const RawDigraph& g) {
    Pipeline p;
    p.raw = g;
    p.forest = validate_and_normalize(g);
    p.analysis = analyze(p.forest);
    p.init = init_table(p.forest, p.analysis);
    return p;
}

Pipeline pipeline(const std::string& text) { return pipeline(parse_digraph(text)); }

CoroutineEngine engine_of(const Pipeline& p, CoroutineEngine::Options opt = CoroutineEngine::Options{}) {
    return CoroutineEngine(p.forest, p.analysis, p.init, opt);
}

// Restrict the forest to spider k, relabelling 1..m in preorder.
RawDigraph subspider_digraph(const SpiderForest& f, int k) {
    RawDigraph g;
    for (int i = k; i <= f.scope[k]; ++i) g.labels.push_back(std::to_string(i - k + 1));
    for (int i = k + 1; i <= f.scope[k]; ++i) {
        int p = f.parent[i];
        if (f.sign[i] == Sign::positive)
            g.arcs.emplace_back(p - k, i - k);
        else
            g.arcs.emplace_back(i - k, p - k);
    }
    return g;
}

std::uint64_t measured_half_period(const Pipeline& p) {
    auto e = engine_of(p);
    std::uint64_t steps = 0;
    for (;;) {
        ++steps;
        if (e.step().is_end()) return steps;
    }
}

std::string bits_row(const std::vector<std::uint8_t>& v, std::uint8_t star_to = 1) {
    std::string s;
    for (auto b : v) s += static_cast<char>('0' + (b == InitTable::kNoBit ? star_to : b));
    return s;
}

}  // namespace

TEST_CASE("unrestricted(2) reproduces the two-troll cycle") {
    auto p = pipeline(family_digraph(FamilySpec::unrestricted(2)));
    auto e = engine_of(p);
    CHECK(e.pattern() == "00");
    std::vector<std::string> seen;
    for (int i = 0; i < 8; ++i) {
        auto r = e.step();
        seen.push_back(r.is_end() ? "END" : e.pattern());
    }
    CHECK(seen == std::vector<std::string>{"01", "11", "10", "END", "11", "01", "00", "END"});
    CHECK(e.at_initial_state());
}

TEST_CASE("chain(3) reproduces the bump cycle") {
    auto p = pipeline(family_digraph(FamilySpec::chain(3)));
    auto e = engine_of(p);
    std::vector<std::string> seen;
    for (int i = 0; i < 8; ++i) {
        auto r = e.step();
        seen.push_back(r.is_end() ? "END" : e.pattern());
    }
    CHECK(seen == std::vector<std::string>{"001", "011", "111", "END", "011", "001", "000", "END"});
    // troll activations per cycle: 3+3+2+1+1+2+3+3
    CHECK(e.activations() == 18);
    CHECK(e.steps() == 8);
}

TEST_CASE("n = 0 always reports the boundary") {
    auto p = pipeline("");
    auto e = engine_of(p);
    for (int i = 0; i < 4; ++i) CHECK(e.step().is_end());
    auto fresh = engine_of(p);
    CHECK(fresh.run_path() == GrayPath{""});
}

TEST_CASE("engine_new: start positions follow the start labels") {
    auto p = pipeline(read_file("example_spider.txt"));
    auto e = engine_of(p);
    CHECK(e.pattern() == "000001100");
    for (int k = 1; k <= 9; ++k) CHECK(e.position(k) == ((k == 6 || k == 7) ? 6 : 1));

    auto pf = pipeline(family_digraph(FamilySpec::fence(4)));
    auto ef = engine_of(pf);
    CHECK(ef.pattern() == "0001");
    for (int k = 1; k <= 4; ++k) CHECK(ef.position(k) == (k == 4 ? 6 : 1));
}

TEST_CASE("example spider: the full 60-pattern listing") {
    auto p = pipeline(read_file("example_spider.txt"));
    auto opt = CoroutineEngine::Options{};
    opt.validate = true;
    auto e = engine_of(p, opt);
    auto path = e.run_path();
    REQUIRE(path.size() == 60);
    CHECK(path.front() == "000001100");
    CHECK(path[47] == "011011100");   // last pattern of the a_1 = 0 half
    CHECK(path[48] == "111011100");   // 49th pattern opens the a_1 = 1 half
    CHECK(path.back() == "111111100");
    CHECK(orc::verify_gray_path(path, p.raw).all_clear());
    CHECK(e.stack_high_water() <= 10);
}

TEST_CASE("multi-chain fixture: all 24 patterns and their reversal") {
    auto p = pipeline(family_digraph(FamilySpec::multi_chain({1, 3, 4}, 6)));
    auto want = known_sequence(FamilySpec::multi_chain({1, 3, 4}, 6), SPIDERGRAY_TEST_DATA_DIR);
    REQUIRE(want.size() == 24);
    auto e = engine_of(p);
    auto path = e.run_path();
    CHECK(path == want);
    // continue past the boundary: the listing reverses itself
    GrayPath reversed{e.pattern()};
    for (;;) {
        auto r = e.step();
        if (r.is_end()) break;
        reversed.push_back(e.pattern());
    }
    GrayPath want_rev(want.rbegin(), want.rend());
    CHECK(reversed == want_rev);
}

TEST_CASE("fence(4) fixture") {
    auto p = pipeline(family_digraph(FamilySpec::fence(4)));
    auto want = known_sequence(FamilySpec::fence(4), SPIDERGRAY_TEST_DATA_DIR);
    auto e = engine_of(p);
    CHECK(e.run_path() == want);
}

TEST_CASE("sub-listings of the example spider match their recorded paths") {
    auto f = validate_and_normalize(parse_digraph(read_file("example_spider.txt")));
    auto g2 = pipeline(subspider_digraph(f, 2));
    auto e2 = engine_of(g2);
    CHECK(e2.run_path() == GrayPath{"0000", "0001", "0101", "0100", "0110", "0111", "1111",
                                    "1101"});
    auto g6 = pipeline(subspider_digraph(f, 6));
    auto e6 = engine_of(g6);
    CHECK(e6.run_path() == GrayPath{"00", "10", "11"});
    auto g8 = pipeline(subspider_digraph(f, 8));
    auto e8 = engine_of(g8);
    CHECK(e8.run_path() == GrayPath{"00", "01", "11"});
}

TEST_CASE("initialization tables match measured path endpoints, every subspider") {
    std::mt19937 rng(515151);
    for (int iter = 0; iter < 80; ++iter) {
        int n = 1 + static_cast<int>(rng() % 11);
        auto f = validate_and_normalize(orc::random_forest(rng, n));
        auto a = analyze(f);
        auto t = init_table(f, a);
        for (int k = 1; k <= n; ++k) {
            auto sub = pipeline(subspider_digraph(f, k));
            auto e = engine_of(sub);
            auto path = e.run_path();
            REQUIRE(!path.empty());
            CHECK(path.front() == bits_row(t.alpha[k]));
            CHECK(path.back() == bits_row(t.omega[k]));
            // a_k flips 0 -> 1 exactly once; the pattern right after is tau
            int flips = 0;
            std::string at_flip;
            for (std::size_t i = 1; i < path.size(); ++i) {
                if (path[i - 1][0] == '0' && path[i][0] == '1') {
                    ++flips;
                    at_flip = path[i];
                }
            }
            CHECK(flips == 1);
            CHECK(at_flip == bits_row(t.tau[k], 1));
        }
    }
}

TEST_CASE("gray property and completeness on random forests") {
    std::mt19937 rng(606060);
    for (int iter = 0; iter < 120; ++iter) {
        int n = static_cast<int>(rng() % 13);
        auto g = orc::random_forest(rng, n);
        auto p = pipeline(g);
        auto opt = CoroutineEngine::Options{};
        opt.validate = true;
        auto e = engine_of(p, opt);
        auto path = e.run_path();
        auto perm = label_order_permutation(p.forest, g);
        GrayPath relabeled;
        for (const auto& pat : path) {
            std::string s(pat.size(), '0');
            for (std::size_t i = 0; i < s.size(); ++i) s[i] = pat[perm[i] - 1];
            relabeled.push_back(s);
        }
        CHECK(orc::verify_gray_path(relabeled, g).all_clear());
        CHECK(e.stack_high_water() <= static_cast<std::size_t>(n) + 1);
    }
}

TEST_CASE("reflection on fixed and random instances") {
    {
        auto p = pipeline(family_digraph(FamilySpec::chain(3)));
        auto e = engine_of(p);
        CHECK(orc::verify_reflection(e, 4));
    }
    {
        auto p = pipeline(family_digraph(FamilySpec::unrestricted(2)));
        auto e = engine_of(p);
        CHECK(orc::verify_reflection(e, 4));
    }
    std::mt19937 rng(909090);
    for (int iter = 0; iter < 60; ++iter) {
        int n = static_cast<int>(rng() % 11);
        auto p = pipeline(orc::random_forest(rng, n));
        auto e = engine_of(p);
        auto total = static_cast<std::uint64_t>(count_total(p.analysis));
        CHECK(orc::verify_reflection(e, total));
    }
}

TEST_CASE("tail-call and multi-pop variants are stream-identical") {
    std::mt19937 rng(135791);
    for (int iter = 0; iter < 60; ++iter) {
        int n = static_cast<int>(rng() % 11);
        auto p = pipeline(orc::random_forest(rng, n));
        CoroutineEngine::Options plain;
        plain.tail_calls = false;
        plain.multi_pop = false;
        plain.validate = true;
        CoroutineEngine::Options tco;
        tco.tail_calls = true;
        tco.multi_pop = false;
        CoroutineEngine::Options pop;
        pop.tail_calls = true;
        pop.multi_pop = true;
        CoroutineEngine::Options pop_only;
        pop_only.tail_calls = false;
        pop_only.multi_pop = true;
        auto e1 = engine_of(p, plain);
        auto e2 = engine_of(p, tco);
        auto e3 = engine_of(p, pop);
        auto e4 = engine_of(p, pop_only);
        auto total = static_cast<std::uint64_t>(count_total(p.analysis));
        for (std::uint64_t s = 0; s < 2 * total + 2; ++s) {
            auto r1 = e1.step();
            CHECK(r1 == e2.step());
            CHECK(r1 == e3.step());
            CHECK(r1 == e4.step());
        }
    }
}

TEST_CASE("composition: disjoint union multiplies half-periods") {
    auto a = pipeline(family_digraph(FamilySpec::chain(2)));
    auto b = pipeline("1 -> 2\n3 -> 2\n");  // three-vertex fence
    CHECK(measured_half_period(a) == 3);
    CHECK(measured_half_period(b) == 5);
    auto both = pipeline("a1 -> a2\nb1 -> b2\nb3 -> b2\n");
    CHECK(measured_half_period(both) == 15);

    auto e = engine_of(both);
    CHECK(orc::verify_reflection(e, 15));
}

TEST_CASE("composition: a root adds the half-periods of its two sides") {
    auto f = validate_and_normalize(parse_digraph(read_file("example_spider.txt")));
    auto a = analyze(f);
    std::uint64_t m = 1, nn = 1;
    for (int u : a.usets[1]) m *= static_cast<std::uint64_t>(measured_half_period(
        pipeline(subspider_digraph(f, u))));
    for (int v : a.vsets[1]) nn *= static_cast<std::uint64_t>(measured_half_period(
        pipeline(subspider_digraph(f, v))));
    CHECK(m == 48);
    CHECK(nn == 12);
    CHECK(measured_half_period(pipeline(read_file("example_spider.txt"))) == m + nn);
}

TEST_CASE("run_path demands a fresh engine") {
    auto p = pipeline(family_digraph(FamilySpec::chain(2)));
    auto e = engine_of(p);
    e.step();
    CHECK_THROWS_AS(e.run_path(), InternalProtocolError);
}

TEST_CASE("independent engines run concurrently over shared analysis") {
    auto p = pipeline(read_file("example_spider.txt"));
    GrayPath expect;
    {
        auto e = engine_of(p);
        expect = e.run_path();
    }
    std::vector<GrayPath> results(8);
    std::vector<std::thread> workers;
    for (auto& slot : results)
        workers.emplace_back([&p, &slot] {
            CoroutineEngine e(p.forest, p.analysis, p.init);
            slot = e.run_path();
        });
    for (auto& w : workers) w.join();
    for (const auto& r : results) CHECK(r == expect);
}
