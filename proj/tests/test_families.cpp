#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "spidergray/analysis.hpp"
#include "spidergray/coroutine_engine.hpp"
#include "spidergray/digraph.hpp"
#include "spidergray/families.hpp"
#include "spidergray/oracle.hpp"

using namespace spidergray;
namespace orc = spidergray::oracle;

namespace {

const std::string kData = SPIDERGRAY_TEST_DATA_DIR;

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

GrayPath engine_path(const FamilySpec& spec) {
    auto p = pipeline(family_digraph(spec));
    CoroutineEngine e(p.forest, p.analysis, p.init);
    return e.run_path();
}

}  // namespace

TEST_CASE("family digraph shapes") {
    auto mc = family_digraph(FamilySpec::multi_chain({1, 3, 4}, 6));
    CHECK(mc.arcs == std::vector<std::pair<int, int>>{{0, 1}, {3, 4}, {4, 5}});

    auto fe = family_digraph(FamilySpec::fence(4));
    CHECK(fe.arcs == std::vector<std::pair<int, int>>{{0, 1}, {2, 1}, {2, 3}});

    auto un = family_digraph(FamilySpec::unrestricted(3));
    CHECK(un.labels.size() == 3);
    CHECK(un.arcs.empty());

    auto ch = family_digraph(FamilySpec::chain(4));
    CHECK(ch.arcs == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}});

    auto co = family_digraph(FamilySpec::cochain(3));
    CHECK(co.arcs == std::vector<std::pair<int, int>>{{1, 0}, {2, 1}});

    auto mx = family_digraph(FamilySpec::mixed_chain(2, 4));
    // 1 -> 2 plus 4 -> 3 -> 1
    CHECK(mx.arcs == std::vector<std::pair<int, int>>{{0, 1}, {3, 2}, {2, 0}});
}

TEST_CASE("family parameter validation") {
    CHECK_THROWS_AS(family_digraph(FamilySpec::mixed_chain(0, 4)), std::invalid_argument);
    CHECK_THROWS_AS(family_digraph(FamilySpec::mixed_chain(5, 4)), std::invalid_argument);
    CHECK_THROWS_AS(family_digraph(FamilySpec::multi_chain({2, 3}, 4)), std::invalid_argument);
    CHECK_THROWS_AS(family_digraph(FamilySpec::multi_chain({1, 3, 3}, 4)), std::invalid_argument);
    CHECK_THROWS_AS(family_digraph(FamilySpec::multi_chain({1, 5}, 4)), std::invalid_argument);
    CHECK_THROWS_AS(family_digraph(FamilySpec::unrestricted(-1)), std::invalid_argument);
}

TEST_CASE("preorder numbering reproduces the natural labels") {
    for (auto spec : {FamilySpec::chain(5), FamilySpec::cochain(5), FamilySpec::fence(7),
                      FamilySpec::mixed_chain(3, 6), FamilySpec::multi_chain({1, 4}, 6)}) {
        auto f = validate_and_normalize(family_digraph(spec));
        for (int k = 1; k <= f.n; ++k) CHECK(f.label_of[k] == std::to_string(k));
    }
}

TEST_CASE("known sequences load from the data files") {
    CHECK(known_sequence(FamilySpec::chain(3), kData) ==
          GrayPath{"000", "001", "011", "111"});
    CHECK(known_sequence(FamilySpec::unrestricted(2), kData) ==
          GrayPath{"00", "01", "11", "10"});
    CHECK(known_sequence(FamilySpec::fence(4), kData).size() == 8);
    auto mc = known_sequence(FamilySpec::multi_chain({1, 3, 4}, 6), kData);
    REQUIRE(mc.size() == 24);
    CHECK(mc.front() == "000000");
    CHECK(GrayPath(mc.begin(), mc.begin() + 9) ==
          GrayPath{"000000", "000001", "000011", "000111", "001111", "001011", "001001",
                   "001000", "011000"});
    CHECK_THROWS_AS(known_sequence(FamilySpec::chain(9), kData), NoFixtureError);
}

TEST_CASE("engine runs reproduce every fixture exactly") {
    for (auto spec : {FamilySpec::unrestricted(2), FamilySpec::chain(3),
                      FamilySpec::multi_chain({1, 3, 4}, 6), FamilySpec::fence(4)}) {
        CHECK(engine_path(spec) == known_sequence(spec, kData));
    }
}

TEST_CASE("recorded fixtures certify against the oracle directly") {
    for (auto spec : {FamilySpec::unrestricted(2), FamilySpec::chain(3),
                      FamilySpec::multi_chain({1, 3, 4}, 6), FamilySpec::fence(4)}) {
        auto g = family_digraph(spec);
        auto rep = orc::verify_gray_path(known_sequence(spec, kData), g);
        CHECK(rep.all_clear());
    }
}

TEST_CASE("copoke: small streams") {
    CopokeStream s0(0);
    CHECK(s0.step().is_end());
    CHECK(s0.step().is_end());

    CopokeStream s2(2);
    std::vector<std::string> seen;
    for (int i = 0; i < 8; ++i) {
        auto r = s2.step();
        seen.push_back(r.is_end() ? "END" : s2.pattern());
    }
    CHECK(seen == std::vector<std::string>{"01", "11", "10", "END", "11", "01", "00", "END"});
}

TEST_CASE("copoke stream is identical to the generator stream") {
    for (int n = 0; n <= 10; ++n) {
        auto p = pipeline(family_digraph(FamilySpec::unrestricted(n)));
        CoroutineEngine e(p.forest, p.analysis, p.init);
        CopokeStream c(n);
        std::uint64_t cycle = n == 0 ? 4 : (std::uint64_t{1} << (n + 1)) + 2;
        for (std::uint64_t s = 0; s < cycle; ++s) {
            auto re = e.step();
            auto rc = c.step();
            CHECK(re == rc);
            CHECK(e.bits() == c.bits());
        }
    }
}

TEST_CASE("mixed chains: inequality shape and count") {
    for (int n = 1; n <= 7; ++n) {
        for (int m = 1; m <= n; ++m) {
            auto spec = FamilySpec::mixed_chain(m, n);
            auto p = pipeline(family_digraph(spec));
            CHECK(count_total(p.analysis) == static_cast<unsigned __int128>(n) + 1);
            CoroutineEngine e(p.forest, p.analysis, p.init);
            auto path = e.run_path();
            CHECK(path.size() == static_cast<std::size_t>(n) + 1);
            auto perm = label_order_permutation(p.forest, p.raw);
            for (const auto& pat : path) {
                auto bit = [&](int label) { return pat[perm[label - 1] - 1]; };
                for (int k = 1; k < m; ++k) CHECK(bit(k) <= bit(k + 1));
                for (int k = m + 1; k < n; ++k) CHECK(bit(k + 1) <= bit(k));
                if (m < n) CHECK(bit(m + 1) <= bit(1));
            }
        }
    }
}

TEST_CASE("cochain runs are complete and gray") {
    for (int n = 1; n <= 7; ++n) {
        auto g = family_digraph(FamilySpec::cochain(n));
        auto p = pipeline(g);
        CoroutineEngine e(p.forest, p.analysis, p.init);
        auto path = e.run_path();
        CHECK(path.size() == static_cast<std::size_t>(n) + 1);
        auto perm = label_order_permutation(p.forest, g);
        GrayPath relabeled;
        for (const auto& pat : path) {
            std::string s(pat.size(), '0');
            for (std::size_t i = 0; i < s.size(); ++i) s[i] = pat[perm[i] - 1];
            relabeled.push_back(s);
        }
        CHECK(orc::verify_gray_path(relabeled, g).all_clear());
    }
}

TEST_CASE("multi-chain counts follow the radix product, random endpoint sets") {
    std::mt19937 rng(86420);
    for (int iter = 0; iter < 120; ++iter) {
        int n = 1 + static_cast<int>(rng() % 12);
        std::vector<int> e{1};
        for (int x = 2; x <= n; ++x)
            if (rng() % 3 == 0) e.push_back(x);
        auto spec = FamilySpec::multi_chain(e, n);
        auto g = family_digraph(spec);
        auto p = pipeline(g);
        std::uint64_t want = 1;
        for (std::size_t i = 1; i < e.size(); ++i)
            want *= static_cast<std::uint64_t>(e[i] + 1 - e[i - 1]);
        want *= static_cast<std::uint64_t>(n + 2 - e.back());
        CHECK(count_total(p.analysis) == want);
        CHECK(orc::enumerate_valid(g).size() == want);
    }
}
