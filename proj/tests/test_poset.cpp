#include <doctest.h>

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "poset.hpp"

using namespace birow;

namespace {

int id_of(const Poset& P, const std::string& name) {
    const int v = P.index_of(name);
    REQUIRE(v >= 0);
    return v;
}

std::set<std::pair<std::string, std::string>> cover_set(const Poset& P) {
    std::set<std::pair<std::string, std::string>> out;
    for (int v = 0; v < P.size(); ++v)
        for (int u : P.up_covers(v)) out.emplace(P.name(v), P.name(u));
    return out;
}

std::set<std::string> name_set(const Poset& P) {
    return {P.names().begin(), P.names().end()};
}

void check_cover_transposes(const Poset& P) {
    for (int v = 0; v < P.size(); ++v) {
        CHECK(std::is_sorted(P.up_covers(v).begin(), P.up_covers(v).end()));
        CHECK(std::is_sorted(P.down_covers(v).begin(), P.down_covers(v).end()));
        for (int u : P.up_covers(v)) {
            const auto& down = P.down_covers(u);
            CHECK(std::find(down.begin(), down.end(), v) != down.end());
            CHECK(P.is_cover(v, u));
            CHECK(P.leq(v, u));
            CHECK(!P.leq(u, v));
        }
    }
}

std::vector<std::vector<int>> extensions(const Poset& P, long cap = 100000) {
    bool truncated = false;
    auto out = P.all_linear_extensions(cap, &truncated);
    REQUIRE(!truncated);
    return out;
}

}  // namespace

TEST_SUITE("poset") {

TEST_CASE("rectangle covers match the grid rule") {
    const Poset r22 = rectangle(2, 2);
    CHECK(r22.size() == 4);
    CHECK(cover_set(r22) == std::set<std::pair<std::string, std::string>>{
                                {"(1,1)", "(1,2)"},
                                {"(1,1)", "(2,1)"},
                                {"(1,2)", "(2,2)"},
                                {"(2,1)", "(2,2)"}});

    const Poset r11 = rectangle(1, 1);
    CHECK(r11.size() == 1);
    CHECK(r11.up_covers(0).empty());
    CHECK(r11.down_covers(0).empty());

    const Poset r23 = rectangle(2, 3);
    CHECK(r23.size() == 6);
    CHECK(cover_set(r23).size() == 7);  // p(q-1) + (p-1)q
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 3; ++j) {
            const int v = rect_id(2, 3, i, j);
            std::set<int> expect;
            if (i < 2) expect.insert(rect_id(2, 3, i + 1, j));
            if (j < 3) expect.insert(rect_id(2, 3, i, j + 1));
            const auto& up = r23.up_covers(v);
            CHECK(std::set<int>(up.begin(), up.end()) == expect);
        }
    CHECK_THROWS_AS(rectangle(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(rect_id(2, 3, 3, 1), std::invalid_argument);
    CHECK(r23.name(rect_id(2, 3, 2, 3)) == "(2,3)");
}

TEST_CASE("cover lists transpose consistently on every family") {
    for (const Poset& P : {rectangle(2, 3), triangle_delta(4), triangle_nabla(4),
                           triangle_right(4), trapezoid(4, 3), claw(), random_poset(11, 7)})
        check_cover_transposes(P);
}

TEST_CASE("triangles are the stated grid subposets") {
    const Poset d4 = triangle_delta(4);
    CHECK(name_set(d4) ==
          std::set<std::string>{"(4,4)", "(4,3)", "(3,4)", "(4,2)", "(3,3)", "(2,4)"});
    CHECK(triangle_delta(1).size() == 0);
    CHECK(triangle_nabla(1).size() == 0);

    const Poset n4 = triangle_nabla(4);
    CHECK(n4.size() == 6);
    REQUIRE(n4.minimal_elements().size() == 1);
    CHECK(n4.name(n4.minimal_elements()[0]) == "(1,1)");

    CHECK(triangle_right(4).size() == 10);
    CHECK(triangle_right(1).size() == 1);
    const Poset t2 = triangle_right(2);
    CHECK(cover_set(t2) == std::set<std::pair<std::string, std::string>>{
                               {"(1,1)", "(1,2)"}, {"(1,2)", "(2,2)"}});
}

TEST_CASE("trapezoids enumerate the three constraints") {
    const Poset t44 = trapezoid(4, 4);
    CHECK(name_set(t44) == std::set<std::string>{"(2,4)", "(3,4)", "(4,4)"});
    CHECK(cover_set(t44) == std::set<std::pair<std::string, std::string>>{
                                {"(2,4)", "(3,4)"}, {"(3,4)", "(4,4)"}});

    const Poset t20 = trapezoid(2, 0);
    CHECK(name_set(t20) == std::set<std::string>{"(2,2)"});

    // At s = 0 the k >= s constraint is vacuous: delta cut to i <= k.
    CHECK(name_set(trapezoid(4, 0)) ==
          std::set<std::string>{"(2,4)", "(3,3)", "(3,4)", "(4,4)"});
    CHECK_THROWS_AS(trapezoid(1, 0), std::invalid_argument);
}

TEST_CASE("claw structure and extensions") {
    const Poset P = claw();
    CHECK(P.size() == 4);
    CHECK(cover_set(P).size() == 3);
    CHECK(P.minimal_elements() == std::vector<int>{id_of(P, "p")});
    CHECK(P.maximal_elements().size() == 3);
    CHECK(P.incomparable(id_of(P, "q1"), id_of(P, "q2")));

    const auto ext = P.linear_extension();
    REQUIRE(ext.size() == 4);
    CHECK(P.name(ext[0]) == "p");
    CHECK(P.name(ext[1]) == "q1");
    CHECK(P.name(ext[2]) == "q2");
    CHECK(P.name(ext[3]) == "q3");
    CHECK(extensions(P).size() == 6);

    const ExtendedPoset hat(P);
    CHECK(hat.up_covers(hat.bot()) == std::vector<int>{id_of(P, "p")});
    for (const char* q : {"q1", "q2", "q3"})
        CHECK(hat.up_covers(id_of(P, q)) == std::vector<int>{hat.top()});
}

TEST_CASE("from_covers reduces transitively and rejects bad input") {
    const Poset chain2 = Poset::from_covers({"a", "b"}, {{"a", "b"}});
    CHECK(cover_set(chain2) == std::set<std::pair<std::string, std::string>>{{"a", "b"}});

    const Poset chain3 =
        Poset::from_covers({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}});
    CHECK(cover_set(chain3) ==
          std::set<std::pair<std::string, std::string>>{{"a", "b"}, {"b", "c"}});
    CHECK(chain3.leq(id_of(chain3, "a"), id_of(chain3, "c")));

    CHECK_THROWS_AS(Poset::from_covers({"a", "b"}, {{"a", "b"}, {"b", "a"}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Poset::from_covers({"a"}, {{"a", "a"}}), std::invalid_argument);
    CHECK_THROWS_AS(Poset::from_covers({"a", "a"}, {}), std::invalid_argument);
    CHECK_THROWS_AS(Poset::from_covers({"a", "b"}, {{"a", "z"}}), std::invalid_argument);
}

TEST_CASE("size guard rejects oversized posets") {
    std::vector<std::string> names;
    for (int i = 0; i <= 10000; ++i) names.push_back("e" + std::to_string(i));
    CHECK_THROWS_AS(Poset::from_covers(names, {}), std::invalid_argument);
}

TEST_CASE("canonical linear extension is valid and deterministic") {
    const Poset r22 = rectangle(2, 2);
    const auto ext = r22.linear_extension();
    std::vector<std::string> got;
    for (int v : ext) got.push_back(r22.name(v));
    CHECK(got == std::vector<std::string>{"(1,1)", "(1,2)", "(2,1)", "(2,2)"});

    for (const Poset& P : {rectangle(3, 2), triangle_delta(4), trapezoid(4, 3), claw(),
                           random_poset(5, 7), Poset()})
        CHECK(P.is_linear_extension(P.linear_extension()));

    const Poset chain = Poset::from_covers({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
    CHECK(chain.linear_extension() ==
          std::vector<int>{id_of(chain, "a"), id_of(chain, "b"), id_of(chain, "c")});
    CHECK(!chain.is_linear_extension({id_of(chain, "c"), id_of(chain, "b"), id_of(chain, "a")}));
    CHECK(!chain.is_linear_extension({id_of(chain, "a"), id_of(chain, "b")}));
}

TEST_CASE("all_linear_extensions enumerates and respects the cap") {
    CHECK(extensions(rectangle(2, 2)).size() == 2);
    CHECK(extensions(Poset::from_covers({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}})).size() == 1);
    CHECK(extensions(claw()).size() == 6);

    std::vector<std::string> names{"x0", "x1", "x2", "x3", "x4", "x5"};
    const Poset antichain = Poset::from_covers(names, {});
    bool truncated = false;
    const auto some = antichain.all_linear_extensions(10, &truncated);
    CHECK(truncated);
    CHECK(some.size() == 10);
    const auto all = antichain.all_linear_extensions(1000, &truncated);
    CHECK(!truncated);
    CHECK(all.size() == 720);
    for (const auto& e : some) CHECK(antichain.is_linear_extension(e));
}

TEST_CASE("swapping adjacent incomparable entries preserves extensions") {
    for (const Poset& P : {rectangle(2, 3), claw(), triangle_right(3)}) {
        for (const auto& ext : extensions(P)) {
            for (std::size_t i = 0; i + 1 < ext.size(); ++i) {
                if (!P.incomparable(ext[i], ext[i + 1])) continue;
                auto swapped = ext;
                std::swap(swapped[i], swapped[i + 1]);
                CHECK(P.is_linear_extension(swapped));
            }
        }
    }
}

TEST_CASE("adjacent swaps connect all linear extensions") {
    for (const Poset& P :
         {rectangle(2, 3), rectangle(2, 2), claw(), triangle_right(3), random_poset(23, 7)}) {
        const auto all = extensions(P);
        std::map<std::vector<int>, int> index;
        for (int i = 0; i < static_cast<int>(all.size()); ++i)
            index[all[static_cast<std::size_t>(i)]] = i;
        std::vector<bool> seen(all.size(), false);
        std::queue<int> queue;
        queue.push(0);
        seen[0] = true;
        while (!queue.empty()) {
            const auto ext = all[static_cast<std::size_t>(queue.front())];
            queue.pop();
            for (std::size_t i = 0; i + 1 < ext.size(); ++i) {
                if (!P.incomparable(ext[i], ext[i + 1])) continue;
                auto swapped = ext;
                std::swap(swapped[i], swapped[i + 1]);
                const int j = index.at(swapped);
                if (!seen[static_cast<std::size_t>(j)]) {
                    seen[static_cast<std::size_t>(j)] = true;
                    queue.push(j);
                }
            }
        }
        CHECK(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
    }
}

TEST_CASE("antipode is the stated involution") {
    CHECK(antipode(2, 2, {1, 1}) == std::pair<int, int>{2, 2});
    CHECK(antipode(2, 2, {1, 2}) == std::pair<int, int>{2, 1});
    CHECK(antipode(3, 3, {2, 2}) == std::pair<int, int>{2, 2});
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 4; ++j)
            CHECK(antipode(3, 4, antipode(3, 4, {i, j})) == std::pair<int, int>{i, j});
    CHECK_THROWS_AS(antipode(2, 2, {3, 1}), std::invalid_argument);
}

TEST_CASE("minimal and maximal element sets") {
    const Poset r = rectangle(3, 2);
    CHECK(r.minimal_elements() == std::vector<int>{rect_id(3, 2, 1, 1)});
    CHECK(r.maximal_elements() == std::vector<int>{rect_id(3, 2, 3, 2)});

    const Poset c = claw();
    CHECK(c.minimal_elements().size() == 1);
    CHECK(c.maximal_elements().size() == 3);

    const Poset empty;
    CHECK(empty.minimal_elements().empty());
    CHECK(empty.maximal_elements().empty());
}

TEST_CASE("poset JSON round-trips") {
    for (const Poset& P :
         {rectangle(2, 3), triangle_delta(3), trapezoid(4, 3), claw(), random_poset(77, 7)}) {
        const Poset back = Poset::from_json(P.to_json());
        CHECK(name_set(back) == name_set(P));
        CHECK(cover_set(back) == cover_set(P));
    }
    CHECK_THROWS_AS(Poset::from_json(nlohmann::json{{"covers", nlohmann::json::array()}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        Poset::from_json(nlohmann::json::parse(R"({"elements":["a"],"covers":[["a","b"]]})")),
        std::invalid_argument);
}

TEST_CASE("family specs parse and validate") {
    CHECK(Poset::from_spec("rect:2x3").size() == 6);
    CHECK(Poset::from_spec("delta:4").size() == 6);
    CHECK(Poset::from_spec("nabla:4").size() == 6);
    CHECK(Poset::from_spec("tria:4").size() == 10);
    CHECK(Poset::from_spec("trap:4,4").size() == 3);
    CHECK(Poset::from_spec("claw").size() == 4);
    CHECK_THROWS_AS(Poset::from_spec("rect:0x2"), std::invalid_argument);
    CHECK_THROWS_AS(Poset::from_spec("rect:2"), std::invalid_argument);
    CHECK_THROWS_AS(Poset::from_spec("trap:4"), std::invalid_argument);
    CHECK_THROWS_AS(Poset::from_spec("simplex:3"), std::invalid_argument);
    CHECK_THROWS_AS(Poset::from_spec("rect:axb"), std::invalid_argument);
}

TEST_CASE("random posets are deterministic and bounded") {
    const Poset a = random_poset(9, 7);
    const Poset b = random_poset(9, 7);
    CHECK(name_set(a) == name_set(b));
    CHECK(cover_set(a) == cover_set(b));
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Poset P = random_poset(seed, 7);
        CHECK(P.size() >= 2);
        CHECK(P.size() <= 7);
    }
}

TEST_CASE("extended poset adjoins the sentinels correctly") {
    const Poset P = rectangle(2, 2);
    const ExtendedPoset hat(P);
    CHECK(hat.size() == 6);
    CHECK(hat.bot() == 4);
    CHECK(hat.top() == 5);
    CHECK(hat.name(hat.bot()) == "BOT");
    CHECK(hat.name(hat.top()) == "TOP");
    CHECK(hat.name(0) == P.name(0));
    CHECK(hat.is_sentinel(hat.bot()));
    CHECK(!hat.is_sentinel(0));
    CHECK(hat.up_covers(hat.bot()) == std::vector<int>{rect_id(2, 2, 1, 1)});
    CHECK(hat.down_covers(hat.top()) == std::vector<int>{rect_id(2, 2, 2, 2)});
    for (int v = 0; v < hat.size(); ++v) {
        CHECK(hat.leq(hat.bot(), v));
        CHECK(hat.leq(v, hat.top()));
    }
    // Base covers plus one edge per minimal and per maximal element.
    CHECK(hat.cover_pairs().size() == 4 + 1 + 1);

    const Poset empty;
    const ExtendedPoset empty_hat(empty);
    CHECK(empty_hat.size() == 2);
    CHECK(empty_hat.cover_pairs() ==
          std::vector<std::pair<int, int>>{{empty_hat.bot(), empty_hat.top()}});
}

TEST_CASE("index_of misses return -1") {
    CHECK(rectangle(2, 2).index_of("(9,9)") == -1);
    CHECK(Poset().index_of("anything") == -1);
}

}  // TEST_SUITE
