#include "mapties/harness.hpp"
#include "mapties/report.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace mapties;

namespace {

Instance nonuniform4(const Rational& p) {
    return build_instance({"0000", "0101", "0110", "0111"},
                          {parse_weight("q^2"), parse_weight("1"), parse_weight("1"), parse_weight("q^-2")},
                          p);
}

}  // namespace

TEST_CASE("word/string conversions keep position 1 leftmost") {
    CHECK(word_from_string("0101") == 0b0101u);
    CHECK(word_to_string(0b0101u, 4) == "0101");
    CHECK(word_from_string("1") == 1u);
    CHECK_THROWS_AS(word_from_string("01x1"), std::invalid_argument);
    CHECK_THROWS_AS(word_from_string(""), std::invalid_argument);
}

TEST_CASE("restricted distance") {
    const Word x = word_from_string("0101");
    const Word y = word_from_string("0111");
    CHECK(restricted_distance(x, y, IndexSet::full(4)) == 1);
    CHECK(restricted_distance(x, y, IndexSet{}) == 0);

    IndexSet s;
    for (int t : {2, 3, 4, 5}) s.insert(t, 5);
    CHECK(restricted_distance(word_from_string("00000"), word_from_string("01111"), s) == 4);
}

TEST_CASE("restricted distance is a pseudometric on every index set") {
    CounterRng rng = CounterRng::keyed(7, 0);
    const int n = 10;
    for (int trial = 0; trial < 200; ++trial) {
        const Word x = rng.below(1u << n), y = rng.below(1u << n), z = rng.below(1u << n);
        const IndexSet s{rng.below(1u << n)};
        CHECK(restricted_distance(x, x, s) == 0);
        CHECK(restricted_distance(x, y, s) == restricted_distance(y, x, s));
        CHECK(restricted_distance(x, z, s) <= restricted_distance(x, y, s) + restricted_distance(y, z, s));
    }
}

TEST_CASE("build_instance normalizes evaluated weights") {
    const Instance inst = nonuniform4(Rational(1, 3));
    CHECK(inst.q() == Rational(2));
    CHECK(inst.prior() == std::vector<Rational>{Rational(16, 25), Rational(4, 25), Rational(4, 25),
                                                Rational(1, 25)});
    CHECK_FALSE(inst.uniform_prior());

    const Instance uniform = build_instance({"00", "11"}, {parse_weight("1"), parse_weight("1")},
                                            Rational(1, 4));
    CHECK(uniform.prior() == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    CHECK(uniform.uniform_prior());
}

TEST_CASE("build_instance validation") {
    const std::vector<LaurentWeight> ones{parse_weight("1"), parse_weight("1")};
    CHECK_THROWS_WITH(build_instance({"000", "000"}, ones, Rational(1, 4)),
                      Catch::Matchers::ContainsSubstring("duplicate codeword"));
    CHECK_THROWS_WITH(build_instance({"000"}, {parse_weight("1")}, Rational(1, 4)),
                      Catch::Matchers::ContainsSubstring("at least two codewords"));
    CHECK_THROWS_WITH(build_instance({"00", "11"}, ones, Rational(3, 4)),
                      Catch::Matchers::ContainsSubstring("p must lie in (0, 1/2)"));
    CHECK_THROWS_WITH(build_instance({"00", "11"}, ones, Rational(1, 2)),
                      Catch::Matchers::ContainsSubstring("p must lie in (0, 1/2)"));
    CHECK_THROWS_WITH(build_instance({"00", "111"}, ones, Rational(1, 4)),
                      Catch::Matchers::ContainsSubstring("one blocklength"));
    CHECK_THROWS_WITH(
        build_instance({"00", "11"}, {parse_weight("1"), parse_weight("1 - 1")}, Rational(1, 4)),
        Catch::Matchers::ContainsSubstring("positive prior weight"));
    // q^-1 - 1 evaluates negative for q > 1
    CHECK_THROWS_WITH(
        build_instance({"00", "11"}, {parse_weight("1"), parse_weight("q^-1 - 1")}, Rational(1, 4)),
        Catch::Matchers::ContainsSubstring("positive prior weight"));
}

TEST_CASE("joint weights") {
    const Instance inst = nonuniform4(Rational(1, 3));
    CHECK(inst.joint_weight(1, word_from_string("0111")) == Rational(32, 2025));
    CHECK(inst.joint_weight(2, word_from_string("0101")) ==
          inst.prior_of(2) * rational_pow(Rational(1, 3), 4) * rational_pow(Rational(2), 4));

    const Instance uniform = build_instance({"00", "11"}, {parse_weight("1"), parse_weight("1")},
                                            Rational(1, 4));
    CHECK(uniform.joint_weight(1, word_from_string("11")) == Rational(1, 32));
    CHECK_THROWS_AS(uniform.joint_weight(3, 0), std::out_of_range);
}

TEST_CASE("joint weights sum to one over all outputs") {
    FuzzConfig cfg;
    cfg.seed = 99;
    cfg.max_n = 6;
    cfg.max_m = 5;
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        const Instance inst = random_instance(cfg, trial);
        Rational total(0);
        for (Word y = 0; y < inst.output_count(); ++y)
            for (int i = 1; i <= inst.M(); ++i) total += inst.joint_weight(i, y);
        CHECK(total == Rational(1));
    }
}

TEST_CASE("likelihood ratio law") {
    const Instance inst = nonuniform4(Rational(2, 5));
    CounterRng rng = CounterRng::keyed(3, 1);
    for (int trial = 0; trial < 100; ++trial) {
        const Word y = rng.below(16), y2 = rng.below(16);
        const int i = 1 + static_cast<int>(rng.below(4));
        CHECK(inst.joint_weight(i, y) ==
              inst.joint_weight(i, y2) * rational_pow(inst.q(), inst.distance(i, y2) - inst.distance(i, y)));
    }
}

TEST_CASE("instance JSON round trip") {
    const Instance inst = nonuniform4(Rational(1, 3));
    const Instance back = instance_from_json(instance_to_json(inst));
    CHECK(back == inst);
    CHECK(back.prior() == inst.prior());

    nlohmann::json j = instance_to_json(inst);
    j.erase("p");
    CHECK_THROWS_WITH(instance_from_json(j), Catch::Matchers::ContainsSubstring("missing field 'p'"));
    j = instance_to_json(inst);
    j["n"] = 5;
    CHECK_THROWS_WITH(instance_from_json(j), Catch::Matchers::ContainsSubstring("disagrees"));
}

TEST_CASE("scored joints match rational joints") {
    const Instance inst = nonuniform4(Rational(1, 3));
    const ScoreTable table(inst);
    for (Word y = 0; y < inst.output_count(); ++y) {
        BigInt sum = 0;
        for (int i = 1; i <= inst.M(); ++i) {
            CHECK(table.to_weight(table.score(i, y)) == inst.joint_weight(i, y));
            sum += table.score(i, y);
        }
        CHECK(table.to_weight(sum) > 0);
    }
}

TEST_CASE("analyze JSON echoes a round-trippable instance") {
    const Instance inst = nonuniform4(Rational(1, 3));
    const nlohmann::json j = analyze_to_json(inst, verify_theorem(inst));
    CHECK(instance_from_json(j.at("instance")) == inst);
    CHECK(j.at("a_n") == "9/25");
    CHECK(j.at("bound_ok") == true);
}
