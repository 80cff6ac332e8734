#include "mapties/harness.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace mapties;

namespace {

Instance nonuniform4(const Rational& p) {
    return build_instance({"0000", "0101", "0110", "0111"},
                          {parse_weight("q^2"), parse_weight("1"), parse_weight("1"), parse_weight("q^-2")},
                          p);
}

}  // namespace

TEST_CASE("counter rng streams are stable and order independent") {
    CounterRng a = CounterRng::keyed(7, 0);
    CounterRng b = CounterRng::keyed(7, 0);
    for (int t = 0; t < 100; ++t) CHECK(a.next_u64() == b.next_u64());

    CounterRng c = CounterRng::keyed(7, 1);
    CHECK(CounterRng::keyed(7, 0).next_u64() != c.next_u64());

    CounterRng d = CounterRng::keyed(9, 3);
    for (int t = 0; t < 1000; ++t) {
        const std::uint64_t x = d.below(13);
        CHECK(x < 13);
    }
    CounterRng e = CounterRng::keyed(9, 4);
    const BigInt bound = BigInt("123456789012345678901234567890");
    for (int t = 0; t < 50; ++t) {
        const BigInt x = e.below_big(bound);
        CHECK(x >= 0);
        CHECK(x < bound);
    }
}

TEST_CASE("random instances are reproducible") {
    FuzzConfig cfg;
    cfg.seed = 7;
    const Instance first = random_instance(cfg, 0);
    const Instance second = random_instance(cfg, 0);
    CHECK(first == second);
    CHECK(first.prior() == second.prior());

    // different trials give different draws almost surely
    bool any_difference = false;
    for (std::uint64_t t = 1; t < 5 && !any_difference; ++t)
        any_difference = !(random_instance(cfg, t) == first);
    CHECK(any_difference);
}

TEST_CASE("degenerate fuzz bounds pin the shape") {
    FuzzConfig cfg;
    cfg.seed = 11;
    cfg.max_n = 2;
    cfg.max_m = 2;
    for (std::uint64_t t = 0; t < 20; ++t) {
        const Instance inst = random_instance(cfg, t);
        CHECK(inst.n() == 2);
        CHECK(inst.M() == 2);
    }
}

TEST_CASE("every generated instance passes validation again") {
    FuzzConfig cfg;
    cfg.seed = 13;
    cfg.max_n = 8;
    cfg.max_m = 6;
    for (std::uint64_t t = 0; t < 100; ++t) {
        const Instance inst = random_instance(cfg, t);
        CHECK_NOTHROW(instance_from_json(instance_to_json(inst)));
        CHECK(inst.n() >= 2);
        CHECK(inst.n() <= 8);
        CHECK(inst.M() >= 2);
        CHECK(inst.M() <= 6);
        Rational total(0);
        for (const auto& pr : inst.prior()) {
            CHECK(pr > 0);
            total += pr;
        }
        CHECK(total == Rational(1));
    }
}

TEST_CASE("uniform style forces equal priors") {
    FuzzConfig cfg;
    cfg.seed = 15;
    cfg.uniform_prior = true;
    for (std::uint64_t t = 0; t < 10; ++t) CHECK(random_instance(cfg, t).uniform_prior());
}

TEST_CASE("suite passes on the reference instances") {
    const SuiteReport rep = run_suite(nonuniform4(Rational(1, 3)));
    CHECK(rep.pass());
    CHECK(rep.failures().empty());

    const SuiteReport uni = run_suite(
        build_instance({"00", "11"}, {parse_weight("1"), parse_weight("1")}, Rational(1, 4)));
    CHECK(uni.pass());
}

TEST_CASE("suite marks tie-dependent properties vacuous on tie-free instances") {
    const Instance inst = build_instance({"000", "111"}, {parse_weight("1"), parse_weight("1")},
                                         Rational(1, 3));
    const SuiteReport rep = run_suite(inst);
    CHECK(rep.pass());
    bool found_vacuous = false;
    for (const auto& r : rep.results) {
        if (r.name == "partitions/bound-chain") {
            CHECK(r.vacuous);
            found_vacuous = true;
        }
    }
    CHECK(found_vacuous);
}

TEST_CASE("suite results are reproducible") {
    const Instance inst = nonuniform4(Rational(2, 5));
    const SuiteReport a = run_suite(inst);
    const SuiteReport b = run_suite(inst);
    REQUIRE(a.results.size() == b.results.size());
    for (std::size_t r = 0; r < a.results.size(); ++r) {
        CHECK(a.results[r].name == b.results[r].name);
        CHECK(a.results[r].pass == b.results[r].pass);
        CHECK(a.results[r].vacuous == b.results[r].vacuous);
    }
}

TEST_CASE("suite passes over a mixed random corpus") {
    FuzzConfig cfg;
    cfg.seed = 101;
    cfg.max_n = 7;
    cfg.max_m = 5;
    for (std::uint64_t t = 0; t < 60; ++t) {
        const Instance inst = random_instance(cfg, t);
        const SuiteReport rep = run_suite(inst);
        CAPTURE(instance_to_json(inst).dump());
        CHECK(rep.pass());
    }
}

TEST_CASE("uniform corpus: residual families stay empty") {
    FuzzConfig cfg;
    cfg.seed = 103;
    cfg.max_n = 7;
    cfg.max_m = 5;
    cfg.uniform_prior = true;
    for (std::uint64_t t = 0; t < 40; ++t) {
        const Instance inst = random_instance(cfg, t);
        const SuiteReport rep = run_suite(inst);
        CAPTURE(instance_to_json(inst).dump());
        CHECK(rep.pass());

        const ScoreTable table(inst);
        const Classification cls = classify(inst);
        for (int i = 1; i <= inst.M(); ++i) {
            const TieSplit split = tie_partition(inst, table, cls, i);
            for (const auto& family : split.fixed_ties) CHECK(family.empty());
        }
    }
}
