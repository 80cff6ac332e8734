#include "mapties/harness.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace mapties;

namespace {

Instance nonuniform4(const Rational& p) {
    return build_instance({"0000", "0101", "0110", "0111"},
                          {parse_weight("q^2"), parse_weight("1"), parse_weight("1"), parse_weight("q^-2")},
                          p);
}

Instance fivebit() {
    return build_instance({"00000", "11001", "01111", "01101"},
                          {parse_weight("1"), parse_weight("1"), parse_weight("1"), parse_weight("1")},
                          Rational(1, 3));
}

std::vector<Word> words(std::initializer_list<const char*> strings) {
    std::vector<Word> out;
    for (const char* s : strings) out.push_back(word_from_string(s));
    return out;
}

std::vector<int> positions(const IndexSet& s, int n) { return s.members(n); }

}  // namespace

TEST_CASE("differ sets") {
    const Instance inst = fivebit();
    const DifferSet d13 = differ_set(inst, 1, 3);
    CHECK(positions(d13.set, 5) == std::vector<int>{2, 3, 4, 5});
    CHECK(d13.size == 4);
    CHECK(differ_set(inst, 3, 1).set == d13.set);

    const Instance ex = nonuniform4(Rational(1, 3));
    CHECK(positions(differ_set(ex, 1, 2).set, 4) == std::vector<int>{2, 4});
    CHECK(positions(differ_set(ex, 3, 4).set, 4) == std::vector<int>{4});  // single differing bit
    CHECK_THROWS_AS(differ_set(ex, 2, 2), std::invalid_argument);
}

TEST_CASE("refinement cells of the five-bit code") {
    const Instance inst = fivebit();
    const Refinement ref = refine(inst, 1, 3);
    REQUIRE(ref.cells.size() == 4);
    CHECK(positions(ref.cells[0], 5) == std::vector<int>{4});
    CHECK(positions(ref.cells[1], 5).empty());  // empty cells keep their slot
    CHECK(positions(ref.cells[2], 5) == std::vector<int>{3});
    CHECK(positions(ref.cells[3], 5) == std::vector<int>{2, 5});
    CHECK(ref.ell == 4);
    CHECK(ref.prefix_size == std::vector<int>{0, 1, 1, 2, 4});

    // per-cell distances to the other codewords collapse to all-or-nothing
    CHECK(restricted_distance(inst.codeword(1), inst.codeword(2), ref.cells[3]) == 2);
    CHECK(restricted_distance(inst.codeword(1), inst.codeword(2), ref.cells[2]) == 0);
    CHECK(restricted_distance(inst.codeword(1), inst.codeword(4), ref.cells[2]) == 1);
}

TEST_CASE("refinement eta mapping") {
    const Instance inst = fivebit();
    const Refinement ref = refine(inst, 1, 3);
    CHECK(ref.eta == std::vector<int>{3, 4, 4, 4});
    for (int k = 0; k < ref.ell - 1; ++k) {
        CHECK(ref.window_before_size(k) - 1 <= k);
        CHECK(k < ref.window_size(k) - 1);
    }
    CHECK(ref.window_size(ref.ell - 1) == ref.ell);
}

TEST_CASE("refinement with two codewords has a single cell") {
    const Instance inst = build_instance({"0011", "0110"}, {parse_weight("1"), parse_weight("1")},
                                         Rational(1, 3));
    const Refinement ref = refine(inst, 1, 2);
    REQUIRE(ref.cells.size() == 1);
    CHECK(ref.cells[0] == inst.differ_mask(1, 2));
}

TEST_CASE("cell distance dichotomy holds on random instances") {
    FuzzConfig cfg;
    cfg.seed = 17;
    cfg.max_n = 8;
    cfg.max_m = 6;
    for (std::uint64_t trial = 0; trial < 25; ++trial) {
        const Instance inst = random_instance(cfg, trial);
        for (int i = 1; i <= inst.M(); ++i) {
            for (int j = 1; j <= inst.M(); ++j) {
                if (i == j) continue;
                const Refinement ref = refine(inst, i, j);
                for (const IndexSet& cell : ref.cells) {
                    for (int r = 1; r <= inst.M(); ++r) {
                        if (r == i || r == j) continue;
                        const int d = restricted_distance(inst.codeword(i), inst.codeword(r), cell);
                        CHECK((d == 0 || d == cell.size()));
                    }
                }
                for (std::size_t m = 1; m < ref.prefix.size(); ++m)
                    CHECK(ref.prefix_size[m - 1] <= ref.prefix_size[m]);
            }
        }
    }
}

TEST_CASE("tie families of the four-codeword instance") {
    const Instance inst = nonuniform4(Rational(1, 3));
    const ScoreTable table(inst);
    const Classification cls = classify(inst);

    const TieSplit s1 = tie_partition(inst, table, cls, 1);
    for (int j = 2; j <= 4; ++j) CHECK(s1.flip_ties[static_cast<std::size_t>(j - 1)].empty());
    CHECK(s1.fixed_ties[1] == words({"0101", "0111", "1101", "1111"}));
    CHECK(s1.fixed_ties[2] == words({"0110", "1110"}));
    CHECK(s1.fixed_ties[3].empty());
    for (int j = 2; j <= 4; ++j) CHECK(s1.near_errors[static_cast<std::size_t>(j - 1)].empty());

    const TieSplit s2 = tie_partition(inst, table, cls, 2);
    CHECK(s2.flip_ties[0] == cls.ties[1]);  // T_{1|2} = T_2
    CHECK(s2.flip_ties[2].empty());
    CHECK(s2.flip_ties[3].empty());
    for (int j : {1, 3, 4}) CHECK(s2.fixed_ties[static_cast<std::size_t>(j - 1)].empty());
    CHECK(s2.near_errors[0] ==
          words({"0001", "0011", "0100", "0110", "1001", "1011", "1100", "1110"}));
    CHECK(s2.near_errors[2] == words({"0010", "1010"}));
    CHECK(s2.near_errors[3].empty());

    const TieSplit s3 = tie_partition(inst, table, cls, 3);
    CHECK(s3.flip_ties[0] == cls.ties[2]);  // T_{1|3} = T_3
    CHECK(s3.near_errors[0] ==
          words({"0010", "0011", "0100", "0101", "1010", "1011", "1100", "1101"}));
    CHECK(s3.near_errors[1] == words({"0001", "1001"}));

    const TieSplit s4 = tie_partition(inst, table, cls, 4);
    for (int j = 1; j <= 3; ++j) {
        CHECK(s4.flip_ties[static_cast<std::size_t>(j - 1)].empty());
        CHECK(s4.fixed_ties[static_cast<std::size_t>(j - 1)].empty());
        CHECK(s4.near_errors[static_cast<std::size_t>(j - 1)].empty());
    }
}

TEST_CASE("tie families of a tie-free instance are empty") {
    const Instance inst = build_instance({"000", "111"}, {parse_weight("1"), parse_weight("1")},
                                         Rational(1, 3));
    const ScoreTable table(inst);
    const Classification cls = classify(inst);
    for (int i = 1; i <= 2; ++i) {
        const TieSplit split = tie_partition(inst, table, cls, i);
        for (int j = 1; j <= 2; ++j) {
            CHECK(split.flip_ties[static_cast<std::size_t>(j - 1)].empty());
            CHECK(split.fixed_ties[static_cast<std::size_t>(j - 1)].empty());
        }
    }
}

TEST_CASE("levels of the (1|2) family") {
    const Instance inst = nonuniform4(Rational(1, 3));
    const ScoreTable table(inst);
    const Classification cls = classify(inst);
    const TieSplit split = tie_partition(inst, table, cls, 2);
    const LevelSplit lvl = level_partition(inst, split, 1);

    REQUIRE(lvl.refinement.ell == 2);
    CHECK(lvl.tie_levels[0] == split.flip_ties[0]);
    CHECK(lvl.tie_levels[1].empty());
    CHECK(lvl.err_levels[0] == words({"0001", "0011", "1001", "1011"}));
    CHECK(lvl.err_levels[1].empty());

    // levels partition the family
    std::vector<Word> all;
    for (const auto& level : lvl.tie_levels) all.insert(all.end(), level.begin(), level.end());
    std::sort(all.begin(), all.end());
    CHECK(all == split.flip_ties[0]);
}

TEST_CASE("atoms of the (1|2) family at level 0") {
    const Instance inst = nonuniform4(Rational(1, 3));
    const ScoreTable table(inst);
    const Classification cls = classify(inst);
    const TieSplit split = tie_partition(inst, table, cls, 2);
    const LevelSplit lvl = level_partition(inst, split, 1);
    const AtomSplit atoms = atom_partition(inst, lvl, 0);

    CHECK(atoms.reps == words({"0101", "0111", "1101", "1111"}));
    REQUIRE(atoms.tie_atoms.size() == 4);
    for (std::size_t a = 0; a < 4; ++a) CHECK(atoms.tie_atoms[a] == std::vector<Word>{atoms.reps[a]});
    CHECK(atoms.err_atoms[0] == words({"0001"}));
    CHECK(atoms.err_atoms[1] == words({"0011"}));
    CHECK(atoms.err_atoms[2] == words({"1001"}));
    CHECK(atoms.err_atoms[3] == words({"1011"}));

    // singleton atom with singleton N-atom: the weight gap is exactly q
    const Rational wt = set_weight(table, 2, atoms.tie_atoms[0]);
    const Rational wn = set_weight(table, 2, atoms.err_atoms[0]);
    CHECK(wt == inst.q() * wn);
}

TEST_CASE("single-element level yields itself as representative") {
    // two codewords at distance 2, uniform priors: each tie word forms a level entry
    const Instance inst = build_instance({"0011", "0110"}, {parse_weight("1"), parse_weight("1")},
                                         Rational(1, 3));
    const ScoreTable table(inst);
    const Classification cls = classify(inst);
    const TieSplit split = tie_partition(inst, table, cls, 1);
    REQUIRE_FALSE(split.flip_ties[1].empty());
    const LevelSplit lvl = level_partition(inst, split, 2);
    for (int k = 0; k < lvl.refinement.ell; ++k) {
        if (lvl.tie_levels[static_cast<std::size_t>(k)].size() != 1) continue;
        const AtomSplit atoms = atom_partition(inst, lvl, k);
        CHECK(atoms.reps == lvl.tie_levels[static_cast<std::size_t>(k)]);
        CHECK(atoms.tie_atoms[0] == lvl.tie_levels[static_cast<std::size_t>(k)]);
    }
}

TEST_CASE("residual ties transfer into flip families") {
    const Instance inst = nonuniform4(Rational(1, 3));
    const ScoreTable table(inst);
    const Classification cls = classify(inst);
    const auto splits = all_tie_partitions(inst, table, cls);
    const ResidualTransferReport rep = check_prop2(inst, table, splits);
    CHECK(rep.check.ok());

    // the word 0111 sits in the residual family of (2|1) and in both flip families (1|2), (1|3)
    const Word w = word_from_string("0111");
    CHECK(set_contains(splits[0].fixed_ties[1], w));
    CHECK(set_contains(splits[1].flip_ties[0], w));
    CHECK(set_contains(splits[2].flip_ties[0], w));
}

TEST_CASE("flip-family weight exceeds residual weight by an exact margin") {
    for (const Rational& p : {Rational(1, 3), Rational(1, 4), Rational(2, 5)}) {
        const Instance inst = nonuniform4(p);
        const ScoreTable table(inst);
        const Classification cls = classify(inst);
        const auto splits = all_tie_partitions(inst, table, cls);
        const ResidualTransferReport rep = check_prop2(inst, table, splits);
        const Rational q = inst.q();
        const Rational margin = rational_pow(p, 4) * q * q * (q + 1) /
                                (2 + q * q + rational_pow(q, -2));
        CHECK(rep.flip_weight - rep.residual_weight == margin);
    }
}

TEST_CASE("atom ratio law and counts") {
    const Instance inst = nonuniform4(Rational(1, 3));
    const ScoreTable table(inst);
    const Classification cls = classify(inst);
    const auto splits = all_tie_partitions(inst, table, cls);
    CHECK(check_prop9(inst, table, splits).ok());

    // every atom ratio stays below qn = 8
    const TieSplit& split = splits[1];
    const LevelSplit lvl = level_partition(inst, split, 1);
    const AtomSplit atoms = atom_partition(inst, lvl, 0);
    for (std::size_t a = 0; a < atoms.reps.size(); ++a) {
        const Rational ratio = set_weight(table, 2, atoms.tie_atoms[a]) /
                               set_weight(table, 2, atoms.err_atoms[a]);
        CHECK(ratio <= inst.q() * inst.n());
    }
}

TEST_CASE("flip construction lands in the matched N-atom") {
    const Instance inst = nonuniform4(Rational(1, 3));
    const ScoreTable table(inst);
    const Classification cls = classify(inst);
    const auto splits = all_tie_partitions(inst, table, cls);
    CHECK(check_appendixB(inst, table, splits).ok());

    const LevelSplit lvl = level_partition(inst, splits[1], 1);
    const AtomSplit atoms = atom_partition(inst, lvl, 0);
    for (std::size_t a = 0; a < atoms.reps.size(); ++a)
        CHECK(check_appendix_flip(inst, table, lvl, atoms, a).ok());
}

TEST_CASE("bound chain of the four-codeword instance") {
    const Instance inst = nonuniform4(Rational(1, 3));
    const Classification cls = classify(inst);
    const BoundChain chain = bound_chain(inst, cls);
    REQUIRE_FALSE(chain.vacuous);
    CHECK(chain.ok());
    REQUIRE(chain.links.size() == 7);
    CHECK(chain.links[0].value == Rational(176, 147));
    CHECK(chain.links[1].value == Rational(22, 13));
    CHECK(chain.links[2].value == Rational(24, 13));
    CHECK(chain.links[3].value == Rational(2));
    CHECK(chain.links[4].value == Rational(4));
    CHECK(chain.links[5].value == Rational(4));
    CHECK(chain.links[6].value == Rational(16));
    CHECK(chain.monotone);
    CHECK(chain.capped);
}

TEST_CASE("bound chain under uniform priors is additionally capped by qn") {
    const Instance inst = build_instance({"00", "11"}, {parse_weight("1"), parse_weight("1")},
                                         Rational(1, 4));
    const Classification cls = classify(inst);
    const BoundChain chain = bound_chain(inst, cls);
    CHECK(chain.ok());
    CHECK(chain.uniform_ok);
    // delta/b = 6 meets qn = 6 exactly here
    CHECK(cls.metrics.delta / cls.metrics.b == inst.q() * inst.n());
}

TEST_CASE("bound chain is vacuous without ties") {
    const Instance inst = build_instance({"000", "111"}, {parse_weight("1"), parse_weight("1")},
                                         Rational(1, 3));
    const BoundChain chain = bound_chain(inst, classify(inst));
    CHECK(chain.vacuous);
    CHECK(chain.ok());
}
