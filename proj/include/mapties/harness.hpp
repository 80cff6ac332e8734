// Seeded random-instance generation and the property suite.
//
// The suite runs every classification and partition invariant on one
// instance, computing each set twice: once with the optimized engine and once
// with the literal predicate transcription in oracle.hpp. A violation is data
// (never an exception); callers serialize the instance as a reproducer.

#pragma once

#include "mapties/oracle.hpp"
#include "mapties/rng.hpp"

#include <map>
#include <set>

namespace mapties {

enum class WeightStyle { rational, laurent, mixed };

struct FuzzConfig {
    std::uint64_t seed = 1;
    std::uint64_t trials = 100;
    int max_n = 8;   // capped at 12
    int max_m = 6;   // capped at 8
    std::vector<Rational> p_pool = {Rational(1, 3), Rational(1, 4), Rational(2, 5), Rational(1, 5)};
    WeightStyle weight_style = WeightStyle::mixed;
    bool uniform_prior = false;
};

/// Instance fully determined by (cfg.seed, trial).
inline Instance random_instance(const FuzzConfig& cfg, std::uint64_t trial) {
    CounterRng rng = CounterRng::keyed(cfg.seed, trial);
    const int max_n = std::min(cfg.max_n, 12);
    const int max_m = std::min(cfg.max_m, 8);

    const int n = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_n - 1)));
    const std::uint64_t word_space = std::uint64_t{1} << n;
    const int m_cap = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(max_m), word_space));
    const int M = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(m_cap - 1)));

    std::set<Word> seen;
    std::vector<std::string> codewords;
    while (static_cast<int>(codewords.size()) < M) {
        const Word w = rng.below(word_space);
        if (seen.insert(w).second) codewords.push_back(word_to_string(w, n));
    }

    bool laurent = cfg.weight_style == WeightStyle::laurent;
    if (cfg.weight_style == WeightStyle::mixed) laurent = rng.coin();
    std::vector<LaurentWeight> weights;
    for (int i = 0; i < M; ++i) {
        if (cfg.uniform_prior) {
            weights.push_back(LaurentWeight::constant(Rational(1)));
        } else if (laurent) {
            weights.push_back(LaurentWeight::monomial(static_cast<long>(rng.below(7)) - 3, Rational(1)));
        } else {
            const auto num = 1 + rng.below(6);
            const auto den = 1 + rng.below(6);
            weights.push_back(LaurentWeight::constant(Rational(num, den)));
        }
    }
    const Rational p = cfg.p_pool[static_cast<std::size_t>(rng.below(cfg.p_pool.size()))];
    return build_instance(codewords, weights, p);
}

struct PropertyResult {
    std::string name;
    bool pass = true;
    bool vacuous = false;
    std::string detail;
};

struct SuiteReport {
    std::vector<PropertyResult> results;

    bool pass() const {
        return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
    }
    std::vector<const PropertyResult*> failures() const {
        std::vector<const PropertyResult*> out;
        for (const auto& r : results)
            if (!r.pass) out.push_back(&r);
        return out;
    }
};

namespace detail {

inline void record(SuiteReport& rep, std::string name, const CheckReport& check, bool vacuous = false) {
    PropertyResult r;
    r.name = std::move(name);
    r.pass = check.ok();
    r.vacuous = vacuous && check.ok();
    if (!check.ok()) r.detail = check.violations.front().property + ": " + check.violations.front().detail;
    rep.results.push_back(std::move(r));
}

inline bool same_sets(const std::vector<std::vector<Word>>& lhs, const std::vector<std::vector<Word>>& rhs) {
    return lhs == rhs;  // both sides are ascending word lists
}

// Union of a family of sorted sets; also verifies pairwise disjointness.
inline bool disjoint_union(const std::vector<std::vector<Word>>& family, std::vector<Word>& out) {
    out.clear();
    for (const auto& set : family) out.insert(out.end(), set.begin(), set.end());
    std::sort(out.begin(), out.end());
    return std::adjacent_find(out.begin(), out.end()) == out.end();
}

}  // namespace detail

/// Run every invariant and proposition check on one instance.
inline SuiteReport run_suite(const Instance& inst, int limit = kDefaultEnumLimit) {
    require_enumerable(inst, limit);
    SuiteReport rep;
    const int M = inst.M();
    const ScoreTable table(inst);
    const Classification cls = classify(inst, {.limit = limit});
    const bool tie_free = cls.tie_free();

    // Engine vs literal transcription: regions, tie partners, metrics.
    {
        CheckReport check;
        for (int i = 1; i <= M; ++i) {
            if (cls.ties[static_cast<std::size_t>(i - 1)] != oracle::tie_set(inst, i))
                check.add("oracle-ties", "T_" + std::to_string(i) + " differs from the literal definition");
            if (cls.errors[static_cast<std::size_t>(i - 1)] != oracle::error_set(inst, i))
                check.add("oracle-errors", "N_" + std::to_string(i) + " differs from the literal definition");
        }
        const Metrics m = oracle::metrics(inst);
        if (m.a != cls.metrics.a || m.b != cls.metrics.b || m.delta != cls.metrics.delta)
            check.add("oracle-metrics", "engine metrics differ from the literal recomputation");
        detail::record(rep, "classify/oracle-equivalence", check);
    }

    // T_i and N_i are disjoint; membership tags agree with the tie partners.
    {
        CheckReport check;
        for (int i = 1; i <= M; ++i) {
            const auto& ties = cls.ties[static_cast<std::size_t>(i - 1)];
            const auto& errs = cls.errors[static_cast<std::size_t>(i - 1)];
            for (Word y : ties)
                if (set_contains(errs, y))
                    check.add("region-overlap", detail::describe(inst, i, 0, y) + " in both T_i and N_i");
            for (Word y = 0; y < inst.output_count(); ++y) {
                const bool tied = set_contains(ties, y);
                if (tied != !tie_indices(inst, table, i, y).empty())
                    check.add("tie-partners", detail::describe(inst, i, 0, y) +
                                                  ": I_i(y) emptiness disagrees with T_i membership");
            }
        }
        detail::record(rep, "classify/region-partition", check);
    }

    // Reciprocity of tie partners with equal joint weights.
    {
        CheckReport check;
        for (int i = 1; i <= M; ++i) {
            for (Word y : cls.ties[static_cast<std::size_t>(i - 1)]) {
                for (int h : tie_indices(inst, table, i, y)) {
                    const auto back = tie_indices(inst, table, h, y);
                    if (std::find(back.begin(), back.end(), i) == back.end())
                        check.add("reciprocity", detail::describe(inst, i, 0, y) +
                                                     ": h=" + std::to_string(h) + " does not point back");
                    if (inst.joint_weight(i, y) != inst.joint_weight(h, y))
                        check.add("reciprocity", detail::describe(inst, i, 0, y) +
                                                     ": joint weights differ at h=" + std::to_string(h));
                    if (!set_contains(cls.ties[static_cast<std::size_t>(h - 1)], y))
                        check.add("reciprocity", detail::describe(inst, i, 0, y) + ": y not in T_h for h=" +
                                                     std::to_string(h));
                }
            }
        }
        detail::record(rep, "classify/reciprocity", check, tie_free);
    }

    // Metrics recomputed per codeword (rational path) and via the decoder.
    {
        CheckReport check;
        Rational b2(0), delta2(0), a2(0);
        for (int i = 1; i <= M; ++i) {
            for (Word y : cls.errors[static_cast<std::size_t>(i - 1)]) b2 += inst.joint_weight(i, y);
            for (Word y : cls.ties[static_cast<std::size_t>(i - 1)]) delta2 += inst.joint_weight(i, y);
        }
        for (Word y = 0; y < inst.output_count(); ++y) {
            const int decoded = map_decode(inst, table, y);
            for (int i = 1; i <= M; ++i)
                if (i != decoded) a2 += inst.joint_weight(i, y);
        }
        if (b2 != cls.metrics.b) check.add("metrics-two-ways", "per-codeword b_n differs");
        if (delta2 != cls.metrics.delta) check.add("metrics-two-ways", "per-codeword delta_n differs");
        if (a2 != cls.metrics.a) check.add("metrics-two-ways", "decoder-based a_n differs");
        detail::record(rep, "classify/metrics-two-ways", check);
    }

    // Bound checks of the main theorem.
    {
        CheckReport check;
        const TheoremReport thm = verify_theorem(inst, cls);
        if (!thm.sandwich_ok) check.add("sandwich", "b_n <= a_n <= b_n + delta_n violated");
        if (!thm.tie_bound_ok) check.add("tie-bound", "delta_n <= 2qn b_n violated");
        if (!thm.main_bound_ok) check.add("main-bound", "a_n <= (1+2qn) b_n violated");
        if (!thm.uniform_bound_ok) check.add("uniform-bound", "a_n <= (1+qn) b_n violated under uniform priors");
        detail::record(rep, "classify/theorem", check);
    }

    // Decoding is invariant under a common positive rescaling of the weights.
    {
        CheckReport check;
        std::vector<LaurentWeight> scaled;
        for (const auto& w : inst.weights()) scaled.push_back(w * LaurentWeight::constant(Rational(3, 2)));
        std::vector<std::string> codewords;
        for (Word c : inst.codewords()) codewords.push_back(word_to_string(c, inst.n()));
        const Instance rescaled = build_instance(codewords, scaled, inst.p());
        const ScoreTable rescaled_table(rescaled);
        for (Word y = 0; y < inst.output_count(); ++y)
            if (map_decode(inst, table, y) != map_decode(rescaled, rescaled_table, y)) {
                check.add("argmax-invariance", "decision changed after rescaling at y=" +
                                                   word_to_string(y, inst.n()));
                break;
            }
        detail::record(rep, "classify/argmax-scale-invariance", check);
    }

    const std::vector<TieSplit> splits = all_tie_partitions(inst, table, cls);

    // Families partition T_i; matched error families are disjoint in N_i.
    {
        CheckReport check;
        for (int i = 1; i <= M; ++i) {
            const TieSplit& split = splits[static_cast<std::size_t>(i - 1)];
            std::vector<std::vector<Word>> tie_families;
            for (int j = 1; j <= M; ++j) {
                if (j == i) continue;
                tie_families.push_back(split.flip_ties[static_cast<std::size_t>(j - 1)]);
                tie_families.push_back(split.fixed_ties[static_cast<std::size_t>(j - 1)]);
            }
            std::vector<Word> united;
            if (!detail::disjoint_union(tie_families, united))
                check.add("family-partition", "tie families overlap for i=" + std::to_string(i));
            else if (united != cls.ties[static_cast<std::size_t>(i - 1)])
                check.add("family-partition", "tie families do not cover T_i for i=" + std::to_string(i));

            std::vector<Word> err_union;
            if (!detail::disjoint_union(split.near_errors, err_union))
                check.add("family-disjoint", "matched error families overlap for i=" + std::to_string(i));
            for (Word w : err_union)
                if (!set_contains(cls.errors[static_cast<std::size_t>(i - 1)], w))
                    check.add("family-subset", detail::describe(inst, i, 0, w) + " outside N_i");
        }
        detail::record(rep, "partitions/family-partition", check, tie_free);
    }

    // Engine families vs literal transcription.
    {
        CheckReport check;
        for (int i = 1; i <= M; ++i) {
            const TieSplit literal = oracle::tie_split(inst, i);
            const TieSplit& engine = splits[static_cast<std::size_t>(i - 1)];
            if (!detail::same_sets(engine.flip_ties, literal.flip_ties) ||
                !detail::same_sets(engine.fixed_ties, literal.fixed_ties) ||
                !detail::same_sets(engine.near_errors, literal.near_errors))
                check.add("oracle-families", "family split differs from the literal definition for i=" +
                                                 std::to_string(i));
        }
        detail::record(rep, "partitions/oracle-equivalence", check);
    }

    // Residual ties transfer with equal weight and appear exactly once.
    detail::record(rep, "partitions/residual-transfer", check_prop2(inst, table, splits).check, tie_free);

    // Levels and atoms: partitions, oracle equivalence, counting laws.
    {
        CheckReport level_check, atom_check;
        for (const TieSplit& split : splits) {
            for (int j = 1; j <= M; ++j) {
                if (j == split.i) continue;
                const auto& family = split.flip_ties[static_cast<std::size_t>(j - 1)];
                if (family.empty()) continue;
                const LevelSplit lvl = level_partition(inst, split, j);
                const LevelSplit literal = oracle::level_split(inst, split, j);
                if (!detail::same_sets(lvl.tie_levels, literal.tie_levels) ||
                    !detail::same_sets(lvl.err_levels, literal.err_levels))
                    level_check.add("oracle-levels", "levels differ from the literal definition for i=" +
                                                         std::to_string(split.i) + " j=" + std::to_string(j));
                std::vector<Word> united;
                if (!detail::disjoint_union(lvl.tie_levels, united))
                    level_check.add("level-partition", "tie levels overlap");
                else if (united != family)
                    level_check.add("level-partition", "tie levels do not cover the family");
                std::vector<Word> err_united;
                if (!detail::disjoint_union(lvl.err_levels, err_united))
                    level_check.add("level-disjoint", "error levels overlap");
                for (Word w : err_united)
                    if (!set_contains(split.near_errors[static_cast<std::size_t>(j - 1)], w))
                        level_check.add("level-subset", "error level escapes the matched family");

                for (int k = 0; k < lvl.refinement.ell; ++k) {
                    const auto& level = lvl.tie_levels[static_cast<std::size_t>(k)];
                    if (level.empty()) continue;
                    const AtomSplit atoms = atom_partition(inst, lvl, k);
                    const AtomSplit literal_atoms = oracle::atom_split(inst, literal, k);
                    if (atoms.reps != literal_atoms.reps ||
                        !detail::same_sets(atoms.tie_atoms, literal_atoms.tie_atoms) ||
                        !detail::same_sets(atoms.err_atoms, literal_atoms.err_atoms))
                        atom_check.add("oracle-atoms", "atoms differ from the literal definition");
                    std::vector<Word> atom_union;
                    if (!detail::disjoint_union(atoms.tie_atoms, atom_union))
                        atom_check.add("atom-partition", "atoms overlap");
                    else if (atom_union != level)
                        atom_check.add("atom-partition", "atoms do not cover the level");
                    for (const auto& err_atom : atoms.err_atoms)
                        if (err_atom.empty()) atom_check.add("atom-nonempty", "empty N-atom");
                }
            }
        }
        detail::record(rep, "partitions/level-partition", level_check, tie_free);
        detail::record(rep, "partitions/atom-partition", atom_check, tie_free);
    }

    detail::record(rep, "partitions/atom-ratio", check_prop9(inst, table, splits), tie_free);
    detail::record(rep, "partitions/flip-witnesses", check_appendixB(inst, table, splits), tie_free);

    // Uniform priors collapse the residual families and the selection rule.
    if (inst.uniform_prior()) {
        CheckReport check;
        for (const TieSplit& split : splits) {
            for (int j = 1; j <= M; ++j) {
                if (j == split.i) continue;
                if (!split.fixed_ties[static_cast<std::size_t>(j - 1)].empty())
                    check.add("uniform-residual", "nonempty residual family under uniform priors, i=" +
                                                      std::to_string(split.i) + " j=" + std::to_string(j));
                for (Word y : split.flip_ties[static_cast<std::size_t>(j - 1)])
                    if (tie_indices(inst, table, split.i, y).front() != j)
                        check.add("uniform-least-index",
                                  "family selection deviates from the least tie partner");
            }
        }
        detail::record(rep, "partitions/uniform-degeneration", check, tie_free);
    }

    {
        const BoundChain chain = bound_chain(inst, table, cls, splits);
        CheckReport check = chain.check;
        if (!chain.ok() && check.ok()) check.add("bound-chain", "chain failed");
        detail::record(rep, "partitions/bound-chain", check, chain.vacuous);
    }

    return rep;
}

}  // namespace mapties
