// Partition machinery underlying the tie/error bound.
//
// For each sent index i the tie region T_i splits by the tying codeword j into
// families T_{j|i} (a bit flip toward c_j is possible) and T~_{j|i} (no flip
// is possible), with matched disjoint error families N_{j|i} at an exact q^2
// likelihood gap. Nonempty T_{j|i} refine further into distance levels
// T_{j|i}(k) and finally into atoms T_{j|i}(u;k) sharing all bits with a
// representative u outside a window of the differ set. Atom weight ratios are
// exactly q*|T-atom|/|N-atom| and never exceed qn, which drives the chain
// delta_n/b_n <= 2qn.

#pragma once

#include "mapties/classify.hpp"

#include <algorithm>
#include <span>
#include <sstream>

namespace mapties {

struct Violation {
    std::string property;
    std::string detail;
};

struct CheckReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    void add(std::string property, std::string detail) {
        violations.push_back({std::move(property), std::move(detail)});
    }
    void merge(const CheckReport& other) {
        violations.insert(violations.end(), other.violations.begin(), other.violations.end());
    }
};

inline bool set_contains(const std::vector<Word>& sorted_words, Word y) {
    return std::binary_search(sorted_words.begin(), sorted_words.end(), y);
}

/// Exact P(c_i, A) for a set A of output words.
inline Rational set_weight(const ScoreTable& table, int i, std::span<const Word> words) {
    BigInt sum = 0;
    for (Word y : words) sum += table.score(i, y);
    return table.to_weight(sum);
}

// ---- differ sets and their refinement ----

struct DifferSet {
    int i = 0, j = 0;
    IndexSet set;  // S_{i,j}: positions where c_i and c_j differ
    int size = 0;  // l_{i,j}
};

inline DifferSet differ_set(const Instance& inst, int i, int j) {
    if (i == j) throw std::invalid_argument("differ_set requires i != j");
    DifferSet d{i, j, inst.differ_mask(i, j), 0};
    d.size = d.set.size();
    return d;
}

/// Partition of S_{i,j} into 2^(M-2) cells by the membership pattern of each
/// position in the differ sets S_{i,r}, r running ascending over [M]\{i,j}.
/// Empty cells keep their index so the eta bookkeeping stays aligned.
struct Refinement {
    int i = 0, j = 0;
    IndexSet differ;               // S_{i,j}
    int ell = 0;                   // l_{i,j}
    std::vector<IndexSet> cells;   // cells[m-1] = S^(m), m in [2^(M-2)]
    std::vector<IndexSet> prefix;  // prefix[m] = union of the first m cells; prefix[0] empty
    std::vector<int> prefix_size;  // l^(m) = |prefix[m]|
    std::vector<int> eta;          // eta[k] for k in [0, ell-1]

    const IndexSet& window(int k) const { return prefix[static_cast<std::size_t>(eta[static_cast<std::size_t>(k)])]; }
    const IndexSet& window_before(int k) const {
        return prefix[static_cast<std::size_t>(eta[static_cast<std::size_t>(k)] - 1)];
    }
    int window_size(int k) const { return prefix_size[static_cast<std::size_t>(eta[static_cast<std::size_t>(k)])]; }
    int window_before_size(int k) const {
        return prefix_size[static_cast<std::size_t>(eta[static_cast<std::size_t>(k)] - 1)];
    }
};

inline Refinement refine(const Instance& inst, int i, int j) {
    if (i == j) throw std::invalid_argument("refine requires i != j");
    const int M = inst.M();
    if (M - 2 > 20) throw std::length_error("refinement needs 2^(M-2) cells; M is too large");

    Refinement ref;
    ref.i = i;
    ref.j = j;
    ref.differ = inst.differ_mask(i, j);
    ref.ell = ref.differ.size();

    std::vector<int> others;  // ascending indices of [M]\{i,j}; bit position = rank
    for (int r = 1; r <= M; ++r)
        if (r != i && r != j) others.push_back(r);

    const std::size_t cell_count = std::size_t{1} << others.size();
    ref.cells.assign(cell_count, {});
    for (int t : ref.differ.members(inst.n())) {
        std::size_t pattern = 0;
        for (std::size_t pos = 0; pos < others.size(); ++pos)
            if (inst.differ_mask(i, others[pos]).contains(t, inst.n())) pattern |= std::size_t{1} << pos;
        ref.cells[pattern].insert(t, inst.n());
    }

    ref.prefix.assign(cell_count + 1, {});
    ref.prefix_size.assign(cell_count + 1, 0);
    for (std::size_t m = 1; m <= cell_count; ++m) {
        ref.prefix[m] = ref.prefix[m - 1] | ref.cells[m - 1];
        ref.prefix_size[m] = ref.prefix[m].size();
    }

    ref.eta.assign(static_cast<std::size_t>(ref.ell), 0);
    for (int k = 0; k < ref.ell; ++k) {
        int m = 1;
        if (k < ref.ell - 1) {
            while (ref.prefix_size[static_cast<std::size_t>(m)] - 1 <= k) ++m;
        } else {
            while (ref.prefix_size[static_cast<std::size_t>(m)] != ref.ell) ++m;
        }
        ref.eta[static_cast<std::size_t>(k)] = m;
    }
    return ref;
}

// ---- coarse split of T_i and matched subsets of N_i ----

struct TieSplit {
    int i = 0;
    // Indexed by j-1; the slot at j == i stays empty.
    std::vector<std::vector<Word>> flip_ties;    // T_{j|i}
    std::vector<std::vector<Word>> fixed_ties;   // T~_{j|i}
    std::vector<std::vector<Word>> near_errors;  // N_{j|i}
};

inline TieSplit tie_partition(const Instance& inst, const ScoreTable& table, const Classification& cls,
                              int i) {
    const int M = inst.M();
    TieSplit split;
    split.i = i;
    split.flip_ties.assign(static_cast<std::size_t>(M), {});
    split.fixed_ties.assign(static_cast<std::size_t>(M), {});
    split.near_errors.assign(static_cast<std::size_t>(M), {});

    for (Word y : cls.ties[static_cast<std::size_t>(i - 1)]) {
        const std::vector<int> partners = tie_indices(inst, table, i, y);
        int j = 0;
        for (int r : partners) {
            IndexSet s = inst.differ_mask(i, r);
            if (restricted_distance(inst.codeword(i), y, s) < s.size()) {
                j = r;  // partners ascend, so the first hit is the minimum
                break;
            }
        }
        if (j != 0)
            split.flip_ties[static_cast<std::size_t>(j - 1)].push_back(y);
        else
            split.fixed_ties[static_cast<std::size_t>(partners.front() - 1)].push_back(y);
    }

    const BigInt qnum = numerator(inst.q());
    const BigInt qden = denominator(inst.q());
    std::vector<BigInt> s;
    for (Word y : cls.errors[static_cast<std::size_t>(i - 1)]) {
        table.scores(y, s);
        for (int j = 1; j <= M; ++j) {
            if (j == i) continue;
            // P(c_i,y) * q = P(c_j,y) / q
            if (s[static_cast<std::size_t>(i - 1)] * qnum * qnum !=
                s[static_cast<std::size_t>(j - 1)] * qden * qden)
                continue;
            bool excluded = false;
            for (int r = 1; r < j && !excluded; ++r)
                if (r != i && s[static_cast<std::size_t>(j - 1)] == s[static_cast<std::size_t>(r - 1)])
                    excluded = true;
            if (!excluded) split.near_errors[static_cast<std::size_t>(j - 1)].push_back(y);
        }
    }
    return split;
}

inline TieSplit tie_partition(const Instance& inst, const Classification& cls, int i) {
    return tie_partition(inst, ScoreTable(inst), cls, i);
}

// ---- distance levels within one (i, j) family ----

struct LevelSplit {
    int i = 0, j = 0;
    Refinement refinement;
    std::vector<std::vector<Word>> tie_levels;  // T_{j|i}(k), k in [0, l_{i,j}-1]
    std::vector<std::vector<Word>> err_levels;  // N_{j|i}(k)
};

inline LevelSplit level_partition(const Instance& inst, const TieSplit& split, int j) {
    const int i = split.i;
    LevelSplit lvl;
    lvl.i = i;
    lvl.j = j;
    lvl.refinement = refine(inst, i, j);
    const Refinement& ref = lvl.refinement;
    lvl.tie_levels.assign(static_cast<std::size_t>(ref.ell), {});
    lvl.err_levels.assign(static_cast<std::size_t>(ref.ell), {});

    const Word ci = inst.codeword(i);
    for (Word y : split.flip_ties[static_cast<std::size_t>(j - 1)]) {
        // Walk the incremental windows; the first one whose restricted distance
        // drops below l^(m) - 1 fixes the level. If none does, the distance on
        // the whole differ set is l-1 and the word lands in the top level.
        int k = ref.ell - 1;
        for (std::size_t m = 1; m < ref.prefix.size(); ++m) {
            const int d = restricted_distance(ci, y, ref.prefix[m]);
            if (d < ref.prefix_size[m] - 1) {
                k = d;
                break;
            }
        }
        lvl.tie_levels[static_cast<std::size_t>(k)].push_back(y);
    }

    for (Word w : split.near_errors[static_cast<std::size_t>(j - 1)]) {
        for (int k = 0; k < ref.ell; ++k) {
            if (restricted_distance(ci, w, ref.window_before(k)) == ref.window_before_size(k) &&
                restricted_distance(ci, w, ref.window(k)) == k + 1)
                lvl.err_levels[static_cast<std::size_t>(k)].push_back(w);
        }
    }
    return lvl;
}

// ---- atoms: level members sharing all bits outside the window ----

struct AtomSplit {
    int i = 0, j = 0, k = 0;
    std::vector<Word> reps;                    // representatives U_{j|i}(k), ascending
    std::vector<std::vector<Word>> tie_atoms;  // T_{j|i}(u;k), aligned with reps
    std::vector<std::vector<Word>> err_atoms;  // N_{j|i}(u;k)
};

inline AtomSplit atom_partition(const Instance& inst, const LevelSplit& lvl, int k) {
    AtomSplit atoms;
    atoms.i = lvl.i;
    atoms.j = lvl.j;
    atoms.k = k;
    const IndexSet outside = lvl.refinement.window(k).complement(inst.n());
    const auto& level = lvl.tie_levels[static_cast<std::size_t>(k)];
    const auto& err_level = lvl.err_levels[static_cast<std::size_t>(k)];

    std::vector<bool> assigned(level.size(), false);
    for (std::size_t idx = 0; idx < level.size(); ++idx) {
        if (assigned[idx]) continue;
        const Word u = level[idx];  // first unassigned word in ascending order
        atoms.reps.push_back(u);
        std::vector<Word> tie_atom, err_atom;
        for (std::size_t r = idx; r < level.size(); ++r) {
            if (!assigned[r] && restricted_distance(u, level[r], outside) == 0) {
                assigned[r] = true;
                tie_atom.push_back(level[r]);
            }
        }
        for (Word w : err_level)
            if (restricted_distance(u, w, outside) == 0) err_atom.push_back(w);
        atoms.tie_atoms.push_back(std::move(tie_atom));
        atoms.err_atoms.push_back(std::move(err_atom));
    }
    return atoms;
}

namespace detail {

inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt out = 1;
    for (int t = 1; t <= k; ++t) {
        out *= n - k + t;
        out /= t;
    }
    return out;
}

inline std::string describe(const Instance& inst, int i, int j, Word y) {
    std::ostringstream os;
    os << "i=" << i;
    if (j != 0) os << " j=" << j;
    os << " y=" << word_to_string(y, inst.n());
    return os.str();
}

}  // namespace detail

/// All coarse splits, one per sent index.
inline std::vector<TieSplit> all_tie_partitions(const Instance& inst, const ScoreTable& table,
                                                const Classification& cls) {
    std::vector<TieSplit> splits;
    splits.reserve(static_cast<std::size_t>(inst.M()));
    for (int i = 1; i <= inst.M(); ++i) splits.push_back(tie_partition(inst, table, cls, i));
    return splits;
}

// ---- executable proposition checks ----

/// Residual ties transfer: every y in T~_{j|i} reappears, for each tying
/// partner h, inside some flip family T_{l|h} with equal joint weight; each
/// such y occurs in exactly one residual family overall; and the residual
/// family weight never exceeds the flip family weight.
struct ResidualTransferReport {
    CheckReport check;
    Rational flip_weight;      // sum over (i,j) of P(c_i, T_{j|i})
    Rational residual_weight;  // sum over (i,j) of P(c_i, T~_{j|i})
};

inline ResidualTransferReport check_prop2(const Instance& inst, const ScoreTable& table,
                                          const std::vector<TieSplit>& splits) {
    ResidualTransferReport rep;
    rep.flip_weight = Rational(0);
    rep.residual_weight = Rational(0);
    const int M = inst.M();

    std::map<Word, int> residual_multiplicity;
    for (int i = 1; i <= M; ++i) {
        const TieSplit& split = splits[static_cast<std::size_t>(i - 1)];
        for (int j = 1; j <= M; ++j) {
            if (j == i) continue;
            rep.flip_weight += set_weight(table, i, split.flip_ties[static_cast<std::size_t>(j - 1)]);
            rep.residual_weight += set_weight(table, i, split.fixed_ties[static_cast<std::size_t>(j - 1)]);
            for (Word y : split.fixed_ties[static_cast<std::size_t>(j - 1)]) {
                ++residual_multiplicity[y];
                for (int h : tie_indices(inst, table, i, y)) {
                    if (table.score(i, y) != table.score(h, y)) {
                        rep.check.add("residual-transfer",
                                      detail::describe(inst, i, j, y) + ": unequal joint weight at h=" +
                                          std::to_string(h));
                        continue;
                    }
                    bool found = false;
                    for (int l : tie_indices(inst, table, h, y)) {
                        if (set_contains(splits[static_cast<std::size_t>(h - 1)]
                                             .flip_ties[static_cast<std::size_t>(l - 1)],
                                         y)) {
                            found = true;
                            break;
                        }
                    }
                    if (!found)
                        rep.check.add("residual-transfer", detail::describe(inst, i, j, y) +
                                                               ": no flip family of h=" + std::to_string(h) +
                                                               " contains the word");
                }
            }
        }
    }
    for (const auto& [y, count] : residual_multiplicity)
        if (count != 1)
            rep.check.add("residual-once", "word " + word_to_string(y, inst.n()) + " appears " +
                                               std::to_string(count) + " times across residual families");
    if (rep.residual_weight > rep.flip_weight)
        rep.check.add("residual-dominated", "residual family weight " + to_string(rep.residual_weight) +
                                                " exceeds flip family weight " + to_string(rep.flip_weight));
    return rep;
}

/// Atom ratio law: P(c_i,T(u;k)) / P(c_i,N(u;k)) = q |T(u;k)| / |N(u;k)| <= qn,
/// with the N-atom cardinality pinned by a binomial coefficient.
inline CheckReport check_prop9(const Instance& inst, const ScoreTable& table, const AtomSplit& atoms,
                               const LevelSplit& lvl) {
    CheckReport check;
    const Rational qn = inst.q() * inst.n();
    const int k = atoms.k;
    const int cell_size = lvl.refinement.window_size(k) - lvl.refinement.window_before_size(k);
    const int ones_needed = k + 1 - lvl.refinement.window_before_size(k);
    const BigInt expected_err = detail::binomial(cell_size, ones_needed);

    for (std::size_t a = 0; a < atoms.reps.size(); ++a) {
        const std::string where =
            detail::describe(inst, atoms.i, atoms.j, atoms.reps[a]) + " k=" + std::to_string(k);
        const auto& tie_atom = atoms.tie_atoms[a];
        const auto& err_atom = atoms.err_atoms[a];
        if (err_atom.empty()) {
            check.add("atom-nonempty", where + ": empty N-atom");
            continue;
        }
        if (BigInt(err_atom.size()) != expected_err)
            check.add("atom-count", where + ": |N-atom| = " + std::to_string(err_atom.size()) +
                                        ", expected " + expected_err.str());
        const Rational wt = set_weight(table, atoms.i, tie_atom);
        const Rational wn = set_weight(table, atoms.i, err_atom);
        // P ratio equals q |T| / |N|
        if (wt * BigInt(err_atom.size()) != inst.q() * wn * BigInt(tie_atom.size()))
            check.add("atom-ratio", where + ": weight ratio differs from q*|T|/|N|");
        if (BigInt(tie_atom.size()) > BigInt(inst.n()) * BigInt(err_atom.size()))
            check.add("atom-size", where + ": |T|/|N| exceeds n");
        if (wt > qn * wn) check.add("atom-bound", where + ": atom ratio exceeds qn");
    }
    return check;
}

inline CheckReport check_prop9(const Instance& inst, const ScoreTable& table,
                               const std::vector<TieSplit>& splits) {
    CheckReport check;
    for (const TieSplit& split : splits) {
        for (int j = 1; j <= inst.M(); ++j) {
            if (j == split.i || split.flip_ties[static_cast<std::size_t>(j - 1)].empty()) continue;
            LevelSplit lvl = level_partition(inst, split, j);
            for (int k = 0; k < lvl.refinement.ell; ++k) {
                if (lvl.tie_levels[static_cast<std::size_t>(k)].empty()) continue;
                check.merge(check_prop9(inst, table, atom_partition(inst, lvl, k), lvl));
            }
        }
    }
    return check;
}

/// Flip construction and exhaustive witness enumeration for one atom.
///
/// Every word w that matches the level's distance profile at k+1 ones inside
/// the window and agrees with u outside it must sit at the exact q^2 gap from
/// c_j and differ in weight from every earlier codeword; the set of such w is
/// exactly the N-atom. The auxiliary word v obtained by flipping one position
/// of u (inside the active cell, or the unique agreeing position of the
/// previous window) lands in the N-atom with the paired weight shifts.
inline CheckReport check_appendix_flip(const Instance& inst, const ScoreTable& table, const LevelSplit& lvl,
                                       const AtomSplit& atoms, std::size_t rep_index) {
    CheckReport check;
    const int i = lvl.i, j = lvl.j, k = atoms.k;
    const Word u = atoms.reps[rep_index];
    const Refinement& ref = lvl.refinement;
    const Word ci = inst.codeword(i);
    const std::string where = detail::describe(inst, i, j, u) + " k=" + std::to_string(k);

    const IndexSet before = ref.window_before(k);
    const IndexSet window = ref.window(k);
    const IndexSet cell = ref.cells[static_cast<std::size_t>(ref.eta[static_cast<std::size_t>(k)] - 1)];
    const IndexSet outside = window.complement(inst.n());
    const int before_size = ref.window_before_size(k);

    // Auxiliary word: flip one position where u still agrees with c_i.
    const int d_before = restricted_distance(ci, u, before);
    Word flip_mask = 0;
    if (d_before == before_size) {
        const Word agreeing = ~(u ^ ci) & cell.mask;
        if (agreeing == 0) {
            check.add("flip-target", where + ": no agreeing position inside the active cell");
            return check;
        }
        flip_mask = Word{1} << (63 - std::countl_zero(agreeing));  // leftmost position
    } else if (d_before == before_size - 1) {
        const Word agreeing = ~(u ^ ci) & before.mask;
        if (std::popcount(agreeing) != 1) {
            check.add("flip-target", where + ": expected exactly one agreeing position in the window prefix");
            return check;
        }
        flip_mask = agreeing;
    } else {
        check.add("flip-case", where + ": window-prefix distance outside the two admissible cases");
        return check;
    }

    const Word v = u ^ flip_mask;
    if (!set_contains(atoms.err_atoms[rep_index], v))
        check.add("flip-lands", where + ": flipped word " + word_to_string(v, inst.n()) + " not in the N-atom");
    if (inst.distance(i, v) != inst.distance(i, u) + 1 || inst.distance(j, v) != inst.distance(j, u) - 1)
        check.add("flip-distance", where + ": flip did not move one step away from c_i and toward c_j");
    const BigInt qnum = numerator(inst.q());
    const BigInt qden = denominator(inst.q());
    if (table.score(i, v) * qnum != table.score(i, u) * qden)
        check.add("flip-weight", where + ": P(c_i, v) != P(c_i, u)/q");
    if (table.score(j, v) * qden != table.score(j, u) * qnum)
        check.add("flip-weight", where + ": P(c_j, v) != P(c_j, u)*q");

    // Exhaustive witnesses: distance profile alone must already force the
    // exact q^2 gap, the exclusion clause, and membership in the N-atom.
    std::vector<Word> witnesses;
    std::vector<BigInt> s;
    for (Word w = 0; w < inst.output_count(); ++w) {
        if (restricted_distance(ci, w, before) != before_size) continue;
        if (restricted_distance(ci, w, window) != k + 1) continue;
        if (restricted_distance(u, w, outside) != 0) continue;
        witnesses.push_back(w);
        table.scores(w, s);
        if (s[static_cast<std::size_t>(i - 1)] * qnum * qnum != s[static_cast<std::size_t>(j - 1)] * qden * qden)
            check.add("witness-gap",
                      where + ": witness " + word_to_string(w, inst.n()) + " misses the q^2 weight gap");
        for (int r = 1; r < j; ++r)
            if (r != i && s[static_cast<std::size_t>(j - 1)] == s[static_cast<std::size_t>(r - 1)])
                check.add("witness-exclusion", where + ": witness " + word_to_string(w, inst.n()) +
                                                   " collides with codeword " + std::to_string(r));
    }
    if (witnesses != atoms.err_atoms[rep_index])
        check.add("witness-set", where + ": witness set differs from the N-atom");
    return check;
}

inline CheckReport check_appendixB(const Instance& inst, const ScoreTable& table,
                                   const std::vector<TieSplit>& splits) {
    CheckReport check;
    for (const TieSplit& split : splits) {
        for (int j = 1; j <= inst.M(); ++j) {
            if (j == split.i || split.flip_ties[static_cast<std::size_t>(j - 1)].empty()) continue;
            LevelSplit lvl = level_partition(inst, split, j);
            for (int k = 0; k < lvl.refinement.ell; ++k) {
                if (lvl.tie_levels[static_cast<std::size_t>(k)].empty()) continue;
                AtomSplit atoms = atom_partition(inst, lvl, k);
                for (std::size_t a = 0; a < atoms.reps.size(); ++a)
                    check.merge(check_appendix_flip(inst, table, lvl, atoms, a));
            }
        }
    }
    return check;
}

// ---- the bound chain ----

struct ChainLink {
    std::string name;
    Rational value;
};

struct BoundChain {
    bool vacuous = false;  // delta_n = 0: nothing to bound
    std::vector<ChainLink> links;
    bool monotone = false;
    bool capped = false;        // final link <= 2qn
    bool uniform_ok = true;     // delta/b <= qn under uniform priors
    CheckReport check;

    bool ok() const { return vacuous || (monotone && capped && uniform_ok && check.ok()); }
};

/// Evaluate every successive upper bound on delta_n/b_n exactly and confirm
/// the chain is nondecreasing and ends below 2qn.
inline BoundChain bound_chain(const Instance& inst, const ScoreTable& table, const Classification& cls,
                              const std::vector<TieSplit>& splits) {
    BoundChain chain;
    if (cls.metrics.delta == 0) {
        chain.vacuous = true;
        return chain;
    }
    if (cls.metrics.b == 0) {
        chain.check.add("chain-base", "delta_n positive while b_n is zero");
        return chain;
    }
    const int M = inst.M();
    chain.links.push_back({"delta/b", cls.metrics.delta / cls.metrics.b});

    Rational flip_sum(0), residual_sum(0), err_sum(0);
    Rational family_max(-1), level_max(-1), atom_max(-1);
    for (const TieSplit& split : splits) {
        for (int j = 1; j <= M; ++j) {
            if (j == split.i) continue;
            const auto& flips = split.flip_ties[static_cast<std::size_t>(j - 1)];
            const auto& errs = split.near_errors[static_cast<std::size_t>(j - 1)];
            const Rational wt = set_weight(table, split.i, flips);
            const Rational wn = set_weight(table, split.i, errs);
            flip_sum += wt;
            residual_sum += set_weight(table, split.i, split.fixed_ties[static_cast<std::size_t>(j - 1)]);
            err_sum += wn;
            if (flips.empty()) continue;
            if (wn == 0) {
                chain.check.add("chain-family", detail::describe(inst, split.i, j, flips.front()) +
                                                    ": flip family has no matched errors");
                continue;
            }
            family_max = std::max(family_max, Rational(wt / wn));

            LevelSplit lvl = level_partition(inst, split, j);
            for (int k = 0; k < lvl.refinement.ell; ++k) {
                const auto& level = lvl.tie_levels[static_cast<std::size_t>(k)];
                if (level.empty()) continue;
                const Rational lt = set_weight(table, split.i, level);
                const Rational ln = set_weight(table, split.i, lvl.err_levels[static_cast<std::size_t>(k)]);
                if (ln == 0) {
                    chain.check.add("chain-level", detail::describe(inst, split.i, j, level.front()) +
                                                       " k=" + std::to_string(k) + ": empty error level");
                    continue;
                }
                level_max = std::max(level_max, Rational(lt / ln));

                AtomSplit atoms = atom_partition(inst, lvl, k);
                for (std::size_t a = 0; a < atoms.reps.size(); ++a) {
                    const Rational at = set_weight(table, split.i, atoms.tie_atoms[a]);
                    const Rational an = set_weight(table, split.i, atoms.err_atoms[a]);
                    if (an == 0) {
                        chain.check.add("chain-atom",
                                        detail::describe(inst, split.i, j, atoms.reps[a]) + ": empty N-atom");
                        continue;
                    }
                    atom_max = std::max(atom_max, Rational(at / an));
                }
            }
        }
    }
    if (err_sum == 0 || family_max < 0 || level_max < 0 || atom_max < 0) {
        chain.check.add("chain-base", "no nonempty flip family although delta_n > 0");
        return chain;
    }
    chain.links.push_back({"families+residual", (flip_sum + residual_sum) / err_sum});
    chain.links.push_back({"families doubled", 2 * flip_sum / err_sum});
    chain.links.push_back({"family max", 2 * family_max});
    chain.links.push_back({"level max", 2 * level_max});
    chain.links.push_back({"atom max", 2 * atom_max});
    chain.links.push_back({"cap 2qn", 2 * inst.q() * inst.n()});

    chain.monotone = true;
    for (std::size_t l = 1; l < chain.links.size(); ++l)
        if (chain.links[l - 1].value > chain.links[l].value) {
            chain.monotone = false;
            chain.check.add("chain-monotone", "link '" + chain.links[l - 1].name + "' exceeds '" +
                                                  chain.links[l].name + "'");
        }
    chain.capped = 2 * atom_max <= 2 * inst.q() * inst.n();
    if (inst.uniform_prior() && cls.metrics.delta / cls.metrics.b > inst.q() * inst.n()) {
        chain.uniform_ok = false;
        chain.check.add("chain-uniform", "delta/b exceeds qn under uniform priors");
    }
    return chain;
}

inline BoundChain bound_chain(const Instance& inst, const Classification& cls) {
    const ScoreTable table(inst);
    return bound_chain(inst, table, cls, all_tie_partitions(inst, table, cls));
}

}  // namespace mapties
