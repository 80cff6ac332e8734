// Literal transcription of the set definitions, used as an independent
// cross-check of the optimized engine.
//
// Every membership predicate here is evaluated word by word with plain
// rational joint weights; nothing is cached or shared with the engine path.
// Slow by construction, unambiguous by construction.

#pragma once

#include "mapties/partitions.hpp"

namespace mapties::oracle {

inline Rational max_other(const Instance& inst, int i, Word y) {
    Rational best(-1);
    for (int r = 1; r <= inst.M(); ++r)
        if (r != i) best = std::max(best, inst.joint_weight(r, y));
    return best;
}

inline std::vector<Word> tie_set(const Instance& inst, int i) {
    std::vector<Word> out;
    for (Word y = 0; y < inst.output_count(); ++y)
        if (inst.joint_weight(i, y) == max_other(inst, i, y)) out.push_back(y);
    return out;
}

inline std::vector<Word> error_set(const Instance& inst, int i) {
    std::vector<Word> out;
    for (Word y = 0; y < inst.output_count(); ++y)
        if (inst.joint_weight(i, y) < max_other(inst, i, y)) out.push_back(y);
    return out;
}

inline std::vector<int> tie_indices(const Instance& inst, int i, Word y) {
    std::vector<int> out;
    const Rational mine = inst.joint_weight(i, y);
    if (mine != max_other(inst, i, y)) return out;
    for (int h = 1; h <= inst.M(); ++h)
        if (h != i && inst.joint_weight(h, y) == mine) out.push_back(h);
    return out;
}

inline Metrics metrics(const Instance& inst) {
    Metrics m{Rational(0), Rational(0), Rational(0)};
    Rational max_sum(0);
    for (Word y = 0; y < inst.output_count(); ++y) {
        Rational best(-1);
        for (int i = 1; i <= inst.M(); ++i) best = std::max(best, inst.joint_weight(i, y));
        max_sum += best;
        for (int i = 1; i <= inst.M(); ++i) {
            const Rational mine = inst.joint_weight(i, y);
            const Rational other = max_other(inst, i, y);
            if (mine == other)
                m.delta += mine;
            else if (mine < other)
                m.b += mine;
        }
    }
    m.a = Rational(1) - max_sum;
    return m;
}

inline TieSplit tie_split(const Instance& inst, int i) {
    const int M = inst.M();
    TieSplit split;
    split.i = i;
    split.flip_ties.assign(static_cast<std::size_t>(M), {});
    split.fixed_ties.assign(static_cast<std::size_t>(M), {});
    split.near_errors.assign(static_cast<std::size_t>(M), {});
    const Rational q = inst.q();

    for (Word y = 0; y < inst.output_count(); ++y) {
        const Rational mine = inst.joint_weight(i, y);
        const Rational other = max_other(inst, i, y);
        if (mine == other) {
            const std::vector<int> partners = oracle::tie_indices(inst, i, y);
            int j = 0;
            for (int r : partners) {
                const IndexSet s = inst.differ_mask(i, r);
                if (restricted_distance(inst.codeword(i), y, s) < s.size()) {
                    j = r;
                    break;
                }
            }
            if (j != 0)
                split.flip_ties[static_cast<std::size_t>(j - 1)].push_back(y);
            else
                split.fixed_ties[static_cast<std::size_t>(partners.front() - 1)].push_back(y);
        } else if (mine < other) {
            for (int j = 1; j <= M; ++j) {
                if (j == i) continue;
                if (mine * q != inst.joint_weight(j, y) / q) continue;
                bool excluded = false;
                for (int r = 1; r < j && !excluded; ++r)
                    if (r != i && inst.joint_weight(j, y) == inst.joint_weight(r, y)) excluded = true;
                if (!excluded) split.near_errors[static_cast<std::size_t>(j - 1)].push_back(y);
            }
        }
    }
    return split;
}

/// Cells built by explicit set intersections over the full lambda pattern,
/// as opposed to the engine's per-position classification.
inline Refinement refine(const Instance& inst, int i, int j) {
    Refinement ref;
    ref.i = i;
    ref.j = j;
    ref.differ = inst.differ_mask(i, j);
    ref.ell = ref.differ.size();

    std::vector<int> others;
    for (int r = 1; r <= inst.M(); ++r)
        if (r != i && r != j) others.push_back(r);

    const std::size_t cell_count = std::size_t{1} << others.size();
    ref.cells.assign(cell_count, {});
    for (std::size_t m = 1; m <= cell_count; ++m) {
        IndexSet cell = ref.differ;
        for (std::size_t pos = 0; pos < others.size(); ++pos) {
            const IndexSet differ_r = inst.differ_mask(i, others[pos]);
            const bool lambda = (m - 1) >> pos & 1;
            cell = cell & (lambda ? differ_r : differ_r.complement(inst.n()));
        }
        ref.cells[m - 1] = cell;
    }
    ref.prefix.assign(cell_count + 1, {});
    ref.prefix_size.assign(cell_count + 1, 0);
    for (std::size_t m = 1; m <= cell_count; ++m) {
        ref.prefix[m] = ref.prefix[m - 1] | ref.cells[m - 1];
        ref.prefix_size[m] = ref.prefix[m].size();
    }
    ref.eta.assign(static_cast<std::size_t>(ref.ell), 0);
    for (int k = 0; k < ref.ell; ++k) {
        for (std::size_t m = 1; m <= cell_count; ++m) {
            const bool hit = (k < ref.ell - 1) ? (k < ref.prefix_size[m] - 1) : (ref.prefix_size[m] == ref.ell);
            if (hit) {
                ref.eta[static_cast<std::size_t>(k)] = static_cast<int>(m);
                break;
            }
        }
    }
    return ref;
}

/// Level membership evaluated directly from the two-clause predicate for
/// every candidate level index.
inline LevelSplit level_split(const Instance& inst, const TieSplit& split, int j) {
    LevelSplit lvl;
    lvl.i = split.i;
    lvl.j = j;
    lvl.refinement = oracle::refine(inst, split.i, j);
    const Refinement& ref = lvl.refinement;
    lvl.tie_levels.assign(static_cast<std::size_t>(ref.ell), {});
    lvl.err_levels.assign(static_cast<std::size_t>(ref.ell), {});
    const Word ci = inst.codeword(split.i);

    for (int k = 0; k < ref.ell; ++k) {
        for (Word y : split.flip_ties[static_cast<std::size_t>(j - 1)])
            if (ref.window_before_size(k) - 1 <= restricted_distance(ci, y, ref.window_before(k)) &&
                restricted_distance(ci, y, ref.window(k)) == k)
                lvl.tie_levels[static_cast<std::size_t>(k)].push_back(y);
        for (Word w : split.near_errors[static_cast<std::size_t>(j - 1)])
            if (ref.window_before_size(k) == restricted_distance(ci, w, ref.window_before(k)) &&
                restricted_distance(ci, w, ref.window(k)) == k + 1)
                lvl.err_levels[static_cast<std::size_t>(k)].push_back(w);
    }
    return lvl;
}

inline AtomSplit atom_split(const Instance& inst, const LevelSplit& lvl, int k) {
    // Same sequential representative rule as the engine; membership tested
    // through the restricted-distance predicate only.
    AtomSplit atoms;
    atoms.i = lvl.i;
    atoms.j = lvl.j;
    atoms.k = k;
    const IndexSet outside = lvl.refinement.window(k).complement(inst.n());
    std::vector<Word> remaining = lvl.tie_levels[static_cast<std::size_t>(k)];
    while (!remaining.empty()) {
        const Word u = remaining.front();
        atoms.reps.push_back(u);
        std::vector<Word> tie_atom, err_atom, rest;
        for (Word y : lvl.tie_levels[static_cast<std::size_t>(k)])
            if (restricted_distance(u, y, outside) == 0) tie_atom.push_back(y);
        for (Word w : lvl.err_levels[static_cast<std::size_t>(k)])
            if (restricted_distance(u, w, outside) == 0) err_atom.push_back(w);
        for (Word y : remaining)
            if (restricted_distance(u, y, outside) != 0) rest.push_back(y);
        atoms.tie_atoms.push_back(std::move(tie_atom));
        atoms.err_atoms.push_back(std::move(err_atom));
        remaining = std::move(rest);
    }
    return atoms;
}

}  // namespace mapties::oracle
