// Table and JSON renderings of analyses: the membership matrix (one row per
// output word), the family/level/atom listings, metric summaries and Monte
// Carlo estimates. Rationals are always printed exactly as "a/b"; the only
// floating-point surface is the sampling estimator.

#pragma once

#include "mapties/harness.hpp"
#include "mapties/montecarlo.hpp"

#include <json.hpp>

#include <optional>
#include <sstream>

namespace mapties {

enum class ReportFormat { markdown, csv, json };

inline const char* tag_name(int t) { return t == 0 ? "OK" : (t == 1 ? "TIE" : "ERR"); }

struct ClassifyRow {
    Word y = 0;
    std::vector<int> dist;                 // d(c_i, y)
    std::optional<std::vector<int>> adj;   // d(c_i, y) - e_i when every weight is q^e
    std::vector<int> tags;                 // 0 OK, 1 TIE, 2 ERR
    std::vector<std::vector<int>> partners;  // I_i(y)
};

inline std::vector<ClassifyRow> make_classify_rows(const Instance& inst, const ScoreTable& table,
                                                   const Classification& cls) {
    std::vector<long> exponents;
    bool monomials = true;
    for (const auto& w : inst.weights()) {
        if (auto e = w.unit_exponent())
            exponents.push_back(*e);
        else
            monomials = false;
    }

    std::vector<ClassifyRow> rows;
    rows.reserve(static_cast<std::size_t>(inst.output_count()));
    for (Word y = 0; y < inst.output_count(); ++y) {
        ClassifyRow row;
        row.y = y;
        for (int i = 1; i <= inst.M(); ++i) {
            row.dist.push_back(inst.distance(i, y));
            const bool tied = set_contains(cls.ties[static_cast<std::size_t>(i - 1)], y);
            const bool err = set_contains(cls.errors[static_cast<std::size_t>(i - 1)], y);
            row.tags.push_back(tied ? 1 : (err ? 2 : 0));
            row.partners.push_back(tie_indices(inst, table, i, y));
        }
        if (monomials) {
            std::vector<int> adj;
            for (int i = 1; i <= inst.M(); ++i)
                adj.push_back(row.dist[static_cast<std::size_t>(i - 1)] -
                              static_cast<int>(exponents[static_cast<std::size_t>(i - 1)]));
            row.adj = std::move(adj);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace detail {

inline std::string join_words(const std::vector<Word>& words, int n) {
    if (words.empty()) return "-";
    std::string out;
    for (Word w : words) {
        if (!out.empty()) out += " ";
        out += word_to_string(w, n);
    }
    return out;
}

inline std::string join_ints(const std::vector<int>& xs, const char* sep = ";") {
    if (xs.empty()) return "-";
    std::string out;
    for (int x : xs) {
        if (!out.empty()) out += sep;
        out += std::to_string(x);
    }
    return out;
}

inline nlohmann::json words_to_json(const std::vector<Word>& words, int n) {
    nlohmann::json arr = nlohmann::json::array();
    for (Word w : words) arr.push_back(word_to_string(w, n));
    return arr;
}

}  // namespace detail

// ---- analyze ----

inline nlohmann::json analyze_to_json(const Instance& inst, const TheoremReport& rep) {
    nlohmann::json j;
    j["instance"] = instance_to_json(inst);
    j["M"] = inst.M();
    j["q"] = to_string(inst.q());
    j["a_n"] = to_string(rep.metrics.a);
    j["b_n"] = to_string(rep.metrics.b);
    j["delta_n"] = to_string(rep.metrics.delta);
    j["tie_free"] = rep.tie_free;
    j["uniform_prior"] = rep.uniform;
    j["bounds"] = {{"sandwich", rep.sandwich_ok},
                   {"tie_le_2qnb", rep.tie_bound_ok},
                   {"a_le_1p2qn_b", rep.main_bound_ok}};
    if (rep.uniform) j["bounds"]["a_le_1pqn_b"] = rep.uniform_bound_ok;
    j["ratios"] = {{"delta_over_b", to_string(rep.delta_over_b)},
                   {"a_over_b", to_string(rep.a_over_b)},
                   {"cap_2qn", to_string(rep.cap_2qn)}};
    j["bound_ok"] = rep.all_ok();
    return j;
}

inline std::string analyze_report(const Instance& inst, const TheoremReport& rep, ReportFormat fmt) {
    if (fmt == ReportFormat::json) return analyze_to_json(inst, rep).dump(2) + "\n";
    std::ostringstream os;
    const char* ok = "ok";
    const char* bad = "VIOLATED";
    if (fmt == ReportFormat::csv) {
        os << "key,value\n";
        os << "n," << inst.n() << "\nM," << inst.M() << "\np," << to_string(inst.p()) << "\nq,"
           << to_string(inst.q()) << "\n";
        os << "a_n," << to_string(rep.metrics.a) << "\nb_n," << to_string(rep.metrics.b) << "\ndelta_n,"
           << to_string(rep.metrics.delta) << "\n";
        os << "sandwich," << (rep.sandwich_ok ? ok : bad) << "\n";
        os << "tie_le_2qnb," << (rep.tie_bound_ok ? ok : bad) << "\n";
        os << "a_le_1p2qn_b," << (rep.main_bound_ok ? ok : bad) << "\n";
        if (rep.uniform) os << "a_le_1pqn_b," << (rep.uniform_bound_ok ? ok : bad) << "\n";
        os << "delta_over_b," << to_string(rep.delta_over_b) << "\n";
        os << "a_over_b," << to_string(rep.a_over_b) << "\n";
        os << "cap_2qn," << to_string(rep.cap_2qn) << "\n";
        return os.str();
    }
    os << "| quantity | value |\n|---|---|\n";
    os << "| n | " << inst.n() << " |\n| M | " << inst.M() << " |\n";
    os << "| p | " << to_string(inst.p()) << " |\n| q | " << to_string(inst.q()) << " |\n";
    os << "| a_n | " << to_string(rep.metrics.a) << " |\n";
    os << "| b_n | " << to_string(rep.metrics.b) << " |\n";
    os << "| delta_n | " << to_string(rep.metrics.delta) << " |\n";
    os << "| delta_n / b_n | " << to_string(rep.delta_over_b) << " |\n";
    os << "| a_n / b_n | " << to_string(rep.a_over_b) << " |\n";
    os << "| 2qn | " << to_string(rep.cap_2qn) << " |\n\n";
    os << "- b_n <= a_n <= b_n + delta_n: " << (rep.sandwich_ok ? ok : bad) << "\n";
    os << "- delta_n <= 2qn b_n: " << (rep.tie_bound_ok ? ok : bad) << "\n";
    os << "- a_n <= (1+2qn) b_n: " << (rep.main_bound_ok ? ok : bad) << "\n";
    if (rep.uniform) os << "- a_n <= (1+qn) b_n (uniform prior): " << (rep.uniform_bound_ok ? ok : bad) << "\n";
    if (rep.tie_free) os << "- tie-free instance (delta_n = 0)\n";
    return os.str();
}

// ---- classify ----

inline nlohmann::json classify_to_json(const Instance& inst, const std::vector<ClassifyRow>& rows,
                                       std::optional<int> focus) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json r;
        r["word"] = word_to_string(row.y, inst.n());
        nlohmann::json dist = nlohmann::json::array(), tags = nlohmann::json::array(),
                       partners = nlohmann::json::array();
        nlohmann::json adj = nlohmann::json::array();
        for (int i = 1; i <= inst.M(); ++i) {
            if (focus && *focus != i) continue;
            const std::size_t idx = static_cast<std::size_t>(i - 1);
            dist.push_back(row.dist[idx]);
            if (row.adj) adj.push_back((*row.adj)[idx]);
            tags.push_back(tag_name(row.tags[idx]));
            partners.push_back(row.partners[idx]);
        }
        r["dist"] = dist;
        if (row.adj) r["adjusted"] = adj;
        r["tags"] = tags;
        r["tie_partners"] = partners;
        out.push_back(std::move(r));
    }
    return out;
}

inline std::string classify_report(const Instance& inst, const std::vector<ClassifyRow>& rows,
                                   std::optional<int> focus, ReportFormat fmt) {
    if (fmt == ReportFormat::json) return classify_to_json(inst, rows, focus).dump(2) + "\n";
    std::ostringstream os;
    const bool adjusted = !rows.empty() && rows.front().adj.has_value();
    std::vector<int> columns;
    for (int i = 1; i <= inst.M(); ++i)
        if (!focus || *focus == i) columns.push_back(i);

    const auto dist_header = [&](int i) {
        std::string h = "d(c" + std::to_string(i) + ",y)";
        if (!adjusted) return h;
        const long e = *inst.weights()[static_cast<std::size_t>(i - 1)].unit_exponent();
        if (e > 0) h += "-" + std::to_string(e);
        if (e < 0) h += "+" + std::to_string(-e);
        return h;
    };

    if (fmt == ReportFormat::csv) {
        os << "word";
        for (int i : columns) os << "," << dist_header(i);
        for (int i : columns) os << ",tag" << i;
        for (int i : columns) os << ",I" << i;
        os << "\n";
        for (const auto& row : rows) {
            os << word_to_string(row.y, inst.n());
            for (int i : columns)
                os << "," << (adjusted ? (*row.adj)[static_cast<std::size_t>(i - 1)]
                                       : row.dist[static_cast<std::size_t>(i - 1)]);
            for (int i : columns) os << "," << tag_name(row.tags[static_cast<std::size_t>(i - 1)]);
            for (int i : columns) os << "," << detail::join_ints(row.partners[static_cast<std::size_t>(i - 1)]);
            os << "\n";
        }
        return os.str();
    }

    os << "| y |";
    for (int i : columns) os << " " << dist_header(i) << " |";
    for (int i : columns) os << " c" << i << " |";
    for (int i : columns) os << " I_" << i << "(y) |";
    os << "\n|---|";
    for (std::size_t c = 0; c < columns.size() * 3; ++c) os << "---|";
    os << "\n";
    for (const auto& row : rows) {
        os << "| " << word_to_string(row.y, inst.n()) << " |";
        for (int i : columns)
            os << " "
               << (adjusted ? (*row.adj)[static_cast<std::size_t>(i - 1)]
                            : row.dist[static_cast<std::size_t>(i - 1)])
               << " |";
        for (int i : columns) os << " " << tag_name(row.tags[static_cast<std::size_t>(i - 1)]) << " |";
        for (int i : columns)
            os << " " << detail::join_ints(row.partners[static_cast<std::size_t>(i - 1)], ",") << " |";
        os << "\n";
    }
    return os.str();
}

// ---- partitions ----

struct PairReport {
    int i = 0, j = 0;
    std::vector<Word> flip_ties, fixed_ties, near_errors;
    LevelSplit levels;                // populated when the flip family is nonempty
    std::vector<AtomSplit> atoms;     // one per nonempty level
    bool has_levels = false;
};

struct PartitionReport {
    Classification cls;
    std::vector<TieSplit> splits;
    std::vector<PairReport> pairs;
    BoundChain chain;
    CheckReport checks;  // residual transfer + atom ratio + flip witnesses
};

inline PartitionReport build_partition_report(const Instance& inst, const ScoreTable& table,
                                              std::optional<int> only_i, std::optional<int> only_j,
                                              int limit = kDefaultEnumLimit) {
    PartitionReport rep;
    rep.cls = classify(inst, {.limit = limit});
    rep.splits = all_tie_partitions(inst, table, rep.cls);
    for (int i = 1; i <= inst.M(); ++i) {
        if (only_i && *only_i != i) continue;
        const TieSplit& split = rep.splits[static_cast<std::size_t>(i - 1)];
        for (int j = 1; j <= inst.M(); ++j) {
            if (j == i || (only_j && *only_j != j)) continue;
            PairReport pair;
            pair.i = i;
            pair.j = j;
            pair.flip_ties = split.flip_ties[static_cast<std::size_t>(j - 1)];
            pair.fixed_ties = split.fixed_ties[static_cast<std::size_t>(j - 1)];
            pair.near_errors = split.near_errors[static_cast<std::size_t>(j - 1)];
            if (!pair.flip_ties.empty()) {
                pair.has_levels = true;
                pair.levels = level_partition(inst, split, j);
                for (int k = 0; k < pair.levels.refinement.ell; ++k)
                    if (!pair.levels.tie_levels[static_cast<std::size_t>(k)].empty())
                        pair.atoms.push_back(atom_partition(inst, pair.levels, k));
            }
            rep.pairs.push_back(std::move(pair));
        }
    }
    rep.checks.merge(check_prop2(inst, table, rep.splits).check);
    rep.checks.merge(check_prop9(inst, table, rep.splits));
    rep.checks.merge(check_appendixB(inst, table, rep.splits));
    rep.chain = bound_chain(inst, table, rep.cls, rep.splits);
    return rep;
}

inline nlohmann::json partitions_to_json(const Instance& inst, const PartitionReport& rep) {
    const int n = inst.n();
    nlohmann::json j;
    auto& regions = j["regions"] = nlohmann::json::array();
    for (int i = 1; i <= inst.M(); ++i)
        regions.push_back({{"i", i},
                           {"ties", detail::words_to_json(rep.cls.ties[static_cast<std::size_t>(i - 1)], n)},
                           {"errors", detail::words_to_json(rep.cls.errors[static_cast<std::size_t>(i - 1)], n)}});
    auto& pairs = j["pairs"] = nlohmann::json::array();
    for (const auto& pair : rep.pairs) {
        nlohmann::json pj;
        pj["i"] = pair.i;
        pj["j"] = pair.j;
        pj["T"] = detail::words_to_json(pair.flip_ties, n);
        pj["T_residual"] = detail::words_to_json(pair.fixed_ties, n);
        pj["N"] = detail::words_to_json(pair.near_errors, n);
        if (pair.has_levels) {
            auto& levels = pj["levels"] = nlohmann::json::array();
            for (int k = 0; k < pair.levels.refinement.ell; ++k)
                levels.push_back(
                    {{"k", k},
                     {"T", detail::words_to_json(pair.levels.tie_levels[static_cast<std::size_t>(k)], n)},
                     {"N", detail::words_to_json(pair.levels.err_levels[static_cast<std::size_t>(k)], n)}});
            auto& atoms = pj["atoms"] = nlohmann::json::array();
            for (const auto& atom : pair.atoms)
                for (std::size_t a = 0; a < atom.reps.size(); ++a)
                    atoms.push_back({{"k", atom.k},
                                     {"u", word_to_string(atom.reps[a], n)},
                                     {"T", detail::words_to_json(atom.tie_atoms[a], n)},
                                     {"N", detail::words_to_json(atom.err_atoms[a], n)}});
        }
        pairs.push_back(std::move(pj));
    }
    auto& chain = j["bound_chain"] = nlohmann::json::array();
    for (const auto& link : rep.chain.links) chain.push_back({{"name", link.name}, {"value", to_string(link.value)}});
    j["chain_vacuous"] = rep.chain.vacuous;
    j["chain_ok"] = rep.chain.ok();
    j["checks_ok"] = rep.checks.ok();
    return j;
}

inline std::string partitions_report(const Instance& inst, const PartitionReport& rep, ReportFormat fmt) {
    if (fmt == ReportFormat::json) return partitions_to_json(inst, rep).dump(2) + "\n";
    const int n = inst.n();
    std::ostringstream os;
    if (fmt == ReportFormat::csv) {
        os << "set,words\n";
        for (int i = 1; i <= inst.M(); ++i) {
            os << "T_" << i << "," << detail::join_words(rep.cls.ties[static_cast<std::size_t>(i - 1)], n) << "\n";
            os << "N_" << i << "," << detail::join_words(rep.cls.errors[static_cast<std::size_t>(i - 1)], n)
               << "\n";
        }
        for (const auto& pair : rep.pairs) {
            const std::string suffix = std::to_string(pair.j) + "|" + std::to_string(pair.i);
            os << "T[" << suffix << "]," << detail::join_words(pair.flip_ties, n) << "\n";
            os << "T~[" << suffix << "]," << detail::join_words(pair.fixed_ties, n) << "\n";
            os << "N[" << suffix << "]," << detail::join_words(pair.near_errors, n) << "\n";
        }
        for (const auto& link : rep.chain.links) os << "chain:" << link.name << "," << to_string(link.value) << "\n";
        return os.str();
    }

    os << "| set | words |\n|---|---|\n";
    for (int i = 1; i <= inst.M(); ++i) {
        os << "| T_" << i << " | " << detail::join_words(rep.cls.ties[static_cast<std::size_t>(i - 1)], n)
           << " |\n";
        os << "| N_" << i << " | " << detail::join_words(rep.cls.errors[static_cast<std::size_t>(i - 1)], n)
           << " |\n";
    }
    os << "\n| pair | T[j\\|i] | T~[j\\|i] | N[j\\|i] |\n|---|---|---|---|\n";
    for (const auto& pair : rep.pairs)
        os << "| (" << pair.j << "\\|" << pair.i << ") | " << detail::join_words(pair.flip_ties, n) << " | "
           << detail::join_words(pair.fixed_ties, n) << " | " << detail::join_words(pair.near_errors, n)
           << " |\n";

    bool any_levels = false;
    for (const auto& pair : rep.pairs) any_levels |= pair.has_levels;
    if (any_levels) {
        os << "\n| pair | k | T(k) | N(k) |\n|---|---|---|---|\n";
        for (const auto& pair : rep.pairs) {
            if (!pair.has_levels) continue;
            for (int k = 0; k < pair.levels.refinement.ell; ++k)
                os << "| (" << pair.j << "\\|" << pair.i << ") | " << k << " | "
                   << detail::join_words(pair.levels.tie_levels[static_cast<std::size_t>(k)], n) << " | "
                   << detail::join_words(pair.levels.err_levels[static_cast<std::size_t>(k)], n) << " |\n";
        }
        os << "\n| pair | k | u | T(u;k) | N(u;k) |\n|---|---|---|---|---|\n";
        for (const auto& pair : rep.pairs)
            for (const auto& atom : pair.atoms)
                for (std::size_t a = 0; a < atom.reps.size(); ++a)
                    os << "| (" << pair.j << "\\|" << pair.i << ") | " << atom.k << " | "
                       << word_to_string(atom.reps[a], n) << " | " << detail::join_words(atom.tie_atoms[a], n)
                       << " | " << detail::join_words(atom.err_atoms[a], n) << " |\n";
    }

    os << "\n";
    if (rep.chain.vacuous) {
        os << "bound chain: tie-free, chain vacuous\n";
    } else {
        os << "| bound on delta_n/b_n | value |\n|---|---|\n";
        for (const auto& link : rep.chain.links)
            os << "| " << link.name << " | " << to_string(link.value) << " |\n";
    }
    os << "\nproposition checks: " << (rep.checks.ok() ? "all ok" : "VIOLATIONS FOUND") << "\n";
    for (const auto& v : rep.checks.violations) os << "- " << v.property << ": " << v.detail << "\n";
    return os.str();
}

// ---- monte carlo ----

inline nlohmann::json estimates_to_json(const MetricEstimates& est) {
    const auto one = [](const char* metric, const Estimate& e) {
        return nlohmann::json{{"metric", metric},
                              {"point", e.point},
                              {"stderr", e.stderr_value},
                              {"samples", e.samples},
                              {"seed", e.seed}};
    };
    return nlohmann::json::array({one("a_n", est.a), one("b_n", est.b), one("delta_n", est.delta)});
}

inline std::string estimates_report(const MetricEstimates& est, ReportFormat fmt) {
    if (fmt == ReportFormat::json) return estimates_to_json(est).dump(2) + "\n";
    std::ostringstream os;
    if (fmt == ReportFormat::csv) {
        os << "metric,point,stderr,samples,seed\n";
        const auto line = [&](const char* name, const Estimate& e) {
            os << name << "," << e.point << "," << e.stderr_value << "," << e.samples << "," << e.seed << "\n";
        };
        line("a_n", est.a);
        line("b_n", est.b);
        line("delta_n", est.delta);
        return os.str();
    }
    os << "| metric | point | stderr | samples | seed |\n|---|---|---|---|---|\n";
    const auto line = [&](const char* name, const Estimate& e) {
        os << "| " << name << " | " << e.point << " | " << e.stderr_value << " | " << e.samples << " | "
           << e.seed << " |\n";
    };
    line("a_n", est.a);
    line("b_n", est.b);
    line("delta_n", est.delta);
    return os.str();
}

}  // namespace mapties
