// Exhaustive classification of all 2^n channel outputs.
//
// For each codeword index i the output space splits into the tie region T_i
// (some other codeword matches the maximal joint weight exactly), the
// tie-free error region N_i (the maximum is strictly larger elsewhere) and
// the correct region. From these come the exact metrics
//   a_n = 1 - sum_y max_i P(c_i, y)      (minimal MAP error probability)
//   b_n = sum_i P(c_i, N_i)              (tie-free error probability)
//   d_n = sum_i P(c_i, T_i)              (tie probability, written delta_n)
// and the bound chain b_n <= a_n <= b_n + delta_n, delta_n <= 2qn b_n.

#pragma once

#include "mapties/instance.hpp"

#include <thread>
#include <utility>

namespace mapties {

/// Default cap on the exhaustive enumeration of 2^n outputs.
inline constexpr int kDefaultEnumLimit = 24;

inline void require_enumerable(const Instance& inst, int limit = kDefaultEnumLimit) {
    if (inst.n() > limit || inst.n() >= kMaxBlocklength)
        throw std::length_error("enumeration limit exceeded: n = " + std::to_string(inst.n()) +
                                " > " + std::to_string(limit) +
                                " (raise the limit or use the sampling estimator)");
}

// Joint weights rescaled to integers: P(c_i, y) = unit[i-1] * a^(n-d) * b^d * scale,
// with q = a/b in lowest terms and d = d(c_i, y). Comparisons between joint
// weights reduce to comparisons of these integer scores.
class ScoreTable {
  public:
    explicit ScoreTable(const Instance& inst) : inst_(&inst) {
        const BigInt a = numerator(inst.q());
        const BigInt b = denominator(inst.q());
        BigInt common_den = 1;
        for (const auto& pr : inst.prior()) common_den = boost::multiprecision::lcm(common_den, denominator(pr));
        unit_.reserve(inst.prior().size());
        for (const auto& pr : inst.prior()) unit_.push_back(numerator(pr) * (common_den / denominator(pr)));
        pow_.resize(static_cast<std::size_t>(inst.n()) + 1);
        for (int d = 0; d <= inst.n(); ++d)
            pow_[static_cast<std::size_t>(d)] =
                boost::multiprecision::pow(a, static_cast<unsigned>(inst.n() - d)) *
                boost::multiprecision::pow(b, static_cast<unsigned>(d));
        scale_ = rational_pow(inst.p(), inst.n()) /
                 (Rational(common_den) * Rational(boost::multiprecision::pow(b, static_cast<unsigned>(inst.n()))));
    }

    BigInt score_at_distance(int i, int d) const {
        return unit_[static_cast<std::size_t>(i - 1)] * pow_[static_cast<std::size_t>(d)];
    }

    BigInt score(int i, Word y) const { return score_at_distance(i, inst_->distance(i, y)); }

    void scores(Word y, std::vector<BigInt>& out) const {
        out.resize(static_cast<std::size_t>(inst_->M()));
        for (int i = 1; i <= inst_->M(); ++i) out[static_cast<std::size_t>(i - 1)] = score(i, y);
    }

    /// Exact joint weight recovered from an integer score (or score sum).
    Rational to_weight(const BigInt& score_sum) const { return Rational(score_sum) * scale_; }

  private:
    const Instance* inst_;
    std::vector<BigInt> unit_;
    std::vector<BigInt> pow_;
    Rational scale_;
};

struct Metrics {
    Rational a;      // minimal MAP error probability a_n
    Rational b;      // tie-free error probability b_n
    Rational delta;  // tie probability delta_n
};

struct Classification {
    std::vector<std::vector<Word>> ties;    // ties[i-1] = T_i, ascending word order
    std::vector<std::vector<Word>> errors;  // errors[i-1] = N_i
    Metrics metrics;

    bool tie_free() const { return metrics.delta == 0; }
};

struct ClassifyOptions {
    int limit = kDefaultEnumLimit;
    unsigned threads = 1;  // outputs are split into contiguous ranges, merged in order
};

namespace detail {

struct ClassifyPartial {
    std::vector<std::vector<Word>> ties, errors;
    BigInt max_sum = 0;    // sum over y of max_i score_i(y)
    BigInt err_sum = 0;    // sum over (i, y in N_i) of score_i(y)
    BigInt tie_sum = 0;    // sum over (i, y in T_i) of score_i(y)
};

inline void classify_range(const Instance& inst, const ScoreTable& table, Word begin, Word end,
                           ClassifyPartial& out) {
    const int M = inst.M();
    out.ties.assign(static_cast<std::size_t>(M), {});
    out.errors.assign(static_cast<std::size_t>(M), {});
    std::vector<BigInt> s;
    for (Word y = begin; y < end; ++y) {
        table.scores(y, s);
        std::size_t best = 0;
        int mult = 1;
        for (std::size_t r = 1; r < s.size(); ++r) {
            if (s[r] > s[best]) {
                best = r;
                mult = 1;
            } else if (s[r] == s[best]) {
                ++mult;
            }
        }
        out.max_sum += s[best];
        for (std::size_t idx = 0; idx < s.size(); ++idx) {
            if (s[idx] < s[best]) {
                out.errors[idx].push_back(y);
                out.err_sum += s[idx];
            } else if (mult >= 2) {  // s[idx] == max attained by at least one other index
                out.ties[idx].push_back(y);
                out.tie_sum += s[idx];
            }
        }
    }
}

}  // namespace detail

/// Full classification pass. Ranges are fixed-order contiguous blocks; the
/// ordered merge keeps output identical for any thread count.
inline Classification classify(const Instance& inst, const ClassifyOptions& opts = {}) {
    require_enumerable(inst, opts.limit);
    const ScoreTable table(inst);
    const Word total = inst.output_count();

    unsigned workers = opts.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opts.threads;
    if (static_cast<Word>(workers) > total) workers = static_cast<unsigned>(total);

    std::vector<detail::ClassifyPartial> partials(workers);
    if (workers <= 1) {
        detail::classify_range(inst, table, 0, total, partials[0]);
    } else {
        std::vector<std::thread> pool;
        const Word chunk = total / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const Word begin = chunk * w;
            const Word end = (w + 1 == workers) ? total : begin + chunk;
            pool.emplace_back(detail::classify_range, std::cref(inst), std::cref(table), begin, end,
                              std::ref(partials[w]));
        }
        for (auto& t : pool) t.join();
    }

    Classification out;
    out.ties.assign(static_cast<std::size_t>(inst.M()), {});
    out.errors.assign(static_cast<std::size_t>(inst.M()), {});
    BigInt max_sum = 0, err_sum = 0, tie_sum = 0;
    for (auto& part : partials) {  // in range order: concatenation stays sorted
        for (int i = 0; i < inst.M(); ++i) {
            auto& t = out.ties[static_cast<std::size_t>(i)];
            auto& e = out.errors[static_cast<std::size_t>(i)];
            t.insert(t.end(), part.ties[static_cast<std::size_t>(i)].begin(),
                     part.ties[static_cast<std::size_t>(i)].end());
            e.insert(e.end(), part.errors[static_cast<std::size_t>(i)].begin(),
                     part.errors[static_cast<std::size_t>(i)].end());
        }
        max_sum += part.max_sum;
        err_sum += part.err_sum;
        tie_sum += part.tie_sum;
    }
    out.metrics.a = Rational(1) - table.to_weight(max_sum);
    out.metrics.b = table.to_weight(err_sum);
    out.metrics.delta = table.to_weight(tie_sum);
    return out;
}

/// T_i = { y : P(c_i,y) = max_{r != i} P(c_r,y) }, ascending word order.
inline std::vector<Word> tie_set(const Instance& inst, int i, int limit = kDefaultEnumLimit) {
    require_enumerable(inst, limit);
    const ScoreTable table(inst);
    std::vector<Word> out;
    std::vector<BigInt> s;
    for (Word y = 0; y < inst.output_count(); ++y) {
        table.scores(y, s);
        BigInt other = -1;
        for (int r = 1; r <= inst.M(); ++r)
            if (r != i && s[static_cast<std::size_t>(r - 1)] > other) other = s[static_cast<std::size_t>(r - 1)];
        if (s[static_cast<std::size_t>(i - 1)] == other) out.push_back(y);
    }
    return out;
}

/// N_i = { y : P(c_i,y) < max_{r != i} P(c_r,y) }, ascending word order.
inline std::vector<Word> error_set(const Instance& inst, int i, int limit = kDefaultEnumLimit) {
    require_enumerable(inst, limit);
    const ScoreTable table(inst);
    std::vector<Word> out;
    std::vector<BigInt> s;
    for (Word y = 0; y < inst.output_count(); ++y) {
        table.scores(y, s);
        BigInt other = -1;
        for (int r = 1; r <= inst.M(); ++r)
            if (r != i && s[static_cast<std::size_t>(r - 1)] > other) other = s[static_cast<std::size_t>(r - 1)];
        if (s[static_cast<std::size_t>(i - 1)] < other) out.push_back(y);
    }
    return out;
}

/// I_i(y): indices h != i with P(c_h,y) = P(c_i,y) = max_{r != i} P(c_r,y).
/// Empty exactly when y is not in T_i.
inline std::vector<int> tie_indices(const Instance& inst, const ScoreTable& table, int i, Word y) {
    std::vector<BigInt> s;
    table.scores(y, s);
    BigInt other = -1;
    for (int r = 1; r <= inst.M(); ++r)
        if (r != i && s[static_cast<std::size_t>(r - 1)] > other) other = s[static_cast<std::size_t>(r - 1)];
    std::vector<int> out;
    if (s[static_cast<std::size_t>(i - 1)] != other) return out;
    for (int h = 1; h <= inst.M(); ++h)
        if (h != i && s[static_cast<std::size_t>(h - 1)] == other) out.push_back(h);
    return out;
}

inline std::vector<int> tie_indices(const Instance& inst, int i, Word y) {
    return tie_indices(inst, ScoreTable(inst), i, y);
}

/// MAP decision with the deterministic least-index tie break.
inline int map_decode(const Instance& inst, const ScoreTable& table, Word y) {
    int best = 1;
    BigInt best_score = table.score(1, y);
    for (int r = 2; r <= inst.M(); ++r) {
        BigInt s = table.score(r, y);
        if (s > best_score) {
            best = r;
            best_score = std::move(s);
        }
    }
    return best;
}

inline int map_decode(const Instance& inst, Word y) { return map_decode(inst, ScoreTable(inst), y); }

inline Metrics metrics(const Instance& inst, int limit = kDefaultEnumLimit) {
    return classify(inst, {.limit = limit}).metrics;
}

/// Exact bound checks for one instance.
struct TheoremReport {
    Metrics metrics;
    Rational q;
    int n = 0;
    bool tie_free = false;
    bool uniform = false;

    bool sandwich_ok = false;     // b <= a <= b + delta
    bool tie_bound_ok = false;    // delta <= 2qn * b
    bool main_bound_ok = false;   // a <= (1 + 2qn) * b
    bool uniform_bound_ok = true; // a <= (1 + qn) * b, uniform priors only

    // Exact ratios (0 when b = 0, which forces a = delta = 0).
    Rational delta_over_b;
    Rational a_over_b;
    Rational cap_2qn;

    bool all_ok() const { return sandwich_ok && tie_bound_ok && main_bound_ok && uniform_bound_ok; }
};

inline TheoremReport verify_theorem(const Instance& inst, const Classification& cls) {
    TheoremReport rep;
    rep.metrics = cls.metrics;
    rep.q = inst.q();
    rep.n = inst.n();
    rep.tie_free = cls.tie_free();
    rep.uniform = inst.uniform_prior();

    const Rational& a = cls.metrics.a;
    const Rational& b = cls.metrics.b;
    const Rational& delta = cls.metrics.delta;
    const Rational qn = inst.q() * inst.n();
    rep.cap_2qn = 2 * qn;

    rep.sandwich_ok = b <= a && a <= b + delta;
    rep.tie_bound_ok = delta <= 2 * qn * b;
    rep.main_bound_ok = a <= (1 + 2 * qn) * b;
    if (rep.uniform) rep.uniform_bound_ok = a <= (1 + qn) * b;
    if (b > 0) {
        rep.delta_over_b = delta / b;
        rep.a_over_b = a / b;
    }
    return rep;
}

inline TheoremReport verify_theorem(const Instance& inst, int limit = kDefaultEnumLimit) {
    return verify_theorem(inst, classify(inst, {.limit = limit}));
}

}  // namespace mapties
