// A validated (code, prior, channel) triple and the primitive exact
// quantities attached to it: restricted Hamming distance and joint weights
// P(c_i, y) = prior_i * p^n * q^(n-d(c_i,y)).

#pragma once

#include "mapties/bits.hpp"
#include "mapties/laurent.hpp"
#include "mapties/rational.hpp"

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace mapties {

class Instance {
  public:
    Instance(int n, std::vector<Word> codewords, std::vector<LaurentWeight> weights,
             std::vector<Rational> prior, Rational p)
        : n_(n),
          codewords_(std::move(codewords)),
          weights_(std::move(weights)),
          prior_(std::move(prior)),
          p_(std::move(p)),
          q_((Rational(1) - p_) / p_) {}

    int n() const { return n_; }
    int M() const { return static_cast<int>(codewords_.size()); }
    const std::vector<Word>& codewords() const { return codewords_; }
    const std::vector<LaurentWeight>& weights() const { return weights_; }
    const std::vector<Rational>& prior() const { return prior_; }
    const Rational& p() const { return p_; }
    const Rational& q() const { return q_; }

    /// Codeword by 1-based index.
    Word codeword(int i) const { return codewords_[static_cast<std::size_t>(i - 1)]; }
    const Rational& prior_of(int i) const { return prior_[static_cast<std::size_t>(i - 1)]; }

    int distance(int i, Word y) const { return hamming_distance(codeword(i), y, n_); }

    /// Positions where codewords i and j differ.
    IndexSet differ_mask(int i, int j) const {
        return {(codeword(i) ^ codeword(j)) & word_full_mask(n_)};
    }

    /// Exact joint weight P(c_i, y); i is 1-based.
    Rational joint_weight(int i, Word y) const {
        if (i < 1 || i > M()) throw std::out_of_range("codeword index out of range");
        return prior_of(i) * rational_pow(p_, n_) * rational_pow(q_, n_ - distance(i, y));
    }

    bool uniform_prior() const {
        return std::all_of(prior_.begin(), prior_.end(),
                           [&](const Rational& x) { return x == prior_.front(); });
    }

    Word output_count() const { return Word{1} << n_; }

    bool operator==(const Instance& rhs) const {
        return n_ == rhs.n_ && codewords_ == rhs.codewords_ && prior_ == rhs.prior_ && p_ == rhs.p_;
    }

  private:
    int n_;
    std::vector<Word> codewords_;
    std::vector<LaurentWeight> weights_;
    std::vector<Rational> prior_;
    Rational p_;
    Rational q_;
};

/// Validate and assemble an instance. Prior weights are evaluated at
/// q = (1-p)/p and normalized by their sum.
inline Instance build_instance(const std::vector<std::string>& codeword_strings,
                               const std::vector<LaurentWeight>& weights, const Rational& p) {
    if (codeword_strings.size() < 2)
        throw std::invalid_argument("instance invariant violated: at least two codewords required");
    if (weights.size() != codeword_strings.size())
        throw std::invalid_argument("instance invariant violated: one prior weight per codeword required");
    if (!(p > 0 && p < Rational(1, 2)))
        throw std::invalid_argument("instance invariant violated: p must lie in (0, 1/2)");

    const int n = static_cast<int>(codeword_strings.front().size());
    if (n < 1) throw std::invalid_argument("instance invariant violated: blocklength must be at least 1");

    std::vector<Word> codewords;
    codewords.reserve(codeword_strings.size());
    std::set<Word> seen;
    for (const auto& s : codeword_strings) {
        if (static_cast<int>(s.size()) != n)
            throw std::invalid_argument("instance invariant violated: codewords must share one blocklength");
        Word w = word_from_string(s);
        if (!seen.insert(w).second)
            throw std::invalid_argument("instance invariant violated: duplicate codeword " + s);
        codewords.push_back(w);
    }

    const Rational q = (Rational(1) - p) / p;
    std::vector<Rational> evaluated;
    evaluated.reserve(weights.size());
    Rational total(0);
    for (const auto& w : weights) {
        Rational v = w.evaluate(q);
        if (v <= 0)
            throw std::invalid_argument(
                "instance invariant violated: every codeword must have positive prior weight");
        evaluated.push_back(v);
        total += v;
    }
    for (auto& v : evaluated) v /= total;

    return Instance(n, std::move(codewords), weights, std::move(evaluated), p);
}

// ---- instance file format ----
// { "n": int, "codewords": ["0101", ...], "prior_weights": ["q^2", ...], "p": "a/b" }

inline Instance instance_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("instance file: expected a JSON object");
    for (const char* key : {"n", "codewords", "prior_weights", "p"})
        if (!j.contains(key))
            throw std::invalid_argument(std::string("instance file: missing field '") + key + "'");

    std::vector<std::string> codewords = j.at("codewords").get<std::vector<std::string>>();
    std::vector<LaurentWeight> weights;
    for (const auto& expr : j.at("prior_weights")) weights.push_back(parse_weight(expr.get<std::string>()));
    Rational p = parse_rational(j.at("p").get<std::string>());

    Instance inst = build_instance(codewords, weights, p);
    if (j.at("n").get<int>() != inst.n())
        throw std::invalid_argument("instance file: field 'n' disagrees with codeword length");
    return inst;
}

inline nlohmann::json instance_to_json(const Instance& inst) {
    nlohmann::json j;
    j["n"] = inst.n();
    auto& words = j["codewords"] = nlohmann::json::array();
    for (Word c : inst.codewords()) words.push_back(word_to_string(c, inst.n()));
    auto& weights = j["prior_weights"] = nlohmann::json::array();
    for (const auto& w : inst.weights()) weights.push_back(w.to_string());
    j["p"] = to_string(inst.p());
    return j;
}

}  // namespace mapties
