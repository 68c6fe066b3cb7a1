#ifndef DEPPROJ_EVALUATION_HPP
#define DEPPROJ_EVALUATION_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "depproj/sentence.hpp"

namespace depproj {

// Attachment-score evaluation and corpus slicing.

struct DeprelCounts {
    std::uint64_t gold = 0;     // tokens with this gold deprel
    std::uint64_t correct = 0;  // of those, head and label both right

    bool operator==(const DeprelCounts&) const = default;
};

struct EvalReport {
    std::uint64_t sentences = 0;
    std::uint64_t tokens_total = 0;  // scored tokens
    std::uint64_t heads_correct = 0;
    std::uint64_t heads_and_labels_correct = 0;
    std::uint64_t punct_excluded = 0;
    std::uint64_t form_mismatches = 0;  // warning-level, still scored
    std::map<std::string, DeprelCounts> per_deprel;

    // Fractions in [0, 1]; an empty denominator scores as 1.
    double uas() const {
        return tokens_total == 0 ? 1.0
                                 : static_cast<double>(heads_correct) /
                                       static_cast<double>(tokens_total);
    }
    double las() const {
        return tokens_total == 0 ? 1.0
                                 : static_cast<double>(heads_and_labels_correct) /
                                       static_cast<double>(tokens_total);
    }
};

struct ScoreOptions {
    // When false, tokens whose gold UPOS is PUNCT are excluded from all
    // counts.
    bool include_punct = true;
    // Compare deprels only up to the first ":" (and key the per-relation
    // breakdown the same way).
    bool universal_deprels = false;
};

// UAS counts system head == gold head; LAS additionally requires system
// deprel == gold deprel. Sentence and per-sentence token counts must
// match (throws Error); form disagreements are only counted.
EvalReport score(const Treebank& system, const Treebank& gold, const ScoreOptions& opts = {});

// --- corpus slicing ------------------------------------------------

struct SampleStrategy {
    enum class Kind { first_n, random_seeded };
    Kind kind = Kind::first_n;
    std::uint32_t seed = 0;

    static SampleStrategy first_n() { return {Kind::first_n, 0}; }
    static SampleStrategy random_seeded(std::uint32_t seed) {
        return {Kind::random_seeded, seed};
    }
};

struct SampleSelection {
    std::vector<std::size_t> indices;  // ascending
    bool clamped = false;              // n exceeded the corpus size
};

// Picks n of corpus_size indices, order preserving. first_n takes the
// prefix. random_seeded draws a uniform subset with a partial
// Fisher-Yates shuffle over the index array, using std::mt19937 seeded
// with `seed` and the draw j = i + rng() % (remaining), then sorts the
// selection; the procedure is fixed so that subsets are reproducible
// everywhere. n > corpus_size yields everything with `clamped` set.
SampleSelection sample_indices(std::size_t corpus_size, std::size_t n,
                               const SampleStrategy& strategy);

Treebank sample_treebank(const Treebank& tb, std::size_t n, const SampleStrategy& strategy,
                         bool* clamped = nullptr);

// --- corpus statistics ----------------------------------------------

struct StatsReport {
    std::uint64_t sentences = 0;
    std::uint64_t tokens = 0;
    std::uint64_t dummy_tokens = 0;
    std::uint64_t nonprojective_sentences = 0;
    std::map<std::string, std::uint64_t> deprel_freq;
    std::map<std::string, std::uint64_t> upos_freq;

    bool operator==(const StatsReport&) const = default;
};

StatsReport corpus_stats(const Treebank& tb);

}  // namespace depproj

#endif  // DEPPROJ_EVALUATION_HPP
