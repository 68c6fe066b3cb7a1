#include "depproj/evaluation.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string_view>

#include "depproj/constituency.hpp"
#include "depproj/errors.hpp"

namespace depproj {

namespace {

std::string_view label_view(const std::string& deprel, bool universal) {
    if (!universal) return deprel;
    const std::size_t colon = deprel.find(':');
    return colon == std::string::npos ? std::string_view(deprel)
                                      : std::string_view(deprel).substr(0, colon);
}

}  // namespace

EvalReport score(const Treebank& system, const Treebank& gold, const ScoreOptions& opts) {
    if (system.size() != gold.size())
        throw Error("sentence count mismatch: " + std::to_string(system.size()) + " system vs " +
                    std::to_string(gold.size()) + " gold");

    EvalReport report;
    report.sentences = gold.size();
    for (std::size_t i = 0; i < gold.size(); ++i) {
        const DepSentence& sys_sent = system.sentences[i];
        const DepSentence& gold_sent = gold.sentences[i];
        if (sys_sent.size() != gold_sent.size())
            throw Error("token count mismatch in sentence " + std::to_string(i + 1) + ": " +
                        std::to_string(sys_sent.size()) + " system vs " +
                        std::to_string(gold_sent.size()) + " gold");

        for (std::size_t k = 0; k < gold_sent.size(); ++k) {
            const Token& sys_tok = sys_sent.tokens[k];
            const Token& gold_tok = gold_sent.tokens[k];
            if (sys_tok.form != gold_tok.form) ++report.form_mismatches;
            if (!opts.include_punct && gold_tok.upos == "PUNCT") {
                ++report.punct_excluded;
                continue;
            }
            ++report.tokens_total;
            const bool head_ok = sys_tok.head == gold_tok.head;
            const bool label_ok = label_view(sys_tok.deprel, opts.universal_deprels) ==
                                  label_view(gold_tok.deprel, opts.universal_deprels);
            if (head_ok) ++report.heads_correct;
            DeprelCounts& cell =
                report.per_deprel[std::string(label_view(gold_tok.deprel, opts.universal_deprels))];
            ++cell.gold;
            if (head_ok && label_ok) {
                ++report.heads_and_labels_correct;
                ++cell.correct;
            }
        }
    }
    return report;
}

SampleSelection sample_indices(std::size_t corpus_size, std::size_t n,
                               const SampleStrategy& strategy) {
    SampleSelection sel;
    if (n >= corpus_size) {
        sel.clamped = n > corpus_size;
        sel.indices.resize(corpus_size);
        std::iota(sel.indices.begin(), sel.indices.end(), 0);
        return sel;
    }
    if (strategy.kind == SampleStrategy::Kind::first_n) {
        sel.indices.resize(n);
        std::iota(sel.indices.begin(), sel.indices.end(), 0);
        return sel;
    }
    // Partial Fisher-Yates with an explicitly pinned draw (modulo on raw
    // mt19937 output) rather than uniform_int_distribution, whose mapping
    // is implementation-defined.
    std::vector<std::size_t> pool(corpus_size);
    std::iota(pool.begin(), pool.end(), 0);
    std::mt19937 rng(strategy.seed);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng()) % (corpus_size - i);
        std::swap(pool[i], pool[j]);
    }
    sel.indices.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n));
    std::sort(sel.indices.begin(), sel.indices.end());
    return sel;
}

Treebank sample_treebank(const Treebank& tb, std::size_t n, const SampleStrategy& strategy,
                         bool* clamped) {
    const SampleSelection sel = sample_indices(tb.size(), n, strategy);
    if (clamped) *clamped = sel.clamped;
    Treebank out;
    out.sentences.reserve(sel.indices.size());
    for (std::size_t idx : sel.indices) out.sentences.push_back(tb.sentences[idx]);
    return out;
}

StatsReport corpus_stats(const Treebank& tb) {
    StatsReport report;
    report.sentences = tb.size();
    for (const DepSentence& sent : tb.sentences) {
        report.tokens += sent.size();
        for (const Token& tok : sent.tokens) {
            if (tok.is_dummy) ++report.dummy_tokens;
            ++report.deprel_freq[tok.deprel];
            ++report.upos_freq[tok.upos];
        }
        if (!check_projectivity(sent).empty()) ++report.nonprojective_sentences;
    }
    return report;
}

}  // namespace depproj
