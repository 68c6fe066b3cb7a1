#ifndef DEPPROJ_OVERLAY_HPP
#define DEPPROJ_OVERLAY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "depproj/sentence.hpp"

namespace depproj {

// Merging independently produced target-language tagging onto a projected
// treebank. Tree structure (HEAD/DEPREL) is never touched; dummy tokens
// are skipped when pairing, so the overlay can run while dummies are
// still present.

enum class OverlayMode {
    morph_only,     // replace FEATS and LEMMA, keep UPOS
    pos_and_morph,  // additionally replace UPOS
};

struct OverlayOptions {
    OverlayMode mode = OverlayMode::morph_only;
    // With lenient set, sentences whose token counts or forms disagree
    // are passed through untouched (and counted) instead of raising.
    bool lenient = false;
    // Drop sentences that still contain a dummy token after overlaying.
    bool drop_dummy_sentences = false;
};

struct OverlayReport {
    std::uint64_t overlaid = 0;
    std::uint64_t mismatched = 0;       // skipped under lenient
    std::uint64_t dummy_dropped = 0;    // removed by drop_dummy_sentences
    std::vector<std::string> warnings;  // one line per lenient skip
};

// Requires equal sentence counts. For each sentence pair, the non-dummy
// tokens of `projected` are paired position-wise with the tokens of
// `tagged`; counts and forms must match exactly (throws Error naming the
// sentence unless lenient).
Treebank overlay_tags(const Treebank& projected, const Treebank& tagged,
                      const OverlayOptions& opts, OverlayReport* report = nullptr);

// Replaces FORM and LEMMA of every token with "_"; everything else is
// left alone.
Treebank delexicalize(const Treebank& tb);

// Concatenates treebanks in order. A sent_id occurring in more than one
// part is disambiguated by prefixing "p<part-index>-" (comments are kept
// in sync).
Treebank concat_treebanks(const std::vector<Treebank>& parts);

OverlayMode parse_overlay_mode(const std::string& name);  // morph|pos+morph

}  // namespace depproj

#endif  // DEPPROJ_OVERLAY_HPP
