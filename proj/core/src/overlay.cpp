#include "depproj/overlay.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "depproj/errors.hpp"

namespace depproj {

namespace {

// Positions of the non-dummy tokens, in order.
std::vector<std::size_t> real_token_indices(const DepSentence& sent) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < sent.tokens.size(); ++i)
        if (!sent.tokens[i].is_dummy) out.push_back(i);
    return out;
}

std::string pairing_mismatch(const DepSentence& projected, const DepSentence& tagged,
                             const std::vector<std::size_t>& real, std::size_t sent_idx) {
    if (real.size() != tagged.size())
        return "sentence " + std::to_string(sent_idx + 1) + ": " + std::to_string(real.size()) +
               " non-dummy tokens vs " + std::to_string(tagged.size()) + " tagged tokens";
    for (std::size_t k = 0; k < real.size(); ++k) {
        const std::string& a = projected.tokens[real[k]].form;
        const std::string& b = tagged.tokens[k].form;
        if (a != b)
            return "sentence " + std::to_string(sent_idx + 1) + ": form mismatch at token " +
                   std::to_string(k + 1) + " ('" + a + "' vs '" + b + "')";
    }
    return {};
}

}  // namespace

Treebank overlay_tags(const Treebank& projected, const Treebank& tagged,
                      const OverlayOptions& opts, OverlayReport* report) {
    if (projected.size() != tagged.size())
        throw Error("sentence count mismatch: " + std::to_string(projected.size()) +
                    " projected vs " + std::to_string(tagged.size()) + " tagged");

    OverlayReport local;
    Treebank out;
    out.sentences.reserve(projected.size());

    for (std::size_t i = 0; i < projected.size(); ++i) {
        DepSentence sent = projected.sentences[i];
        const DepSentence& tags = tagged.sentences[i];
        const std::vector<std::size_t> real = real_token_indices(sent);

        const std::string mismatch = pairing_mismatch(sent, tags, real, i);
        if (!mismatch.empty()) {
            if (!opts.lenient) throw Error(mismatch);
            ++local.mismatched;
            local.warnings.push_back(mismatch + " (passed through)");
        } else {
            for (std::size_t k = 0; k < real.size(); ++k) {
                Token& tok = sent.tokens[real[k]];
                const Token& tag = tags.tokens[k];
                tok.feats = tag.feats;
                tok.lemma = tag.lemma;
                if (opts.mode == OverlayMode::pos_and_morph) tok.upos = tag.upos;
            }
            ++local.overlaid;
        }

        if (opts.drop_dummy_sentences && has_dummy_tokens(sent)) {
            ++local.dummy_dropped;
            continue;
        }
        out.sentences.push_back(std::move(sent));
    }

    if (report) *report = std::move(local);
    return out;
}

Treebank delexicalize(const Treebank& tb) {
    Treebank out = tb;
    for (DepSentence& sent : out.sentences)
        for (Token& tok : sent.tokens) {
            tok.form = "_";
            tok.lemma = "_";
        }
    return out;
}

Treebank concat_treebanks(const std::vector<Treebank>& parts) {
    // sent_ids that occur in more than one part get a part prefix.
    std::map<std::string, std::set<std::size_t>> seen_in;
    for (std::size_t p = 0; p < parts.size(); ++p)
        for (const DepSentence& sent : parts[p].sentences)
            if (!sent.sent_id.empty()) seen_in[sent.sent_id].insert(p);

    Treebank out;
    std::set<std::string> used;
    for (std::size_t p = 0; p < parts.size(); ++p) {
        for (const DepSentence& sent : parts[p].sentences) {
            DepSentence copy = sent;
            if (!copy.sent_id.empty()) {
                std::string id = copy.sent_id;
                if (seen_in[id].size() > 1) id = "p" + std::to_string(p) + "-" + id;
                while (used.count(id)) id = "p" + std::to_string(p) + "-" + id;
                if (id != copy.sent_id) copy.set_sent_id(id);
                used.insert(id);
            }
            out.sentences.push_back(std::move(copy));
        }
    }
    return out;
}

OverlayMode parse_overlay_mode(const std::string& name) {
    if (name == "morph") return OverlayMode::morph_only;
    if (name == "pos+morph" || name == "pos-morph") return OverlayMode::pos_and_morph;
    throw Error("unknown overlay mode '" + name + "' (expected morph or pos+morph)");
}

}  // namespace depproj
