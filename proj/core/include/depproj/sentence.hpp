#ifndef DEPPROJ_SENTENCE_HPP
#define DEPPROJ_SENTENCE_HPP

#include <string>
#include <vector>

namespace depproj {

// One morphological attribute, e.g. Case=Nom. A token keeps its feats
// sorted by key with unique keys.
struct Feat {
    std::string key;
    std::string value;

    bool operator==(const Feat&) const = default;
};

// One token row of a dependency-annotated sentence. Fields follow the
// CoNLL-U column layout; empty annotation is stored as "_". `head` is the
// 1-based id of the governing token, 0 for the artificial root.
//
// `is_dummy` marks synthetic nodes inserted by annotation projection. On
// disk the flag is carried as a Dummy=Yes entry in the MISC column; the
// entry is stripped into the flag when parsing and re-emitted when
// writing, so `misc` holds only the remaining MISC content.
struct Token {
    int id = 0;
    std::string form = "_";
    std::string lemma = "_";
    std::string upos = "_";
    std::string xpos = "_";
    std::vector<Feat> feats;
    int head = 0;
    std::string deprel = "_";
    std::string deps = "_";
    std::string misc = "_";
    bool is_dummy = false;

    bool operator==(const Token&) const = default;
};

// Reserved surface form for dummy tokens.
inline constexpr const char* kDummyForm = "<DUMMY>";
// MISC entry marking a dummy token on disk.
inline constexpr const char* kDummyMiscEntry = "Dummy=Yes";

// A dependency-annotated sentence. Valid sentences have token ids exactly
// 1..n in order and heads forming a tree with a single root (head 0).
// `comments` holds the verbatim "#"-prefixed lines preceding the token
// block; `sent_id` caches the value of a "# sent_id = ..." comment when
// present (empty otherwise).
struct DepSentence {
    std::string sent_id;
    std::vector<std::string> comments;
    std::vector<Token> tokens;

    bool operator==(const DepSentence&) const = default;

    std::size_t size() const { return tokens.size(); }
    bool empty() const { return tokens.empty(); }

    // Token by 1-based id. No bounds check beyond the vector's.
    Token& token(int id) { return tokens[static_cast<std::size_t>(id) - 1]; }
    const Token& token(int id) const { return tokens[static_cast<std::size_t>(id) - 1]; }

    // Sets sent_id and keeps the "# sent_id = ..." comment line in sync
    // (updates it in place or prepends one).
    void set_sent_id(const std::string& new_id);
};

struct Treebank {
    std::vector<DepSentence> sentences;

    bool operator==(const Treebank&) const = default;

    std::size_t size() const { return sentences.size(); }
    bool empty() const { return sentences.empty(); }
};

// Value of a "# sent_id = ..." comment line, or "" if the line is not one.
std::string sent_id_from_comment(const std::string& line);

// --- tree helpers -------------------------------------------------------
//
// All helpers assume the sentence satisfies the DepSentence invariants
// (use validate() from conllu.hpp on untrusted data first).

// children[h] lists the ids of tokens governed by h, ascending; index 0
// holds the root's children.
std::vector<std::vector<int>> children_table(const DepSentence& sent);

// Id of the token with head 0.
int root_id(const DepSentence& sent);

// depth[i] is the distance of token id i+1 from the root (root depth 0).
std::vector<int> token_depths(const DepSentence& sent);

// yield[i] is the [min, max] id interval covered by token i+1 together
// with all of its transitive dependents.
std::vector<std::pair<int, int>> yield_intervals(const DepSentence& sent);

// Number of ids inside token `id`'s subtree (itself included).
std::vector<int> subtree_sizes(const DepSentence& sent);

bool has_dummy_tokens(const DepSentence& sent);

}  // namespace depproj

#endif  // DEPPROJ_SENTENCE_HPP
