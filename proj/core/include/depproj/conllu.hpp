#ifndef DEPPROJ_CONLLU_HPP
#define DEPPROJ_CONLLU_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "depproj/errors.hpp"
#include "depproj/sentence.hpp"

namespace depproj {

// CoNLL-U reader/writer.
//
// Accepted input: UTF-8 text, ten tab-separated columns per token
//   ID FORM LEMMA UPOS XPOS FEATS HEAD DEPREL DEPS MISC
// with "_" for empty fields, "#"-prefixed comment lines before the token
// block, and a blank line terminating each sentence.
//
// Deliberately rejected: multiword-token ranges ("3-4"), empty nodes
// ("5.1"), non-sequential ids, invalid UTF-8 bytes. FEATS are normalized
// to lexicographic key order on parse and duplicate keys are an error.
// The DEPS column is passed through untouched.
//
// A "Dummy=Yes" entry in MISC marks a synthetic projection node: parsing
// strips it into Token::is_dummy, writing appends it again (last in the
// MISC list), and the token's surface form is conventionally "<DUMMY>".

// One broken sentence-level invariant found by validate().
struct Violation {
    int token_id = 0;  // offending token, 0 for sentence-level problems
    std::string invariant;  // short name: "id-sequence", "self-loop", ...
    std::string message;
};

// Checks the DepSentence invariants on possibly-foreign data: ids are
// exactly 1..n in order, heads in [0, n] with head != id, exactly one
// head-0 token, and the head relation is acyclic. Returns one entry per
// broken invariant; empty means the sentence is a well-formed tree.
std::vector<Violation> validate(const DepSentence& sent);

struct ParseOptions {
    // When false, sentences are built without enforcing the tree
    // invariants (for inspecting foreign files; see validate()).
    bool check_tree = true;
};

// Throws ParseError on malformed input; with check_tree also on broken
// tree invariants, reporting line number and sentence index.
Treebank parse_conllu(std::istream& in, const ParseOptions& opts = {});
Treebank parse_conllu_string(const std::string& text, const ParseOptions& opts = {});

void write_conllu(const Treebank& tb, std::ostream& out);
std::string write_conllu_string(const Treebank& tb);

// File convenience wrappers; "-" means stdin / stdout.
Treebank load_conllu(const std::string& path, const ParseOptions& opts = {});
void save_conllu(const Treebank& tb, const std::string& path);

// Serializations of the FEATS column ("_" for none).
std::string feats_to_string(const std::vector<Feat>& feats);

}  // namespace depproj

#endif  // DEPPROJ_CONLLU_HPP
