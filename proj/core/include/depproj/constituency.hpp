#ifndef DEPPROJ_CONSTITUENCY_HPP
#define DEPPROJ_CONSTITUENCY_HPP

#include <string>
#include <vector>

#include "depproj/errors.hpp"
#include "depproj/sentence.hpp"

namespace depproj {

// Conversion of dependency trees into labeled constituency bracketings
// for tree-to-string translation input. Each word becomes an internal
// node labeled with its deprel whose span is the word's yield; the word
// itself surfaces as a leaf child labeled with its UPOS. Children are
// ordered by span start, so reading the leaves left to right reproduces
// the sentence.

struct ConstituencyNode {
    std::string label;
    std::vector<ConstituencyNode> children;
    std::string leaf_form;  // leaves only
    int span_begin = 0;     // 1-based, inclusive
    int span_end = 0;

    bool is_leaf() const { return children.empty(); }
    bool operator==(const ConstituencyNode&) const = default;
};

// Ids of tokens whose yield is not a contiguous interval; empty for
// projective sentences.
std::vector<int> check_projectivity(const DepSentence& sent);

struct NonProjectiveError : Error {
    NonProjectiveError(int token_id, const std::vector<int>& yield_ids);
    int token_id;
};

// Requires a valid, dummy-free, projective sentence; throws
// NonProjectiveError (naming the offending token and its discontiguous
// yield) or Error when dummies are present.
ConstituencyNode dep_to_const(const DepSentence& sent);

// Single-line PTB-style bracketing; "(" / ")" in leaf forms are escaped
// as -LRB- / -RRB-.
std::string write_bracketed(const ConstituencyNode& node);

}  // namespace depproj

#endif  // DEPPROJ_CONSTITUENCY_HPP
