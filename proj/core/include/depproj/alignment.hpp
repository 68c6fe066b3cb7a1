#ifndef DEPPROJ_ALIGNMENT_HPP
#define DEPPROJ_ALIGNMENT_HPP

#include <compare>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "depproj/errors.hpp"

namespace depproj {

// One word-alignment link. Indices are 1-based in memory (matching token
// ids); the on-disk Pharaoh format is 0-based.
struct AlignLink {
    int src = 0;
    int tgt = 0;

    auto operator<=>(const AlignLink&) const = default;
};

// The link set for one sentence pair. Links are kept sorted and unique.
struct SentenceAlignment {
    std::vector<AlignLink> links;

    bool operator==(const SentenceAlignment&) const = default;

    void add(int src, int tgt);
    bool empty() const { return links.empty(); }
    std::size_t size() const { return links.size(); }
};

// Per-index breakdown of a link set into the cases projection dispatches
// on. Every source and target index lands in exactly one class, either as
// a link member or as unaligned. Many-to-many groups (connected link
// components with fan-out above one on both sides) are decomposed first:
// each target in such a group keeps only its positionally closest source
// link (minimum |src - tgt|, ties to the smaller source index).
struct LinkClassification {
    std::vector<AlignLink> one_to_one;
    std::map<int, std::vector<int>> one_to_many;  // src -> targets, ascending
    std::map<int, std::vector<int>> many_to_one;  // tgt -> sources, ascending
    std::vector<int> unaligned_src;
    std::vector<int> unaligned_tgt;

    bool operator==(const LinkClassification&) const = default;
};

// Parses one Pharaoh line ("0-0 1-2 ...", whitespace separated, source
// index first, 0-based) into a 1-based link set. Throws ParseError on
// malformed pairs or indices outside [0, src_len) x [0, tgt_len); the
// reported line number is `line_no`.
SentenceAlignment parse_alignment_line(std::string_view line, int src_len, int tgt_len,
                                       std::size_t line_no = 0);

LinkClassification classify(const SentenceAlignment& a, int src_len, int tgt_len);

// Reads a whole alignment file, one line per sentence pair, without range
// checks (lengths are only known once paired with the parallel text).
std::vector<std::string> read_lines(std::istream& in);

// Splits a line of space-separated tokens; empty lines give empty
// sentences.
std::vector<std::string> split_tokens(std::string_view line);

// Reads a tokenized text file, one sentence per line.
std::vector<std::vector<std::string>> read_token_lines(std::istream& in);

}  // namespace depproj

#endif  // DEPPROJ_ALIGNMENT_HPP
