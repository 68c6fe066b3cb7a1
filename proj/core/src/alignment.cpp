#include "depproj/alignment.hpp"

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <numeric>

namespace depproj {

void SentenceAlignment::add(int src, int tgt) {
    AlignLink link{src, tgt};
    auto it = std::lower_bound(links.begin(), links.end(), link);
    if (it == links.end() || *it != link) links.insert(it, link);
}

SentenceAlignment parse_alignment_line(std::string_view line, int src_len, int tgt_len,
                                       std::size_t line_no) {
    SentenceAlignment a;
    std::size_t i = 0;
    const std::size_t n = line.size();
    while (i < n) {
        while (i < n && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i >= n) break;
        std::size_t start = i;
        while (i < n && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        const std::string_view pair = line.substr(start, i - start);

        const std::size_t dash = pair.find('-');
        if (dash == std::string_view::npos || dash == 0 || dash + 1 >= pair.size())
            throw ParseError("malformed alignment pair '" + std::string(pair) + "'", line_no);
        int src = 0, tgt = 0;
        for (char c : pair.substr(0, dash)) {
            if (c < '0' || c > '9')
                throw ParseError("malformed alignment pair '" + std::string(pair) + "'", line_no);
            src = src * 10 + (c - '0');
            if (src > 1'000'000)
                throw ParseError("alignment index out of range in '" + std::string(pair) + "'",
                                 line_no);
        }
        for (char c : pair.substr(dash + 1)) {
            if (c < '0' || c > '9')
                throw ParseError("malformed alignment pair '" + std::string(pair) + "'", line_no);
            tgt = tgt * 10 + (c - '0');
            if (tgt > 1'000'000)
                throw ParseError("alignment index out of range in '" + std::string(pair) + "'",
                                 line_no);
        }
        if (src >= src_len || tgt >= tgt_len)
            throw ParseError("alignment pair '" + std::string(pair) +
                                 "' out of range for sentence lengths " + std::to_string(src_len) +
                                 "/" + std::to_string(tgt_len),
                             line_no);
        a.add(src + 1, tgt + 1);
    }
    return a;
}

namespace {

// Union-find over source indices 1..src_len and target indices mapped to
// src_len+1..src_len+tgt_len.
struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void merge(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

// Decomposes many-to-many groups: inside any connected link component
// with fan-out > 1 on both sides, each target keeps only its closest
// source link.
std::vector<AlignLink> decompose_many_to_many(const std::vector<AlignLink>& links, int src_len,
                                              int tgt_len) {
    std::vector<int> src_fanout(static_cast<std::size_t>(src_len) + 1, 0);
    std::vector<int> tgt_fanin(static_cast<std::size_t>(tgt_len) + 1, 0);
    for (const AlignLink& l : links) {
        ++src_fanout[static_cast<std::size_t>(l.src)];
        ++tgt_fanin[static_cast<std::size_t>(l.tgt)];
    }

    UnionFind uf(src_len + tgt_len + 1);
    const auto tgt_node = [src_len](int tgt) { return src_len + tgt; };
    for (const AlignLink& l : links) uf.merge(l.src, tgt_node(l.tgt));

    // A component is many-to-many iff it contains a source with fan-out
    // > 1 and a target with fan-in > 1.
    std::vector<char> comp_src_multi(static_cast<std::size_t>(src_len + tgt_len + 1), 0);
    std::vector<char> comp_tgt_multi(static_cast<std::size_t>(src_len + tgt_len + 1), 0);
    for (const AlignLink& l : links) {
        const int root = uf.find(l.src);
        if (src_fanout[static_cast<std::size_t>(l.src)] > 1)
            comp_src_multi[static_cast<std::size_t>(root)] = 1;
        if (tgt_fanin[static_cast<std::size_t>(l.tgt)] > 1)
            comp_tgt_multi[static_cast<std::size_t>(root)] = 1;
    }

    std::vector<AlignLink> kept;
    kept.reserve(links.size());
    // For targets inside many-to-many components: closest source wins,
    // ties to the smaller source index. Links are sorted, so the first
    // minimum encountered is the smallest source index.
    std::vector<int> best_src(static_cast<std::size_t>(tgt_len) + 1, 0);
    for (const AlignLink& l : links) {
        const int root = uf.find(l.src);
        if (!(comp_src_multi[static_cast<std::size_t>(root)] &&
              comp_tgt_multi[static_cast<std::size_t>(root)]))
            continue;
        int& best = best_src[static_cast<std::size_t>(l.tgt)];
        if (best == 0 || std::abs(l.src - l.tgt) < std::abs(best - l.tgt)) best = l.src;
    }
    for (const AlignLink& l : links) {
        const int root = uf.find(l.src);
        const bool in_mm = comp_src_multi[static_cast<std::size_t>(root)] &&
                           comp_tgt_multi[static_cast<std::size_t>(root)];
        if (!in_mm || best_src[static_cast<std::size_t>(l.tgt)] == l.src) kept.push_back(l);
    }
    return kept;
}

}  // namespace

LinkClassification classify(const SentenceAlignment& a, int src_len, int tgt_len) {
    const std::vector<AlignLink> links = decompose_many_to_many(a.links, src_len, tgt_len);

    std::vector<std::vector<int>> by_src(static_cast<std::size_t>(src_len) + 1);
    std::vector<std::vector<int>> by_tgt(static_cast<std::size_t>(tgt_len) + 1);
    for (const AlignLink& l : links) {
        by_src[static_cast<std::size_t>(l.src)].push_back(l.tgt);
        by_tgt[static_cast<std::size_t>(l.tgt)].push_back(l.src);
    }

    LinkClassification out;
    for (const AlignLink& l : links) {
        const std::size_t fanout = by_src[static_cast<std::size_t>(l.src)].size();
        const std::size_t fanin = by_tgt[static_cast<std::size_t>(l.tgt)].size();
        if (fanout == 1 && fanin == 1) out.one_to_one.push_back(l);
    }
    for (int s = 1; s <= src_len; ++s) {
        auto& tgts = by_src[static_cast<std::size_t>(s)];
        if (tgts.empty())
            out.unaligned_src.push_back(s);
        else if (tgts.size() > 1)
            out.one_to_many[s] = tgts;  // already ascending (links sorted)
    }
    for (int t = 1; t <= tgt_len; ++t) {
        auto& srcs = by_tgt[static_cast<std::size_t>(t)];
        if (srcs.empty()) {
            out.unaligned_tgt.push_back(t);
        } else if (srcs.size() > 1) {
            std::sort(srcs.begin(), srcs.end());
            out.many_to_one[t] = srcs;
        }
    }
    return out;
}

std::vector<std::string> read_lines(std::istream& in) {
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        out.push_back(line);
    }
    return out;
}

std::vector<std::string> split_tokens(std::string_view line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i >= line.size()) break;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        out.emplace_back(line.substr(start, i - start));
    }
    return out;
}

std::vector<std::vector<std::string>> read_token_lines(std::istream& in) {
    std::vector<std::vector<std::string>> out;
    std::string line;
    while (std::getline(in, line)) out.push_back(split_tokens(line));
    return out;
}

}  // namespace depproj
