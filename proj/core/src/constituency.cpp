#include "depproj/constituency.hpp"

#include <algorithm>

namespace depproj {

std::vector<int> check_projectivity(const DepSentence& sent) {
    const auto yields = yield_intervals(sent);
    const auto sizes = subtree_sizes(sent);
    std::vector<int> out;
    for (const Token& tok : sent.tokens) {
        const auto [lo, hi] = yields[static_cast<std::size_t>(tok.id) - 1];
        if (hi - lo + 1 != sizes[static_cast<std::size_t>(tok.id) - 1]) out.push_back(tok.id);
    }
    return out;
}

namespace {

std::vector<int> yield_ids(const DepSentence& sent, int id) {
    const auto children = children_table(sent);
    std::vector<int> out;
    std::vector<int> stack{id};
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        out.push_back(v);
        for (int c : children[static_cast<std::size_t>(v)]) stack.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string join_ids(const std::vector<int>& ids) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(ids[i]);
    }
    return out;
}

ConstituencyNode build(const DepSentence& sent, const std::vector<std::vector<int>>& children,
                       const std::vector<std::pair<int, int>>& yields, int id) {
    const Token& tok = sent.token(id);
    ConstituencyNode node;
    node.label = tok.deprel;
    node.span_begin = yields[static_cast<std::size_t>(id) - 1].first;
    node.span_end = yields[static_cast<std::size_t>(id) - 1].second;

    ConstituencyNode leaf;
    leaf.label = tok.upos;
    leaf.leaf_form = tok.form;
    leaf.span_begin = leaf.span_end = id;

    for (int c : children[static_cast<std::size_t>(id)])
        node.children.push_back(build(sent, children, yields, c));
    node.children.push_back(std::move(leaf));
    std::sort(node.children.begin(), node.children.end(),
              [](const ConstituencyNode& a, const ConstituencyNode& b) {
                  return a.span_begin < b.span_begin;
              });
    return node;
}

std::string escape_form(const std::string& form) {
    if (form.find('(') == std::string::npos && form.find(')') == std::string::npos) return form;
    std::string out;
    for (char c : form) {
        if (c == '(')
            out += "-LRB-";
        else if (c == ')')
            out += "-RRB-";
        else
            out += c;
    }
    return out;
}

void write_node(const ConstituencyNode& node, std::string& out) {
    out += '(';
    out += node.label;
    if (node.is_leaf()) {
        out += ' ';
        out += escape_form(node.leaf_form);
    } else {
        for (const ConstituencyNode& child : node.children) {
            out += ' ';
            write_node(child, out);
        }
    }
    out += ')';
}

}  // namespace

NonProjectiveError::NonProjectiveError(int id, const std::vector<int>& yield)
    : Error("non-projective: token " + std::to_string(id) + " has discontiguous yield {" +
            join_ids(yield) + "}"),
      token_id(id) {}

ConstituencyNode dep_to_const(const DepSentence& sent) {
    if (sent.empty()) throw Error("cannot convert an empty sentence");
    if (has_dummy_tokens(sent)) throw Error("cannot convert a sentence with dummy tokens");
    const std::vector<int> nonproj = check_projectivity(sent);
    if (!nonproj.empty())
        throw NonProjectiveError(nonproj.front(), yield_ids(sent, nonproj.front()));

    return build(sent, children_table(sent), yield_intervals(sent), root_id(sent));
}

std::string write_bracketed(const ConstituencyNode& node) {
    std::string out;
    write_node(node, out);
    return out;
}

}  // namespace depproj
