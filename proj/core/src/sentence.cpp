#include "depproj/sentence.hpp"

#include <algorithm>

namespace depproj {

namespace {

// Matches "# sent_id = ..." with optional whitespace slack.
bool is_sent_id_comment(const std::string& line, std::size_t* value_pos) {
    std::size_t i = 0;
    if (i >= line.size() || line[i] != '#') return false;
    ++i;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::string key = "sent_id";
    if (line.compare(i, key.size(), key) != 0) return false;
    i += key.size();
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size() || line[i] != '=') return false;
    ++i;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (value_pos) *value_pos = i;
    return true;
}

}  // namespace

void DepSentence::set_sent_id(const std::string& new_id) {
    sent_id = new_id;
    for (auto& line : comments) {
        if (is_sent_id_comment(line, nullptr)) {
            line = "# sent_id = " + new_id;
            return;
        }
    }
    comments.insert(comments.begin(), "# sent_id = " + new_id);
}

std::string sent_id_from_comment(const std::string& line) {
    std::size_t pos = 0;
    if (!is_sent_id_comment(line, &pos)) return {};
    std::string value = line.substr(pos);
    while (!value.empty() && (value.back() == ' ' || value.back() == '\t' || value.back() == '\r'))
        value.pop_back();
    return value;
}

std::vector<std::vector<int>> children_table(const DepSentence& sent) {
    std::vector<std::vector<int>> children(sent.size() + 1);
    for (const Token& tok : sent.tokens)
        children[static_cast<std::size_t>(tok.head)].push_back(tok.id);
    return children;
}

int root_id(const DepSentence& sent) {
    for (const Token& tok : sent.tokens)
        if (tok.head == 0) return tok.id;
    return 0;
}

std::vector<int> token_depths(const DepSentence& sent) {
    const auto children = children_table(sent);
    std::vector<int> depth(sent.size(), 0);
    std::vector<std::pair<int, int>> stack;  // (id, depth)
    for (int child : children[0]) stack.emplace_back(child, 0);
    while (!stack.empty()) {
        auto [id, d] = stack.back();
        stack.pop_back();
        depth[static_cast<std::size_t>(id) - 1] = d;
        for (int child : children[static_cast<std::size_t>(id)])
            stack.emplace_back(child, d + 1);
    }
    return depth;
}

std::vector<std::pair<int, int>> yield_intervals(const DepSentence& sent) {
    const int n = static_cast<int>(sent.size());
    std::vector<std::pair<int, int>> yield(sent.size());
    for (int i = 0; i < n; ++i) yield[static_cast<std::size_t>(i)] = {i + 1, i + 1};
    // Process ids deepest-first so child intervals are final before the
    // parent folds them in.
    const auto depth = token_depths(sent);
    std::vector<int> order(sent.size());
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i + 1;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return depth[static_cast<std::size_t>(a) - 1] > depth[static_cast<std::size_t>(b) - 1];
    });
    for (int id : order) {
        const int h = sent.token(id).head;
        if (h == 0) continue;
        auto& own = yield[static_cast<std::size_t>(id) - 1];
        auto& parent = yield[static_cast<std::size_t>(h) - 1];
        parent.first = std::min(parent.first, own.first);
        parent.second = std::max(parent.second, own.second);
    }
    return yield;
}

std::vector<int> subtree_sizes(const DepSentence& sent) {
    const auto depth = token_depths(sent);
    const int n = static_cast<int>(sent.size());
    std::vector<int> size(sent.size(), 1);
    std::vector<int> order(sent.size());
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i + 1;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return depth[static_cast<std::size_t>(a) - 1] > depth[static_cast<std::size_t>(b) - 1];
    });
    for (int id : order) {
        const int h = sent.token(id).head;
        if (h != 0) size[static_cast<std::size_t>(h) - 1] += size[static_cast<std::size_t>(id) - 1];
    }
    return size;
}

bool has_dummy_tokens(const DepSentence& sent) {
    return std::any_of(sent.tokens.begin(), sent.tokens.end(),
                       [](const Token& t) { return t.is_dummy; });
}

}  // namespace depproj
