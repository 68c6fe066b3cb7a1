#include "depproj/projection.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <thread>

namespace depproj {

ProjectionStats& ProjectionStats::operator+=(const ProjectionStats& other) {
    sentences_in += other.sentences_in;
    sentences_out += other.sentences_out;
    dummies_created += other.dummies_created;
    dummies_collapsed += other.dummies_collapsed;
    discarded += other.discarded;
    empty_skipped += other.empty_skipped;
    return *this;
}

namespace {

constexpr int kRoot = -1;

struct ProjNode {
    int head = kRoot;        // node index, kRoot for the tree root
    std::string deprel;
    bool dummy = false;
    int src_id = 0;          // source token this node is the image of (0: none)
    int tgt_pos = 0;         // target position for real tokens (0: dummy)
};

// Surviving target list per source token: one-to-one and resolved
// many-to-one links give singletons, one-to-many keeps the full list,
// unaligned (including links dropped by the many-to-one rule) gives an
// empty list.
std::vector<std::vector<int>> surviving_targets(const DepSentence& src,
                                                const LinkClassification& cls) {
    std::vector<std::vector<int>> targets(src.size() + 1);
    for (const AlignLink& l : cls.one_to_one)
        targets[static_cast<std::size_t>(l.src)] = {l.tgt};
    for (const auto& [s, tgts] : cls.one_to_many)
        targets[static_cast<std::size_t>(s)] = tgts;

    const std::vector<int> depth = token_depths(src);
    for (const auto& [t, srcs] : cls.many_to_one) {
        // Keep the link from the source token closest to the root; the
        // list is ascending, so strict comparison keeps the leftmost on
        // depth ties.
        int winner = srcs.front();
        for (int s : srcs)
            if (depth[static_cast<std::size_t>(s) - 1] <
                depth[static_cast<std::size_t>(winner) - 1])
                winner = s;
        targets[static_cast<std::size_t>(winner)] = {t};
    }
    return targets;
}

}  // namespace

std::optional<DepSentence> project_sentence(const DepSentence& src,
                                            const std::vector<std::string>& tgt_forms,
                                            const SentenceAlignment& alignment,
                                            const ProjectionConfig& cfg, ProjectionStats* stats) {
    const int n_src = static_cast<int>(src.size());
    const int n_tgt = static_cast<int>(tgt_forms.size());
    if (n_tgt == 0) throw Error("cannot project onto an empty target sentence");
    if (n_src == 0) throw Error("cannot project an empty source sentence");
    for (const AlignLink& l : alignment.links)
        if (l.src < 1 || l.src > n_src || l.tgt < 1 || l.tgt > n_tgt)
            throw Error("alignment link " + std::to_string(l.src) + "-" + std::to_string(l.tgt) +
                        " out of range for sentence pair " + std::to_string(n_src) + "/" +
                        std::to_string(n_tgt));

    ProjectionStats local;
    local.sentences_in = 1;

    const LinkClassification cls = classify(alignment, n_src, n_tgt);
    const std::vector<std::vector<int>> targets = surviving_targets(src, cls);

    std::vector<ProjNode> nodes(static_cast<std::size_t>(n_tgt));
    for (int t = 1; t <= n_tgt; ++t) nodes[static_cast<std::size_t>(t) - 1].tgt_pos = t;

    // Image of every source token: the linked target node for singleton
    // lists, a fresh dummy node otherwise.
    std::vector<int> image(static_cast<std::size_t>(n_src) + 1, kRoot);
    for (int s = 1; s <= n_src; ++s) {
        const auto& tgts = targets[static_cast<std::size_t>(s)];
        if (tgts.size() == 1) {
            image[static_cast<std::size_t>(s)] = tgts.front() - 1;
            nodes[static_cast<std::size_t>(tgts.front()) - 1].src_id = s;
        } else {
            ProjNode dummy;
            dummy.dummy = true;
            dummy.src_id = s;
            image[static_cast<std::size_t>(s)] = static_cast<int>(nodes.size());
            nodes.push_back(std::move(dummy));
            for (int t : tgts) {
                nodes[static_cast<std::size_t>(t) - 1].head = image[static_cast<std::size_t>(s)];
                nodes[static_cast<std::size_t>(t) - 1].deprel = cfg.dummy_deprel;
                nodes[static_cast<std::size_t>(t) - 1].src_id = s;
            }
        }
    }

    // Project heads and deprels along source edges.
    for (int s = 1; s <= n_src; ++s) {
        const Token& src_tok = src.token(s);
        ProjNode& node = nodes[static_cast<std::size_t>(image[static_cast<std::size_t>(s)])];
        node.head = src_tok.head == 0 ? kRoot : image[static_cast<std::size_t>(src_tok.head)];
        node.deprel = src_tok.deprel;
    }

    // Attach unaligned target tokens.
    if (!cls.unaligned_tgt.empty()) {
        std::vector<int> aligned;
        for (int t = 1; t <= n_tgt; ++t)
            if (nodes[static_cast<std::size_t>(t) - 1].src_id != 0) aligned.push_back(t);
        const int root_node = image[static_cast<std::size_t>(root_id(src))];

        for (int u : cls.unaligned_tgt) {
            ProjNode& node = nodes[static_cast<std::size_t>(u) - 1];
            node.deprel = "dep";
            if (cfg.unaligned_target == UnalignedTargetPolicy::attach_root || aligned.empty()) {
                node.head = root_node;
                continue;
            }
            int nearest = aligned.front();
            for (int c : aligned)
                if (std::abs(c - u) < std::abs(nearest - u)) nearest = c;
            const int h = nodes[static_cast<std::size_t>(nearest) - 1].head;
            // Attaching to the head of the root token would create a
            // second root; hang off the root token itself instead.
            node.head = h == kRoot ? nearest - 1 : h;
        }
    }

    // Linear placement: a dummy goes immediately before the leftmost real
    // token of its subtree (sentence-final when it governs none),
    // ancestors first, then by source index.
    const std::size_t n_nodes = nodes.size();
    std::vector<std::vector<int>> node_children(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i)
        if (nodes[i].head != kRoot)
            node_children[static_cast<std::size_t>(nodes[i].head)].push_back(static_cast<int>(i));

    std::vector<int> node_depth(n_nodes, 0);
    {
        std::vector<int> stack;
        for (std::size_t i = 0; i < n_nodes; ++i)
            if (nodes[i].head == kRoot) stack.push_back(static_cast<int>(i));
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int c : node_children[static_cast<std::size_t>(v)]) {
                node_depth[static_cast<std::size_t>(c)] =
                    node_depth[static_cast<std::size_t>(v)] + 1;
                stack.push_back(c);
            }
        }
    }

    std::vector<std::size_t> order(n_nodes);
    {
        // sort key: (anchor position, dummy-before-token, depth, src id)
        std::vector<std::tuple<int, int, int, int>> key(n_nodes);
        for (std::size_t i = 0; i < n_nodes; ++i) {
            if (!nodes[i].dummy) {
                key[i] = {nodes[i].tgt_pos, 1, 0, 0};
                continue;
            }
            int anchor = n_tgt + 1;
            std::vector<int> stack{static_cast<int>(i)};
            while (!stack.empty()) {
                const int v = stack.back();
                stack.pop_back();
                if (!nodes[static_cast<std::size_t>(v)].dummy)
                    anchor = std::min(anchor, nodes[static_cast<std::size_t>(v)].tgt_pos);
                for (int c : node_children[static_cast<std::size_t>(v)]) stack.push_back(c);
            }
            key[i] = {anchor, 0, node_depth[i], nodes[i].src_id};
        }
        for (std::size_t i = 0; i < n_nodes; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
    }

    std::vector<int> new_id(n_nodes, 0);
    for (std::size_t rank = 0; rank < n_nodes; ++rank)
        new_id[order[rank]] = static_cast<int>(rank) + 1;

    DepSentence out;
    if (!src.sent_id.empty()) out.set_sent_id(src.sent_id);
    out.tokens.reserve(n_nodes);
    for (std::size_t rank = 0; rank < n_nodes; ++rank) {
        const ProjNode& node = nodes[order[rank]];
        Token tok;
        tok.id = static_cast<int>(rank) + 1;
        tok.head = node.head == kRoot ? 0 : new_id[static_cast<std::size_t>(node.head)];
        tok.deprel = node.deprel;
        if (node.dummy) {
            tok.is_dummy = true;
            tok.form = kDummyForm;
            tok.upos = "X";
            ++local.dummies_created;
        } else {
            tok.form = tgt_forms[static_cast<std::size_t>(node.tgt_pos) - 1];
            if (node.src_id != 0) {
                const Token& src_tok = src.token(node.src_id);
                tok.upos = src_tok.upos;
                tok.feats = src_tok.feats;
                tok.lemma = src_tok.lemma;
            }
        }
        out.tokens.push_back(std::move(tok));
    }

    if (cfg.mode != ProjectionMode::raw)
        out = collapse_dummy_rewrite(out, &local.dummies_collapsed);

    std::optional<DepSentence> result;
    if (cfg.mode == ProjectionMode::no_dummy && has_dummy_tokens(out)) {
        ++local.discarded;
    } else {
        ++local.sentences_out;
        result = std::move(out);
    }
    if (stats) *stats += local;
    return result;
}

DepSentence collapse_dummy_rewrite(const DepSentence& sent, std::uint64_t* collapsed) {
    if (sent.empty() || !has_dummy_tokens(sent)) return sent;
    if (std::all_of(sent.tokens.begin(), sent.tokens.end(),
                    [](const Token& t) { return t.is_dummy; }))
        throw Error("collapse requires at least one non-dummy token");

    const int n = static_cast<int>(sent.size());
    std::vector<int> head(static_cast<std::size_t>(n) + 1);
    std::vector<std::string> deprel(static_cast<std::size_t>(n) + 1);
    std::vector<char> alive(static_cast<std::size_t>(n) + 1, 1);
    for (const Token& tok : sent.tokens) {
        head[static_cast<std::size_t>(tok.id)] = tok.head;
        deprel[static_cast<std::size_t>(tok.id)] = tok.deprel;
    }

    const auto dependents_of = [&](int id) {
        std::vector<int> deps;
        for (int c = 1; c <= n; ++c)
            if (alive[static_cast<std::size_t>(c)] && head[static_cast<std::size_t>(c)] == id)
                deps.push_back(c);
        return deps;
    };

    std::uint64_t removed = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int id = 1; id <= n; ++id) {
            if (!alive[static_cast<std::size_t>(id)] ||
                !sent.token(id).is_dummy)
                continue;
            const std::vector<int> deps = dependents_of(id);
            if (deps.empty()) {
                alive[static_cast<std::size_t>(id)] = 0;
                ++removed;
                changed = true;
            } else if (deps.size() == 1) {
                const int child = deps.front();
                head[static_cast<std::size_t>(child)] = head[static_cast<std::size_t>(id)];
                deprel[static_cast<std::size_t>(child)] = deprel[static_cast<std::size_t>(id)];
                alive[static_cast<std::size_t>(id)] = 0;
                ++removed;
                changed = true;
            }
        }
    }

    std::vector<int> new_id(static_cast<std::size_t>(n) + 1, 0);
    int next = 0;
    for (int id = 1; id <= n; ++id)
        if (alive[static_cast<std::size_t>(id)]) new_id[static_cast<std::size_t>(id)] = ++next;

    DepSentence out;
    out.sent_id = sent.sent_id;
    out.comments = sent.comments;
    out.tokens.reserve(static_cast<std::size_t>(next));
    for (int id = 1; id <= n; ++id) {
        if (!alive[static_cast<std::size_t>(id)]) continue;
        Token tok = sent.token(id);
        tok.id = new_id[static_cast<std::size_t>(id)];
        const int h = head[static_cast<std::size_t>(id)];
        tok.head = h == 0 ? 0 : new_id[static_cast<std::size_t>(h)];
        tok.deprel = deprel[static_cast<std::size_t>(id)];
        out.tokens.push_back(std::move(tok));
    }
    if (collapsed) *collapsed += removed;
    return out;
}

namespace {

unsigned resolve_threads(unsigned threads) {
    if (threads != 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace

std::pair<Treebank, ProjectionStats> project_corpus(
    const Treebank& src, const std::vector<std::vector<std::string>>& tgt_text,
    const std::vector<SentenceAlignment>& alignments, const ProjectionConfig& cfg,
    unsigned threads) {
    if (src.size() != tgt_text.size() || src.size() != alignments.size())
        throw Error("parallel stream length mismatch: " + std::to_string(src.size()) +
                    " source sentences, " + std::to_string(tgt_text.size()) +
                    " target sentences, " + std::to_string(alignments.size()) +
                    " alignment lines");

    const std::size_t n = src.size();
    std::vector<std::optional<DepSentence>> results(n);
    std::vector<ProjectionStats> per_sentence(n);

    const auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            ProjectionStats& st = per_sentence[i];
            if (tgt_text[i].empty()) {
                st.sentences_in = 1;
                st.empty_skipped = 1;
                continue;
            }
            results[i] = project_sentence(src.sentences[i], tgt_text[i], alignments[i], cfg, &st);
        }
    };

    const unsigned want = std::min<unsigned>(resolve_threads(threads),
                                             static_cast<unsigned>(std::max<std::size_t>(n, 1)));
    if (want <= 1 || n < 2) {
        run_range(0, n);
    } else {
        std::vector<std::thread> workers;
        std::vector<std::exception_ptr> errors(want);
        const std::size_t chunk = (n + want - 1) / want;
        for (unsigned w = 0; w < want; ++w) {
            const std::size_t begin = std::min(n, static_cast<std::size_t>(w) * chunk);
            const std::size_t end = std::min(n, begin + chunk);
            workers.emplace_back([&, w, begin, end] {
                try {
                    run_range(begin, end);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& worker : workers) worker.join();
        for (const auto& err : errors)
            if (err) std::rethrow_exception(err);
    }

    Treebank out;
    ProjectionStats stats;
    for (std::size_t i = 0; i < n; ++i) {
        stats += per_sentence[i];
        if (results[i]) out.sentences.push_back(std::move(*results[i]));
    }
    return {std::move(out), stats};
}

ProjectionMode parse_projection_mode(const std::string& name) {
    if (name == "raw") return ProjectionMode::raw;
    if (name == "collapse") return ProjectionMode::collapse_dummy;
    if (name == "nodummy") return ProjectionMode::no_dummy;
    throw Error("unknown projection mode '" + name + "' (expected raw, collapse or nodummy)");
}

}  // namespace depproj
