#include "depproj/conllu.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace depproj {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            break;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

bool all_digits(const std::string& s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](unsigned char c) { return c >= '0' && c <= '9'; });
}

// Plain UTF-8 well-formedness scan: continuation bytes, overlongs,
// surrogates, and the 0x10FFFF ceiling.
bool valid_utf8(const std::string& s) {
    const auto* p = reinterpret_cast<const unsigned char*>(s.data());
    std::size_t n = s.size();
    std::size_t i = 0;
    while (i < n) {
        unsigned char c = p[i];
        if (c < 0x80) {
            ++i;
        } else if ((c & 0xE0) == 0xC0) {
            if (i + 1 >= n || (p[i + 1] & 0xC0) != 0x80) return false;
            if (c < 0xC2) return false;  // overlong
            i += 2;
        } else if ((c & 0xF0) == 0xE0) {
            if (i + 2 >= n || (p[i + 1] & 0xC0) != 0x80 || (p[i + 2] & 0xC0) != 0x80) return false;
            if (c == 0xE0 && p[i + 1] < 0xA0) return false;  // overlong
            if (c == 0xED && p[i + 1] >= 0xA0) return false;  // surrogate
            i += 3;
        } else if ((c & 0xF8) == 0xF0) {
            if (i + 3 >= n || (p[i + 1] & 0xC0) != 0x80 || (p[i + 2] & 0xC0) != 0x80 ||
                (p[i + 3] & 0xC0) != 0x80)
                return false;
            if (c == 0xF0 && p[i + 1] < 0x90) return false;  // overlong
            if (c > 0xF4 || (c == 0xF4 && p[i + 1] >= 0x90)) return false;  // > U+10FFFF
            i += 4;
        } else {
            return false;
        }
    }
    return true;
}

std::vector<Feat> parse_feats(const std::string& column, std::size_t line_no,
                              std::size_t sent_idx) {
    std::vector<Feat> feats;
    if (column == "_" || column.empty()) return feats;
    for (const std::string& part : split(column, '|')) {
        std::size_t eq = part.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ParseError("malformed FEATS entry '" + part + "'", line_no, sent_idx);
        feats.push_back({part.substr(0, eq), part.substr(eq + 1)});
    }
    std::sort(feats.begin(), feats.end(),
              [](const Feat& a, const Feat& b) { return a.key < b.key; });
    for (std::size_t i = 1; i < feats.size(); ++i)
        if (feats[i].key == feats[i - 1].key)
            throw ParseError("duplicate FEATS key '" + feats[i].key + "'", line_no, sent_idx);
    return feats;
}

// Pulls the Dummy=Yes entry out of MISC, leaving the rest behind.
void extract_dummy_flag(Token& tok) {
    if (tok.misc == "_" || tok.misc.empty()) return;
    std::vector<std::string> parts = split(tok.misc, '|');
    std::vector<std::string> kept;
    for (auto& part : parts) {
        if (part == kDummyMiscEntry)
            tok.is_dummy = true;
        else
            kept.push_back(part);
    }
    if (!tok.is_dummy) return;
    if (kept.empty()) {
        tok.misc = "_";
    } else {
        std::string joined = kept[0];
        for (std::size_t i = 1; i < kept.size(); ++i) joined += "|" + kept[i];
        tok.misc = joined;
    }
}

int parse_int_column(const std::string& s, const char* what, std::size_t line_no,
                     std::size_t sent_idx) {
    if (!all_digits(s) || s.size() > 9)
        throw ParseError(std::string("non-numeric ") + what + " '" + s + "'", line_no, sent_idx);
    return std::stoi(s);
}

struct PendingSentence {
    DepSentence sent;
    std::vector<std::size_t> token_lines;  // source line of each token
    std::size_t first_line = 0;
};

void finalize_sentence(PendingSentence& pending, Treebank& tb, std::size_t sent_idx,
                       const ParseOptions& opts) {
    if (pending.sent.tokens.empty())
        throw ParseError("comment block without any token lines", pending.first_line, sent_idx);
    if (opts.check_tree) {
        const std::vector<Violation> violations = validate(pending.sent);
        if (!violations.empty()) {
            const Violation& v = violations.front();
            std::size_t line = pending.first_line;
            if (v.token_id >= 1 &&
                static_cast<std::size_t>(v.token_id) <= pending.token_lines.size())
                line = pending.token_lines[static_cast<std::size_t>(v.token_id) - 1];
            throw ParseError(v.message, line, sent_idx);
        }
    }
    tb.sentences.push_back(std::move(pending.sent));
    pending = PendingSentence{};
}

}  // namespace

std::vector<Violation> validate(const DepSentence& sent) {
    std::vector<Violation> out;
    const int n = static_cast<int>(sent.size());

    bool ids_ok = true;
    for (int i = 0; i < n; ++i) {
        const Token& tok = sent.tokens[static_cast<std::size_t>(i)];
        if (tok.id != i + 1) {
            out.push_back({tok.id, "id-sequence",
                           "token id " + std::to_string(tok.id) + " out of sequence (expected " +
                               std::to_string(i + 1) + ")"});
            ids_ok = false;
        }
    }

    bool heads_in_range = true;
    int roots = 0;
    for (const Token& tok : sent.tokens) {
        if (tok.head == 0) {
            ++roots;
            continue;
        }
        if (tok.head < 0 || tok.head > n) {
            out.push_back({tok.id, "head-range",
                           "head " + std::to_string(tok.head) + " of token " +
                               std::to_string(tok.id) + " is not a token id"});
            heads_in_range = false;
        } else if (tok.head == tok.id) {
            out.push_back({tok.id, "self-loop", "self-loop"});
        }
    }

    // Cycle detection needs sane ids and in-range heads; direct self-loops
    // are already reported above.
    if (ids_ok && heads_in_range) {
        for (const Token& tok : sent.tokens) {
            if (tok.head == tok.id) continue;
            int cursor = tok.id;
            int steps = 0;
            while (cursor != 0 && steps <= n) {
                cursor = sent.token(cursor).head;
                ++steps;
            }
            if (cursor != 0) {
                out.push_back({tok.id, "cycle",
                               "cycle in head chain starting at token " + std::to_string(tok.id)});
                break;
            }
        }
    }

    if (n > 0 && roots == 0)
        out.push_back({0, "no-root", "no token with head 0"});
    if (roots > 1)
        out.push_back({0, "multiple-roots",
                       std::to_string(roots) + " tokens with head 0 (expected exactly one)"});
    return out;
}

Treebank parse_conllu(std::istream& in, const ParseOptions& opts) {
    Treebank tb;
    PendingSentence pending;
    std::string line;
    std::size_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!valid_utf8(line))
            throw ParseError("invalid UTF-8 byte sequence", line_no, tb.size());

        if (line.empty()) {
            if (!pending.sent.tokens.empty() || !pending.sent.comments.empty())
                finalize_sentence(pending, tb, tb.size(), opts);
            continue;
        }

        if (pending.sent.tokens.empty() && pending.sent.comments.empty())
            pending.first_line = line_no;

        if (line[0] == '#') {
            if (!pending.sent.tokens.empty())
                throw ParseError("comment line inside a token block", line_no, tb.size());
            pending.sent.comments.push_back(line);
            if (std::string id = sent_id_from_comment(line); !id.empty())
                pending.sent.sent_id = id;
            continue;
        }

        const std::vector<std::string> cols = split(line, '\t');
        if (cols.size() != 10)
            throw ParseError("expected 10 tab-separated columns, got " +
                                 std::to_string(cols.size()),
                             line_no, tb.size());

        const std::string& id_col = cols[0];
        if (id_col.find('-') != std::string::npos)
            throw ParseError("multiword token range '" + id_col + "' not supported", line_no,
                             tb.size());
        if (id_col.find('.') != std::string::npos)
            throw ParseError("empty node id '" + id_col + "' not supported", line_no, tb.size());

        Token tok;
        tok.id = parse_int_column(id_col, "id", line_no, tb.size());
        const int expected = static_cast<int>(pending.sent.tokens.size()) + 1;
        if (tok.id != expected)
            throw ParseError("token id " + std::to_string(tok.id) + " out of sequence (expected " +
                                 std::to_string(expected) + ")",
                             line_no, tb.size());
        tok.form = cols[1];
        tok.lemma = cols[2];
        tok.upos = cols[3];
        tok.xpos = cols[4];
        tok.feats = parse_feats(cols[5], line_no, tb.size());
        tok.head = parse_int_column(cols[6], "head", line_no, tb.size());
        tok.deprel = cols[7];
        tok.deps = cols[8];
        tok.misc = cols[9];
        extract_dummy_flag(tok);

        pending.sent.tokens.push_back(std::move(tok));
        pending.token_lines.push_back(line_no);
    }

    if (!pending.sent.tokens.empty() || !pending.sent.comments.empty())
        finalize_sentence(pending, tb, tb.size(), opts);
    return tb;
}

Treebank parse_conllu_string(const std::string& text, const ParseOptions& opts) {
    std::istringstream in(text);
    return parse_conllu(in, opts);
}

std::string feats_to_string(const std::vector<Feat>& feats) {
    if (feats.empty()) return "_";
    std::string out;
    for (std::size_t i = 0; i < feats.size(); ++i) {
        if (i) out += '|';
        out += feats[i].key;
        out += '=';
        out += feats[i].value;
    }
    return out;
}

namespace {

std::string misc_to_string(const Token& tok) {
    if (!tok.is_dummy) return tok.misc.empty() ? "_" : tok.misc;
    if (tok.misc.empty() || tok.misc == "_") return kDummyMiscEntry;
    return tok.misc + "|" + kDummyMiscEntry;
}

const std::string& or_underscore(const std::string& s) {
    static const std::string underscore = "_";
    return s.empty() ? underscore : s;
}

}  // namespace

void write_conllu(const Treebank& tb, std::ostream& out) {
    for (const DepSentence& sent : tb.sentences) {
        for (const std::string& comment : sent.comments) out << comment << '\n';
        for (const Token& tok : sent.tokens) {
            out << tok.id << '\t' << or_underscore(tok.form) << '\t' << or_underscore(tok.lemma)
                << '\t' << or_underscore(tok.upos) << '\t' << or_underscore(tok.xpos) << '\t'
                << feats_to_string(tok.feats) << '\t' << tok.head << '\t'
                << or_underscore(tok.deprel) << '\t' << or_underscore(tok.deps) << '\t'
                << misc_to_string(tok) << '\n';
        }
        out << '\n';
    }
}

std::string write_conllu_string(const Treebank& tb) {
    std::ostringstream out;
    write_conllu(tb, out);
    return out.str();
}

Treebank load_conllu(const std::string& path, const ParseOptions& opts) {
    if (path == "-") return parse_conllu(std::cin, opts);
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return parse_conllu(in, opts);
}

void save_conllu(const Treebank& tb, const std::string& path) {
    if (path == "-") {
        write_conllu(tb, std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    write_conllu(tb, out);
    if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace depproj
