#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "depproj/conllu.hpp"
#include "depproj/overlay.hpp"
#include "testutil.hpp"

using namespace depproj;

namespace {

Treebank one_sentence(DepSentence sent) {
    Treebank tb;
    tb.sentences.push_back(std::move(sent));
    return tb;
}

// tagged counterpart: same forms as the non-dummy tokens, trivial tree,
// fresh annotation
Treebank retag(const Treebank& projected, testutil::Rng& rng) {
    Treebank tagged;
    for (const DepSentence& sent : projected.sentences) {
        DepSentence out;
        int id = 0;
        for (const Token& tok : sent.tokens) {
            if (tok.is_dummy) continue;
            Token t;
            t.id = ++id;
            t.form = tok.form;
            t.head = t.id == 1 ? 0 : 1;
            t.deprel = t.id == 1 ? "root" : "dep";
            t.upos = testutil::upos_pool()[static_cast<std::size_t>(
                testutil::rand_int(rng, 0, static_cast<int>(testutil::upos_pool().size()) - 1))];
            t.lemma = "tag" + std::to_string(id);
            if (testutil::rand_int(rng, 0, 1)) t.feats.push_back({"Gender", "Com"});
            out.tokens.push_back(std::move(t));
        }
        tagged.sentences.push_back(std::move(out));
    }
    return tagged;
}

}  // namespace

TEST_CASE("overlaying a treebank with itself changes nothing") {
    testutil::Rng rng(1);
    Treebank tb;
    for (int i = 0; i < 5; ++i)
        tb.sentences.push_back(testutil::random_sentence(testutil::rand_int(rng, 1, 6), rng));
    for (OverlayMode mode : {OverlayMode::morph_only, OverlayMode::pos_and_morph}) {
        OverlayOptions opts;
        opts.mode = mode;
        CHECK(overlay_tags(tb, tb, opts) == tb);
    }
}

TEST_CASE("mode semantics on a contradicting tag") {
    DepSentence projected = testutil::sentence_from_heads({0}, {"root"});
    projected.token(1).upos = "VERB";
    DepSentence tagged = projected;
    tagged.token(1).upos = "NOUN";
    tagged.token(1).feats = {{"Case", "Nom"}};
    tagged.token(1).lemma = "noun-lemma";

    OverlayOptions opts;
    SUBCASE("morph keeps the projected UPOS") {
        opts.mode = OverlayMode::morph_only;
        const Treebank out = overlay_tags(one_sentence(projected), one_sentence(tagged), opts);
        CHECK(out.sentences[0].token(1).upos == "VERB");
        CHECK(feats_to_string(out.sentences[0].token(1).feats) == "Case=Nom");
        CHECK(out.sentences[0].token(1).lemma == "noun-lemma");
    }
    SUBCASE("pos+morph overrides it") {
        opts.mode = OverlayMode::pos_and_morph;
        const Treebank out = overlay_tags(one_sentence(projected), one_sentence(tagged), opts);
        CHECK(out.sentences[0].token(1).upos == "NOUN");
        CHECK(feats_to_string(out.sentences[0].token(1).feats) == "Case=Nom");
    }
}

TEST_CASE("dummies are skipped when pairing and stay untouched") {
    DepSentence projected = testutil::sentence_from_heads({0, 1, 1}, {"root", "dummy", "dummy"});
    projected.token(1).is_dummy = true;
    projected.token(1).form = kDummyForm;
    projected.token(1).upos = "X";
    projected.token(2).form = "a";
    projected.token(3).form = "b";

    DepSentence tagged;
    for (int i = 1; i <= 2; ++i) {
        Token t;
        t.id = i;
        t.form = i == 1 ? "a" : "b";
        t.upos = "NOUN";
        t.head = i == 1 ? 0 : 1;
        t.deprel = i == 1 ? "root" : "dep";
        tagged.tokens.push_back(std::move(t));
    }

    OverlayOptions opts;
    opts.mode = OverlayMode::pos_and_morph;
    const Treebank out = overlay_tags(one_sentence(projected), one_sentence(tagged), opts);
    CHECK(out.sentences[0].token(1).upos == "X");  // dummy untouched
    CHECK(out.sentences[0].token(2).upos == "NOUN");
    CHECK(out.sentences[0].token(3).upos == "NOUN");

    SUBCASE("drop_dummy_sentences removes the sentence afterwards") {
        opts.drop_dummy_sentences = true;
        OverlayReport report;
        const Treebank dropped =
            overlay_tags(one_sentence(projected), one_sentence(tagged), opts, &report);
        CHECK(dropped.empty());
        CHECK(report.dummy_dropped == 1);
    }
}

TEST_CASE("mismatches raise, or pass through under lenient") {
    const Treebank projected = one_sentence(testutil::sentence_from_heads({0, 1}));
    Treebank bad_count = one_sentence(testutil::sentence_from_heads({0}));
    Treebank bad_form = projected;
    bad_form.sentences[0].token(1).form = "different";

    OverlayOptions opts;
    CHECK_THROWS_AS(overlay_tags(projected, bad_count, opts), Error);
    CHECK_THROWS_AS(overlay_tags(projected, bad_form, opts), Error);
    CHECK_THROWS_AS(overlay_tags(projected, Treebank{}, opts), Error);  // sentence count

    opts.lenient = true;
    OverlayReport report;
    const Treebank out = overlay_tags(projected, bad_form, opts, &report);
    CHECK(out == projected);  // passed through untouched
    CHECK(report.mismatched == 1);
    CHECK(report.warnings.size() == 1);
}

TEST_CASE("overlay never alters the tree and morph preserves the UPOS multiset") {
    testutil::Rng rng(77);
    for (int iter = 0; iter < 300; ++iter) {
        Treebank projected;
        for (int s = 0; s < 3; ++s) {
            DepSentence sent = testutil::random_sentence(testutil::rand_int(rng, 2, 8), rng);
            if (testutil::rand_int(rng, 0, 1)) testutil::mark_random_dummies(sent, rng);
            projected.sentences.push_back(std::move(sent));
        }
        const Treebank tagged = retag(projected, rng);

        for (OverlayMode mode : {OverlayMode::morph_only, OverlayMode::pos_and_morph}) {
            OverlayOptions opts;
            opts.mode = mode;
            const Treebank out = overlay_tags(projected, tagged, opts);
            REQUIRE(out.size() == projected.size());
            std::multiset<std::string> upos_before, upos_after;
            for (std::size_t s = 0; s < out.size(); ++s) {
                const DepSentence& a = projected.sentences[s];
                const DepSentence& b = out.sentences[s];
                REQUIRE(a.size() == b.size());
                std::size_t tag_pos = 0;
                for (std::size_t k = 0; k < a.size(); ++k) {
                    CHECK(a.tokens[k].head == b.tokens[k].head);
                    CHECK(a.tokens[k].deprel == b.tokens[k].deprel);
                    upos_before.insert(a.tokens[k].upos);
                    upos_after.insert(b.tokens[k].upos);
                    if (mode == OverlayMode::pos_and_morph && !a.tokens[k].is_dummy) {
                        CHECK(b.tokens[k].upos ==
                              tagged.sentences[s].tokens[tag_pos].upos);
                    }
                    if (!a.tokens[k].is_dummy) ++tag_pos;
                }
            }
            if (mode == OverlayMode::morph_only) CHECK(upos_before == upos_after);
        }
    }
}

TEST_CASE("delexicalize blanks forms and lemmas, nothing else") {
    testutil::Rng rng(5);
    Treebank tb;
    std::uint64_t tokens = 0;
    for (int s = 0; s < 1000; ++s) {
        tb.sentences.push_back(testutil::random_sentence(testutil::rand_int(rng, 1, 6), rng));
        tokens += tb.sentences.back().size();
    }
    const Treebank out = delexicalize(tb);
    REQUIRE(out.size() == tb.size());
    std::uint64_t out_tokens = 0;
    for (std::size_t s = 0; s < out.size(); ++s) {
        out_tokens += out.sentences[s].size();
        for (std::size_t k = 0; k < out.sentences[s].size(); ++k) {
            const Token& a = tb.sentences[s].tokens[k];
            const Token& b = out.sentences[s].tokens[k];
            CHECK(b.form == "_");
            CHECK(b.lemma == "_");
            CHECK(b.head == a.head);
            CHECK(b.deprel == a.deprel);
            CHECK(b.upos == a.upos);
            CHECK(b.feats == a.feats);
        }
    }
    CHECK(out_tokens == tokens);
    CHECK(delexicalize(out) == out);  // idempotent
}

TEST_CASE("delex and overlay commute on the tree columns") {
    testutil::Rng rng(6);
    Treebank projected;
    for (int s = 0; s < 4; ++s)
        projected.sentences.push_back(testutil::random_sentence(5, rng));
    const Treebank tagged = retag(projected, rng);
    OverlayOptions opts;
    opts.mode = OverlayMode::pos_and_morph;

    const Treebank a = delexicalize(overlay_tags(projected, tagged, opts));
    // overlaying after delex needs lenient pairing (forms were blanked)
    opts.lenient = true;
    const Treebank b = overlay_tags(delexicalize(projected), tagged, opts);
    REQUIRE(a.size() == b.size());
    for (std::size_t s = 0; s < a.size(); ++s)
        for (std::size_t k = 0; k < a.sentences[s].size(); ++k) {
            CHECK(a.sentences[s].tokens[k].head == b.sentences[s].tokens[k].head);
            CHECK(a.sentences[s].tokens[k].deprel == b.sentences[s].tokens[k].deprel);
        }
}

TEST_CASE("concat keeps order and disambiguates colliding sent_ids") {
    DepSentence s1 = testutil::sentence_from_heads({0});
    s1.set_sent_id("s1");
    DepSentence s2 = testutil::sentence_from_heads({0, 1});
    s2.set_sent_id("s2");
    Treebank a;
    a.sentences = {s1, s2};

    SUBCASE("single part is returned as-is") {
        CHECK(concat_treebanks({a}) == a);
    }
    SUBCASE("two parts concatenate in order") {
        DepSentence s3 = testutil::sentence_from_heads({0});
        s3.set_sent_id("s3");
        Treebank b;
        b.sentences = {s3, s1, s2};
        const Treebank out = concat_treebanks({a, b});
        REQUIRE(out.size() == 5);
        CHECK(out.sentences[0].sent_id == "p0-s1");  // collides with part 1
        CHECK(out.sentences[1].sent_id == "p0-s2");
        CHECK(out.sentences[2].sent_id == "s3");
        CHECK(out.sentences[3].sent_id == "p1-s1");
        CHECK(out.sentences[4].sent_id == "p1-s2");
        // comments follow the rename
        CHECK(out.sentences[0].comments[0] == "# sent_id = p0-s1");
    }
    SUBCASE("spec example: s1 in both parts becomes p0-s1 and p1-s1") {
        Treebank left, right;
        left.sentences = {s1};
        right.sentences = {s1};
        const Treebank out = concat_treebanks({left, right});
        REQUIRE(out.size() == 2);
        CHECK(out.sentences[0].sent_id == "p0-s1");
        CHECK(out.sentences[1].sent_id == "p1-s1");
    }
}
