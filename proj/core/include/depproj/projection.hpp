#ifndef DEPPROJ_PROJECTION_HPP
#define DEPPROJ_PROJECTION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "depproj/alignment.hpp"
#include "depproj/sentence.hpp"

namespace depproj {

// Projects source-language dependency trees onto target-language token
// sequences through word alignments.
//
// Every source token is given an image on the target side:
//   - a source token with exactly one surviving link projects onto the
//     linked target token, which receives the source head (via images)
//     and deprel;
//   - a source token linked to several target tokens projects onto an
//     inserted dummy node; the linked target tokens attach to the dummy
//     with the configured dummy deprel;
//   - an unaligned source token projects onto an inserted dummy node, so
//     its incoming relation and its dependents' attachments survive.
// Before that, a target token linked to several source tokens keeps only
// the link from the source token closest to the source root (ties go to
// the leftmost source token); the discarded links leave their source
// tokens unaligned. Unaligned target tokens are attached afterwards with
// deprel "dep" under the configured policy. Aligned target tokens copy
// UPOS, FEATS and LEMMA from their surviving source token; dummies carry
// UPOS "X" and the reserved surface form.
//
// Dummy nodes are placed immediately before the leftmost real token of
// their subtree (sentence-final when they govern none), ancestors first,
// and ids are renumbered in surface order.

enum class ProjectionMode {
    raw,            // keep dummy nodes as produced
    collapse_dummy, // additionally run collapse_dummy_rewrite
    no_dummy,       // collapse, then discard sentences that kept a dummy
};

enum class UnalignedTargetPolicy {
    attach_nearest,  // head of the nearest aligned target token, left first
    attach_root,     // projected root
};

struct ProjectionConfig {
    ProjectionMode mode = ProjectionMode::raw;
    std::string dummy_deprel = "dummy";
    UnalignedTargetPolicy unaligned_target = UnalignedTargetPolicy::attach_nearest;
};

struct ProjectionStats {
    std::uint64_t sentences_in = 0;
    std::uint64_t sentences_out = 0;
    std::uint64_t dummies_created = 0;
    std::uint64_t dummies_collapsed = 0;
    std::uint64_t discarded = 0;       // dropped by the no_dummy filter
    std::uint64_t empty_skipped = 0;   // empty target sentences (corpus level)

    ProjectionStats& operator+=(const ProjectionStats& other);
};

// Projects one sentence pair. Returns nullopt only in no_dummy mode, for
// sentences that still contain a dummy after collapsing. Throws Error when
// tgt_forms is empty or an alignment index is out of range.
std::optional<DepSentence> project_sentence(const DepSentence& src,
                                            const std::vector<std::string>& tgt_forms,
                                            const SentenceAlignment& alignment,
                                            const ProjectionConfig& cfg,
                                            ProjectionStats* stats = nullptr);

// Fixpoint of two rewrites on dummy nodes: a dummy with no dependents is
// deleted; a dummy with exactly one dependent is spliced out, its
// dependent re-attaching to the dummy's head with the dummy's deprel. Ids
// are renumbered; the relative order of surviving tokens is unchanged.
// The result never contains a dummy leaf or a single-daughter dummy.
// Requires at least one non-dummy token (an all-dummy sentence would
// collapse away entirely); throws Error otherwise.
DepSentence collapse_dummy_rewrite(const DepSentence& sent, std::uint64_t* collapsed = nullptr);

// Per-sentence projection over three parallel streams of equal length
// (throws Error on length mismatch). Sentences discarded by no_dummy and
// pairs with an empty target sentence are omitted and counted. `threads`
// 0 means hardware concurrency; output order and stats are independent of
// the thread count.
std::pair<Treebank, ProjectionStats> project_corpus(
    const Treebank& src, const std::vector<std::vector<std::string>>& tgt_text,
    const std::vector<SentenceAlignment>& alignments, const ProjectionConfig& cfg,
    unsigned threads = 1);

ProjectionMode parse_projection_mode(const std::string& name);  // raw|collapse|nodummy

}  // namespace depproj

#endif  // DEPPROJ_PROJECTION_HPP
