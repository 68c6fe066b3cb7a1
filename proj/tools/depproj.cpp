// Command-line front end: every pipeline step as one subcommand with
// uniform conventions. Data goes to stdout (or --output), diagnostics to
// stderr; exit 0 on success, 1 on data errors, 2 on usage errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "depproj/alignment.hpp"
#include "depproj/conllu.hpp"
#include "depproj/constituency.hpp"
#include "depproj/errors.hpp"
#include "depproj/evaluation.hpp"
#include "depproj/overlay.hpp"
#include "depproj/pipeline.hpp"
#include "depproj/projection.hpp"
#include "depproj/sentence.hpp"

namespace {

using json = nlohmann::json;

struct GlobalOpts {
    std::string output = "-";
    bool quiet = false;
    unsigned threads = 1;  // 0 = all hardware threads
};

// Owns the ofstream when writing to a file; "-" means stdout.
class OutputStream {
public:
    explicit OutputStream(const std::string& path) {
        if (path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw depproj::Error("cannot open '" + path + "' for writing");
            path_ = path;
        }
    }
    std::ostream& get() { return file_ ? *file_ : std::cout; }
    void finish() {
        if (file_ && !*file_) throw depproj::Error("write to '" + path_ + "' failed");
    }

private:
    std::unique_ptr<std::ofstream> file_;
    std::string path_;
};

std::vector<std::string> read_lines_from(const std::string& path) {
    if (path == "-") return depproj::read_lines(std::cin);
    std::ifstream in(path);
    if (!in) throw depproj::Error("cannot open '" + path + "'");
    return depproj::read_lines(in);
}

std::string percent(double ratio) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", ratio * 100.0);
    return buf;
}

// ---------------------------------------------------------------- project

struct ProjectArgs {
    std::string source, target, alignments;
    std::string mode = "raw";
    std::string dummy_deprel = "dummy";
    std::string unaligned_target = "nearest";
};

int cmd_project(const ProjectArgs& args, const GlobalOpts& global) {
    depproj::ProjectionConfig cfg;
    cfg.mode = depproj::parse_projection_mode(args.mode);
    cfg.dummy_deprel = args.dummy_deprel;
    if (args.unaligned_target == "nearest")
        cfg.unaligned_target = depproj::UnalignedTargetPolicy::attach_nearest;
    else if (args.unaligned_target == "root")
        cfg.unaligned_target = depproj::UnalignedTargetPolicy::attach_root;
    else
        throw depproj::Error("unknown --unaligned-target '" + args.unaligned_target +
                             "' (expected nearest or root)");

    const depproj::Treebank src = depproj::load_conllu(args.source);
    std::vector<std::vector<std::string>> tgt_text;
    {
        const std::vector<std::string> lines = read_lines_from(args.target);
        tgt_text.reserve(lines.size());
        for (const std::string& line : lines) tgt_text.push_back(depproj::split_tokens(line));
    }
    const std::vector<std::string> align_lines = read_lines_from(args.alignments);

    if (src.size() != tgt_text.size() || src.size() != align_lines.size())
        throw depproj::Error("parallel stream length mismatch: " + std::to_string(src.size()) +
                             " source sentences, " + std::to_string(tgt_text.size()) +
                             " target lines, " + std::to_string(align_lines.size()) +
                             " alignment lines");

    std::vector<depproj::SentenceAlignment> alignments;
    alignments.reserve(align_lines.size());
    for (std::size_t i = 0; i < align_lines.size(); ++i)
        alignments.push_back(depproj::parse_alignment_line(
            align_lines[i], static_cast<int>(src.sentences[i].size()),
            static_cast<int>(tgt_text[i].size()), i + 1));

    auto [projected, stats] = depproj::project_corpus(src, tgt_text, alignments, cfg,
                                                      global.threads);

    OutputStream out(global.output);
    depproj::write_conllu(projected, out.get());
    out.finish();

    if (!global.quiet)
        std::cerr << "project: in=" << stats.sentences_in << " out=" << stats.sentences_out
                  << " dummies_created=" << stats.dummies_created
                  << " dummies_collapsed=" << stats.dummies_collapsed
                  << " discarded=" << stats.discarded
                  << " empty_skipped=" << stats.empty_skipped << "\n";
    return 0;
}

// ---------------------------------------------------------------- overlay

struct OverlayArgs {
    std::string projected, tagged;
    std::string mode = "morph";
    bool lenient = false;
    bool drop_dummies = false;
};

int cmd_overlay(const OverlayArgs& args, const GlobalOpts& global) {
    depproj::OverlayOptions opts;
    opts.mode = depproj::parse_overlay_mode(args.mode);
    opts.lenient = args.lenient;
    opts.drop_dummy_sentences = args.drop_dummies;

    const depproj::Treebank projected = depproj::load_conllu(args.projected);
    // Tagger output only contributes forms, tags and lemmas; its head
    // column is not required to be a well-formed tree.
    const depproj::Treebank tagged =
        depproj::load_conllu(args.tagged, depproj::ParseOptions{.check_tree = false});

    depproj::OverlayReport report;
    const depproj::Treebank merged = depproj::overlay_tags(projected, tagged, opts, &report);

    OutputStream out(global.output);
    depproj::write_conllu(merged, out.get());
    out.finish();

    if (!global.quiet) {
        for (const std::string& warning : report.warnings)
            std::cerr << "overlay: warning: " << warning << "\n";
        std::cerr << "overlay: overlaid=" << report.overlaid
                  << " mismatched=" << report.mismatched
                  << " dummy_dropped=" << report.dummy_dropped << "\n";
    }
    return 0;
}

// ------------------------------------------------------------ delex/concat

int cmd_delex(const std::string& input, const GlobalOpts& global) {
    const depproj::Treebank out_tb = depproj::delexicalize(depproj::load_conllu(input));
    OutputStream out(global.output);
    depproj::write_conllu(out_tb, out.get());
    out.finish();
    return 0;
}

int cmd_concat(const std::vector<std::string>& inputs, const GlobalOpts& global) {
    std::vector<depproj::Treebank> parts;
    parts.reserve(inputs.size());
    for (const std::string& path : inputs) parts.push_back(depproj::load_conllu(path));
    const depproj::Treebank merged = depproj::concat_treebanks(parts);
    OutputStream out(global.output);
    depproj::write_conllu(merged, out.get());
    out.finish();
    return 0;
}

// -------------------------------------------------------------- dep2const

int cmd_dep2const(const std::string& input, bool skip_nonprojective, const GlobalOpts& global) {
    const depproj::Treebank tb = depproj::load_conllu(input);
    OutputStream out(global.output);
    std::size_t skipped = 0;
    for (std::size_t i = 0; i < tb.size(); ++i) {
        try {
            const depproj::ConstituencyNode tree = depproj::dep_to_const(tb.sentences[i]);
            out.get() << depproj::write_bracketed(tree) << '\n';
        } catch (const depproj::NonProjectiveError& e) {
            if (!skip_nonprojective)
                throw depproj::Error("sentence " + std::to_string(i + 1) + ": " + e.what());
            ++skipped;
            if (!global.quiet)
                std::cerr << "dep2const: skipped sentence " << i + 1 << ": " << e.what() << "\n";
        }
    }
    out.finish();
    if (!global.quiet && skip_nonprojective)
        std::cerr << "dep2const: skipped " << skipped << " of " << tb.size()
                  << " sentences (non-projective)\n";
    return 0;
}

// -------------------------------------------------------------------- eval

struct EvalArgs {
    std::string system, gold;
    bool no_punct = false;
    bool universal_deprels = false;
    bool as_json = false;
};

int cmd_eval(const EvalArgs& args, const GlobalOpts& global) {
    depproj::ScoreOptions opts;
    opts.include_punct = !args.no_punct;
    opts.universal_deprels = args.universal_deprels;

    const depproj::Treebank system = depproj::load_conllu(args.system);
    const depproj::Treebank gold = depproj::load_conllu(args.gold);
    const depproj::EvalReport report = depproj::score(system, gold, opts);

    if (!global.quiet && report.form_mismatches > 0)
        std::cerr << "eval: warning: " << report.form_mismatches
                  << " form mismatches between system and gold\n";

    OutputStream out(global.output);
    if (args.as_json) {
        json summary = {{"type", "summary"},
                        {"las", report.las()},
                        {"uas", report.uas()},
                        {"sentences", report.sentences},
                        {"tokens", report.tokens_total},
                        {"heads_correct", report.heads_correct},
                        {"labeled_correct", report.heads_and_labels_correct},
                        {"punct_excluded", report.punct_excluded},
                        {"form_mismatches", report.form_mismatches}};
        out.get() << summary.dump() << '\n';
        for (const auto& [label, cell] : report.per_deprel) {
            json row = {{"type", "deprel"},
                        {"label", label},
                        {"gold", cell.gold},
                        {"correct", cell.correct}};
            out.get() << row.dump() << '\n';
        }
    } else {
        out.get() << "LAS=" << percent(report.las()) << " UAS=" << percent(report.uas()) << '\n';
        out.get() << "sentences=" << report.sentences << " tokens=" << report.tokens_total
                  << " heads_correct=" << report.heads_correct
                  << " labeled_correct=" << report.heads_and_labels_correct
                  << " punct_excluded=" << report.punct_excluded << '\n';
        for (const auto& [label, cell] : report.per_deprel) {
            const double acc =
                cell.gold == 0 ? 1.0
                               : static_cast<double>(cell.correct) / static_cast<double>(cell.gold);
            char line[160];
            std::snprintf(line, sizeof line, "%-20s %8llu %8llu %8s", label.c_str(),
                          static_cast<unsigned long long>(cell.gold),
                          static_cast<unsigned long long>(cell.correct), percent(acc).c_str());
            out.get() << line << '\n';
        }
    }
    out.finish();
    return 0;
}

// ------------------------------------------------------------------ sample

struct SampleArgs {
    std::string treebank;
    std::string src, tgt, align;
    std::string out_src, out_tgt, out_align;
    std::size_t n = 0;
    std::optional<std::uint32_t> seed;
};

int cmd_sample(const SampleArgs& args, const GlobalOpts& global) {
    const depproj::SampleStrategy strategy =
        args.seed ? depproj::SampleStrategy::random_seeded(*args.seed)
                  : depproj::SampleStrategy::first_n();

    const bool bitext = !args.src.empty() || !args.tgt.empty() || !args.align.empty();
    if (bitext) {
        if (args.src.empty() || args.tgt.empty() || args.align.empty() || args.out_src.empty() ||
            args.out_tgt.empty() || args.out_align.empty())
            throw depproj::Error(
                "bitext sampling needs --src, --tgt, --align and the three --out-* paths");
        const std::vector<std::string> src_lines = read_lines_from(args.src);
        const std::vector<std::string> tgt_lines = read_lines_from(args.tgt);
        const std::vector<std::string> align_lines = read_lines_from(args.align);
        if (src_lines.size() != tgt_lines.size() || src_lines.size() != align_lines.size())
            throw depproj::Error("parallel stream length mismatch: " +
                                 std::to_string(src_lines.size()) + "/" +
                                 std::to_string(tgt_lines.size()) + "/" +
                                 std::to_string(align_lines.size()) + " lines");
        const depproj::SampleSelection sel =
            depproj::sample_indices(src_lines.size(), args.n, strategy);
        if (sel.clamped && !global.quiet)
            std::cerr << "sample: warning: requested " << args.n << " of " << src_lines.size()
                      << " pairs, returning all\n";
        const auto write_selected = [&sel](const std::vector<std::string>& lines,
                                           const std::string& path) {
            OutputStream out(path);
            for (std::size_t idx : sel.indices) out.get() << lines[idx] << '\n';
            out.finish();
        };
        write_selected(src_lines, args.out_src);
        write_selected(tgt_lines, args.out_tgt);
        write_selected(align_lines, args.out_align);
        return 0;
    }

    if (args.treebank.empty())
        throw depproj::Error("sample needs a treebank (positional or --treebank) or bitext flags");
    const depproj::Treebank tb = depproj::load_conllu(args.treebank);
    bool clamped = false;
    const depproj::Treebank sliced = depproj::sample_treebank(tb, args.n, strategy, &clamped);
    if (clamped && !global.quiet)
        std::cerr << "sample: warning: requested " << args.n << " of " << tb.size()
                  << " sentences, returning all\n";
    OutputStream out(global.output);
    depproj::write_conllu(sliced, out.get());
    out.finish();
    return 0;
}

// ------------------------------------------------------------------- stats

int cmd_stats(const std::string& input, bool as_json, const GlobalOpts& global) {
    const depproj::Treebank tb = depproj::load_conllu(input);
    const depproj::StatsReport report = depproj::corpus_stats(tb);

    OutputStream out(global.output);
    if (as_json) {
        json j = {{"sentences", report.sentences},
                  {"tokens", report.tokens},
                  {"dummy_tokens", report.dummy_tokens},
                  {"nonprojective_sentences", report.nonprojective_sentences},
                  {"deprel", json::object()},
                  {"upos", json::object()}};
        for (const auto& [label, freq] : report.deprel_freq) j["deprel"][label] = freq;
        for (const auto& [label, freq] : report.upos_freq) j["upos"][label] = freq;
        out.get() << j.dump() << '\n';
    } else {
        out.get() << "sentences " << report.sentences << '\n'
                  << "tokens " << report.tokens << '\n'
                  << "dummy_tokens " << report.dummy_tokens << '\n'
                  << "nonprojective_sentences " << report.nonprojective_sentences << '\n';
        out.get() << "deprel:\n";
        for (const auto& [label, freq] : report.deprel_freq)
            out.get() << "  " << label << ' ' << freq << '\n';
        out.get() << "upos:\n";
        for (const auto& [label, freq] : report.upos_freq)
            out.get() << "  " << label << ' ' << freq << '\n';
    }
    out.finish();
    return 0;
}

// ---------------------------------------------------------------- validate

int cmd_validate(const std::string& input, const GlobalOpts& global) {
    const depproj::Treebank tb =
        depproj::load_conllu(input, depproj::ParseOptions{.check_tree = false});
    OutputStream out(global.output);
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < tb.size(); ++i) {
        const std::vector<depproj::Violation> violations = depproj::validate(tb.sentences[i]);
        for (const depproj::Violation& v : violations) {
            ++total;
            out.get() << "sentence " << i + 1;
            if (!tb.sentences[i].sent_id.empty()) out.get() << " (" << tb.sentences[i].sent_id << ")";
            if (v.token_id > 0) out.get() << " token " << v.token_id;
            out.get() << ": " << v.invariant << ": " << v.message << '\n';
        }
    }
    out.get() << total << " violations\n";
    out.finish();
    return total == 0 ? 0 : 1;
}

int run_argv(const std::vector<std::string>& argv);

// ---------------------------------------------------------------- pipeline

int cmd_pipeline(const std::string& manifest_path) {
    const depproj::PipelineManifest manifest = depproj::load_manifest(manifest_path);
    return depproj::run_pipeline(
        manifest, [](const std::vector<std::string>& argv) { return run_argv(argv); }, std::cerr);
}

// --------------------------------------------------------------- dispatch

int run_argv(const std::vector<std::string>& argv) {
    CLI::App app{"dependency treebank projection toolkit"};
    app.name("depproj");

    GlobalOpts global;
    app.add_option("-o,--output", global.output, "output path ('-' = stdout)");
    app.add_flag("-q,--quiet", global.quiet, "suppress progress and statistics on stderr");
    app.add_option("--threads", global.threads, "worker threads (0 = all hardware threads)");
    app.require_subcommand(1);

    ProjectArgs project_args;
    CLI::App* project = app.add_subcommand(
        "project", "project source dependency trees onto target sentences");
    project->fallthrough();
    project->add_option("--source", project_args.source, "source treebank (CoNLL-U)")->required();
    project->add_option("--target", project_args.target,
                        "target sentences, one per line, space-tokenized")->required();
    project->add_option("--alignments", project_args.alignments,
                        "word alignments, one line of 0-based i-j pairs per sentence pair")
        ->required();
    project->add_option("--mode", project_args.mode, "raw | collapse | nodummy");
    project->add_option("--dummy-deprel", project_args.dummy_deprel,
                        "relation label for tokens attached to a dummy node");
    project->add_option("--unaligned-target", project_args.unaligned_target,
                        "attachment for unaligned target tokens: nearest | root");

    OverlayArgs overlay_args;
    CLI::App* overlay =
        app.add_subcommand("overlay", "merge tagger output onto a projected treebank");
    overlay->fallthrough();
    overlay->add_option("projected", overlay_args.projected, "projected treebank")->required();
    overlay->add_option("tagged", overlay_args.tagged, "tagged treebank (same sentences)")
        ->required();
    overlay->add_option("--mode", overlay_args.mode, "morph | pos+morph");
    overlay->add_flag("--lenient", overlay_args.lenient,
                      "pass mismatching sentences through instead of failing");
    overlay->add_flag("--drop-dummies", overlay_args.drop_dummies,
                      "drop sentences that still contain dummy tokens");

    std::string delex_input = "-";
    CLI::App* delex = app.add_subcommand("delex", "blank out FORM and LEMMA");
    delex->fallthrough();
    delex->add_option("input", delex_input, "treebank (CoNLL-U)");

    std::vector<std::string> concat_inputs;
    CLI::App* concat = app.add_subcommand("concat", "concatenate treebanks");
    concat->fallthrough();
    concat->add_option("inputs", concat_inputs, "treebanks in order")->required();

    std::string dep2const_input = "-";
    bool skip_nonprojective = false;
    CLI::App* dep2const = app.add_subcommand(
        "dep2const", "convert dependency trees to bracketed constituency trees");
    dep2const->fallthrough();
    dep2const->add_option("input", dep2const_input, "treebank (CoNLL-U)");
    dep2const->add_flag("--skip-nonprojective", skip_nonprojective,
                        "skip non-projective sentences instead of failing");

    EvalArgs eval_args;
    CLI::App* eval = app.add_subcommand("eval", "labeled/unlabeled attachment scores");
    eval->fallthrough();
    eval->add_option("system", eval_args.system, "system output (CoNLL-U)")->required();
    eval->add_option("gold", eval_args.gold, "gold standard (CoNLL-U)")->required();
    eval->add_flag("--no-punct", eval_args.no_punct, "exclude tokens with gold UPOS PUNCT");
    eval->add_flag("--universal-deprels", eval_args.universal_deprels,
                   "compare deprels only up to the first ':'");
    eval->add_flag("--json", eval_args.as_json, "JSON-lines report instead of text");

    SampleArgs sample_args;
    CLI::App* sample = app.add_subcommand("sample", "slice a corpus");
    sample->fallthrough();
    sample->add_option("input", sample_args.treebank, "treebank (CoNLL-U)");
    sample->add_option("--treebank", sample_args.treebank, "treebank (CoNLL-U)");
    sample->add_option("--n", sample_args.n, "number of sentences to keep")->required();
    sample->add_option("--seed", sample_args.seed,
                       "random subset with this seed (default: first n)");
    sample->add_option("--src", sample_args.src, "bitext source text");
    sample->add_option("--tgt", sample_args.tgt, "bitext target text");
    sample->add_option("--align", sample_args.align, "bitext alignments");
    sample->add_option("--out-src", sample_args.out_src, "sampled source output");
    sample->add_option("--out-tgt", sample_args.out_tgt, "sampled target output");
    sample->add_option("--out-align", sample_args.out_align, "sampled alignment output");

    std::string stats_input = "-";
    bool stats_json = false;
    CLI::App* stats = app.add_subcommand("stats", "corpus statistics");
    stats->fallthrough();
    stats->add_option("input", stats_input, "treebank (CoNLL-U)");
    stats->add_flag("--json", stats_json, "JSON output");

    std::string validate_input = "-";
    CLI::App* validate = app.add_subcommand("validate", "report broken sentence invariants");
    validate->fallthrough();
    validate->add_option("input", validate_input, "treebank (CoNLL-U)");

    std::string manifest_path;
    CLI::App* pipeline = app.add_subcommand("pipeline", "run the stages of a manifest file");
    pipeline->fallthrough();
    pipeline->add_option("manifest", manifest_path, "manifest file")->required();

    try {
        std::vector<std::string> reversed(argv.rbegin(), argv.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the message to stderr
        return 2;
    }

    try {
        if (*project) return cmd_project(project_args, global);
        if (*overlay) return cmd_overlay(overlay_args, global);
        if (*delex) return cmd_delex(delex_input, global);
        if (*concat) return cmd_concat(concat_inputs, global);
        if (*dep2const) return cmd_dep2const(dep2const_input, skip_nonprojective, global);
        if (*eval) return cmd_eval(eval_args, global);
        if (*sample) return cmd_sample(sample_args, global);
        if (*stats) return cmd_stats(stats_input, stats_json, global);
        if (*validate) return cmd_validate(validate_input, global);
        if (*pipeline) return cmd_pipeline(manifest_path);
    } catch (const depproj::Error& e) {
        std::cerr << "depproj: error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "depproj: error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_argv(args);
}
