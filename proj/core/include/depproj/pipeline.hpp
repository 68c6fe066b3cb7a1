#ifndef DEPPROJ_PIPELINE_HPP
#define DEPPROJ_PIPELINE_HPP

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "depproj/errors.hpp"

namespace depproj {

// A pipeline manifest is a flat, line-oriented run log: a "version 1"
// header followed by one stage per line, each line being a subcommand
// invocation exactly as it would appear on the command line (whitespace
// separated, no quoting):
//
//     # produce training data and score it
//     version 1
//     project --source src.conllu --target tgt.txt --alignments w.align
//         --mode collapse --output step1.conllu
//     eval step1.conllu gold.conllu
//
// (shown wrapped; real stage lines are single lines). Blank lines and
// "#" comments are ignored.

struct PipelineStage {
    std::string name;                // subcommand
    std::vector<std::string> args;   // remaining argv
    std::size_t line = 0;            // manifest line, for diagnostics
};

struct PipelineManifest {
    int format_version = 1;
    std::vector<PipelineStage> stages;
};

// Throws ParseError on unknown versions, unknown stage names, or stage
// lines before the version header. An empty file is a valid empty
// manifest.
PipelineManifest parse_manifest(std::istream& in);
PipelineManifest load_manifest(const std::string& path);

// Input/output paths of a stage, derived from its flags and positional
// arguments ("-" entries are skipped).
struct StagePaths {
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
};
StagePaths stage_paths(const PipelineStage& stage);

// Runs the stages in order through `run` (argv[0] is the subcommand
// name). Before each stage, its input paths must either exist on disk or
// have been produced as an earlier stage's output; a dangling path or a
// failing stage aborts the run. Returns 0 on success, 1 otherwise;
// diagnostics (including the failing stage) go to `log`.
int run_pipeline(const PipelineManifest& manifest,
                 const std::function<int(const std::vector<std::string>&)>& run,
                 std::ostream& log);

}  // namespace depproj

#endif  // DEPPROJ_PIPELINE_HPP
