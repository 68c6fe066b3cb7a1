#include "depproj/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "depproj/alignment.hpp"

namespace depproj {

namespace {

const std::set<std::string>& known_stages() {
    static const std::set<std::string> names = {"project", "overlay", "delex",  "concat",
                                                "dep2const", "eval",  "sample", "stats",
                                                "validate"};
    return names;
}

enum class FlagKind { input_path, output_path, value, boolean };

// Flag arity/role table shared by all subcommands; unknown flags are
// treated as boolean so path checking degrades gracefully.
const std::map<std::string, FlagKind>& flag_table() {
    static const std::map<std::string, FlagKind> table = {
        {"--source", FlagKind::input_path},   {"--target", FlagKind::input_path},
        {"--alignments", FlagKind::input_path}, {"--tagged", FlagKind::input_path},
        {"--treebank", FlagKind::input_path}, {"--src", FlagKind::input_path},
        {"--tgt", FlagKind::input_path},      {"--align", FlagKind::input_path},
        {"--output", FlagKind::output_path},  {"--out-src", FlagKind::output_path},
        {"--out-tgt", FlagKind::output_path}, {"--out-align", FlagKind::output_path},
        {"--mode", FlagKind::value},          {"--n", FlagKind::value},
        {"--seed", FlagKind::value},          {"--dummy-deprel", FlagKind::value},
        {"--unaligned-target", FlagKind::value}, {"--threads", FlagKind::value},
    };
    return table;
}

// Subcommands whose positional arguments are input files.
bool positionals_are_inputs(const std::string& name) {
    return name == "overlay" || name == "delex" || name == "concat" || name == "dep2const" ||
           name == "eval" || name == "stats" || name == "validate" || name == "sample";
}

}  // namespace

PipelineManifest parse_manifest(std::istream& in) {
    PipelineManifest manifest;
    bool saw_version = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::vector<std::string> words = split_tokens(line);
        if (words.empty() || words.front().front() == '#') continue;

        if (!saw_version) {
            if (words.size() != 2 || words[0] != "version")
                throw ParseError("manifest must start with a 'version <n>' header", line_no);
            try {
                manifest.format_version = std::stoi(words[1]);
            } catch (const std::exception&) {
                throw ParseError("malformed manifest version '" + words[1] + "'", line_no);
            }
            if (manifest.format_version != 1)
                throw ParseError("unsupported manifest version " + words[1], line_no);
            saw_version = true;
            continue;
        }

        PipelineStage stage;
        stage.name = words.front();
        stage.args.assign(words.begin() + 1, words.end());
        stage.line = line_no;
        if (!known_stages().count(stage.name))
            throw ParseError("unknown pipeline stage '" + stage.name + "'", line_no);
        manifest.stages.push_back(std::move(stage));
    }
    return manifest;
}

PipelineManifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open manifest '" + path + "'");
    return parse_manifest(in);
}

StagePaths stage_paths(const PipelineStage& stage) {
    StagePaths paths;
    const auto& table = flag_table();
    for (std::size_t i = 0; i < stage.args.size(); ++i) {
        const std::string& arg = stage.args[i];
        if (arg.rfind("--", 0) == 0) {
            const auto it = table.find(arg);
            if (it == table.end()) continue;  // boolean or unknown
            if (i + 1 >= stage.args.size()) continue;
            const std::string& value = stage.args[++i];
            if (value == "-") continue;
            if (it->second == FlagKind::input_path) paths.inputs.push_back(value);
            if (it->second == FlagKind::output_path) paths.outputs.push_back(value);
        } else if (arg != "-" && positionals_are_inputs(stage.name)) {
            paths.inputs.push_back(arg);
        }
    }
    return paths;
}

int run_pipeline(const PipelineManifest& manifest,
                 const std::function<int(const std::vector<std::string>&)>& run,
                 std::ostream& log) {
    std::set<std::string> produced;
    for (std::size_t i = 0; i < manifest.stages.size(); ++i) {
        const PipelineStage& stage = manifest.stages[i];
        const std::string label =
            "stage " + std::to_string(i + 1) + " (" + stage.name + ")";

        const StagePaths paths = stage_paths(stage);
        for (const std::string& input : paths.inputs) {
            if (!produced.count(input) && !std::filesystem::exists(input)) {
                log << "pipeline: " << label << ": input '" << input
                    << "' does not exist and is not produced by an earlier stage\n";
                return 1;
            }
        }

        std::vector<std::string> argv;
        argv.reserve(stage.args.size() + 1);
        argv.push_back(stage.name);
        argv.insert(argv.end(), stage.args.begin(), stage.args.end());
        const int status = run(argv);
        if (status != 0) {
            log << "pipeline: " << label << " failed with exit status " << status << "\n";
            return 1;
        }
        for (const std::string& output : paths.outputs) produced.insert(output);
    }
    return 0;
}

}  // namespace depproj
