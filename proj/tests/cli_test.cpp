// End-to-end tests driving the installed command-line binary.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "depproj/conllu.hpp"
#include "depproj/projection.hpp"
#include "projection_oracle.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = DEPPROJ_CLI_PATH;
const fs::path kFixtures = DEPPROJ_FIXTURE_DIR;

struct RunResult {
    int status = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunResult run(const std::string& args) {
    static int counter = 0;
    const fs::path out = fs::temp_directory_path() / ("depproj_out" + std::to_string(++counter));
    const fs::path err = fs::temp_directory_path() / ("depproj_err" + std::to_string(counter));
    const std::string cmd =
        kCli + " " + args + " > " + out.string() + " 2> " + err.string();
    const int raw = std::system(cmd.c_str());
    RunResult result;
    result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    result.out = slurp(out);
    result.err = slurp(err);
    fs::remove(out);
    fs::remove(err);
    return result;
}

fs::path temp_file(const std::string& name, const std::string& content) {
    const fs::path path = fs::temp_directory_path() / name;
    std::ofstream(path, std::ios::binary) << content;
    return path;
}

std::string first_line(const std::string& text) {
    return text.substr(0, text.find('\n'));
}

}  // namespace

TEST_CASE("validate: clean file exits 0 and reports 0 violations") {
    const RunResult r = run("validate " + (kFixtures / "ud_sample.conllu").string());
    CHECK(r.status == 0);
    CHECK(first_line(r.out) == "0 violations");
}

TEST_CASE("validate: violations are listed and exit status is 1") {
    const fs::path bad = temp_file("cli_bad.conllu",
                                   "1\ta\t_\t_\t_\t_\t0\troot\t_\t_\n"
                                   "2\tb\t_\t_\t_\t_\t0\troot\t_\t_\n\n");
    const RunResult r = run("validate " + bad.string());
    CHECK(r.status == 1);
    CHECK(r.out.find("multiple-roots") != std::string::npos);
    CHECK(r.out.find("1 violations") != std::string::npos);
    fs::remove(bad);
}

TEST_CASE("eval: identical files print LAS=100.00 UAS=100.00") {
    const std::string f = (kFixtures / "ud_sample.conllu").string();
    const RunResult r = run("eval " + f + " " + f);
    CHECK(r.status == 0);
    CHECK(first_line(r.out) == "LAS=100.00 UAS=100.00");
}

TEST_CASE("usage errors exit 2") {
    CHECK(run("frobnicate x").status == 2);
    CHECK(run("project --mode collapse").status == 2);  // missing required flags
    CHECK(run("").status == 2);                         // no subcommand
}

TEST_CASE("missing input file is a data error (exit 1)") {
    CHECK(run("validate /nonexistent/none.conllu").status == 1);
    CHECK(run("stats /nonexistent/none.conllu").status == 1);
}

TEST_CASE("project --mode nodummy reproduces the oracle-built golden file") {
    const fs::path dir = kFixtures / "proj5";
    const fs::path out = fs::temp_directory_path() / "cli_proj5.conllu";
    const RunResult r = run("project --source " + (dir / "source.conllu").string() +
                            " --target " + (dir / "target.txt").string() + " --alignments " +
                            (dir / "alignments.align").string() + " --mode nodummy --output " +
                            out.string());
    REQUIRE(r.status == 0);
    const std::string golden = slurp(dir / "golden_nodummy.conllu");
    CHECK(slurp(out) == golden);

    // independently rebuild the expected output with the test oracle:
    // raw rule application, exhaustive-order collapse, dummy filter
    depproj::Treebank src;
    {
        std::ifstream in(dir / "source.conllu");
        src = depproj::parse_conllu(in);
    }
    std::vector<std::vector<std::string>> tgt;
    std::vector<std::string> tgt_lines;
    {
        std::ifstream in(dir / "target.txt");
        tgt_lines = depproj::read_lines(in);
        for (const std::string& line : tgt_lines) tgt.push_back(depproj::split_tokens(line));
    }
    std::vector<std::string> align_lines;
    {
        std::ifstream in(dir / "alignments.align");
        align_lines = depproj::read_lines(in);
    }
    REQUIRE(src.size() == tgt.size());
    REQUIRE(src.size() == align_lines.size());

    depproj::Treebank expected;
    for (std::size_t i = 0; i < src.size(); ++i) {
        const depproj::SentenceAlignment a = depproj::parse_alignment_line(
            align_lines[i], static_cast<int>(src.sentences[i].size()),
            static_cast<int>(tgt[i].size()));
        const depproj::DepSentence raw =
            oracle::project_raw(src.sentences[i], tgt[i], a, depproj::ProjectionConfig{});
        const depproj::DepSentence collapsed = oracle::collapse(raw);
        if (depproj::has_dummy_tokens(collapsed)) continue;
        expected.sentences.push_back(collapsed);
    }
    CHECK(depproj::write_conllu_string(expected) == golden);
    fs::remove(out);
}

TEST_CASE("dep2const: non-projective input fails, or is skipped with the flag") {
    const std::string f = (kFixtures / "ud_sample.conllu").string();
    CHECK(run("dep2const " + f).status == 1);

    const RunResult skipped = run("dep2const " + f + " --skip-nonprojective");
    CHECK(skipped.status == 0);
    int lines = 0;
    for (char c : skipped.out) lines += c == '\n';
    CHECK(lines == 4);  // one of five sentences is non-projective
    CHECK(skipped.err.find("skipped 1 of 5") != std::string::npos);
    CHECK(skipped.out.find("(root (expl (PRON Det))") == 0);
}

TEST_CASE("delex blanks forms on stdout and reads stdin for -") {
    const std::string f = (kFixtures / "ud_sample.conllu").string();
    const RunResult r = run("delex - < " + f);
    CHECK(r.status == 0);
    // comments keep the raw text; token columns must be blanked
    CHECK(r.out.find("\tregnar\t") == std::string::npos);
    CHECK(r.out.find("\tregna\t") == std::string::npos);  // lemma blanked too
    CHECK(r.out.find("# text = Det regnar") != std::string::npos);
    CHECK(r.out.find("VERB") != std::string::npos);
}

TEST_CASE("sample: first_n prefix and seeded subset via CLI") {
    const std::string f = (kFixtures / "pipeline20" / "source.conllu").string();
    const RunResult first = run("sample " + f + " --n 2");
    CHECK(first.status == 0);
    CHECK(first.out.find("# sent_id = s1") != std::string::npos);
    CHECK(first.out.find("# sent_id = s3") == std::string::npos);

    const RunResult a = run("sample " + f + " --n 5 --seed 42");
    const RunResult b = run("sample " + f + " --n 5 --seed 42");
    CHECK(a.out == b.out);

    const RunResult clamp = run("sample " + f + " --n 100");
    CHECK(clamp.status == 0);
    CHECK(clamp.err.find("warning") != std::string::npos);
}

TEST_CASE("sample: bitext slicing keeps the three streams parallel") {
    const fs::path dir = kFixtures / "pipeline20";
    const fs::path tmp = fs::temp_directory_path();
    const RunResult r = run("sample --src " + (dir / "target.txt").string() + " --tgt " +
                            (dir / "target.txt").string() + " --align " +
                            (dir / "alignments.align").string() + " --n 3 --seed 7 --out-src " +
                            (tmp / "bt_src.txt").string() + " --out-tgt " +
                            (tmp / "bt_tgt.txt").string() + " --out-align " +
                            (tmp / "bt_align.txt").string());
    CHECK(r.status == 0);
    const std::string src = slurp(tmp / "bt_src.txt");
    CHECK(src == slurp(tmp / "bt_tgt.txt"));
    int lines = 0;
    for (char c : src) lines += c == '\n';
    CHECK(lines == 3);
}

TEST_CASE("eval --json emits a summary line plus one line per relation") {
    const std::string f = (kFixtures / "ud_sample.conllu").string();
    const RunResult r = run("eval " + f + " " + f + " --json");
    CHECK(r.status == 0);
    CHECK(first_line(r.out).find("\"type\":\"summary\"") != std::string::npos);
    CHECK(first_line(r.out).find("\"las\":1.0") != std::string::npos);
    CHECK(r.out.find("\"type\":\"deprel\"") != std::string::npos);
    CHECK(r.out.find("\"label\":\"nsubj:pass\"") != std::string::npos);
}

TEST_CASE("project output is thread-count independent") {
    const fs::path dir = kFixtures / "pipeline20";
    const std::string base = "project --source " + (dir / "source.conllu").string() +
                             " --target " + (dir / "target.txt").string() + " --alignments " +
                             (dir / "alignments.align").string() + " --mode collapse";
    const RunResult one = run(base + " --threads 1");
    const RunResult many = run(base + " --threads 0");
    CHECK(one.status == 0);
    CHECK(many.status == 0);
    CHECK(one.out == many.out);
}

TEST_CASE("overlay --mode pos+morph retags through the shell") {
    const fs::path dir = kFixtures / "pipeline20";
    const fs::path tmp = fs::temp_directory_path() / "cli_posmorph.conllu";
    REQUIRE(run("project --source " + (dir / "source.conllu").string() + " --target " +
                (dir / "target.txt").string() + " --alignments " +
                (dir / "alignments.align").string() + " --mode collapse --output " +
                tmp.string())
                .status == 0);
    const RunResult r =
        run("overlay " + tmp.string() + " " + (dir / "tagged.conllu").string() +
            " --mode pos+morph");
    CHECK(r.status == 0);
    // the tagger calls "snälla" ADJ; pos+morph takes that over the
    // projected INTJ
    CHECK(r.out.find("\tsn\xC3\xA4lla\tsn\xC3\xA4ll\tADJ\t") != std::string::npos);
    fs::remove(tmp);
}

TEST_CASE("stats --json emits one machine-readable object") {
    const RunResult r = run("stats " + (kFixtures / "ud_sample.conllu").string() + " --json");
    CHECK(r.status == 0);
    CHECK(r.out.find("\"sentences\":5") != std::string::npos);
    CHECK(r.out.find("\"nonprojective_sentences\":1") != std::string::npos);
}

TEST_CASE("concat joins files in order") {
    const std::string f = (kFixtures / "proj5" / "source.conllu").string();
    const RunResult r = run("concat " + f + " " + f);
    CHECK(r.status == 0);
    // ids collide across the two parts, so both get part prefixes
    CHECK(r.out.find("# sent_id = p0-s2") != std::string::npos);
    CHECK(r.out.find("# sent_id = p1-s2") != std::string::npos);
}

TEST_CASE("pipeline run equals manual subcommand invocation") {
    const fs::path dir = kFixtures / "pipeline20";
    const fs::path tmp = fs::temp_directory_path() / "depproj_pipe";
    fs::create_directories(tmp);

    // manual chain
    REQUIRE(run("project --source " + (dir / "source.conllu").string() + " --target " +
                (dir / "target.txt").string() + " --alignments " +
                (dir / "alignments.align").string() + " --mode collapse --output " +
                (tmp / "m1.conllu").string())
                .status == 0);
    REQUIRE(run("overlay " + (tmp / "m1.conllu").string() + " " +
                (dir / "tagged.conllu").string() + " --mode morph --drop-dummies --output " +
                (tmp / "m2.conllu").string())
                .status == 0);
    const RunResult manual_eval =
        run("eval " + (tmp / "m2.conllu").string() + " " + (dir / "gold.conllu").string() +
            " --output " + (tmp / "m3.txt").string());
    REQUIRE(manual_eval.status == 0);

    // the same three stages as a manifest
    std::ostringstream manifest;
    manifest << "version 1\n"
             << "project --source " << (dir / "source.conllu").string() << " --target "
             << (dir / "target.txt").string() << " --alignments "
             << (dir / "alignments.align").string() << " --mode collapse --output "
             << (tmp / "p1.conllu").string() << "\n"
             << "overlay " << (tmp / "p1.conllu").string() << " "
             << (dir / "tagged.conllu").string() << " --mode morph --drop-dummies --output "
             << (tmp / "p2.conllu").string() << "\n"
             << "eval " << (tmp / "p2.conllu").string() << " " << (dir / "gold.conllu").string()
             << " --output " << (tmp / "p3.txt").string() << "\n";
    const fs::path manifest_path = tmp / "manifest.txt";
    std::ofstream(manifest_path) << manifest.str();

    const RunResult piped = run("pipeline " + manifest_path.string());
    CHECK(piped.status == 0);
    CHECK(slurp(tmp / "p1.conllu") == slurp(tmp / "m1.conllu"));
    CHECK(slurp(tmp / "p2.conllu") == slurp(tmp / "m2.conllu"));
    CHECK(slurp(tmp / "p3.txt") == slurp(tmp / "m3.txt"));

    // a manifest with a dangling input aborts naming the stage
    const fs::path broken_path = tmp / "broken.txt";
    std::ofstream(broken_path) << "version 1\nvalidate " << (tmp / "missing.conllu").string()
                               << "\n";
    const RunResult broken = run("pipeline " + broken_path.string());
    CHECK(broken.status == 1);
    CHECK(broken.err.find("stage 1 (validate)") != std::string::npos);

    fs::remove_all(tmp);
}

TEST_CASE("overlay --lenient warns and passes mismatches through") {
    const fs::path dir = kFixtures / "pipeline20";
    const fs::path bad_tagged = temp_file("cli_short_tagged.conllu",
                                          "1\tHunden\thund\tNOUN\t_\t_\t0\troot\t_\t_\n\n");
    // one tagged sentence vs twenty projected: sentence-count mismatch is fatal
    const fs::path projected = fs::temp_directory_path() / "cli_overlay_in.conllu";
    REQUIRE(run("project --source " + (dir / "source.conllu").string() + " --target " +
                (dir / "target.txt").string() + " --alignments " +
                (dir / "alignments.align").string() + " --mode collapse --output " +
                projected.string())
                .status == 0);
    CHECK(run("overlay " + projected.string() + " " + bad_tagged.string() + " --mode morph")
              .status == 1);

    // form mismatch inside one sentence: fatal without, warned with --lenient
    std::string tagged = slurp(dir / "tagged.conllu");
    const std::size_t pos = tagged.find("Hunden");
    REQUIRE(pos != std::string::npos);
    tagged.replace(pos, 6, "XXXXXX");
    const fs::path mismatched = temp_file("cli_mismatch_tagged.conllu", tagged);
    CHECK(run("overlay " + projected.string() + " " + mismatched.string() + " --mode morph")
              .status == 1);
    const RunResult lenient = run("overlay " + projected.string() + " " + mismatched.string() +
                                  " --mode morph --lenient");
    CHECK(lenient.status == 0);
    CHECK(lenient.err.find("warning") != std::string::npos);
    CHECK(lenient.err.find("mismatched=1") != std::string::npos);

    fs::remove(bad_tagged);
    fs::remove(mismatched);
    fs::remove(projected);
}
