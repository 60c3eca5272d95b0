// wmap: build, query and inspect tag-annotated text indexes.
//
// Subcommands:
//   build  --text FILE --tags FILE [--format labeled|records] [--f N]
//          [--seed B] --output PATH          builds an index, prints n/r/t/g
//   query  --index PATH --patterns FILE --mode list|count|topk|ffreq
//          [--k N] [--range i j] [--mems] [--output PATH]
//   stats  --index PATH                      prints the stored size counters
//
// Exit codes: 0 ok, 1 usage error, 2 data or I/O error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "wmap/index.hpp"
#include "wmap/serialize.hpp"

namespace {

using namespace wmap;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

// format (a): raw text (separators allowed) + one "position<TAB>payload" line
// per position, 1-based
TaggedText ingest_labeled(const std::string& text_path, const std::string& tags_path) {
    std::string raw = read_file(text_path);
    while (!raw.empty() && (raw.back() == '\n' || raw.back() == '\r')) raw.pop_back();
    if (raw.empty()) throw data_error("empty text file");

    std::vector<std::string> labels(raw.size());
    std::vector<bool> seen(raw.size(), false);
    std::ifstream in(tags_path);
    if (!in) throw data_error("cannot read " + tags_path);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (line.empty()) continue;
        size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw data_error("tag line " + std::to_string(lineno) + ": missing tab");
        size_t pos = std::stoull(line.substr(0, tab));
        if (pos < 1 || pos > raw.size())
            throw data_error("tag line " + std::to_string(lineno) + ": position out of range");
        labels[pos - 1] = line.substr(tab + 1);
        seen[pos - 1] = true;
    }
    for (size_t p = 0; p < raw.size(); ++p)
        if (!seen[p]) throw data_error("no tag for position " + std::to_string(p + 1));
    return ingest_labeled_text(std::vector<u8>(raw.begin(), raw.end()), labels);
}

// format (b): alternating sequence line / whitespace-separated tag line,
// one tag per character
TaggedText ingest_records(const std::string& text_path, const std::string& tags_path) {
    std::ifstream seq_in(text_path);
    if (!seq_in) throw data_error("cannot read " + text_path);
    std::ifstream tag_in(tags_path);
    if (!tag_in) throw data_error("cannot read " + tags_path);

    std::vector<std::string> seqs;
    std::vector<std::vector<std::string>> anns;
    std::string seq, tagline;
    while (std::getline(seq_in, seq)) {
        strip_cr(seq);
        if (seq.empty()) continue;
        if (!std::getline(tag_in, tagline))
            throw data_error("fewer tag lines than sequences");
        std::istringstream ts(tagline);
        std::vector<std::string> ann;
        std::string tok;
        while (ts >> tok) ann.push_back(tok);
        seqs.push_back(seq);
        anns.push_back(std::move(ann));
    }
    return ingest_tagged_text(seqs, anns);
}

int cmd_build(const std::string& text_path, const std::string& tags_path,
              const std::string& format, u64 f, u64 seed, const std::string& output) {
    TaggedText tt = format == "records" ? ingest_records(text_path, tags_path)
                                        : ingest_labeled(text_path, tags_path);
    BuildOptions opts;
    opts.f = f;
    opts.fingerprint_base = seed;
    WheelerMap index = WheelerMap::build(tt, opts);
    IndexCodec::save_file(index, output);
    std::cout << "n\t" << index.text_length() << "\n"
              << "r\t" << index.bwt_run_count() << "\n"
              << "t\t" << index.tag_run_count() << "\n"
              << "g\t" << index.grammar_size() << "\n";
    return 0;
}

int cmd_stats(const std::string& index_path) {
    WheelerMap index = IndexCodec::load_file(index_path);
    std::cout << "n\t" << index.text_length() << "\n"
              << "r\t" << index.bwt_run_count() << "\n"
              << "t\t" << index.tag_run_count() << "\n"
              << "g\t" << index.grammar_size() << "\n"
              << "f\t" << index.frequency_threshold() << "\n";
    return 0;
}

std::string render_tags(const WheelerMap& index, const std::vector<u32>& tags) {
    std::string out;
    for (size_t i = 0; i < tags.size(); ++i) {
        if (i) out.push_back(',');
        out += index.tag_dict()[tags[i]];
    }
    return out;
}

void run_query(const WheelerMap& index, PatternSession& session, size_t i, size_t j,
               const std::string& mode, u32 k, std::ostream& out) {
    out << session.pattern() << '\t' << (i + 1) << '\t' << (j + 1) << '\t';
    if (!session.occurs(i, j)) {
        out << "ABSENT\n";
        return;
    }
    if (mode == "list") {
        out << render_tags(index, session.distinct_tags(i, j)->tags) << '\n';
    } else if (mode == "count") {
        out << session.count_distinct_tags(i, j)->count << '\n';
    } else if (mode == "topk") {
        auto items = *session.topk_tags(i, j, k);
        for (size_t x = 0; x < items.size(); ++x) {
            if (x) out << ',';
            out << index.tag_dict()[items[x].tag] << ':'
                << (items[x].exact ? std::to_string(items[x].weight)
                                   : ">=" + std::to_string(items[x].weight));
        }
        out << '\n';
    } else {  // ffreq
        out << render_tags(index, *session.f_frequent_tags(i, j)) << '\n';
    }
}

int cmd_query(const std::string& index_path, const std::string& patterns_path,
              const std::string& mode, u32 k, bool use_mems,
              const std::vector<i64>& range, const std::string& output) {
    WheelerMap index = IndexCodec::load_file(index_path);

    std::ofstream file_out;
    if (!output.empty()) {
        file_out.open(output);
        if (!file_out) throw data_error("cannot write " + output);
    }
    std::ostream& out = output.empty() ? std::cout : file_out;

    std::ifstream in(patterns_path);
    if (!in) throw data_error("cannot read " + patterns_path);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (line.empty()) continue;
        bool bad = false;
        for (char c : line) bad = bad || is_reserved_byte(static_cast<u8>(c));
        if (bad) {
            std::cerr << "pattern line " << lineno << ": reserved byte, skipped\n";
            continue;
        }
        PatternSession session(index, line);
        if (use_mems) {
            for (const Mem& mem : session.mems())
                run_query(index, session, mem.start, mem.start + mem.len - 1, mode, k, out);
        } else if (!range.empty()) {
            size_t i = static_cast<size_t>(range[0]) - 1;
            size_t j = static_cast<size_t>(range[1]) - 1;
            if (range[0] < 1 || range[1] < range[0] ||
                static_cast<size_t>(range[1]) > line.size()) {
                std::cerr << "pattern line " << lineno << ": range out of bounds, skipped\n";
                continue;
            }
            run_query(index, session, i, j, mode, k, out);
        } else {
            run_query(index, session, 0, line.size() - 1, mode, k, out);
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wheeler map: tag-annotated compressed text index"};
    app.require_subcommand(1);

    std::string text_path, tags_path, format = "labeled", output, index_path, patterns_path;
    std::string mode = "list";
    u64 f = 1, seed = 0;
    u32 k = 5;
    bool use_mems = false;
    std::vector<i64> range;

    auto* build = app.add_subcommand("build", "build an index from text + tags");
    build->add_option("--text", text_path, "text input file")->required();
    build->add_option("--tags", tags_path, "tag input file")->required();
    build->add_option("--format", format, "labeled|records")
        ->check(CLI::IsMember({"labeled", "records"}));
    build->add_option("--f", f, "frequency threshold fixed at build time");
    build->add_option("--seed", seed, "fingerprint base (0: random)");
    build->add_option("--output", output, "index output path")->required();

    auto* query = app.add_subcommand("query", "run pattern queries against an index");
    query->add_option("--index", index_path, "index file")->required();
    query->add_option("--patterns", patterns_path, "one pattern per line")->required();
    query->add_option("--mode", mode, "list|count|topk|ffreq")
        ->check(CLI::IsMember({"list", "count", "topk", "ffreq"}));
    query->add_option("--k", k, "top-k size");
    query->add_flag("--mems", use_mems, "query each maximal exact match");
    query->add_option("--range", range, "1-based substring range i j")->expected(2);
    query->add_option("--output", output, "result file (default stdout)");

    auto* stats = app.add_subcommand("stats", "print index size counters");
    stats->add_option("--index", index_path, "index file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (build->parsed()) return cmd_build(text_path, tags_path, format, f, seed, output);
        if (query->parsed())
            return cmd_query(index_path, patterns_path, mode, k, use_mems, range, output);
        return cmd_stats(index_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
