#include "cli.hpp"

#include <ohash/bench_lab.hpp>
#include <ohash/report.hpp>
#include <ohash/search.hpp>

#include <CLI11.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

namespace ohash::cli {
namespace {

namespace fs = std::filesystem;

/// Failure that maps directly to an exit code.
struct CommandError : std::runtime_error {
    CommandError(int code, const std::string& what) : std::runtime_error(what), code(code) {}
    int code;
};

std::size_t parse_size(std::string_view s) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument("not a non-negative integer: '" + std::string(s) + "'");
    return v;
}

Variant require_variant(const std::string& name) {
    if (auto v = parse_variant(name))
        return *v;
    throw CommandError(kUsageOrIo, "unknown algorithm '" + name + "'");
}

std::vector<Octet> read_file(const std::string& path) {
    try {
        return bench::read_octets(path);
    } catch (const std::exception& e) {
        throw CommandError(kUsageOrIo, e.what());
    }
}

void write_file(const fs::path& path, std::string_view data) {
    std::ofstream f(path, std::ios::binary);
    f.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!f)
        throw CommandError(kUsageOrIo, "cannot write " + path.string());
}

// ---------------------------------------------------------------- search

struct SearchArgs {
    std::optional<std::string> pattern;
    std::optional<std::string> pattern_file;
    std::string text_file;
    std::string algo = "ohash3";
    bool count_only = false;
};

void add_search(CLI::App& app, SearchArgs& a) {
    auto* cmd = app.add_subcommand("search", "Report every occurrence of a pattern in a file");
    auto* p = cmd->add_option("--pattern", a.pattern, "Pattern, taken as the raw octets of the argument");
    auto* pf = cmd->add_option("--pattern-file", a.pattern_file, "File whose raw octets form the pattern");
    p->excludes(pf);
    cmd->add_option("--text-file", a.text_file, "Text to search")->required();
    cmd->add_option("--algo", a.algo, "hash3|hash5|hash8|ohash1|ohash2|ohash3|naive")->capture_default_str();
    cmd->add_flag("--count-only", a.count_only, "Print only the number of occurrences");
}

int cmd_search(const SearchArgs& a, std::ostream& out) {
    if (!a.pattern && !a.pattern_file)
        throw CommandError(kUsageOrIo, "one of --pattern or --pattern-file is required");
    const Variant variant = require_variant(a.algo);
    const std::vector<Octet> pattern_octets = a.pattern ? std::vector<Octet>(a.pattern->begin(), a.pattern->end())
                                                        : read_file(*a.pattern_file);
    if (pattern_octets.empty())
        throw CommandError(kUsageOrIo, "pattern is empty");
    const std::vector<Octet> text = read_file(a.text_file);

    const Pattern pattern{OctetSpan(pattern_octets)};
    Occurrences occ;
    try {
        occ = search(variant, pattern, text);
    } catch (const QTooLarge& e) {
        throw CommandError(kInapplicable, std::string(to_string(variant)) + ": " + e.what());
    }
    if (a.count_only) {
        out << occ.count() << '\n';
    } else {
        for (std::size_t pos : occ.positions)
            out << pos << '\n';
    }
    return kSuccess;
}

// ---------------------------------------------------------------- gen

struct GenArgs {
    unsigned sigma = 0;
    std::size_t length = 0;
    std::uint64_t seed = 1;
    std::string out;
};

void add_gen(CLI::App& app, GenArgs& a) {
    auto* cmd = app.add_subcommand("gen", "Write a uniformly random text");
    cmd->add_option("--sigma", a.sigma, "Alphabet size, 2..256")->required();
    cmd->add_option("--len", a.length, "Text length in octets")->required();
    cmd->add_option("--seed", a.seed, "Seed for std::mt19937_64")->capture_default_str();
    cmd->add_option("--out", a.out, "Output file")->required();
}

int cmd_gen(const GenArgs& a) {
    bench::TextSource text;
    try {
        text = bench::generate_random_text(a.sigma, a.length, a.seed);
    } catch (const std::invalid_argument& e) {
        throw CommandError(kUsageOrIo, e.what());
    }
    write_file(a.out, std::string_view(reinterpret_cast<const char*>(text.octets.data()), text.octets.size()));
    return kSuccess;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
    std::vector<unsigned> sigmas;
    std::vector<std::string> corpora;
    std::size_t text_len = bench::kDefaultTextSize;
    std::string lengths = "2:22:2";
    std::size_t reps = 100;
    std::size_t iters = 1;
    std::uint64_t seed = 1;
    std::string algos = "hash3,hash5,hash8,ohash1,ohash2,ohash3";
    std::string out;
    bool include_prep = false;
    bool verify = false;
};

void add_bench(CLI::App& app, BenchArgs& a) {
    auto* cmd = app.add_subcommand("bench", "Time algorithms over a grid of pattern lengths, emit CSV");
    auto* s = cmd->add_option("--sigma", a.sigmas, "Random text alphabet size(s), comma separated")
                  ->delimiter(',');
    auto* c = cmd->add_option("--corpus", a.corpora, "Corpus file(s) read as raw octets")->delimiter(',');
    s->excludes(c);
    cmd->add_option("--text-len", a.text_len, "Random text length")->capture_default_str();
    cmd->add_option("--lengths", a.lengths, "Pattern lengths: lo:hi:step or a,b,c")->capture_default_str();
    cmd->add_option("--reps", a.reps, "Patterns sampled per length")->capture_default_str();
    cmd->add_option("--iters", a.iters, "Timed searches per pattern")->capture_default_str();
    cmd->add_option("--seed", a.seed, "Master seed")->capture_default_str();
    cmd->add_option("--algos", a.algos, "Comma-separated algorithm list")->capture_default_str();
    cmd->add_option("--out", a.out, "CSV output file (stdout when omitted)");
    cmd->add_flag("--include-prep", a.include_prep, "Time preprocessing together with searching");
    cmd->add_flag("--verify", a.verify, "Check full occurrence lists against the naive oracle");
}

std::vector<Variant> parse_algos(const std::string& list) {
    std::vector<Variant> out;
    std::istringstream in(list);
    std::string name;
    while (std::getline(in, name, ','))
        if (!name.empty())
            out.push_back(require_variant(name));
    if (out.empty())
        throw CommandError(kUsageOrIo, "--algos is empty");
    return out;
}

std::string host_note() {
    std::string note;
    if (std::ifstream cpu("/proc/cpuinfo"); cpu) {
        std::string line;
        while (std::getline(cpu, line)) {
            if (line.rfind("model name", 0) == 0) {
                note = line.substr(line.find(':') + 1);
                note.erase(0, note.find_first_not_of(' '));
                break;
            }
        }
    }
    return note.empty() ? "unknown" : note;
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
    if (a.sigmas.empty() && a.corpora.empty())
        throw CommandError(kUsageOrIo, "one of --sigma or --corpus is required");

    bench::BenchConfig config;
    try {
        config.lengths = parse_lengths(a.lengths);
    } catch (const std::invalid_argument& e) {
        throw CommandError(kUsageOrIo, std::string("--lengths: ") + e.what());
    }
    config.reps = a.reps;
    config.inner_iters = a.iters;
    config.seed = a.seed;
    config.algos = parse_algos(a.algos);
    config.include_prep = a.include_prep;
    config.verify_positions = a.verify;

    std::vector<bench::TextSource> texts;
    try {
        config.validate();
        for (unsigned sigma : a.sigmas)
            texts.push_back(bench::generate_random_text(sigma, a.text_len, a.seed));
        for (const auto& path : a.corpora)
            texts.push_back(bench::load_text_file(path));
    } catch (const std::exception& e) {
        throw CommandError(kUsageOrIo, e.what());
    }

    std::ostringstream csv;
    std::ostringstream meta;
    csv << bench::kCsvHeader << '\n';
    meta << "seed=" << a.seed << "\nreps=" << a.reps << "\niters=" << a.iters
         << "\ninclude_prep=" << (a.include_prep ? 1 : 0) << "\nhost=" << host_note() << '\n';
    for (const auto& text : texts) {
        meta << "text." << text.id << ".size=" << text.octets.size() << '\n';
        std::vector<bench::BenchRecord> records;
        try {
            records = bench::run_grid(config, text);
        } catch (const std::invalid_argument& e) {
            throw CommandError(kUsageOrIo, e.what());
        }
        bench::write_csv(csv, records, false);
        err << "bench: " << text.id << " (" << text.octets.size() << " octets) done\n";
    }

    if (a.out.empty()) {
        out << csv.str();
    } else {
        write_file(a.out, csv.str());
        write_file(a.out + ".meta", meta.str());
    }
    return kSuccess;
}

// ---------------------------------------------------------------- report

struct ReportArgs {
    std::string csv;
    std::string out_dir;
};

void add_report(CLI::App& app, ReportArgs& a) {
    auto* cmd = app.add_subcommand("report", "Render tables and plot data from a bench CSV");
    cmd->add_option("--csv", a.csv, "Bench CSV")->required();
    cmd->add_option("--out-dir", a.out_dir, "Directory for <text>.txt and <text>.dat")->required();
}

int cmd_report(const ReportArgs& a, std::ostream& out) {
    std::ifstream in(a.csv, std::ios::binary);
    if (!in)
        throw CommandError(kUsageOrIo, "cannot open " + a.csv);

    std::vector<report::CsvRow> rows;
    try {
        rows = report::parse_bench_csv(in);
    } catch (const report::CsvError& e) {
        throw CommandError(kUsageOrIo, a.csv + ": " + e.what());
    }

    std::string meta;
    if (std::ifstream m(a.csv + ".meta"); m) {
        std::string line;
        while (std::getline(m, line))
            meta += "# " + line + '\n';
    }

    std::error_code ec;
    fs::create_directories(a.out_dir, ec);
    if (ec)
        throw CommandError(kUsageOrIo, "cannot create " + a.out_dir + ": " + ec.message());

    for (const auto& table : report::build_tables(rows)) {
        const std::string rendered = report::render_table(table) + meta;
        write_file(fs::path(a.out_dir) / (table.text + ".txt"), rendered);
        write_file(fs::path(a.out_dir) / (table.text + ".dat"), report::render_plot_data(table));
        out << rendered << '\n';
    }
    return kSuccess;
}

} // namespace

std::vector<std::size_t> parse_lengths(std::string_view spec) {
    std::vector<std::size_t> out;
    if (spec.find(':') != std::string_view::npos) {
        std::vector<std::size_t> parts;
        std::size_t from = 0;
        while (true) {
            const std::size_t colon = spec.find(':', from);
            parts.push_back(parse_size(spec.substr(from, colon - from)));
            if (colon == std::string_view::npos)
                break;
            from = colon + 1;
        }
        if (parts.size() < 2 || parts.size() > 3)
            throw std::invalid_argument("expected lo:hi or lo:hi:step");
        const std::size_t step = parts.size() == 3 ? parts[2] : 1;
        if (step == 0 || parts[0] == 0 || parts[0] > parts[1])
            throw std::invalid_argument("need 1 <= lo <= hi and step >= 1");
        for (std::size_t m = parts[0]; m <= parts[1]; m += step)
            out.push_back(m);
    } else {
        std::size_t from = 0;
        while (from <= spec.size()) {
            const std::size_t comma = std::min(spec.find(',', from), spec.size());
            const std::size_t m = parse_size(spec.substr(from, comma - from));
            if (m == 0)
                throw std::invalid_argument("pattern lengths must be at least 1");
            out.push_back(m);
            from = comma + 1;
        }
    }
    return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact string matching with q-gram hashing (HASHq and optimal-q OHASH variants)", "ohash"};
    app.require_subcommand(1);

    SearchArgs search_args;
    GenArgs gen_args;
    BenchArgs bench_args;
    ReportArgs report_args;
    add_search(app, search_args);
    add_gen(app, gen_args);
    add_bench(app, bench_args);
    add_report(app, report_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageOrIo;
    }

    try {
        if (app.got_subcommand("search"))
            return cmd_search(search_args, out);
        if (app.got_subcommand("gen"))
            return cmd_gen(gen_args);
        if (app.got_subcommand("bench"))
            return cmd_bench(bench_args, out, err);
        return cmd_report(report_args, out);
    } catch (const CommandError& e) {
        err << "error: " << e.what() << '\n';
        return e.code;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsageOrIo;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"ohash"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace ohash::cli
