#pragma once

#include "search.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <vector>

namespace ohash::bench {

/// Materialized benchmark text.
struct TextSource {
    enum class Kind : std::uint8_t { RandomUniform, File };

    Kind kind = Kind::RandomUniform;
    /// Class label used in CSV and reports ("rand8", or the corpus file stem).
    std::string id;
    /// Alphabet size for random texts; distinct octets observed for files.
    unsigned sigma = 0;
    std::uint64_t seed = 0;
    std::string path;
    std::vector<Octet> octets;

    OctetSpan view() const noexcept { return octets; }
};

/// Uniform draw in [0, bound) from a 64-bit Mersenne Twister by rejection,
/// so the sequence is identical under every standard library.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

/// SplitMix64 finalizer, used to derive independent sub-seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// i.i.d. symbols from {0, ..., sigma-1} using std::mt19937_64(seed).
inline TextSource generate_random_text(unsigned sigma, std::size_t length, std::uint64_t seed) {
    if (sigma < 2 || sigma > 256)
        throw std::invalid_argument("alphabet size must be within [2, 256], got " + std::to_string(sigma));
    if (length == 0)
        throw std::invalid_argument("text length must be at least 1");

    TextSource text;
    text.kind = TextSource::Kind::RandomUniform;
    text.id = "rand" + std::to_string(sigma);
    text.sigma = sigma;
    text.seed = seed;
    text.octets.resize(length);
    std::mt19937_64 rng(seed);
    for (auto& o : text.octets)
        o = static_cast<Octet>(uniform_below(rng, sigma));
    return text;
}

inline std::vector<Octet> read_octets(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::vector<Octet> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad())
        throw std::runtime_error("error reading " + path.string());
    return data;
}

/// Loads a corpus file as raw octets.
inline TextSource load_text_file(const std::filesystem::path& path) {
    TextSource text;
    text.kind = TextSource::Kind::File;
    text.id = path.stem().string();
    text.path = path.string();
    text.octets = read_octets(path);
    if (text.octets.empty())
        throw std::runtime_error("corpus file " + path.string() + " is empty");
    std::array<bool, 256> seen{};
    for (Octet o : text.octets)
        seen[o] = true;
    for (bool b : seen)
        text.sigma += b;
    return text;
}

/// `reps` substrings of length m at uniformly drawn start positions.
inline std::vector<Pattern> sample_patterns(const TextSource& text, std::size_t m, std::size_t reps,
                                            std::uint64_t seed) {
    const std::size_t n = text.octets.size();
    if (m == 0 || m > n)
        throw std::invalid_argument("cannot sample patterns of length " + std::to_string(m) +
                                    " from a text of length " + std::to_string(n));
    std::mt19937_64 rng(seed);
    std::vector<Pattern> out;
    out.reserve(reps);
    for (std::size_t r = 0; r < reps; ++r) {
        const std::size_t start = uniform_below(rng, n - m + 1);
        out.emplace_back(text.view().subspan(start, m));
    }
    return out;
}

struct CellOptions {
    std::size_t inner_iters = 1;
    /// Time plan construction together with each search.
    bool include_prep = false;
    /// Compare full position lists with the naive oracle, not only totals.
    bool verify_positions = false;
};

/// One timed (algorithm, text, m) cell.
struct BenchRecord {
    Variant algo = Variant::Naive;
    std::string text_id;
    unsigned sigma = 0;
    std::size_t m = 0;
    bool applicable = true;
    double mean_ms = 0;
    double std_ms = 0;
    /// Mean plan construction time per pattern.
    double prep_ms = 0;
    std::uint64_t occ_total = 0;
    /// Resolved q over sampled patterns, binned as q = 1, q = 2, q >= 3.
    std::array<std::size_t, 3> q_hist{};
};

namespace detail {

struct CountSink {
    std::uint64_t count = 0;
    void operator()(std::size_t) noexcept { ++count; }
};

inline double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace detail

class OracleMismatch : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Times `variant` over every pattern `inner_iters` times. Preprocessing is
/// timed separately unless `include_prep` is set. The occurrence total is
/// checked against the naive oracle; a variant that cannot handle some
/// pattern yields an inapplicable record.
inline BenchRecord run_cell(Variant variant, const TextSource& text, const std::vector<Pattern>& patterns,
                            const CellOptions& options = {}) {
    if (options.inner_iters == 0)
        throw std::invalid_argument("inner_iters must be at least 1");

    BenchRecord rec;
    rec.algo = variant;
    rec.text_id = text.id;
    rec.sigma = text.sigma;
    rec.m = patterns.empty() ? 0 : patterns.front().size();

    std::vector<SearchPlan> plans;
    plans.reserve(patterns.size());
    double prep_total = 0;
    try {
        for (const Pattern& p : patterns) {
            const auto t0 = std::chrono::steady_clock::now();
            plans.push_back(plan(variant, p));
            prep_total += detail::ms_since(t0);
        }
    } catch (const QTooLarge&) {
        rec.applicable = false;
        return rec;
    }
    rec.prep_ms = patterns.empty() ? 0 : prep_total / static_cast<double>(patterns.size());

    if (is_optimal_hash(variant))
        for (const SearchPlan& sp : plans)
            ++rec.q_hist[std::min<unsigned>(sp.q, 3) - 1];

    std::vector<double> samples;
    samples.reserve(patterns.size() * options.inner_iters);
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        std::uint64_t first_count = 0;
        for (std::size_t it = 0; it < options.inner_iters; ++it) {
            detail::CountSink sink;
            const auto t0 = std::chrono::steady_clock::now();
            if (options.include_prep) {
                const SearchPlan fresh = plan(variant, patterns[i]);
                execute(fresh, patterns[i], text.view(), sink);
            } else {
                execute(plans[i], patterns[i], text.view(), sink);
            }
            samples.push_back(detail::ms_since(t0));
            if (it == 0)
                first_count = sink.count;
            else if (sink.count != first_count)
                throw OracleMismatch("occurrence count changed between repetitions");
        }
        rec.occ_total += first_count;

        if (options.verify_positions &&
            execute(plans[i], patterns[i], text.view()) != naive_search(patterns[i], text.view()))
            throw OracleMismatch(std::string(to_string(variant)) + " positions differ from the naive oracle");
    }

    std::uint64_t oracle_total = 0;
    for (const Pattern& p : patterns) {
        detail::CountSink sink;
        naive_search(p, text.view(), sink);
        oracle_total += sink.count;
    }
    if (oracle_total != rec.occ_total)
        throw OracleMismatch(std::string(to_string(variant)) + " found " + std::to_string(rec.occ_total) +
                             " occurrences, naive oracle found " + std::to_string(oracle_total));

    if (!samples.empty()) {
        double sum = 0;
        for (double s : samples)
            sum += s;
        rec.mean_ms = sum / static_cast<double>(samples.size());
        double sq = 0;
        for (double s : samples)
            sq += (s - rec.mean_ms) * (s - rec.mean_ms);
        rec.std_ms = samples.size() > 1 ? std::sqrt(sq / static_cast<double>(samples.size() - 1)) : 0.0;
    }
    return rec;
}

struct BenchConfig {
    std::vector<std::size_t> lengths = default_lengths();
    std::size_t reps = 100;
    std::size_t inner_iters = 1;
    std::uint64_t seed = 1;
    std::vector<Variant> algos = {Variant::Hash3,  Variant::Hash5,  Variant::Hash8,
                                  Variant::OHash1, Variant::OHash2, Variant::OHash3};
    bool include_prep = false;
    bool verify_positions = false;

    /// Even lengths 2, 4, ..., 22.
    static std::vector<std::size_t> default_lengths() {
        std::vector<std::size_t> v;
        for (std::size_t m = 2; m <= 22; m += 2)
            v.push_back(m);
        return v;
    }

    void validate() const {
        if (lengths.empty())
            throw std::invalid_argument("at least one pattern length is required");
        for (std::size_t m : lengths)
            if (m == 0)
                throw std::invalid_argument("pattern lengths must be at least 1");
        if (reps == 0 || inner_iters == 0)
            throw std::invalid_argument("reps and inner_iters must be at least 1");
        if (algos.empty())
            throw std::invalid_argument("at least one algorithm is required");
    }
};

/// Default text size for random classes (1 MiB).
inline constexpr std::size_t kDefaultTextSize = std::size_t{1} << 20;

/// Seed used to sample the length-m patterns of a run seeded with `seed`.
constexpr std::uint64_t pattern_seed(std::uint64_t seed, std::size_t m) noexcept {
    return mix_seed(seed ^ mix_seed(m));
}

/// Runs every (m, algorithm) cell over one text. All algorithms at a given m
/// see the same sampled patterns.
inline std::vector<BenchRecord> run_grid(const BenchConfig& config, const TextSource& text) {
    config.validate();
    std::vector<BenchRecord> out;
    const CellOptions options{config.inner_iters, config.include_prep, config.verify_positions};
    for (std::size_t m : config.lengths) {
        if (m > text.octets.size())
            throw std::invalid_argument("pattern length " + std::to_string(m) + " exceeds the text length");
        const auto patterns = sample_patterns(text, m, config.reps, pattern_seed(config.seed, m));
        for (Variant v : config.algos)
            out.push_back(run_cell(v, text, patterns, options));
    }
    return out;
}

// ----------------------------------------------------------------------------
// CSV
// ----------------------------------------------------------------------------

inline constexpr std::string_view kCsvHeader = "algo,text,sigma,m,mean_ms,std_ms,occ_total,q1,q2,q3plus,prep_ms";

inline std::string format_ms(double ms) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", ms);
    return buf;
}

inline std::string to_csv_row(const BenchRecord& r) {
    std::string row;
    row += to_string(r.algo);
    row += ',' + r.text_id + ',' + std::to_string(r.sigma) + ',' + std::to_string(r.m) + ',';
    if (r.applicable) {
        row += format_ms(r.mean_ms) + ',' + format_ms(r.std_ms) + ',' + std::to_string(r.occ_total);
    } else {
        row += "NA,NA,NA";
    }
    for (std::size_t c : r.q_hist)
        row += ',' + std::to_string(c);
    row += ',';
    row += r.applicable ? format_ms(r.prep_ms) : "NA";
    return row;
}

inline void write_csv(std::ostream& out, const std::vector<BenchRecord>& records, bool header = true) {
    if (header)
        out << kCsvHeader << '\n';
    for (const BenchRecord& r : records)
        out << to_csv_row(r) << '\n';
}

} // namespace ohash::bench
