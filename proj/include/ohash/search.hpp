#pragma once

#include "hashing.hpp"
#include "minimal_q.hpp"

#include <array>
#include <cstring>
#include <optional>
#include <string_view>
#include <type_traits>
#include <vector>

namespace ohash {

/// Sorted start positions of every (possibly overlapping) occurrence.
struct Occurrences {
    std::vector<std::size_t> positions;

    std::size_t count() const noexcept { return positions.size(); }
    friend bool operator==(const Occurrences&, const Occurrences&) = default;
};

/// Observation hooks for the search loops. The default probe compiles away;
/// tests substitute one that bounds-checks text reads and counts symbol
/// comparisons.
struct NoProbe {
    static constexpr bool active = false;
    /// Text octets [first, last) are about to be read.
    constexpr void read(std::size_t, std::size_t) noexcept {}
    /// A shift-0 attempt starts a verification.
    constexpr void verification() noexcept {}
    /// One pattern symbol is compared against one text symbol.
    constexpr void compare() noexcept {}
};

namespace detail {

struct CollectSink {
    std::vector<std::size_t>& out;
    void operator()(std::size_t pos) { out.push_back(pos); }
};

/// Compares x[0..len) against y[0..len), y being text offset `base`.
template <class Probe>
inline bool verify_range(const Octet* x, const Octet* y, std::size_t base, std::size_t len, Probe& probe) {
    if constexpr (!Probe::active) {
        return len == 0 || std::memcmp(x, y, len) == 0;
    } else {
        for (std::size_t i = 0; i < len; ++i) {
            probe.read(base + i, base + i + 1);
            probe.compare();
            if (x[i] != y[i])
                return false;
        }
        return true;
    }
}

/// Window-end scan shared by the generic and perfect engines. `Perfect`
/// selects the shortened check: the final q octets are implied by the
/// bucket, so only the m-q prefix is compared.
template <HashKind K, unsigned Q, bool Perfect, class Sink, class Probe>
void qgram_scan(OctetSpan x, OctetSpan y, const ShiftTable& table, Sink& sink, Probe& probe) {
    const std::size_t m = x.size();
    const std::size_t n = y.size();
    if (n < m || m < Q)
        return;

    const ShiftTable::Entry* shift = table.entries().data();
    const std::size_t sh = table.sh();
    const std::size_t final_bucket = table.final_bucket();
    const Octet* text = y.data();

    std::size_t end = m - 1;
    while (end < n) {
        probe.read(end + 1 - Q, end + 1);
        const unsigned c = hash_at<K, Q>(text + end + 1 - Q);
        if (const std::size_t s = shift[c]; s > 0) {
            end += s;
            continue;
        }

        const std::size_t start = end + 1 - m;
        probe.verification();
        bool match;
        if constexpr (Perfect) {
            // With m == q every bucket defaults to 0, so the bucket itself
            // must still be checked.
            match = c == final_bucket && verify_range(x.data(), text + start, start, m - Q, probe);
        } else {
            match = verify_range(x.data(), text + start, start, m, probe);
        }
        if (match)
            sink(start);
        end += sh;
    }
}

inline void require_table_for(const Pattern& pattern, const ShiftTable& table) {
    if (pattern.size() < table.q())
        throw QTooLarge(pattern.size(), table.q());
    if (table.pattern_length() != pattern.size())
        throw std::invalid_argument("shift table was built for a different pattern length");
}

} // namespace detail

template <class Sink, class Probe = NoProbe>
void naive_search(const Pattern& pattern, OctetSpan text, Sink&& sink, Probe&& probe = {}) {
    const std::size_t m = pattern.size();
    const std::size_t n = text.size();
    if (n < m)
        return;
    for (std::size_t j = 0; j + m <= n; ++j) {
        probe.verification();
        if (detail::verify_range(pattern.data(), text.data() + j, j, m, probe))
            sink(j);
    }
}

/// Reference oracle: direct comparison at every alignment.
inline Occurrences naive_search(const Pattern& pattern, OctetSpan text) {
    Occurrences occ;
    naive_search(pattern, text, detail::CollectSink{occ.positions});
    return occ;
}

template <class Sink, class Probe = NoProbe>
void qgram_search(const Pattern& pattern, OctetSpan text, const ShiftTable& table, Sink&& sink,
                  Probe&& probe = {}) {
    detail::require_table_for(pattern, table);
    dispatch_scheme(table.scheme(), [&]<HashKind K, unsigned Q>() {
        detail::qgram_scan<K, Q, false>(pattern.octets(), text, table, sink, probe);
    });
}

/// Generic q-gram engine: a shift-0 attempt verifies all m symbols.
inline Occurrences qgram_search(const Pattern& pattern, OctetSpan text, const ShiftTable& table) {
    Occurrences occ;
    qgram_search(pattern, text, table, detail::CollectSink{occ.positions});
    return occ;
}

template <class Sink, class Probe = NoProbe>
void perfect_qgram_search(const Pattern& pattern, OctetSpan text, const ShiftTable& table, Sink&& sink,
                          Probe&& probe = {}) {
    detail::require_table_for(pattern, table);
    switch (table.scheme().kind()) {
    case HashKind::Perfect1:
        detail::qgram_scan<HashKind::Perfect1, 1, true>(pattern.octets(), text, table, sink, probe);
        return;
    case HashKind::Perfect2:
        detail::qgram_scan<HashKind::Perfect2, 2, true>(pattern.octets(), text, table, sink, probe);
        return;
    case HashKind::FoldMod:
        break;
    }
    throw std::invalid_argument("perfect engine requires a Perfect1 or Perfect2 shift table");
}

/// Perfect-hash engine: a shift-0 attempt verifies only the first m-q symbols.
/// Requires every pattern q-gram to have a distinct bucket.
inline Occurrences perfect_qgram_search(const Pattern& pattern, OctetSpan text, const ShiftTable& table) {
    Occurrences occ;
    perfect_qgram_search(pattern, text, table, detail::CollectSink{occ.positions});
    return occ;
}

// ----------------------------------------------------------------------------
// Variant dispatch
// ----------------------------------------------------------------------------

enum class Variant : std::uint8_t { Hash3, Hash5, Hash8, OHash1, OHash2, OHash3, Naive };

inline constexpr std::array<Variant, 7> kAllVariants{Variant::Hash3,  Variant::Hash5,  Variant::Hash8,
                                                     Variant::OHash1, Variant::OHash2, Variant::OHash3,
                                                     Variant::Naive};

inline constexpr std::string_view to_string(Variant v) noexcept {
    switch (v) {
    case Variant::Hash3: return "hash3";
    case Variant::Hash5: return "hash5";
    case Variant::Hash8: return "hash8";
    case Variant::OHash1: return "ohash1";
    case Variant::OHash2: return "ohash2";
    case Variant::OHash3: return "ohash3";
    case Variant::Naive: return "naive";
    }
    return "?";
}

inline std::optional<Variant> parse_variant(std::string_view name) noexcept {
    for (Variant v : kAllVariants)
        if (to_string(v) == name)
            return v;
    return std::nullopt;
}

inline constexpr bool is_optimal_hash(Variant v) noexcept {
    return v == Variant::OHash1 || v == Variant::OHash2 || v == Variant::OHash3;
}

enum class EngineKind : std::uint8_t { Naive, QGram, PerfectQGram };

/// Resolved engine for one pattern under one variant.
struct SearchPlan {
    Variant variant = Variant::Naive;
    EngineKind engine = EngineKind::Naive;
    /// q-gram length the engine runs with (0 for the naive engine).
    unsigned q = 0;
    std::optional<ShiftTable> table;
};

namespace detail {

inline SearchPlan fixed_plan(Variant variant, unsigned q, const Pattern& pattern) {
    return {variant, EngineKind::QGram, q, build_shift_table(pattern, HashScheme::fold_mod(q))};
}

} // namespace detail

/// Chooses engine, q and hash scheme for `pattern`.
///
/// HASH3/5/8 run a fixed q and throw QTooLarge when m < q. The OHASH
/// variants take the smallest q whose q-grams hash without collision:
/// OHASH1 uses perfect hashing only at q = 1, OHASH2 at q = 1 and 2, and
/// OHASH3 additionally replaces any q in 3..10 by the fixed q = 3 engine.
/// When no q <= 10 qualifies, all three fall back to the fixed q = 8 engine.
inline SearchPlan plan(Variant variant, const Pattern& pattern) {
    switch (variant) {
    case Variant::Naive: return {variant, EngineKind::Naive, 0, std::nullopt};
    case Variant::Hash3: return detail::fixed_plan(variant, 3, pattern);
    case Variant::Hash5: return detail::fixed_plan(variant, 5, pattern);
    case Variant::Hash8: return detail::fixed_plan(variant, 8, pattern);
    case Variant::OHash1:
    case Variant::OHash2:
    case Variant::OHash3: break;
    }

    const SchemeAssignment assignment = variant == Variant::OHash1   ? SchemeAssignment::ohash1()
                                        : variant == Variant::OHash2 ? SchemeAssignment::ohash2()
                                                                     : SchemeAssignment::ohash3();
    const std::optional<HashScheme> chosen = minimal_unique_hash_q(pattern, assignment);
    if (!chosen)
        return detail::fixed_plan(variant, 8, pattern);
    if (chosen->perfect())
        return {variant, EngineKind::PerfectQGram, chosen->q(), build_shift_table(pattern, *chosen)};
    if (variant == Variant::OHash3)
        return detail::fixed_plan(variant, 3, pattern);
    return {variant, EngineKind::QGram, chosen->q(), build_shift_table(pattern, *chosen)};
}

template <class Sink, class Probe = NoProbe>
void execute(const SearchPlan& plan, const Pattern& pattern, OctetSpan text, Sink&& sink, Probe&& probe = {}) {
    switch (plan.engine) {
    case EngineKind::Naive: naive_search(pattern, text, sink, probe); return;
    case EngineKind::QGram: qgram_search(pattern, text, *plan.table, sink, probe); return;
    case EngineKind::PerfectQGram: perfect_qgram_search(pattern, text, *plan.table, sink, probe); return;
    }
}

inline Occurrences execute(const SearchPlan& plan, const Pattern& pattern, OctetSpan text) {
    Occurrences occ;
    execute(plan, pattern, text, detail::CollectSink{occ.positions});
    return occ;
}

/// Plans and runs `variant`. Throws QTooLarge for fixed-q variants with m < q.
inline Occurrences search(Variant variant, const Pattern& pattern, OctetSpan text) {
    return execute(plan(variant, pattern), pattern, text);
}

} // namespace ohash
