#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ohash {

using Octet = std::uint8_t;
using OctetSpan = std::span<const Octet>;

inline OctetSpan as_octets(std::string_view s) noexcept {
    return {reinterpret_cast<const Octet*>(s.data()), s.size()};
}

/// Raised when an engine with a fixed q-gram length is given a pattern
/// shorter than q.
class QTooLarge : public std::runtime_error {
public:
    QTooLarge(std::size_t m, unsigned q)
        : std::runtime_error("pattern length " + std::to_string(m) +
                             " is smaller than the q-gram length " + std::to_string(q) +
                             "; a q-gram engine cannot search patterns shorter than q"),
          m_(m), q_(q) {}

    std::size_t pattern_length() const noexcept { return m_; }
    unsigned q() const noexcept { return q_; }

private:
    std::size_t m_;
    unsigned q_;
};

/// Immutable, non-empty pattern.
class Pattern {
public:
    explicit Pattern(OctetSpan octets) : octets_(octets.begin(), octets.end()) {
        if (octets_.empty())
            throw std::invalid_argument("pattern must contain at least one octet");
    }
    explicit Pattern(std::string_view s) : Pattern(as_octets(s)) {}

    std::size_t size() const noexcept { return octets_.size(); }
    OctetSpan octets() const noexcept { return octets_; }
    Octet operator[](std::size_t i) const noexcept { return octets_[i]; }
    const Octet* data() const noexcept { return octets_.data(); }

    friend bool operator==(const Pattern&, const Pattern&) = default;

private:
    std::vector<Octet> octets_;
};

enum class HashKind : std::uint8_t { Perfect1, Perfect2, FoldMod };

inline constexpr unsigned kMaxFoldQ = 10;

/// Hash function assigned to one q-gram length.
///
/// Perfect1 is the identity on single octets (256 buckets), Perfect2
/// concatenates two octets into 16 bits (65536 buckets). FoldMod folds
/// the q-gram with shift-left-one-and-add and reduces mod 256.
class HashScheme {
public:
    static constexpr HashScheme perfect1() noexcept { return {HashKind::Perfect1, 1}; }
    static constexpr HashScheme perfect2() noexcept { return {HashKind::Perfect2, 2}; }
    static HashScheme fold_mod(unsigned q) {
        // q = 2 is reachable through the OHASH1 assignment.
        if (q < 2 || q > kMaxFoldQ)
            throw std::invalid_argument("fold-mod hashing needs 2 <= q <= 10, got " +
                                        std::to_string(q));
        return {HashKind::FoldMod, q};
    }

    constexpr HashKind kind() const noexcept { return kind_; }
    constexpr unsigned q() const noexcept { return q_; }
    constexpr bool perfect() const noexcept { return kind_ != HashKind::FoldMod; }
    constexpr std::size_t table_size() const noexcept {
        return kind_ == HashKind::Perfect2 ? 65536 : 256;
    }

    friend constexpr bool operator==(HashScheme, HashScheme) = default;

private:
    constexpr HashScheme(HashKind kind, unsigned q) noexcept : kind_(kind), q_(q) {}

    HashKind kind_;
    unsigned q_;
};

inline const char* to_string(HashKind kind) noexcept {
    switch (kind) {
    case HashKind::Perfect1: return "perfect1";
    case HashKind::Perfect2: return "perfect2";
    case HashKind::FoldMod: return "foldmod";
    }
    return "?";
}

namespace detail {

template <std::size_t... I>
constexpr unsigned fold_unrolled(const Octet* p, std::index_sequence<I...>) noexcept {
    unsigned h = 0;
    ((h = (h << 1) + p[I]), ...);
    return h;
}

} // namespace detail

/// Fold hash of the q octets starting at `p`, expanded at compile time.
template <unsigned Q>
constexpr unsigned fold_hash(const Octet* p) noexcept {
    static_assert(Q >= 1 && Q <= kMaxFoldQ);
    return detail::fold_unrolled(p, std::make_index_sequence<Q>{}) & 0xFFu;
}

/// Bucket of the q-gram starting at `p` under a statically known scheme.
template <HashKind K, unsigned Q>
constexpr unsigned hash_at(const Octet* p) noexcept {
    if constexpr (K == HashKind::Perfect1) {
        static_assert(Q == 1);
        return p[0];
    } else if constexpr (K == HashKind::Perfect2) {
        static_assert(Q == 2);
        return (unsigned{p[0]} << 8) | p[1];
    } else {
        return fold_hash<Q>(p);
    }
}

/// Calls `fn.template operator()<K, Q>()` for the scheme's compile-time
/// instantiation.
template <class Fn>
decltype(auto) dispatch_scheme(HashScheme scheme, Fn&& fn) {
    switch (scheme.kind()) {
    case HashKind::Perfect1: return fn.template operator()<HashKind::Perfect1, 1>();
    case HashKind::Perfect2: return fn.template operator()<HashKind::Perfect2, 2>();
    case HashKind::FoldMod: break;
    }
    switch (scheme.q()) {
    case 2: return fn.template operator()<HashKind::FoldMod, 2>();
    case 3: return fn.template operator()<HashKind::FoldMod, 3>();
    case 4: return fn.template operator()<HashKind::FoldMod, 4>();
    case 5: return fn.template operator()<HashKind::FoldMod, 5>();
    case 6: return fn.template operator()<HashKind::FoldMod, 6>();
    case 7: return fn.template operator()<HashKind::FoldMod, 7>();
    case 8: return fn.template operator()<HashKind::FoldMod, 8>();
    case 9: return fn.template operator()<HashKind::FoldMod, 9>();
    default: return fn.template operator()<HashKind::FoldMod, 10>();
    }
}

/// Bucket index in [0, scheme.table_size()) of a q-gram.
inline std::size_t hash_qgram(HashScheme scheme, OctetSpan window) {
    if (window.size() != scheme.q())
        throw std::invalid_argument("q-gram window length " + std::to_string(window.size()) +
                                    " does not match scheme q " + std::to_string(scheme.q()));
    return dispatch_scheme(scheme, [&]<HashKind K, unsigned Q>() -> std::size_t {
        return hash_at<K, Q>(window.data());
    });
}

/// Shift amounts per hash bucket for one pattern under one scheme.
///
/// Entries are indexed by q-gram end position e in [q-1, m-1]: the bucket of
/// x[e-q+1..e] holds the minimal m-1-e, so the final q-gram's bucket is 0.
/// Buckets no pattern q-gram reaches hold m-q.
class ShiftTable {
public:
    using Entry = std::uint16_t;

    HashScheme scheme() const noexcept { return scheme_; }
    unsigned q() const noexcept { return scheme_.q(); }
    std::size_t pattern_length() const noexcept { return m_; }
    /// Shift applied after a verification attempt.
    std::size_t sh() const noexcept { return sh_; }
    std::size_t default_shift() const noexcept { return m_ - scheme_.q(); }
    /// Bucket of the pattern's final q-gram.
    std::size_t final_bucket() const noexcept { return final_bucket_; }

    std::span<const Entry> entries() const noexcept { return entries_; }
    Entry operator[](std::size_t bucket) const noexcept { return entries_[bucket]; }

    friend ShiftTable build_shift_table(const Pattern& pattern, HashScheme scheme);

private:
    ShiftTable(HashScheme scheme, std::size_t m)
        : scheme_(scheme), m_(m), entries_(scheme.table_size(), static_cast<Entry>(m - scheme.q())) {}

    HashScheme scheme_;
    std::size_t m_;
    std::size_t sh_ = 1;
    std::size_t final_bucket_ = 0;
    std::vector<Entry> entries_;
};

inline ShiftTable build_shift_table(const Pattern& pattern, HashScheme scheme) {
    const std::size_t m = pattern.size();
    const unsigned q = scheme.q();
    if (m < q)
        throw QTooLarge(m, q);
    if (m > std::numeric_limits<ShiftTable::Entry>::max())
        throw std::length_error("pattern longer than 65535 octets does not fit 16-bit shifts");

    ShiftTable table(scheme, m);
    dispatch_scheme(scheme, [&]<HashKind K, unsigned Q>() {
        const Octet* x = pattern.data();
        for (std::size_t e = Q - 1; e < m; ++e)
            table.entries_[hash_at<K, Q>(x + e + 1 - Q)] = static_cast<ShiftTable::Entry>(m - 1 - e);

        table.final_bucket_ = hash_at<K, Q>(x + m - Q);
        if (m == Q) {
            table.sh_ = 1;
            return;
        }
        table.sh_ = m - Q;
        for (std::size_t e = m - 1; e-- > Q - 1;) {
            if (hash_at<K, Q>(x + e + 1 - Q) == table.final_bucket_) {
                table.sh_ = m - 1 - e;
                break;
            }
        }
    });
    return table;
}

} // namespace ohash
