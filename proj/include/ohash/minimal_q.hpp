#pragma once

#include "hashing.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <vector>

namespace ohash {

/// Suffix array of a short pattern with its adjacent LCP array
/// (lcp[0] = 0, lcp[i] = lcp(suffix sa[i-1], suffix sa[i])).
struct SuffixArray {
    std::vector<std::size_t> sa;
    std::vector<std::size_t> lcp;
};

/// Direct comparison sort of all suffixes. Quadratic-ish, meant for patterns.
inline SuffixArray build_suffix_array_naive(OctetSpan text) {
    const std::size_t m = text.size();
    SuffixArray out;
    out.sa.resize(m);
    std::iota(out.sa.begin(), out.sa.end(), std::size_t{0});
    std::sort(out.sa.begin(), out.sa.end(), [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(text.begin() + a, text.end(), text.begin() + b, text.end());
    });

    out.lcp.assign(m, 0);
    for (std::size_t i = 1; i < m; ++i) {
        const std::size_t a = out.sa[i - 1], b = out.sa[i];
        std::size_t l = 0;
        while (a + l < m && b + l < m && text[a + l] == text[b + l])
            ++l;
        out.lcp[i] = l;
    }
    return out;
}

inline SuffixArray build_suffix_array_naive(const Pattern& pattern) {
    return build_suffix_array_naive(pattern.octets());
}

/// Smallest q for which all q-grams are distinct as strings, capped at m.
inline std::size_t string_unique_q_lower_bound(const SuffixArray& sa) {
    const std::size_t m = sa.sa.size();
    const std::size_t max_lcp = sa.lcp.empty() ? 0 : *std::max_element(sa.lcp.begin(), sa.lcp.end());
    return std::min(max_lcp + 1, m);
}

/// Hash scheme a variant uses for each candidate q in [1, 10].
class SchemeAssignment {
public:
    /// Perfect1 at q=1, fold-mod for 2..10.
    static SchemeAssignment ohash1() {
        SchemeAssignment a;
        a.schemes_[1] = HashScheme::perfect1();
        for (unsigned q = 2; q <= kMaxFoldQ; ++q)
            a.schemes_[q] = HashScheme::fold_mod(q);
        return a;
    }

    /// Perfect1 at q=1, Perfect2 at q=2, fold-mod for 3..10.
    static SchemeAssignment ohash2() {
        SchemeAssignment a = ohash1();
        a.schemes_[2] = HashScheme::perfect2();
        return a;
    }

    /// Same probe as ohash2; the dispatcher replaces any q in 3..10 by a
    /// fixed q = 3 engine.
    static SchemeAssignment ohash3() { return ohash2(); }

    HashScheme at(unsigned q) const {
        if (q < 1 || q > kMaxFoldQ)
            throw std::out_of_range("scheme assignment covers q in [1, 10]");
        return *schemes_[q];
    }

private:
    SchemeAssignment() = default;

    std::array<std::optional<HashScheme>, kMaxFoldQ + 1> schemes_{};
};

namespace detail {

inline bool hashes_distinct(OctetSpan x, HashScheme scheme, std::vector<std::uint8_t>& seen) {
    seen.assign(scheme.table_size(), 0);
    return dispatch_scheme(scheme, [&]<HashKind K, unsigned Q>() {
        for (std::size_t i = 0; i + Q <= x.size(); ++i) {
            auto& slot = seen[hash_at<K, Q>(x.data() + i)];
            if (slot)
                return false;
            slot = 1;
        }
        return true;
    });
}

} // namespace detail

/// Smallest q <= 10 such that all q-grams of the pattern land in distinct
/// buckets under `assignment.at(q)`. std::nullopt means no such q exists
/// and the caller falls back to a fixed q = 8 engine.
inline std::optional<HashScheme> minimal_unique_hash_q(const Pattern& pattern,
                                                       const SchemeAssignment& assignment) {
    const std::size_t m = pattern.size();
    const std::size_t q0 = string_unique_q_lower_bound(build_suffix_array_naive(pattern));
    if (q0 > kMaxFoldQ)
        return std::nullopt;

    const std::size_t last = std::min<std::size_t>(kMaxFoldQ, m);
    std::vector<std::uint8_t> seen;
    for (auto q = static_cast<unsigned>(q0); q <= last; ++q) {
        const HashScheme scheme = assignment.at(q);
        // Pigeonhole: more q-grams than buckets cannot be collision-free.
        if (m - q + 1 > scheme.table_size())
            continue;
        if (detail::hashes_distinct(pattern.octets(), scheme, seen))
            return scheme;
    }
    return std::nullopt;
}

} // namespace ohash
