#pragma once

#include "nodal/power_series.hpp"
#include "nodal/rational.hpp"

#include <atomic>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace nodal {

/// Multiset of tangency orders with a fixed line, stored as counts per
/// multiplicity. counts()[m-1] is the number of points of order m; trailing
/// zero counts are trimmed so each multiset has exactly one representation.
class TangencyProfile {
public:
    TangencyProfile() = default;
    static TangencyProfile from_counts(const std::map<int, int>& counts);
    /// count points of multiplicity m.
    static TangencyProfile single(int m, int count = 1);

    int count(int m) const;
    int max_multiplicity() const { return static_cast<int>(counts_.size()); }
    /// I(alpha) = sum m * alpha_m.
    int weight() const;
    /// |alpha| = sum alpha_m.
    int size() const;
    bool empty() const { return counts_.empty(); }

    /// Adds delta (possibly negative) points of multiplicity m.
    void add(int m, int delta);

    /// "1^2,3^1"; the empty profile is "".
    std::string to_string() const;
    static TangencyProfile parse(std::string_view text);

    auto operator<=>(const TangencyProfile&) const = default;

private:
    void trim();
    std::vector<std::uint32_t> counts_;
};

/// Arguments of a generalized Severi degree N^{d,delta}(alpha, beta).
struct SeveriKey {
    int d = 1;
    int delta = 0;
    TangencyProfile alpha; ///< tangencies at assigned points of the line
    TangencyProfile beta;  ///< tangencies at unassigned points

    static SeveriKey plain(int d, int delta) { return {d, delta, {}, TangencyProfile::single(1, d)}; }

    bool admissible() const { return d >= 1 && alpha.weight() + beta.weight() == d; }

    /// "d:delta:alpha|beta", e.g. "3:1:|1^3".
    std::string canonical() const;
    static SeveriKey parse(std::string_view text);
};

/// Memo table for the recursion. Reads are concurrent, writes take an
/// exclusive lock; a value written twice must agree with itself.
class SeveriTable {
public:
    static constexpr std::string_view cache_header = "# nodal severi cache v1";

    std::optional<BigInt> lookup(const std::string& key) const;
    void insert(const std::string& key, const BigInt& value);

    std::size_t size() const;
    void clear();

    std::uint64_t hits() const { return hits_.load(); }
    std::uint64_t misses() const { return misses_.load(); }

    /// Loads a cache file. Files with a different header are ignored; returns
    /// the number of entries taken.
    std::size_t load(const std::filesystem::path& path);
    /// Appends entries not yet present in the file. Returns the number written.
    std::size_t save(const std::filesystem::path& path);

    /// Snapshot sorted by key.
    std::map<std::string, BigInt> entries() const;

private:
    mutable std::shared_mutex mutex_;
    std::unordered_map<std::string, BigInt> entries_;
    std::unordered_set<std::string> persisted_;
    mutable std::atomic<std::uint64_t> hits_{0};
    mutable std::atomic<std::uint64_t> misses_{0};
};

/// N^{d,delta}(alpha, beta) by the Caporaso-Harris recursion.
BigInt severi_relative(const SeveriKey& key, SeveriTable& table);

/// Plain Severi degree N^{d,delta}: alpha empty, beta = d points of order 1.
BigInt severi(int d, int delta, SeveriTable& table);

/// Evaluates independent keys, spreading them over up to `threads` workers.
/// The result is independent of the thread count.
std::vector<BigInt> severi_many(std::span<const SeveriKey> keys, SeveriTable& table, unsigned threads = 1);

/// sum_{r=0}^{order} N^{d,r} x^r. Unless `unsafe`, requires d >= 5r - 1 for every r <= order.
PowerSeries p2_series(int d, int order, SeveriTable& table, bool unsafe = false, unsigned threads = 1);

/// Smallest plane degree at which O(d) is (5r-1)-very ample for all r <= order.
int p2_threshold(int order);

struct NodePolynomialReport {
    int delta = 0;
    int dmin = 0;
    int dmax = 0;
    bool fits = false;
    std::vector<Rational> polynomial;  ///< ascending coefficients in d
    std::vector<BigInt> values;        ///< N^{d,delta} for d = dmin..dmax
    std::optional<int> first_mismatch; ///< degree where the prediction failed
};

/// Interpolates N^{d,delta} at degrees dmin..dmin+2 delta and checks the
/// polynomial against the rest of the window.
NodePolynomialReport node_poly_check(int delta, int dmin, int dmax, SeveriTable& table, unsigned threads = 1);

/// Exact Newton interpolation through (xs[i], ys[i]); ascending coefficients.
std::vector<Rational> interpolate(std::span<const Rational> xs, std::span<const Rational> ys);
Rational evaluate_polynomial(std::span<const Rational> coefficients, const Rational& x);

} // namespace nodal
