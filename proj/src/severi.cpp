#include "nodal/severi.hpp"

#include "nodal/errors.hpp"

#include <charconv>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

namespace nodal {

namespace {

int parse_int(std::string_view s, const char* what)
{
    int value = 0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc() || ptr != end) throw ValidationError(std::string("malformed ") + what + ": \"" + std::string(s) + "\"");
    return value;
}

BigInt binomial(long n, long k)
{
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// TangencyProfile

TangencyProfile TangencyProfile::from_counts(const std::map<int, int>& counts)
{
    TangencyProfile p;
    for (auto [m, c] : counts) p.add(m, c);
    return p;
}

TangencyProfile TangencyProfile::single(int m, int count)
{
    TangencyProfile p;
    p.add(m, count);
    return p;
}

int TangencyProfile::count(int m) const
{
    if (m < 1 || m > max_multiplicity()) return 0;
    return static_cast<int>(counts_[static_cast<std::size_t>(m - 1)]);
}

int TangencyProfile::weight() const
{
    int w = 0;
    for (std::size_t i = 0; i < counts_.size(); ++i) w += static_cast<int>(i + 1) * static_cast<int>(counts_[i]);
    return w;
}

int TangencyProfile::size() const
{
    int s = 0;
    for (auto c : counts_) s += static_cast<int>(c);
    return s;
}

void TangencyProfile::add(int m, int delta)
{
    if (m < 1) throw ValidationError("tangency multiplicity must be positive, got " + std::to_string(m));
    if (delta == 0) return;
    if (static_cast<std::size_t>(m) > counts_.size()) counts_.resize(static_cast<std::size_t>(m), 0);
    const long updated = static_cast<long>(counts_[m - 1]) + delta;
    if (updated < 0) throw ValidationError("tangency count would become negative");
    counts_[m - 1] = static_cast<std::uint32_t>(updated);
    trim();
}

void TangencyProfile::trim()
{
    while (!counts_.empty() && counts_.back() == 0) counts_.pop_back();
}

std::string TangencyProfile::to_string() const
{
    std::string out;
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        if (counts_[i] == 0) continue;
        if (!out.empty()) out += ',';
        out += std::to_string(i + 1) + '^' + std::to_string(counts_[i]);
    }
    return out;
}

TangencyProfile TangencyProfile::parse(std::string_view text)
{
    TangencyProfile p;
    int last = 0;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto item = text.substr(0, comma);
        const auto caret = item.find('^');
        if (caret == std::string_view::npos) throw ValidationError("tangency entry needs m^count: \"" + std::string(item) + "\"");
        const int m = parse_int(item.substr(0, caret), "multiplicity");
        const int c = parse_int(item.substr(caret + 1), "count");
        if (m <= last) throw ValidationError("tangency multiplicities must be strictly ascending");
        if (c <= 0) throw ValidationError("tangency counts must be positive");
        p.add(m, c);
        last = m;
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    }
    return p;
}

// ---------------------------------------------------------------------------
// SeveriKey

std::string SeveriKey::canonical() const
{
    return std::to_string(d) + ':' + std::to_string(delta) + ':' + alpha.to_string() + '|' + beta.to_string();
}

SeveriKey SeveriKey::parse(std::string_view text)
{
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
    const auto bar = text.find('|');
    if (c2 == std::string_view::npos || bar == std::string_view::npos || bar < c2)
        throw ValidationError("malformed Severi key \"" + std::string(text) + "\"");
    SeveriKey key;
    key.d = parse_int(text.substr(0, c1), "degree");
    key.delta = parse_int(text.substr(c1 + 1, c2 - c1 - 1), "cogenus");
    key.alpha = TangencyProfile::parse(text.substr(c2 + 1, bar - c2 - 1));
    key.beta = TangencyProfile::parse(text.substr(bar + 1));
    return key;
}

// ---------------------------------------------------------------------------
// SeveriTable

std::optional<BigInt> SeveriTable::lookup(const std::string& key) const
{
    std::shared_lock lock(mutex_);
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        ++misses_;
        return std::nullopt;
    }
    ++hits_;
    return it->second;
}

void SeveriTable::insert(const std::string& key, const BigInt& value)
{
    std::unique_lock lock(mutex_);
    auto [it, inserted] = entries_.try_emplace(key, value);
    if (!inserted && it->second != value)
        throw ConsistencyError("memo entry " + key + " recomputed as " + to_string(value) + ", stored "
                               + to_string(it->second));
}

std::size_t SeveriTable::size() const
{
    std::shared_lock lock(mutex_);
    return entries_.size();
}

void SeveriTable::clear()
{
    std::unique_lock lock(mutex_);
    entries_.clear();
    persisted_.clear();
    hits_ = 0;
    misses_ = 0;
}

std::size_t SeveriTable::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) return 0;
    std::string line;
    if (!std::getline(in, line) || line != cache_header) return 0;

    std::size_t loaded = 0;
    std::unique_lock lock(mutex_);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) throw ValidationError("corrupt cache line in " + path.string());
        std::string key = line.substr(0, tab);
        BigInt value(line.substr(tab + 1));
        auto [it, inserted] = entries_.try_emplace(key, value);
        if (!inserted && it->second != value)
            throw ConsistencyError("cache entry " + key + " disagrees with the in-memory table");
        persisted_.insert(std::move(key));
        ++loaded;
    }
    return loaded;
}

std::size_t SeveriTable::save(const std::filesystem::path& path)
{
    bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
    if (!fresh) {
        std::ifstream in(path);
        std::string header;
        std::getline(in, header);
        if (header != cache_header)
            throw ValidationError("refusing to append to cache with a different format: " + path.string());
    }

    std::unique_lock lock(mutex_);
    std::vector<std::string> pending;
    for (const auto& [key, value] : entries_)
        if (!persisted_.contains(key)) pending.push_back(key);
    std::sort(pending.begin(), pending.end());

    std::ofstream out(path, std::ios::app);
    if (!out) throw ValidationError("cannot open cache file " + path.string());
    if (fresh) out << cache_header << '\n';
    for (const auto& key : pending) {
        out << key << '\t' << entries_.at(key).get_str() << '\n';
        persisted_.insert(key);
    }
    return pending.size();
}

std::map<std::string, BigInt> SeveriTable::entries() const
{
    std::shared_lock lock(mutex_);
    return {entries_.begin(), entries_.end()};
}

// ---------------------------------------------------------------------------
// Recursion

namespace {

/// Calls fn(gamma) for every profile gamma of weight `weight` with at least
/// `min_size` points, largest multiplicity first.
void for_each_partition(int weight, int min_size, const std::function<void(const TangencyProfile&)>& fn)
{
    TangencyProfile current;
    std::function<void(int, int, int)> rec = [&](int remaining, int max_part, int parts) {
        if (remaining == 0) {
            if (parts >= min_size) fn(current);
            return;
        }
        // Even all-ones completion cannot reach min_size.
        if (parts + remaining < min_size) return;
        for (int m = std::min(remaining, max_part); m >= 1; --m) {
            current.add(m, 1);
            rec(remaining - m, m, parts + 1);
            current.add(m, -1);
        }
    };
    rec(weight, weight, 0);
}

/// Calls fn(sub) for every sub-profile sub <= profile.
void for_each_subprofile(const TangencyProfile& profile, const std::function<void(const TangencyProfile&)>& fn)
{
    TangencyProfile current;
    const int top = profile.max_multiplicity();
    std::function<void(int)> rec = [&](int m) {
        if (m > top) {
            fn(current);
            return;
        }
        const int c = profile.count(m);
        for (int k = 0; k <= c; ++k) {
            rec(m + 1);
            if (k < c) current.add(m, 1);
        }
        current.add(m, -c);
    };
    rec(1);
}

BigInt compute(const SeveriKey& key, SeveriTable& table)
{
    if (key.delta < 0) return 0;
    if (!key.admissible())
        throw ValidationError("profile weight mismatch: I(alpha) + I(beta) = "
                              + std::to_string(key.alpha.weight() + key.beta.weight()) + " but d = "
                              + std::to_string(key.d) + " (key " + key.canonical() + ")");
    if (key.d == 1) return key.delta == 0 ? 1 : 0;

    const std::string id = key.canonical();
    if (auto hit = table.lookup(id)) return *hit;

    const int d = key.d;
    const int delta = key.delta;
    BigInt total = 0;

    // An unassigned tangency point of order k becomes assigned.
    for (int k = 1; k <= key.beta.max_multiplicity(); ++k) {
        if (key.beta.count(k) == 0) continue;
        SeveriKey sub{d, delta, key.alpha, key.beta};
        sub.alpha.add(k, 1);
        sub.beta.add(k, -1);
        NODAL_CHECK(sub.admissible(), "subcall lost admissibility");
        NODAL_CHECK(sub.beta.size() < key.beta.size(), "termination measure did not decrease");
        total += k * compute(sub, table);
    }

    // The curve degenerates to the line plus a curve of degree d - 1.
    // gamma = beta' - beta carries the new unassigned tangencies; I(alpha') + I(gamma) = I(alpha) - 1.
    const int min_new = d - 1 - delta;
    for_each_subprofile(key.alpha, [&](const TangencyProfile& alpha_sub) {
        const int w = key.alpha.weight() - 1 - alpha_sub.weight();
        if (w < 0 || w < min_new) return;
        BigInt alpha_choices = 1;
        for (int m = 1; m <= key.alpha.max_multiplicity(); ++m)
            alpha_choices *= binomial(key.alpha.count(m), alpha_sub.count(m));

        for_each_partition(w, std::max(min_new, 0), [&](const TangencyProfile& gamma) {
            SeveriKey sub{d - 1, delta - (d - 1) + gamma.size(), alpha_sub, key.beta};
            BigInt coeff = alpha_choices;
            for (int m = 1; m <= gamma.max_multiplicity(); ++m) {
                const int g = gamma.count(m);
                if (g == 0) continue;
                sub.beta.add(m, g);
                BigInt power;
                mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(g));
                coeff *= power * binomial(sub.beta.count(m), key.beta.count(m));
            }
            NODAL_CHECK(sub.admissible(), "subcall lost admissibility");
            NODAL_CHECK(sub.delta <= delta, "cogenus increased in a subcall");
            if (sub.delta < 0) return;
            total += coeff * compute(sub, table);
        });
    });

    NODAL_CHECK(total >= 0, "negative Severi degree for " + id);
    table.insert(id, total);
    return total;
}

} // namespace

BigInt severi_relative(const SeveriKey& key, SeveriTable& table)
{
    return compute(key, table);
}

BigInt severi(int d, int delta, SeveriTable& table)
{
    if (d < 1) throw ValidationError("degree must be positive");
    if (delta < 0) throw ValidationError("cogenus must be nonnegative");
    return compute(SeveriKey::plain(d, delta), table);
}

std::vector<BigInt> severi_many(std::span<const SeveriKey> keys, SeveriTable& table, unsigned threads)
{
    std::vector<BigInt> out(keys.size());
    std::vector<std::exception_ptr> errors(keys.size());
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(keys.size())));
    if (workers <= 1) {
        for (std::size_t i = 0; i < keys.size(); ++i) out[i] = compute(keys[i], table);
        return out;
    }

    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < keys.size(); i = next++) {
                    try {
                        out[i] = compute(keys[i], table);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

int p2_threshold(int order)
{
    return std::max(1, 5 * order - 1);
}

PowerSeries p2_series(int d, int order, SeveriTable& table, bool unsafe, unsigned threads)
{
    if (d < 1) throw ValidationError("degree must be positive");
    if (order < 0) throw ValidationError("order must be nonnegative");
    if (!unsafe) {
        for (int r = 1; r <= order; ++r)
            if (d < 5 * r - 1)
                throw ValidationError("O(" + std::to_string(d) + ") is not (5r-1)-very ample for r = " + std::to_string(r)
                                      + " (need d >= " + std::to_string(5 * r - 1) + "); pass unsafe to override");
    }
    std::vector<SeveriKey> keys;
    for (int r = 0; r <= order; ++r) keys.push_back(SeveriKey::plain(d, r));
    const auto values = severi_many(keys, table, threads);
    std::vector<Rational> coeffs;
    coeffs.reserve(values.size());
    for (const auto& v : values) coeffs.emplace_back(v);
    return PowerSeries(std::move(coeffs), 'x');
}

std::vector<Rational> interpolate(std::span<const Rational> xs, std::span<const Rational> ys)
{
    if (xs.size() != ys.size() || xs.empty()) throw ValidationError("interpolation needs matching nonempty samples");
    const std::size_t n = xs.size();
    // Divided differences, then expand the Newton form.
    std::vector<Rational> dd(ys.begin(), ys.end());
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i) {
            const Rational gap = xs[i] - xs[i - level];
            if (gap == 0) throw ValidationError("interpolation nodes must be distinct");
            dd[i] = (dd[i] - dd[i - 1]) / gap;
        }
    std::vector<Rational> poly(n);
    for (std::size_t k = n; k-- > 0;) {
        // poly = poly * (x - xs[k]) + dd[k]
        for (std::size_t j = n - 1; j >= 1; --j) poly[j] = poly[j - 1] - xs[k] * poly[j];
        poly[0] = -xs[k] * poly[0] + dd[k];
    }
    while (poly.size() > 1 && poly.back() == 0) poly.pop_back();
    return poly;
}

Rational evaluate_polynomial(std::span<const Rational> coefficients, const Rational& x)
{
    Rational acc = 0;
    for (std::size_t k = coefficients.size(); k-- > 0;) acc = acc * x + coefficients[k];
    return acc;
}

NodePolynomialReport node_poly_check(int delta, int dmin, int dmax, SeveriTable& table, unsigned threads)
{
    if (delta < 0) throw ValidationError("cogenus must be nonnegative");
    if (dmin < 1) throw ValidationError("degree window must start at d >= 1");
    const int needed = 2 * delta + 2;
    if (dmax - dmin + 1 < needed)
        throw ValidationError("window too short: need at least " + std::to_string(needed) + " degrees for cogenus "
                              + std::to_string(delta));

    NodePolynomialReport report;
    report.delta = delta;
    report.dmin = dmin;
    report.dmax = dmax;

    std::vector<SeveriKey> keys;
    for (int d = dmin; d <= dmax; ++d) keys.push_back(SeveriKey::plain(d, delta));
    report.values = severi_many(keys, table, threads);

    const std::size_t fit_points = static_cast<std::size_t>(2 * delta + 1);
    std::vector<Rational> xs, ys;
    for (std::size_t i = 0; i < fit_points; ++i) {
        xs.emplace_back(dmin + static_cast<int>(i));
        ys.emplace_back(report.values[i]);
    }
    report.polynomial = interpolate(xs, ys);
    report.fits = true;
    for (std::size_t i = fit_points; i < report.values.size(); ++i) {
        const int d = dmin + static_cast<int>(i);
        if (evaluate_polynomial(report.polynomial, Rational(d)) != Rational(report.values[i])) {
            report.fits = false;
            report.first_mismatch = d;
            break;
        }
    }
    return report;
}

} // namespace nodal
