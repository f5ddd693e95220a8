#include "nodal/power_series.hpp"

#include "nodal/errors.hpp"

#include <algorithm>

namespace nodal {

namespace {

void require_order(int order)
{
    if (order < 0) throw ValidationError("truncation order must be nonnegative, got " + std::to_string(order));
}

} // namespace

PowerSeries::PowerSeries(std::vector<Rational> coefficients, char variable)
    : coeffs_(std::move(coefficients)), var_(variable)
{
    if (coeffs_.empty()) throw ValidationError("a power series needs at least one coefficient");
    for (auto& c : coeffs_) c.canonicalize();
}

PowerSeries PowerSeries::zero(int order, char variable)
{
    require_order(order);
    return PowerSeries(std::vector<Rational>(static_cast<std::size_t>(order) + 1), variable);
}

PowerSeries PowerSeries::constant(const Rational& c, int order, char variable)
{
    auto s = zero(order, variable);
    s.coeffs_[0] = c;
    return s;
}

PowerSeries PowerSeries::monomial(int exponent, const Rational& c, int order, char variable)
{
    auto s = zero(order, variable);
    if (exponent < 0) throw ValidationError("negative exponent in monomial");
    if (exponent <= order) s.coeffs_[static_cast<std::size_t>(exponent)] = c;
    return s;
}

PowerSeries PowerSeries::from_integers(std::initializer_list<long> coefficients, char variable)
{
    std::vector<Rational> v;
    v.reserve(coefficients.size());
    for (long c : coefficients) v.emplace_back(c);
    return PowerSeries(std::move(v), variable);
}

std::optional<int> PowerSeries::valuation() const
{
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return static_cast<int>(i);
    return std::nullopt;
}

PowerSeries PowerSeries::truncated(int order) const
{
    require_order(order);
    if (order > this->order())
        throw ValidationError("cannot extend a series from order " + std::to_string(this->order()) + " to "
                              + std::to_string(order));
    return PowerSeries(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + order + 1), var_);
}

PowerSeries PowerSeries::with_variable(char variable) const
{
    auto s = *this;
    s.var_ = variable;
    return s;
}

bool PowerSeries::identical(const PowerSeries& other) const
{
    return coeffs_ == other.coeffs_;
}

PowerSeries PowerSeries::operator-() const
{
    auto s = *this;
    for (auto& c : s.coeffs_) c = -c;
    return s;
}

PowerSeries& PowerSeries::operator+=(const PowerSeries& rhs)
{
    coeffs_.resize(static_cast<std::size_t>(std::min(order(), rhs.order())) + 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& rhs)
{
    coeffs_.resize(static_cast<std::size_t>(std::min(order(), rhs.order())) + 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    return *this;
}

PowerSeries& PowerSeries::operator*=(const PowerSeries& rhs)
{
    return *this = *this * rhs;
}

PowerSeries& PowerSeries::operator/=(const PowerSeries& rhs)
{
    return *this = *this / rhs;
}

PowerSeries& PowerSeries::operator*=(const Rational& c)
{
    for (auto& x : coeffs_) x *= c;
    return *this;
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b)
{
    const int m = std::min(a.order(), b.order());
    std::vector<Rational> out(static_cast<std::size_t>(m) + 1);
    Rational term;
    for (int i = 0; i <= m; ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (int j = 0; i + j <= m; ++j) {
            if (b.coeffs_[j] == 0) continue;
            mpq_mul(term.get_mpq_t(), a.coeffs_[i].get_mpq_t(), b.coeffs_[j].get_mpq_t());
            out[i + j] += term;
        }
    }
    return PowerSeries(std::move(out), a.var_);
}

PowerSeries operator/(const PowerSeries& a, const PowerSeries& b)
{
    if (b.coeffs_[0] == 0) throw SeriesError("non-unit divisor: constant term of the divisor is 0");
    const int m = std::min(a.order(), b.order());
    std::vector<Rational> out(static_cast<std::size_t>(m) + 1);
    const Rational inv = 1 / b.coeffs_[0];
    for (int n = 0; n <= m; ++n) {
        Rational acc = a.coeffs_[n];
        for (int k = 1; k <= n; ++k)
            if (b.coeffs_[k] != 0) acc -= b.coeffs_[k] * out[n - k];
        out[n] = acc * inv;
    }
    return PowerSeries(std::move(out), a.var_);
}

bool operator==(const PowerSeries& a, const PowerSeries& b)
{
    const int m = std::min(a.order(), b.order());
    for (int i = 0; i <= m; ++i)
        if (a.coeffs_[i] != b.coeffs_[i]) return false;
    return true;
}

PowerSeries exp(const PowerSeries& f)
{
    if (f[0] != 0)
        throw SeriesError("normalization: exp needs constant term 0, got " + to_string(f[0]));
    const int m = f.order();
    std::vector<Rational> e(static_cast<std::size_t>(m) + 1);
    e[0] = 1;
    // n e_n = sum_{k=1}^{n} k f_k e_{n-k}
    for (int n = 1; n <= m; ++n) {
        Rational acc;
        for (int k = 1; k <= n; ++k)
            if (f[k] != 0) acc += k * f[k] * e[n - k];
        e[n] = acc / n;
    }
    return PowerSeries(std::move(e), f.variable());
}

PowerSeries log(const PowerSeries& f)
{
    if (f[0] != 1)
        throw SeriesError("normalization: log needs constant term 1, got " + to_string(f[0]));
    const int m = f.order();
    std::vector<Rational> l(static_cast<std::size_t>(m) + 1);
    // n l_n = n f_n - sum_{k=1}^{n-1} k l_k f_{n-k}
    for (int n = 1; n <= m; ++n) {
        Rational acc = n * f[n];
        for (int k = 1; k < n; ++k)
            if (f[n - k] != 0) acc -= k * l[k] * f[n - k];
        l[n] = acc / n;
    }
    return PowerSeries(std::move(l), f.variable());
}

PowerSeries pow(const PowerSeries& f, const Rational& e)
{
    if (f[0] != 1)
        throw SeriesError("normalization: pow needs constant term 1, got " + to_string(f[0]));
    return exp(log(f) * e);
}

PowerSeries ipow(const PowerSeries& f, long n)
{
    PowerSeries base = f;
    if (n < 0) {
        base = PowerSeries::constant(1, f.order(), f.variable()) / f;
        n = -n;
    }
    PowerSeries result = PowerSeries::constant(1, f.order(), f.variable());
    while (n > 0) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n > 0) base *= base;
    }
    return result;
}

PowerSeries compose(const PowerSeries& outer, const PowerSeries& inner)
{
    if (inner[0] != 0)
        throw SeriesError("compose: inner series must have constant term 0, got " + to_string(inner[0]));
    const int m = std::min(outer.order(), inner.order());
    const auto t = inner.truncated(m);
    // Horner in the inner series.
    PowerSeries acc = PowerSeries::constant(outer[m], m, inner.variable());
    for (int k = m - 1; k >= 0; --k) {
        acc = acc * t;
        acc += PowerSeries::constant(outer[k], m, inner.variable());
    }
    return acc;
}

PowerSeries revert(const PowerSeries& g, std::optional<char> result_variable)
{
    if (g[0] != 0) throw SeriesError("revert: constant term must be 0, got " + to_string(g[0]));
    if (g.order() < 1 || g[1] == 0) throw SeriesError("revert: linear coefficient must be nonzero");
    const char var = result_variable.value_or(g.variable() == 'q' ? 'x' : 'q');
    const int m = g.order();
    const Rational inv = 1 / g[1];

    std::vector<Rational> higher(g.coefficients().begin(), g.coefficients().end());
    higher[1] = 0;
    const PowerSeries tail(std::move(higher), var);
    const auto x = PowerSeries::monomial(1, 1, m, var);

    // h <- (x - sum_{k>=2} g_k h^k) / g_1; each pass fixes one more coefficient.
    PowerSeries h = x * inv;
    for (int pass = 1; pass < m; ++pass) h = (x - compose(tail, h)) * inv;
    return h;
}

PowerSeries diff_d(const PowerSeries& f)
{
    std::vector<Rational> out(f.coefficients().begin(), f.coefficients().end());
    for (std::size_t n = 0; n < out.size(); ++n) out[n] *= static_cast<long>(n);
    return PowerSeries(std::move(out), f.variable());
}

PowerSeries shift_down(const PowerSeries& f, int k)
{
    if (k < 0) throw ValidationError("shift_down by a negative amount");
    if (k > f.order()) throw ValidationError("shift_down by more than the truncation order");
    for (int i = 0; i < k; ++i)
        if (f[i] != 0)
            throw SeriesError("shift_down by " + std::to_string(k) + ": coefficient " + std::to_string(i)
                              + " is nonzero (" + to_string(f[i]) + ")");
    return PowerSeries(std::vector<Rational>(f.coefficients().begin() + k, f.coefficients().end()), f.variable());
}

PowerSeries shift_up(const PowerSeries& f, int k)
{
    if (k < 0) throw ValidationError("shift_up by a negative amount");
    std::vector<Rational> v(static_cast<std::size_t>(f.order()) + 1);
    for (int i = 0; i + k <= f.order(); ++i) v[i + k] = f[i];
    return PowerSeries(std::move(v), f.variable());
}

} // namespace nodal
