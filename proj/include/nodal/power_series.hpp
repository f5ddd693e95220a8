#pragma once

#include "nodal/rational.hpp"

#include <optional>
#include <span>
#include <vector>

namespace nodal {

/// Truncated formal power series over the rationals.
///
/// Holds coefficients 0..order(). Binary operations truncate to the smaller
/// of the two orders. The variable tag ('q' or 'x') is carried for display and
/// serialization only and never affects arithmetic.
class PowerSeries {
public:
    PowerSeries() : coeffs_(1), var_('x') {}
    explicit PowerSeries(std::vector<Rational> coefficients, char variable = 'x');

    static PowerSeries zero(int order, char variable = 'x');
    static PowerSeries constant(const Rational& c, int order, char variable = 'x');
    static PowerSeries monomial(int exponent, const Rational& c, int order, char variable = 'x');
    static PowerSeries from_integers(std::initializer_list<long> coefficients, char variable = 'x');

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    char variable() const { return var_; }
    std::span<const Rational> coefficients() const { return coeffs_; }
    const Rational& operator[](int n) const { return coeffs_.at(static_cast<std::size_t>(n)); }

    /// Smallest index with a nonzero coefficient, if any within the order.
    std::optional<int> valuation() const;
    bool is_zero() const { return !valuation().has_value(); }

    PowerSeries truncated(int order) const;
    PowerSeries with_variable(char variable) const;

    /// Same order, same coefficients. operator== only compares through the common order.
    bool identical(const PowerSeries& other) const;

    PowerSeries operator-() const;
    PowerSeries& operator+=(const PowerSeries& rhs);
    PowerSeries& operator-=(const PowerSeries& rhs);
    PowerSeries& operator*=(const PowerSeries& rhs);
    PowerSeries& operator/=(const PowerSeries& rhs);
    PowerSeries& operator*=(const Rational& c);

    friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
    friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
    friend PowerSeries operator/(const PowerSeries& a, const PowerSeries& b);
    friend PowerSeries operator*(PowerSeries a, const Rational& c) { return a *= c; }
    friend PowerSeries operator*(const Rational& c, PowerSeries a) { return a *= c; }
    friend bool operator==(const PowerSeries& a, const PowerSeries& b);

private:
    std::vector<Rational> coeffs_;
    char var_;
};

/// exp(f); requires f(0) = 0.
PowerSeries exp(const PowerSeries& f);
/// log(f); requires f(0) = 1.
PowerSeries log(const PowerSeries& f);
/// f^e = exp(e log f); requires f(0) = 1.
PowerSeries pow(const PowerSeries& f, const Rational& e);
/// f^n by repeated squaring; negative n needs an invertible constant term.
PowerSeries ipow(const PowerSeries& f, long n);

/// outer(inner(t)); requires inner(0) = 0. The result carries inner's variable.
PowerSeries compose(const PowerSeries& outer, const PowerSeries& inner);

/// Compositional inverse of g (g(0) = 0, g'(0) != 0) by fixed-point refinement.
/// If no variable is given, 'q' and 'x' are swapped.
PowerSeries revert(const PowerSeries& g, std::optional<char> result_variable = std::nullopt);

/// D = t d/dt: coefficient n becomes n * f_n.
PowerSeries diff_d(const PowerSeries& f);

/// f / t^k. The first k coefficients must vanish; the order drops by k.
PowerSeries shift_down(const PowerSeries& f, int k);

/// t^k * f at the same order (top k coefficients fall off).
PowerSeries shift_up(const PowerSeries& f, int k);

} // namespace nodal
