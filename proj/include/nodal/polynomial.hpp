#pragma once

#include "nodal/rational.hpp"

#include <array>
#include <map>

namespace nodal {

/// Polynomial in four commuting variables with rational coefficients, stored
/// as a map from exponent vectors to nonzero coefficients.
class Polynomial4 {
public:
    using Exponents = std::array<int, 4>;

    Polynomial4() = default;
    static Polynomial4 constant(const Rational& c);
    static Polynomial4 variable(std::size_t index);

    const std::map<Exponents, Rational>& terms() const { return terms_; }
    Rational coefficient(const Exponents& e) const;
    bool is_zero() const { return terms_.empty(); }
    /// Maximum total degree; -1 for the zero polynomial.
    int total_degree() const;

    Rational evaluate(const std::array<Rational, 4>& point) const;

    Polynomial4& operator+=(const Polynomial4& rhs);
    Polynomial4& operator*=(const Rational& c);
    friend Polynomial4 operator+(Polynomial4 a, const Polynomial4& b) { return a += b; }
    friend Polynomial4 operator*(Polynomial4 a, const Rational& c) { return a *= c; }
    friend Polynomial4 operator*(const Polynomial4& a, const Polynomial4& b);
    bool operator==(const Polynomial4&) const = default;

private:
    void add_term(const Exponents& e, const Rational& c);
    std::map<Exponents, Rational> terms_;
};

} // namespace nodal
