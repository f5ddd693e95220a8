#include "nodal/polynomial.hpp"

#include <algorithm>

namespace nodal {

Polynomial4 Polynomial4::constant(const Rational& c)
{
    Polynomial4 p;
    p.add_term({0, 0, 0, 0}, c);
    return p;
}

Polynomial4 Polynomial4::variable(std::size_t index)
{
    Polynomial4 p;
    Exponents e{0, 0, 0, 0};
    e.at(index) = 1;
    p.add_term(e, 1);
    return p;
}

Rational Polynomial4::coefficient(const Exponents& e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial4::total_degree() const
{
    int deg = -1;
    for (const auto& [e, c] : terms_) deg = std::max(deg, e[0] + e[1] + e[2] + e[3]);
    return deg;
}

Rational Polynomial4::evaluate(const std::array<Rational, 4>& point) const
{
    Rational total = 0;
    for (const auto& [e, c] : terms_) {
        Rational term = c;
        for (std::size_t i = 0; i < 4; ++i)
            for (int k = 0; k < e[i]; ++k) term *= point[i];
        total += term;
    }
    return total;
}

void Polynomial4::add_term(const Exponents& e, const Rational& c)
{
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial4& Polynomial4::operator+=(const Polynomial4& rhs)
{
    for (const auto& [e, c] : rhs.terms_) add_term(e, c);
    return *this;
}

Polynomial4& Polynomial4::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

Polynomial4 operator*(const Polynomial4& a, const Polynomial4& b)
{
    Polynomial4 out;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_)
            out.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]}, ca * cb);
    return out;
}

} // namespace nodal
