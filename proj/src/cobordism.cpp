#include "nodal/cobordism.hpp"

#include "nodal/errors.hpp"

namespace nodal {

namespace {

long exact_div(long num, long den, const char* what)
{
    if (num % den != 0)
        throw ValidationError(std::string(what) + ": " + std::to_string(num) + " is not divisible by "
                              + std::to_string(den));
    return num / den;
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

bool PairClass::valid() const
{
    return (c1sq + c2) % 12 == 0 && (L2 + LK) % 2 == 0;
}

void PairClass::validate() const
{
    if ((c1sq + c2) % 12 != 0)
        throw ValidationError("Noether integrality fails for " + to_string() + ": c1^2 + c2 = "
                              + std::to_string(c1sq + c2) + " is not divisible by 12");
    if ((L2 + LK) % 2 != 0)
        throw ValidationError("Riemann-Roch parity fails for " + to_string() + ": L^2 + LK = " + std::to_string(L2 + LK)
                              + " is odd");
}

std::string PairClass::to_string() const
{
    return "(" + std::to_string(L2) + ", " + std::to_string(LK) + ", " + std::to_string(c1sq) + ", "
           + std::to_string(c2) + ")";
}

PairClass class_of(const PairDescriptor& descriptor)
{
    return std::visit(
        overloaded{
            [](const surfaces::Plane& p) { return PairClass{p.d * p.d, -3 * p.d, 9, 3}; },
            [](const surfaces::Quadric& p) { return PairClass{2 * p.a * p.b, -2 * p.a - 2 * p.b, 8, 4}; },
            [](const surfaces::K3& p) {
                if (p.L2 <= 0 || p.L2 % 2 != 0)
                    throw ValidationError("K3 primitive class needs even positive L^2, got " + std::to_string(p.L2));
                return PairClass{p.L2, 0, 0, 24};
            },
            [](const surfaces::Hirzebruch& p) {
                if (p.k < 0) throw ValidationError("Hirzebruch index must be nonnegative");
                // K = -2h + (k - 2) f
                const long L2 = p.c * p.c * p.k + 2 * p.c * p.e;
                const long LK = -2 * p.c * p.k + p.c * (p.k - 2) - 2 * p.e;
                return PairClass{L2, LK, 8, 4};
            },
            [](const surfaces::Raw& p) {
                p.v.validate();
                return p.v;
            },
        },
        descriptor);
}

std::array<PairClass, 4> standard_basis()
{
    return {PairClass{0, 0, 9, 3}, PairClass{1, -3, 9, 3}, PairClass{0, 0, 8, 4}, PairClass{0, -2, 8, 4}};
}

AltPairClass convert(const PairClass& v)
{
    v.validate();
    const long chiO = exact_div(v.c1sq + v.c2, 12, "Noether");
    const long chiL = chiO + exact_div(v.L2 - v.LK, 2, "Riemann-Roch");
    return {v.LK, chiL, chiO, v.c1sq};
}

PairClass convert(const AltPairClass& w)
{
    const long L2 = 2 * (w.chiL - w.chiO) + w.LK;
    return {L2, w.LK, w.Ksq, 12 * w.chiO - w.Ksq};
}

DecompCoefficients decompose(const PairClass& v)
{
    v.validate();
    const long sum = v.c1sq + v.c2;
    const long half = exact_div(v.LK + v.L2, 2, "L^2 + LK");
    DecompCoefficients a{
        -v.L2 + exact_div(sum, 3, "c1^2 + c2") - v.c2,
        v.L2,
        v.L2 + half - exact_div(sum, 4, "c1^2 + c2") + v.c2,
        -v.L2 - half,
    };
    NODAL_CHECK(reconstruct(a) == v, "decomposition of " + v.to_string() + " does not reconstruct");
    return a;
}

PairClass reconstruct(const DecompCoefficients& a)
{
    const auto b = standard_basis();
    return a.a1 * b[0] + a.a2 * b[1] + a.a3 * b[2] + a.a4 * b[3];
}

RelationClose close_relation(const PairClass& v1, const PairClass& v2, const DoublePointData& dpd)
{
    // X3 = P(O + N) over D with L3 pulled back from D: L3^2 = 0, L3.K = -2 deg(L|D),
    // K^2 = 8 - 8 g(D), and chi(O) = 1 - g(D) gives c2 = 12 chi(O) - K^2.
    const PairClass v3{0, -2 * dpd.degLD, 8 - 8 * dpd.gD, 4 - 4 * dpd.gD};
    const PairClass v0 = v1 + v2 - v3;
    if (v1.valid() && v2.valid()) NODAL_CHECK(v0.valid(), "closed relation produced an invalid class");
    return {v3, v0};
}

Rational determinant(std::span<const PairClass, 4> rows)
{
    std::array<std::array<Rational, 4>, 4> m;
    for (std::size_t i = 0; i < 4; ++i) {
        const auto r = rows[i].as_array();
        for (std::size_t j = 0; j < 4; ++j) m[i][j] = r[j];
    }
    Rational det = 1;
    for (std::size_t col = 0; col < 4; ++col) {
        std::size_t pivot = col;
        while (pivot < 4 && m[pivot][col] == 0) ++pivot;
        if (pivot == 4) return 0;
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < 4; ++r) {
            if (m[r][col] == 0) continue;
            const Rational f = m[r][col] / m[col][col];
            for (std::size_t j = col; j < 4; ++j) m[r][j] -= f * m[col][j];
        }
    }
    return det;
}

bool is_basis(std::span<const PairClass, 4> vs)
{
    return determinant(vs) != 0;
}

} // namespace nodal
