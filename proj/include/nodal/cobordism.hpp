#pragma once

#include "nodal/rational.hpp"

#include <array>
#include <span>
#include <string>
#include <variant>

namespace nodal {

/// Class of a surface-line-bundle pair: (L^2, L.K, c1(S)^2, c2(S)).
struct PairClass {
    long L2 = 0;
    long LK = 0;
    long c1sq = 0;
    long c2 = 0;

    /// Noether integrality and Riemann-Roch parity.
    bool valid() const;
    /// Throws ValidationError naming the violated condition.
    void validate() const;

    std::array<long, 4> as_array() const { return {L2, LK, c1sq, c2}; }
    std::string to_string() const;

    friend PairClass operator+(const PairClass& a, const PairClass& b)
    {
        return {a.L2 + b.L2, a.LK + b.LK, a.c1sq + b.c1sq, a.c2 + b.c2};
    }
    friend PairClass operator-(const PairClass& a, const PairClass& b)
    {
        return {a.L2 - b.L2, a.LK - b.LK, a.c1sq - b.c1sq, a.c2 - b.c2};
    }
    friend PairClass operator*(long k, const PairClass& a) { return {k * a.L2, k * a.LK, k * a.c1sq, k * a.c2}; }
    bool operator==(const PairClass&) const = default;
};

/// (L.K, chi(L), chi(O_S), K^2).
struct AltPairClass {
    long LK = 0;
    long chiL = 0;
    long chiO = 0;
    long Ksq = 0;

    bool operator==(const AltPairClass&) const = default;
};

/// Coefficients against the basis [P2,O], [P2,O(1)], [P1xP1,O], [P1xP1,O(1,0)].
struct DecompCoefficients {
    long a1 = 0;
    long a2 = 0;
    long a3 = 0;
    long a4 = 0;

    bool operator==(const DecompCoefficients&) const = default;
};

/// Data of the intersection divisor D in a double point degeneration.
struct DoublePointData {
    long gD = 0;    ///< genus of D
    long degLD = 0; ///< degree of the line bundle restricted to D
};

namespace surfaces {
struct Plane { long d = 0; };                ///< P^2 with O(d)
struct Quadric { long a = 0, b = 0; };       ///< P^1 x P^1 with O(a,b)
struct K3 { long L2 = 2; };                  ///< K3 with a primitive class of square L2 (even, > 0)
struct Hirzebruch { long k = 0, c = 0, e = 0; }; ///< F_k with c h + e f, h^2 = k, hf = 1, f^2 = 0
struct Raw { PairClass v; };
} // namespace surfaces

using PairDescriptor =
    std::variant<surfaces::Plane, surfaces::Quadric, surfaces::K3, surfaces::Hirzebruch, surfaces::Raw>;

PairClass class_of(const PairDescriptor& descriptor);

/// The four standard basis classes in the order of DecompCoefficients.
std::array<PairClass, 4> standard_basis();

AltPairClass convert(const PairClass& v);
PairClass convert(const AltPairClass& w);

DecompCoefficients decompose(const PairClass& v);
PairClass reconstruct(const DecompCoefficients& a);

struct RelationClose {
    PairClass v3; ///< the P^1-bundle term
    PairClass v0; ///< v1 + v2 - v3
};

/// Completes the extended double point relation [X0] = [X1] + [X2] - [X3].
RelationClose close_relation(const PairClass& v1, const PairClass& v2, const DoublePointData& dpd);

/// Exact determinant of the 4x4 matrix whose rows are the given classes.
Rational determinant(std::span<const PairClass, 4> rows);

bool is_basis(std::span<const PairClass, 4> vs);

} // namespace nodal
