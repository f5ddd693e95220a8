#pragma once

#include "nodal/cobordism.hpp"
#include "nodal/polynomial.hpp"
#include "nodal/power_series.hpp"
#include "nodal/severi.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace nodal {

/// Which data pin down the four universal series: two plane degrees and two
/// K3 primitive classes of distinct square.
struct FitConfig {
    int order = 2;
    int d1 = 9;
    int d2 = 10;
    long s1 = 2;
    long s2 = 4;
    bool unsafe = false;

    /// Smallest plane degrees meeting the very-ampleness threshold (at least 9, 10).
    static FitConfig defaults(int order);

    void validate() const;
    /// Classes of (P2, O(d1)), (P2, O(d2)), (K3, s1), (K3, s2).
    std::array<PairClass, 4> basis() const;
};

/// T(S,L) = A1^{L^2} A2^{LK} A3^{c1^2} A4^{c2}, stored through the logarithms.
struct MultiplicativeFit {
    std::array<PowerSeries, 4> logA;
    std::array<PowerSeries, 4> A;
    FitConfig config;

    int order() const { return config.order; }
};

/// T_r as a polynomial in (L^2, LK, c1^2, c2).
struct UniversalPolynomial {
    int r = 0;
    Polynomial4 polynomial;

    Rational evaluate(const PairClass& v) const;
};

struct ResidualCheck {
    std::string identity;
    PowerSeries difference;

    bool holds() const { return difference.is_zero(); }
};

/// The series B1..B4 of the closed q-form, with the identity checks that tie
/// the plane data to the K3 closed form.
struct GYZFit {
    PowerSeries B1, B2;
    PowerSeries B3; ///< DG2/q
    PowerSeries B4; ///< (Delta D^2G2 / q^2)^{1/2}
    std::vector<ResidualCheck> residuals;

    int order() const { return B1.order(); }
    bool consistent() const;
};

/// q^valuation * series, for products whose leading power is known in advance.
struct ShiftedSeries {
    int valuation = 0;
    PowerSeries series;
};

/// DG2 = q + 6q^2 + ... at the given order, the x <-> q substitution.
PowerSeries dg2_series(int order);
/// f(x) -> f(DG2(q)).
PowerSeries x_to_q(const PowerSeries& f);
/// g(q) -> g(revert(DG2)(x)).
PowerSeries q_to_x(const PowerSeries& g);

MultiplicativeFit fit_A(const FitConfig& cfg, SeveriTable& table, unsigned threads = 1);

UniversalPolynomial universal_T(int r, const MultiplicativeFit& fit);
/// T_0 .. T_order in one pass.
std::vector<UniversalPolynomial> universal_Ts(const MultiplicativeFit& fit);

/// exp(v . logA) through the given order.
PowerSeries evaluate(const PairClass& v, const MultiplicativeFit& fit, int order);

GYZFit fit_B(const MultiplicativeFit& fit, int order_q);

/// (DG2/q)^{chi(L)} B1^{K^2} B2^{LK} / B4^{chi(O)}.
PowerSeries gyz_product(const AltPairClass& w, const GYZFit& gyz);

/// B1^{Ksq} B2^m (DG2)^r D^2G2 / (Delta D^2G2 / q^2)^{chiO/2}, returned with its
/// valuation r + 1 split off. The coefficient at index delta is
/// n_r(l, m) = T_delta(2l + m, m, Ksq, 12 chiO - Ksq) with l = delta + 1 + r - chiO.
/// `gyz` may be null when Ksq = m = 0.
ShiftedSeries genus_series(long r, long Ksq, long m, long chiO, int order_q, const GYZFit* gyz);

struct P2Validation {
    int d = 0;
    int order = 0;
    bool held_out = true;
    bool matches = false;
    std::optional<int> first_difference;
    PowerSeries expected;  ///< from the recursion
    PowerSeries predicted; ///< from the fit
};

P2Validation validate_p2(int d, const MultiplicativeFit& fit, int order, SeveriTable& table, unsigned threads = 1);

} // namespace nodal
