#pragma once

#include "nodal/power_series.hpp"

#include <json.hpp>

namespace nodal {

/// G2 = -1/24 + sum_{n>0} sigma_1(n) q^n.
PowerSeries eisenstein_g2(int order);

/// Delta = q prod_{k>0} (1 - q^k)^24 via the finite product up to k = order.
PowerSeries discriminant_delta(int order);

/// DG2 / q at the given order (constant term 1).
PowerSeries dg2_over_q(int order);

/// Delta * D^2 G2 / q^2 at the given order (constant term 1).
PowerSeries delta_d2g2_over_q2(int order);

/// (DG2/q)^chi / (Delta D^2G2 / q^2): the generating series of a generic K3
/// surface with a primitive class L, chi = chi(L) = 2 + L^2/2.
PowerSeries k3_generating(long chi, int order);

/// The quasimodular ingredients at one truncation order.
struct FormCatalog {
    static constexpr int format_version = 1;

    int order = 0;
    PowerSeries g2, dg2, d2g2, delta;

    static FormCatalog build(int order);

    /// Recomputes the derived entries and checks the valuation of delta.
    void verify() const;

    nlohmann::json to_json() const;
    static FormCatalog from_json(const nlohmann::json& j);
};

} // namespace nodal
