#include "nodal/quasimodular.hpp"

#include "nodal/errors.hpp"
#include "nodal/json_io.hpp"

namespace nodal {

PowerSeries eisenstein_g2(int order)
{
    if (order < 0) throw ValidationError("order must be nonnegative");
    std::vector<Rational> c(static_cast<std::size_t>(order) + 1);
    c[0] = Rational(-1, 24);
    for (int d = 1; d <= order; ++d)
        for (int n = d; n <= order; n += d) c[n] += d;
    return PowerSeries(std::move(c), 'q');
}

PowerSeries discriminant_delta(int order)
{
    if (order < 1) throw ValidationError("discriminant needs order >= 1");
    // prod_{k=1}^{order-1} (1 - q^k)^24 suffices once multiplied by q.
    std::vector<BigInt> p(static_cast<std::size_t>(order), 0);
    p[0] = 1;
    for (int k = 1; k < order; ++k)
        for (int rep = 0; rep < 24; ++rep)
            for (int n = order - 1; n >= k; --n) p[n] -= p[n - k];
    std::vector<Rational> c(static_cast<std::size_t>(order) + 1);
    for (int n = 0; n < order; ++n) c[n + 1] = Rational(p[n]);
    return PowerSeries(std::move(c), 'q');
}

PowerSeries dg2_over_q(int order)
{
    return shift_down(diff_d(eisenstein_g2(order + 1)), 1);
}

PowerSeries delta_d2g2_over_q2(int order)
{
    const auto d2g2 = diff_d(diff_d(eisenstein_g2(order + 2)));
    return shift_down(discriminant_delta(order + 2) * d2g2, 2);
}

PowerSeries k3_generating(long chi, int order)
{
    if (order < 0) throw ValidationError("order must be nonnegative");
    return ipow(dg2_over_q(order), chi) / delta_d2g2_over_q2(order);
}

FormCatalog FormCatalog::build(int order)
{
    if (order < 1) throw ValidationError("form catalog needs order >= 1");
    FormCatalog cat;
    cat.order = order;
    cat.g2 = eisenstein_g2(order);
    cat.dg2 = diff_d(cat.g2);
    cat.d2g2 = diff_d(cat.dg2);
    cat.delta = discriminant_delta(order);
    cat.verify();
    return cat;
}

void FormCatalog::verify() const
{
    NODAL_CHECK(dg2.identical(diff_d(g2)), "dg2 != D g2");
    NODAL_CHECK(d2g2.identical(diff_d(dg2)), "d2g2 != D dg2");
    NODAL_CHECK(delta.valuation() == 1 && delta[1] == 1, "delta must start with q");
    NODAL_CHECK(g2.order() == order && delta.order() == order, "catalog orders disagree");
}

nlohmann::json FormCatalog::to_json() const
{
    return {{"format_version", format_version},
            {"order", order},
            {"g2", series_to_json(g2)},
            {"dg2", series_to_json(dg2)},
            {"d2g2", series_to_json(d2g2)},
            {"delta", series_to_json(delta)}};
}

FormCatalog FormCatalog::from_json(const nlohmann::json& j)
{
    if (j.value("format_version", -1) != format_version)
        throw ValidationError("unsupported form catalog format version");
    FormCatalog cat;
    cat.order = j.at("order").get<int>();
    cat.g2 = series_from_json(j.at("g2"));
    cat.dg2 = series_from_json(j.at("dg2"));
    cat.d2g2 = series_from_json(j.at("d2g2"));
    cat.delta = series_from_json(j.at("delta"));
    cat.verify();
    return cat;
}

} // namespace nodal
