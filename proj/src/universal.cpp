#include "nodal/universal.hpp"

#include "nodal/errors.hpp"
#include "nodal/quasimodular.hpp"

#include <limits>

namespace nodal {

namespace {

using Matrix4 = std::array<std::array<Rational, 4>, 4>;

Matrix4 invert(const std::array<PairClass, 4>& rows)
{
    Matrix4 a;
    Matrix4 inv;
    for (std::size_t i = 0; i < 4; ++i) {
        const auto r = rows[i].as_array();
        for (std::size_t j = 0; j < 4; ++j) {
            a[i][j] = r[j];
            inv[i][j] = i == j ? 1 : 0;
        }
    }
    for (std::size_t col = 0; col < 4; ++col) {
        std::size_t pivot = col;
        while (pivot < 4 && a[pivot][col] == 0) ++pivot;
        if (pivot == 4) throw ValidationError("fit basis is singular: the four classes are linearly dependent");
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        const Rational scale = 1 / a[col][col];
        for (std::size_t j = 0; j < 4; ++j) {
            a[col][j] *= scale;
            inv[col][j] *= scale;
        }
        for (std::size_t r = 0; r < 4; ++r) {
            if (r == col || a[r][col] == 0) continue;
            const Rational f = a[r][col];
            for (std::size_t j = 0; j < 4; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

PowerSeries linear_combination(const std::array<PowerSeries, 4>& series, const std::array<Rational, 4>& weights,
                               int order)
{
    auto out = PowerSeries::zero(order, series[0].variable());
    for (std::size_t i = 0; i < 4; ++i)
        if (weights[i] != 0) out += series[i].truncated(order) * weights[i];
    return out;
}

std::array<Rational, 4> as_rationals(const PairClass& v)
{
    const auto a = v.as_array();
    return {Rational(a[0]), Rational(a[1]), Rational(a[2]), Rational(a[3])};
}

} // namespace

FitConfig FitConfig::defaults(int order)
{
    FitConfig cfg;
    cfg.order = order;
    cfg.d1 = std::max(9, p2_threshold(order));
    cfg.d2 = cfg.d1 + 1;
    return cfg;
}

void FitConfig::validate() const
{
    if (order < 0) throw ValidationError("fit order must be nonnegative");
    if (d1 < 1 || d2 < 1) throw ValidationError("plane degrees must be positive");
    if (d1 == d2) throw ValidationError("plane degrees must differ");
    if (s1 == s2) throw ValidationError("K3 squares must differ (equal squares give a singular system)");
    for (long s : {s1, s2})
        if (s <= 0 || s % 2 != 0) throw ValidationError("K3 squares must be even and positive, got " + std::to_string(s));
    if (!unsafe)
        for (int d : {d1, d2})
            if (d < p2_threshold(order))
                throw ValidationError("plane degree " + std::to_string(d) + " is below the threshold "
                                      + std::to_string(p2_threshold(order)) + " for order " + std::to_string(order));
}

std::array<PairClass, 4> FitConfig::basis() const
{
    return {class_of(surfaces::Plane{d1}), class_of(surfaces::Plane{d2}), class_of(surfaces::K3{s1}),
            class_of(surfaces::K3{s2})};
}

Rational UniversalPolynomial::evaluate(const PairClass& v) const
{
    return polynomial.evaluate(as_rationals(v));
}

bool GYZFit::consistent() const
{
    for (const auto& r : residuals)
        if (!r.holds()) return false;
    return true;
}

PowerSeries dg2_series(int order)
{
    return diff_d(eisenstein_g2(order));
}

PowerSeries x_to_q(const PowerSeries& f)
{
    return compose(f, dg2_series(f.order()));
}

PowerSeries q_to_x(const PowerSeries& g)
{
    if (g.order() == 0) return g.with_variable('x');
    return compose(g, revert(dg2_series(g.order()), 'x'));
}

MultiplicativeFit fit_A(const FitConfig& cfg, SeveriTable& table, unsigned threads)
{
    cfg.validate();
    const auto basis = cfg.basis();
    if (!is_basis(basis)) throw ValidationError("fit classes do not form a basis");
    const int m = cfg.order;

    std::vector<SeveriKey> keys;
    for (int d : {cfg.d1, cfg.d2})
        for (int r = 0; r <= m; ++r) keys.push_back(SeveriKey::plain(d, r));
    const auto values = severi_many(keys, table, threads);

    std::array<PowerSeries, 4> logT;
    for (std::size_t p = 0; p < 2; ++p) {
        std::vector<Rational> c;
        for (int r = 0; r <= m; ++r) c.emplace_back(values[p * static_cast<std::size_t>(m + 1) + r]);
        logT[p] = log(PowerSeries(std::move(c), 'x'));
    }
    logT[2] = log(q_to_x(k3_generating(2 + cfg.s1 / 2, m)));
    logT[3] = log(q_to_x(k3_generating(2 + cfg.s2 / 2, m)));

    // logT_i = sum_j basis[i][j] logA_j
    const auto inv = invert(basis);
    MultiplicativeFit fit;
    fit.config = cfg;
    for (std::size_t j = 0; j < 4; ++j) {
        fit.logA[j] = linear_combination(logT, inv[j], m).with_variable('x');
        NODAL_CHECK(fit.logA[j][0] == 0, "log A has a constant term");
        fit.A[j] = exp(fit.logA[j]);
    }
    for (std::size_t i = 0; i < 4; ++i)
        NODAL_CHECK(log(evaluate(basis[i], fit, m)) == logT[i], "fit does not interpolate basis class " + std::to_string(i));
    return fit;
}

std::vector<UniversalPolynomial> universal_Ts(const MultiplicativeFit& fit)
{
    const int m = fit.order();
    // exp(sum_k P_k x^k) with P_k = sum_j logA_j[k] y_j, via n E_n = sum_k k P_k E_{n-k}.
    std::vector<Polynomial4> p(static_cast<std::size_t>(m) + 1);
    for (int k = 1; k <= m; ++k)
        for (std::size_t j = 0; j < 4; ++j) p[k] += Polynomial4::variable(j) * fit.logA[j][k];

    std::vector<UniversalPolynomial> out(static_cast<std::size_t>(m) + 1);
    out[0] = {0, Polynomial4::constant(1)};
    for (int n = 1; n <= m; ++n) {
        Polynomial4 acc;
        for (int k = 1; k <= n; ++k) acc += p[k] * out[n - k].polynomial * Rational(k);
        out[n] = {n, acc * Rational(1, n)};
        NODAL_CHECK(out[n].polynomial.total_degree() <= n, "T_" + std::to_string(n) + " exceeds degree bound");
    }
    return out;
}

UniversalPolynomial universal_T(int r, const MultiplicativeFit& fit)
{
    if (r < 0) throw ValidationError("node count must be nonnegative");
    if (r > fit.order())
        throw ValidationError("T_" + std::to_string(r) + " needs a fit of order >= " + std::to_string(r) + ", have "
                              + std::to_string(fit.order()));
    auto all = universal_Ts(fit);
    return all[static_cast<std::size_t>(r)];
}

PowerSeries evaluate(const PairClass& v, const MultiplicativeFit& fit, int order)
{
    if (order > fit.order())
        throw ValidationError("evaluation order " + std::to_string(order) + " exceeds fit order "
                              + std::to_string(fit.order()));
    return exp(linear_combination(fit.logA, as_rationals(v), order));
}

GYZFit fit_B(const MultiplicativeFit& fit, int order_q)
{
    if (order_q < 0) throw ValidationError("order must be nonnegative");
    if (order_q > fit.order())
        throw ValidationError("q-order " + std::to_string(order_q) + " exceeds fit order " + std::to_string(fit.order()));
    const auto dg2 = dg2_series(order_q);
    std::array<PowerSeries, 4> a;
    for (std::size_t j = 0; j < 4; ++j) a[j] = compose(fit.logA[j].truncated(order_q), dg2);

    GYZFit out;
    out.B1 = exp(a[2] - a[3]);
    out.B2 = exp(a[0] + a[1]);
    out.B3 = dg2_over_q(order_q);
    out.B4 = pow(delta_d2g2_over_q2(order_q), Rational(1, 2));
    out.residuals.push_back({"exp(2 a1) = DG2/q", exp(a[0] * Rational(2)) - out.B3});
    out.residuals.push_back(
        {"exp(2 a1 - 12 a4) = (Delta D^2G2/q^2)^(1/2)", exp(a[0] * Rational(2) - a[3] * Rational(12)) - out.B4});
    return out;
}

PowerSeries gyz_product(const AltPairClass& w, const GYZFit& gyz)
{
    return ipow(gyz.B3, w.chiL) * ipow(gyz.B1, w.Ksq) * ipow(gyz.B2, w.LK) * ipow(gyz.B4, -w.chiO);
}

ShiftedSeries genus_series(long r, long Ksq, long m, long chiO, int order_q, const GYZFit* gyz)
{
    if (order_q < 0) throw ValidationError("order must be nonnegative");
    if ((Ksq != 0 || m != 0) && gyz == nullptr)
        throw ValidationError("genus series with nonzero K^2 or LK needs fitted B1, B2");
    if (gyz != nullptr && (Ksq != 0 || m != 0) && gyz->order() < order_q)
        throw ValidationError("fitted B series have order " + std::to_string(gyz->order()) + " < "
                              + std::to_string(order_q));

    // (DG2)^r D^2G2 = q^{r+1} (DG2/q)^r (D^2G2/q)
    const auto d2g2_over_q = shift_down(diff_d(diff_d(eisenstein_g2(order_q + 1))), 1);
    const auto root = pow(delta_d2g2_over_q2(order_q), Rational(1, 2));
    PowerSeries body = ipow(dg2_over_q(order_q), r) * d2g2_over_q * ipow(root, -chiO);
    if (Ksq != 0) body *= ipow(gyz->B1.truncated(order_q), Ksq);
    if (m != 0) body *= ipow(gyz->B2.truncated(order_q), m);
    NODAL_CHECK(r + 1 >= std::numeric_limits<int>::min() && r + 1 <= std::numeric_limits<int>::max(),
                "valuation out of range");
    return {static_cast<int>(r + 1), body};
}

P2Validation validate_p2(int d, const MultiplicativeFit& fit, int order, SeveriTable& table, unsigned threads)
{
    if (order > fit.order())
        throw ValidationError("validation order " + std::to_string(order) + " exceeds fit order "
                              + std::to_string(fit.order()));
    P2Validation out;
    out.d = d;
    out.order = order;
    out.held_out = d != fit.config.d1 && d != fit.config.d2;
    out.expected = p2_series(d, order, table, fit.config.unsafe, threads);
    out.predicted = evaluate(class_of(surfaces::Plane{d}), fit, order);
    out.matches = true;
    for (int k = 0; k <= order; ++k)
        if (out.expected[k] != out.predicted[k]) {
            out.matches = false;
            out.first_difference = k;
            break;
        }
    return out;
}

} // namespace nodal
