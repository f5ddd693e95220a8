#include "nodal/errors.hpp"
#include "nodal/severi.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace nodal;

namespace {

BigInt discriminant(int d)
{
    return 3 * BigInt(d - 1) * (d - 1);
}

} // namespace

TEST_CASE("tangency profiles are canonical")
{
    auto p = TangencyProfile::from_counts({{1, 2}, {3, 1}});
    CHECK(p.weight() == 5);
    CHECK(p.size() == 3);
    CHECK(p.to_string() == "1^2,3^1");
    p.add(3, -1);
    CHECK(p.max_multiplicity() == 1);
    CHECK(p == TangencyProfile::single(1, 2));
    CHECK(TangencyProfile::parse("1^2,3^1") == TangencyProfile::from_counts({{3, 1}, {1, 2}}));
    CHECK(TangencyProfile::parse("").empty());
    CHECK_THROWS_AS(TangencyProfile::parse("3^1,1^2"), ValidationError);
    CHECK_THROWS_AS(TangencyProfile::parse("1^0"), ValidationError);
    CHECK_THROWS_AS(TangencyProfile::parse("1"), ValidationError);
    CHECK_THROWS_AS(p.add(2, -1), ValidationError);

    const auto key = SeveriKey::plain(3, 1);
    CHECK(key.canonical() == "3:1:|1^3");
    const SeveriKey rel{4, 2, TangencyProfile::single(2), TangencyProfile::from_counts({{1, 2}})};
    CHECK(SeveriKey::parse(rel.canonical()).canonical() == rel.canonical());
}

TEST_CASE("base cases and conventions")
{
    SeveriTable t;
    CHECK(severi_relative({1, 0, {}, TangencyProfile::single(1)}, t) == 1);
    CHECK(severi_relative({1, 0, TangencyProfile::single(1), {}}, t) == 1);
    CHECK(severi_relative({1, 1, {}, TangencyProfile::single(1)}, t) == 0);
    CHECK(severi_relative({5, -1, {}, TangencyProfile::single(1, 5)}, t) == 0);
    for (int d = 1; d <= 8; ++d) CHECK(severi(d, 0, t) == 1);
    CHECK_THROWS_WITH_AS(severi_relative({3, 1, {}, TangencyProfile::single(1, 2)}, t),
                         doctest::Contains("profile weight mismatch"), ValidationError);
}

TEST_CASE("classical values")
{
    SeveriTable t;
    CHECK(severi_relative({2, 1, {}, TangencyProfile::single(1, 2)}, t) == 3);
    CHECK(severi_relative({3, 1, {}, TangencyProfile::single(1, 3)}, t) == 12);
    CHECK(severi(4, 1, t) == 27);
    CHECK(severi(2, 1, t) == 3);
    for (int d = 2; d <= 12; ++d) CHECK(severi(d, 1, t) == discriminant(d));

    // Reducible configurations counted by hand: a line and a conic through 7
    // points, three lines through 6 points; a conic cannot carry two nodes.
    CHECK(severi(3, 2, t) == 21);
    CHECK(severi(3, 3, t) == 15);
    CHECK(severi(2, 2, t) == 0);

    // Pairs of lines, one through each of two assigned points of the line.
    CHECK(severi_relative({2, 1, TangencyProfile::single(1, 2), {}}, t) == 2);
}

TEST_CASE("classical node polynomials")
{
    SeveriTable t;
    // N^{d,2} = 3/2 (d-1)(d-2)(3d^2 - 3d - 11) and the three-node polynomial,
    // valid from d = 3; see node_poly_check for the recursion-only version.
    for (int d = 3; d <= 12; ++d) {
        const Rational x(d);
        const Rational two = Rational(3, 2) * (x - 1) * (x - 2) * (3 * x * x - 3 * x - 11);
        const Rational three = Rational(9, 2) * x * x * x * x * x * x - 27 * x * x * x * x * x
                               + Rational(9, 2) * x * x * x * x + Rational(423, 2) * x * x * x - 229 * x * x
                               - Rational(829, 2) * x + 525;
        CHECK(Rational(severi(d, 2, t)) == two);
        CHECK(Rational(severi(d, 3, t)) == three);
    }
}

TEST_CASE("memo table determinism and parallel evaluation")
{
    SeveriTable a;
    const auto first = severi(9, 3, a);
    CHECK(a.size() > 0);
    const auto snapshot = a.entries();
    a.clear();
    CHECK(a.size() == 0);
    CHECK(severi(9, 3, a) == first);
    CHECK(a.entries() == snapshot);

    std::vector<SeveriKey> keys;
    for (int d = 1; d <= 11; ++d)
        for (int k = 0; k <= 3; ++k) keys.push_back(SeveriKey::plain(d, k));
    SeveriTable seq, par;
    const auto s = severi_many(keys, seq, 1);
    const auto p = severi_many(keys, par, 8);
    CHECK(s == p);
    CHECK(seq.entries() == par.entries());
    CHECK(par.hits() + par.misses() > 0);
}

TEST_CASE("table rejects conflicting writes")
{
    SeveriTable t;
    t.insert("2:1:|1^2", 3);
    CHECK_NOTHROW(t.insert("2:1:|1^2", 3));
    CHECK_THROWS_AS(t.insert("2:1:|1^2", 4), ConsistencyError);
}

TEST_CASE("disk cache")
{
    const auto path = std::filesystem::temp_directory_path() / "nodal_test_cache.tsv";
    std::filesystem::remove(path);
    {
        SeveriTable t;
        severi(6, 2, t);
        CHECK(t.save(path) == t.size());
        CHECK(t.save(path) == 0);
        severi(7, 2, t);
        CHECK(t.save(path) > 0);
    }
    SeveriTable loaded;
    CHECK(loaded.load(path) > 0);
    const auto misses_before = loaded.misses();
    CHECK(severi(7, 2, loaded) == 1 * severi(7, 2, loaded));
    CHECK(loaded.misses() == misses_before);

    // A different format version is ignored on load and refused on append.
    const auto other = std::filesystem::temp_directory_path() / "nodal_test_cache_v0.tsv";
    {
        std::ofstream out(other);
        out << "# nodal severi cache v0\n3:1:|1^3\t999\n";
    }
    SeveriTable fresh;
    CHECK(fresh.load(other) == 0);
    CHECK(severi(3, 1, fresh) == 12);
    CHECK_THROWS_AS(fresh.save(other), ValidationError);
    std::filesystem::remove(path);
    std::filesystem::remove(other);
}

TEST_CASE("plane series")
{
    SeveriTable t;
    CHECK(p2_series(4, 1, t).identical(PowerSeries::from_integers({1, 27})));
    CHECK(p2_series(3, 0, t).identical(PowerSeries::from_integers({1})));
    const auto s = p2_series(9, 2, t);
    CHECK(s[1] == 192);
    CHECK(s[2] == Rational(severi(9, 2, t)));
    CHECK_THROWS_WITH_AS(p2_series(8, 2, t), doctest::Contains("r = 2"), ValidationError);
    CHECK_NOTHROW(p2_series(8, 2, t, true));
    CHECK(p2_threshold(3) == 14);
}

TEST_CASE("node polynomial check")
{
    SeveriTable t;
    auto one = node_poly_check(1, 2, 6, t);
    CHECK(one.fits);
    CHECK(one.polynomial == std::vector<Rational>{3, -6, 3});

    auto zero = node_poly_check(0, 3, 7, t);
    CHECK(zero.fits);
    CHECK(zero.polynomial == std::vector<Rational>{1});

    auto two = node_poly_check(2, 4, 10, t);
    CHECK(two.fits);
    CHECK(two.polynomial.size() == 5);

    // The two-node polynomial happens to hold from d = 1 (both sides vanish),
    // the three-node one does not: it predicts 75 at d = 1.
    CHECK(node_poly_check(2, 1, 8, t).fits);
    auto early = node_poly_check(3, 1, 9, t);
    CHECK_FALSE(early.fits);
    CHECK(early.first_mismatch.has_value());
    CHECK(node_poly_check(3, 3, 11, t).fits);

    CHECK_THROWS_AS(node_poly_check(2, 4, 8, t), ValidationError);
}

TEST_CASE("interpolation")
{
    std::vector<Rational> xs{0, 1, 2, 3}, ys{1, 2, 5, 10};
    const auto p = interpolate(xs, ys);
    CHECK(p == std::vector<Rational>{1, 0, 1});
    CHECK(evaluate_polynomial(p, 7) == 50);
}
