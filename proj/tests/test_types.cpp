#include <doctest.h>

#include <limits>

#include "kolmo/rng.hpp"
#include "kolmo/types.hpp"

using namespace kolmo;

TEST_CASE("validate_exponents accepts and rejects per the definition") {
    ExponentVector k = validate_exponents({0, 1, 2}, 2);
    CHECK(k.size() == 3);
    CHECK(k.r == 2);

    CHECK_THROWS_WITH_AS(validate_exponents({1, 1, 2}, 2),
                         doctest::Contains("NotStrictlyIncreasing"), Error);
    CHECK_THROWS_WITH_AS(validate_exponents({0, 3}, 2), doctest::Contains("OrderExceedsR"), Error);
    CHECK_THROWS_WITH_AS(validate_exponents({}, 2), doctest::Contains("Empty"), Error);
    CHECK_THROWS_WITH_AS(validate_exponents({-1, 2}, 2), doctest::Contains("NegativeOrder"), Error);
}

TEST_CASE("validation is idempotent") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        int d = static_cast<int>(rng.uniform_int(1, 5));
        std::vector<int> orders;
        int o = static_cast<int>(rng.uniform_int(0, 2));
        for (int i = 0; i < d; ++i) {
            orders.push_back(o);
            o += static_cast<int>(rng.uniform_int(1, 3));
        }
        ExponentVector k = validate_exponents(orders, orders.back());
        ExponentVector k2 = validate_exponents(k.orders, k.r);
        CHECK(k.orders == k2.orders);
        CHECK(k.r == k2.r);

        std::vector<double> values(orders.size());
        for (double& v : values) v = rng.log_uniform(0.01, 100.0);
        MomentVector m = validate_moments(values, k);
        MomentVector m2 = validate_moments(m.values, m.exponents);
        CHECK(m.values == m2.values);
    }
}

TEST_CASE("moment vector validation") {
    ExponentVector k = validate_exponents({0, 2}, 3);
    CHECK_NOTHROW(validate_moments({0.0, 1.5}, k));
    CHECK_THROWS_AS(validate_moments({1.0}, k), Error);
    CHECK_THROWS_AS(validate_moments({1.0, -0.5}, k), Error);
    CHECK_THROWS_AS(validate_moments({1.0, std::numeric_limits<double>::infinity()}, k), Error);
}

TEST_CASE("measure validation rejects near-coincident atoms instead of merging") {
    CHECK_NOTHROW(validate_measure({{0.0, 1.0}, {2.0, 3.0}}));
    CHECK_THROWS_AS(validate_measure({{1.0, 1.0}, {1.0, 1.0}}), Error);
    CHECK_THROWS_AS(validate_measure({{2.0, 1.0}, {1.0, 1.0}}), Error);  // out of order
    CHECK_THROWS_AS(validate_measure({{1.0, 0.0}}), Error);             // zero mass
    CHECK_THROWS_AS(validate_measure({{1.0, 1.0}, {1.0 + 1e-13, 1.0}}), Error);
    CHECK_NOTHROW(validate_measure({{1.0, 1.0}, {1.0 + 1e-6, 1.0}}));
}

TEST_CASE("index_of counts atoms at 0 as a half") {
    CHECK(index_of(validate_measure({{0.0, 1.0}})).twice_value == 1);
    CHECK(index_of(validate_measure({{0.0, 1.0}, {2.0, 3.0}})).twice_value == 3);
    CHECK(index_of(AtomicMeasure{}).twice_value == 0);
    CHECK(index_of(validate_measure({{0.5, 1.0}, {2.0, 1.0}})).value() == 2.0);
}

TEST_CASE("index_of is additive over disjoint atom sets") {
    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        int n = static_cast<int>(rng.uniform_int(0, 6));
        std::vector<Atom> atoms;
        double u = rng.uniform01() < 0.3 ? 0.0 : rng.log_uniform(0.01, 1.0);
        for (int i = 0; i < n; ++i) {
            atoms.push_back({u, rng.log_uniform(0.1, 10.0)});
            u = (u == 0.0 ? 0.01 : u) * rng.uniform(1.5, 4.0);
        }
        AtomicMeasure whole = validate_measure(atoms);
        std::size_t cut = atoms.empty() ? 0 : rng.next() % (atoms.size() + 1);
        AtomicMeasure left{std::vector<Atom>(atoms.begin(),
                                             atoms.begin() + static_cast<std::ptrdiff_t>(cut))};
        AtomicMeasure right{std::vector<Atom>(atoms.begin() + static_cast<std::ptrdiff_t>(cut),
                                              atoms.end())};
        CHECK(index_of(whole).twice_value ==
              index_of(left).twice_value + index_of(right).twice_value);
    }
}

TEST_CASE("spline validation") {
    PerfectSpline s;
    s.cls = FunctionClass::CM;
    s.r = 2;
    s.knots = {2.0, 1.0};
    s.weights = {1.0, 3.0};
    CHECK_NOTHROW(validate_spline(s));
    CHECK(s.knot_count().twice_value == 4);
    s.constant = 0.5;
    CHECK(validate_spline(s).knot_count().value() == doctest::Approx(2.5));

    PerfectSpline bad = s;
    bad.knots = {1.0, 2.0};  // increasing
    CHECK_THROWS_AS(validate_spline(bad), Error);
    bad = s;
    bad.weights = {1.0};
    CHECK_THROWS_AS(validate_spline(bad), Error);
    bad = s;
    bad.constant = -1.0;
    CHECK_THROWS_AS(validate_spline(bad), Error);
}
