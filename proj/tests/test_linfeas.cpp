#include <doctest.h>

#include "test_helpers.hpp"
#include "trisec/linfeas.hpp"

using namespace trisec;
using namespace trisec_test;

namespace {

bool satisfies(const std::vector<LinearConstraint>& cons, const Vec& x) {
    for (const auto& c : cons) {
        Scalar lhs(0);
        for (size_t i = 0; i < x.size(); ++i) lhs += c.a[i] * x[i];
        int s = (lhs - c.b).sign();
        if (c.rel == Rel::GE && s < 0) return false;
        if (c.rel == Rel::LE && s > 0) return false;
        if (c.rel == Rel::EQ && s != 0) return false;
    }
    return true;
}

// Fourier-Motzkin feasibility for weak systems; test-only oracle.
bool fm_feasible(std::vector<LinearConstraint> cons, size_t nvars) {
    // Normalize everything to a.x >= b.
    std::vector<std::pair<Vec, Scalar>> rows;
    for (const auto& c : cons) {
        Vec a = c.a;
        Scalar b = c.b;
        if (c.rel == Rel::GE || c.rel == Rel::EQ) rows.push_back({a, b});
        if (c.rel == Rel::LE || c.rel == Rel::EQ) {
            Vec na(a.size());
            for (size_t i = 0; i < a.size(); ++i) na[i] = -a[i];
            rows.push_back({na, -b});
        }
    }
    for (size_t var = nvars; var-- > 0;) {
        std::vector<std::pair<Vec, Scalar>> pos, neg, zero;
        for (auto& r : rows) {
            int s = r.first[var].sign();
            if (s > 0)
                pos.push_back(r);
            else if (s < 0)
                neg.push_back(r);
            else
                zero.push_back(r);
        }
        rows = zero;
        for (const auto& p : pos)
            for (const auto& n : neg) {
                // p scaled by -n_coeff plus n scaled by p_coeff removes var.
                Scalar cp = p.first[var], cn = n.first[var];
                Vec combo(nvars, Scalar(0));
                for (size_t i = 0; i < nvars; ++i)
                    combo[i] = p.first[i] * (-cn) + n.first[i] * cp;
                rows.push_back({combo, p.second * (-cn) + n.second * cp});
            }
    }
    for (const auto& r : rows)
        if (r.second.sign() > 0) return false; // 0 >= positive
    return true;
}

} // namespace

TEST_SUITE("linfeas") {

TEST_CASE("simple feasible and infeasible systems") {
    std::vector<LinearConstraint> cons{{{Scalar(1)}, Rel::GE, Scalar(1)},
                                       {{Scalar(1)}, Rel::LE, Scalar(2)}};
    auto x = solve_feasibility(cons, 1);
    REQUIRE(x.has_value());
    CHECK(satisfies(cons, *x));

    cons[1].b = Scalar(0); // x >= 1 and x <= 0
    CHECK(!solve_feasibility(cons, 1).has_value());
}

TEST_CASE("equality constraints") {
    std::vector<LinearConstraint> cons{
        {{Scalar(1), Scalar(1)}, Rel::EQ, Scalar(1)},
        {{Scalar(0), Scalar(1)}, Rel::GE, Scalar(3)},
        {{Scalar(1), Scalar(0)}, Rel::GE, Scalar(0)},
    };
    CHECK(!solve_feasibility(cons, 2).has_value());
    cons[2].b = Scalar(-5);
    auto x = solve_feasibility(cons, 2);
    REQUIRE(x.has_value());
    CHECK(satisfies(cons, *x));
}

TEST_CASE("irrational coefficients") {
    // x * sqrt(2) >= 2 and x <= sqrt(2) admits exactly x = sqrt(2).
    std::vector<LinearConstraint> cons{
        {{Scalar::sqrt2()}, Rel::GE, Scalar(2)},
        {{Scalar(1)}, Rel::LE, Scalar::sqrt2()},
    };
    auto x = solve_feasibility(cons, 1);
    REQUIRE(x.has_value());
    CHECK((*x)[0] == Scalar::sqrt2());
}

TEST_CASE("agrees with Fourier-Motzkin on random small systems") {
    std::mt19937_64 rng(31);
    for (int iter = 0; iter < 200; ++iter) {
        size_t nvars = 1 + rng() % 3;
        size_t m = 1 + rng() % 6;
        std::vector<LinearConstraint> cons;
        for (size_t i = 0; i < m; ++i) {
            Vec a(nvars);
            for (auto& v : a) v = random_rational_scalar(rng, 4);
            Rel rel = static_cast<Rel>(rng() % 3);
            cons.push_back({a, rel, random_rational_scalar(rng, 4)});
        }
        auto x = solve_feasibility(cons, nvars);
        bool oracle = fm_feasible(cons, nvars);
        CHECK(x.has_value() == oracle);
        if (x) CHECK(satisfies(cons, *x));
    }
}

TEST_CASE("trivial systems") {
    CHECK(solve_feasibility({}, 3).has_value());
    std::vector<LinearConstraint> zero_impossible{{{Scalar(0)}, Rel::GE, Scalar(1)}};
    CHECK(!solve_feasibility(zero_impossible, 1).has_value());
    std::vector<LinearConstraint> zero_fine{{{Scalar(0)}, Rel::GE, Scalar(-1)}};
    CHECK(solve_feasibility(zero_fine, 1).has_value());
}

} // TEST_SUITE
