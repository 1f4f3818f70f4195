#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcb/driver.hpp"
#include "test_util.hpp"

using namespace qcb;
using qcbtest::ct;

namespace {

Config sl2_config(std::vector<long> weights, long depth) {
    Config cfg;
    cfg.cd = qcbtest::sl2();
    for (long d : weights) cfg.factors.push_back(DominantWeight({d}));
    cfg.depth = depth;
    return cfg;
}

Config sl3_config(std::vector<std::vector<long>> weights, long depth) {
    Config cfg;
    cfg.cd = qcbtest::sl3();
    for (auto& w : weights) cfg.factors.push_back(DominantWeight(w));
    cfg.depth = depth;
    return cfg;
}

// Applies a monomial in the generators to the highest vector; entries act
// right-to-left as written.
TensorVector act_word(const TensorModule& tm, std::vector<Gen> gens) {
    TensorVector v = tm.highest();
    for (auto it = gens.rbegin(); it != gens.rend(); ++it) v = tm.apply(*it, v);
    return v;
}

bool contains_vector(const std::vector<TensorVector>& set, const TensorVector& v) {
    for (const auto& b : set)
        if (b == v) return true;
    return false;
}

}  // namespace

TEST_CASE("negative_part") {
    LaurentInt a = LaurentInt::q_power(2) + LaurentInt(3) + LaurentInt::q_power(-1, 5);
    CHECK(negative_part(a) == LaurentInt::q_power(-1, 5));
    CHECK(negative_part(LaurentInt(7)) == LaurentInt());
    LaurentInt b = LaurentInt::q_power(-2) - LaurentInt::q_power(-5);
    CHECK(negative_part(b) == b);
}

TEST_CASE("triangular_order") {
    // Identity: any order works; smallest-first is chosen.
    Matrix<RatQ> id = Matrix<RatQ>::identity(3);
    auto o = detail::triangular_order(id);
    REQUIRE(o.has_value());
    CHECK(*o == std::vector<size_t>{0, 1, 2});

    // Column 0 depends on row 1: 1 must come first.
    Matrix<RatQ> m = Matrix<RatQ>::identity(2);
    m.at(1, 0) = RatQ(LaurentInt::q_power(-1));
    o = detail::triangular_order(m);
    REQUIRE(o.has_value());
    CHECK(*o == std::vector<size_t>{1, 0});

    // A 2-cycle has no triangular order.
    Matrix<RatQ> c = Matrix<RatQ>::identity(2);
    c.at(1, 0) = RatQ(1);
    c.at(0, 1) = RatQ(1);
    CHECK(!detail::triangular_order(c).has_value());

    // Non-unit diagonal rules the basis out.
    Matrix<RatQ> d = Matrix<RatQ>::identity(2);
    d.at(0, 0) = RatQ(LaurentInt::q_power(1));
    CHECK(!detail::triangular_order(d).has_value());
}

TEST_CASE("sl2 irreducibles: divided powers of the highest vector") {
    for (long d = 0; d <= 6; ++d) {
        Session s(sl2_config({d}, 6));
        const TowerCanon& tc = s.tower(s.config().factors);
        CHECK(tc.total_elements() == static_cast<size_t>(d + 1));
        CHECK(tc.all_certified());
        for (long r = 0; r <= d; ++r) {
            auto it = tc.spaces.find(ct({r}));
            REQUIRE(it != tc.spaces.end());
            REQUIRE(it->second.elements.size() == 1);
            TensorVector expect =
                r == 0 ? tc.tm->highest() : act_word(*tc.tm, {Gen{Gen::F, 0, r}});
            CHECK(it->second.elements[0] == expect);
        }
    }
}

TEST_CASE("sl2 pair: the four canonical elements") {
    Session s(sl2_config({1, 1}, 4));
    const TowerCanon& tc = s.tower(s.config().factors);
    CHECK(tc.total_elements() == 4);
    CHECK(tc.all_certified());

    // nu = 0: eta x eta.
    CHECK(tc.spaces.at(ct({0})).elements[0] == tc.tm->highest());

    // nu = i: Feta x eta and F(eta x eta) = q^-1 Feta x eta + eta x Feta.
    const auto& mid = tc.spaces.at(ct({1})).elements;
    REQUIRE(mid.size() == 2);
    TensorVector l1{ct({1}), {}};
    l1.add(0, RatQ(1));
    TensorVector fv = act_word(*tc.tm, {Gen{Gen::F, 0, 1}});
    CHECK(contains_vector(mid, l1));
    CHECK(contains_vector(mid, fv));

    // nu = 2i: Feta x Feta = F^(2)(eta x eta).
    const auto& top = tc.spaces.at(ct({2})).elements;
    REQUIRE(top.size() == 1);
    CHECK(top[0] == act_word(*tc.tm, {Gen{Gen::F, 0, 2}}));

    // The middle space is genuinely solved by the recursion, not the oracle.
    CHECK(tc.spaces.at(ct({1})).solver == "kl");
}

TEST_CASE("sl3 adjoint: the eight monomial elements") {
    Session s(sl3_config({{1, 1}}, 4));
    const TowerCanon& tc = s.tower(s.config().factors);
    CHECK(tc.total_elements() == 8);
    CHECK(tc.contents.size() == 7);
    CHECK(tc.all_certified());

    const TensorModule& tm = *tc.tm;
    Gen Fi{Gen::F, 0, 1}, Fj{Gen::F, 1, 1}, Fi2{Gen::F, 0, 2}, Fj2{Gen::F, 1, 2};
    auto expect_at = [&](const Content& nu, std::vector<TensorVector> vs) {
        auto it = tc.spaces.find(nu);
        REQUIRE(it != tc.spaces.end());
        REQUIRE(it->second.elements.size() == vs.size());
        for (const auto& v : vs) CHECK(contains_vector(it->second.elements, v));
    };
    expect_at(ct({0, 0}), {tm.highest()});
    expect_at(ct({1, 0}), {act_word(tm, {Fi})});
    expect_at(ct({0, 1}), {act_word(tm, {Fj})});
    expect_at(ct({1, 1}), {act_word(tm, {Fj, Fi}), act_word(tm, {Fi, Fj})});
    expect_at(ct({2, 1}), {act_word(tm, {Fi2, Fj})});
    expect_at(ct({1, 2}), {act_word(tm, {Fj2, Fi})});
    expect_at(ct({2, 2}), {act_word(tm, {Fi, Fj2, Fi})});
}

TEST_CASE("sl3 fundamental tensor products: nine elements with the extra pure tensor") {
    // L(i^) x L(j^): the eight adjoint monomials applied to eta x eta plus
    // F_j F_i eta x eta.
    {
        Session s(sl3_config({{1, 0}, {0, 1}}, 4));
        const TowerCanon& tc = s.tower(s.config().factors);
        CHECK(tc.total_elements() == 9);
        CHECK(tc.all_certified());
        const TensorModule& tm = *tc.tm;
        Gen Fi{Gen::F, 0, 1}, Fj{Gen::F, 1, 1}, Fi2{Gen::F, 0, 2}, Fj2{Gen::F, 1, 2};
        CHECK(contains_vector(tc.spaces.at(ct({0, 0})).elements, tm.highest()));
        CHECK(contains_vector(tc.spaces.at(ct({1, 0})).elements, act_word(tm, {Fi})));
        CHECK(contains_vector(tc.spaces.at(ct({0, 1})).elements, act_word(tm, {Fj})));
        CHECK(contains_vector(tc.spaces.at(ct({2, 1})).elements, act_word(tm, {Fi2, Fj})));
        CHECK(contains_vector(tc.spaces.at(ct({1, 2})).elements, act_word(tm, {Fj2, Fi})));
        CHECK(contains_vector(tc.spaces.at(ct({2, 2})).elements, act_word(tm, {Fi, Fj2, Fi})));
        const auto& mid = tc.spaces.at(ct({1, 1})).elements;
        REQUIRE(mid.size() == 3);
        CHECK(contains_vector(mid, act_word(tm, {Fj, Fi})));
        CHECK(contains_vector(mid, act_word(tm, {Fi, Fj})));
        // The ninth element: F_j F_i eta_i^ (x) eta_j^, a pure tensor.
        const TensorBasis& tb = tm.basis(ct({1, 1}));
        PureTensor pt{{ct({1, 1}), ct({0, 0})}, {0, 0}};
        TensorVector ninth{ct({1, 1}), {}};
        ninth.add(tb.index.at(pt), RatQ(1));
        CHECK(contains_vector(mid, ninth));
    }
    // L(j^) x L(i^): mirror case with F_i F_j eta_j^ (x) eta_i^.
    {
        Session s(sl3_config({{0, 1}, {1, 0}}, 4));
        const TowerCanon& tc = s.tower(s.config().factors);
        CHECK(tc.total_elements() == 9);
        CHECK(tc.all_certified());
        const TensorModule& tm = *tc.tm;
        const auto& mid = tc.spaces.at(ct({1, 1})).elements;
        REQUIRE(mid.size() == 3);
        const TensorBasis& tb = tm.basis(ct({1, 1}));
        PureTensor pt{{ct({1, 1}), ct({0, 0})}, {0, 0}};
        TensorVector ninth{ct({1, 1}), {}};
        ninth.add(tb.index.at(pt), RatQ(1));
        CHECK(contains_vector(mid, ninth));
    }
}

TEST_CASE("oracle equivalence on small spaces") {
    std::vector<Config> cfgs{sl2_config({1, 1}, 4), sl3_config({{1, 1}}, 4),
                             sl3_config({{1, 0}, {0, 1}}, 3)};
    for (Config& cfg : cfgs) {
        Session s(cfg);
        const TowerCanon& tc = s.tower(cfg.factors);
        for (const Content& nu : tc.contents) {
            const CanonicalBasis& cb = tc.spaces.at(nu);
            if (cb.elements.size() > cfg.solver.oracle_dim_cap) continue;
            const BarBasis& bb = tc.bars.at(nu);
            long deg = gram_exponent_scale(*tc.tm, nu) + 2;
            std::vector<TensorVector> oracle = oracle_basis(
                *tc.tm, nu, bb, deg, cfg.solver.height_bound, cfg.solver.complexity_cap,
                cfg.solver.visit_cap);
            std::vector<TensorVector> solver = cb.elements;
            std::sort(solver.begin(), solver.end());
            CHECK(oracle == solver);
        }
    }
}

TEST_CASE("certification catches corrupted bases") {
    Session s(sl2_config({1, 1}, 2));
    const TowerCanon& tc = s.tower(s.config().factors);
    const TensorModule& tm = *tc.tm;
    const BarBasis& bb = tc.bars.at(ct({1}));
    std::vector<TensorVector> good = tc.spaces.at(ct({1})).elements;

    // Scaling an element by [2] breaks almost-orthonormality (and stays
    // bar-fixed, so only that check fires).
    std::vector<TensorVector> scaled = good;
    scaled[0] = scaled[0].scaled(RatQ(qint(2)));
    LocalCert c1 = certify_local(tm, bb, scaled);
    CHECK(c1.bar_fixed);
    CHECK(!c1.almost_orthonormal);

    // A sign flip passes bar-fixedness but breaks positivity of the
    // standard-vector expansions.
    std::vector<TensorVector> flipped = good;
    flipped[0] = flipped[0].scaled(RatQ(-1));
    LocalCert c2 = certify_local(tm, bb, flipped);
    CHECK(c2.bar_fixed);
    CHECK(!c2.l_positive);

    // A non-bar-fixed combination is caught.
    std::vector<TensorVector> mixed = good;
    mixed[1].add_scaled(good[0], RatQ(LaurentInt::q_power(-1)));
    LocalCert c3 = certify_local(tm, bb, mixed);
    CHECK(!c3.bar_fixed);
}

TEST_CASE("normalization invariants of the solved bases") {
    // Where the recursion solved the space, each element is its standard
    // leader plus q^-1 Z[q^-1] corrections; and over the bar-fixed standard
    // vectors every canonical element has bar-fixed coefficients.
    std::vector<Config> cfgs{sl2_config({1, 1}, 4), sl2_config({2, 2}, 4),
                             sl3_config({{1, 0}, {0, 1}}, 4)};
    for (Config& cfg : cfgs) {
        Session s(cfg);
        const TowerCanon& tc = s.tower(cfg.factors);
        for (const Content& nu : tc.contents) {
            const CanonicalBasis& cb = tc.spaces.at(nu);
            if (cb.solver == "kl") {
                for (size_t k = 0; k < cb.elements.size(); ++k) {
                    size_t leaders = 0;
                    for (size_t r = 0; r < cb.elements.size(); ++r) {
                        const RatQ& c = cb.standard_expansion.at(r, k);
                        if (c == RatQ(1)) { ++leaders; continue; }
                        CHECK(ratq_in_qinv_int(c));
                    }
                    CHECK(leaders == 1);
                }
            }
            const BarBasis& bb = tc.bars.at(nu);
            for (const TensorVector& b : cb.elements)
                for (const RatQ& c : coords_via(bb.change_to_standard(), b))
                    CHECK(c.is_bar_fixed());
        }
    }
}

TEST_CASE("empty factor sequence: the vacuum class") {
    Config cfg;
    cfg.cd = qcbtest::sl2();
    cfg.depth = 2;
    Session s(cfg);
    const TowerCanon& tc = s.tower({});
    CHECK(tc.total_elements() == 1);
    CHECK(tc.all_certified());
    CHECK(tc.spaces.at(ct({0})).elements[0] == tc.tm->highest());
}
