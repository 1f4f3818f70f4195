#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcb/json_io.hpp"
#include "test_util.hpp"

using namespace qcb;
using qcbtest::ct;

TEST_CASE("from_graph builds the symmetric matrix") {
    CartanData sl2 = qcbtest::sl2();
    CHECK(sl2.rank() == 1);
    CHECK(sl2.a(0, 0) == 2);

    CartanData sl3 = qcbtest::sl3();
    CHECK(sl3.a(0, 0) == 2);
    CHECK(sl3.a(1, 1) == 2);
    CHECK(sl3.a(0, 1) == -1);
    CHECK(sl3.a(1, 0) == -1);

    CartanData aff = qcbtest::affine_a1();
    CHECK(aff.a(0, 1) == -2);
    CHECK(aff.a(1, 0) == -2);

    CHECK_THROWS_WITH_AS(CartanData::from_graph({"i"}, {{"i", "i"}}),
                         "circle edges forbidden", input_error);
    CHECK_THROWS_AS(CartanData::from_graph({"i"}, {{"i", "k"}}), input_error);
}

TEST_CASE("from_matrix validates the GCM axioms") {
    CartanData cd = CartanData::from_matrix({"i", "j"}, {{2, -1}, {-1, 2}});
    CHECK(cd.a(0, 1) == -1);
    CHECK(cd.edges().size() == 1);
    CHECK_THROWS_WITH_AS(CartanData::from_matrix({"i", "j"}, {{2, -1}, {0, 2}}),
                         "matrix not symmetric", input_error);
    CHECK_THROWS_AS(CartanData::from_matrix({"i", "j"}, {{1, 0}, {0, 2}}), input_error);
    CHECK_THROWS_AS(CartanData::from_matrix({"i", "j"}, {{2, 1}, {1, 2}}), input_error);
}

TEST_CASE("k_exponent formula") {
    CartanData sl2 = qcbtest::sl2();
    for (long d = 0; d <= 5; ++d)
        for (long r = 0; r <= 5; ++r)
            CHECK(sl2.k_exponent(DominantWeight({d}), ct({r}), 0) == d - 2 * r);
    CHECK(sl2.k_exponent(DominantWeight({1}), ct({1}), 0) == -1);

    CartanData sl3 = qcbtest::sl3();
    DominantWeight w({1, 1});
    CHECK(sl3.k_exponent(w, ct({1, 0}), 0) == -1);
    CHECK(sl3.k_exponent(w, ct({1, 0}), 1) == 2);
}

TEST_CASE("k_exponent additivity") {
    qcbtest::Rng rng(11);
    CartanData cd = qcbtest::sl3();
    for (int t = 0; t < 100; ++t) {
        DominantWeight w({rng.range(0, 3), rng.range(0, 3)});
        Content a({rng.range(0, 4), rng.range(0, 4)});
        Content b({rng.range(0, 4), rng.range(0, 4)});
        for (size_t i = 0; i < 2; ++i) {
            long delta = 0;
            for (size_t j = 0; j < 2; ++j) delta += cd.a(i, j) * b[j];
            CHECK(cd.k_exponent(w, a + b, i) == cd.k_exponent(w, a, i) - delta);
        }
    }
}

TEST_CASE("framed-quiver grading consistency") {
    // With the framing multiplicity at i set to omega_i, the double-quiver
    // count (sum over arrows out of i of the target multiplicity) minus
    // 2 nu_i equals the K-exponent.
    for (const CartanData& cd : {qcbtest::sl3(), qcbtest::affine_a1()}) {
        qcbtest::Rng rng(12);
        for (int t = 0; t < 50; ++t) {
            DominantWeight w({rng.range(0, 3), rng.range(0, 3)});
            Content nu({rng.range(0, 4), rng.range(0, 4)});
            for (size_t i = 0; i < cd.rank(); ++i) {
                long nu_bar = w[i] - nu[i];  // framing arrow i -> i^ contributes omega_i
                for (const auto& [u, v] : cd.edges()) {
                    if (u == i) nu_bar += nu[v];
                    if (v == i) nu_bar += nu[u];
                }
                CHECK(nu_bar - nu[i] == cd.k_exponent(w, nu, i));
            }
        }
    }
}

TEST_CASE("enumerate_contents in graded order") {
    CartanData sl2 = qcbtest::sl2();
    auto c0 = sl2.enumerate_contents(0);
    REQUIRE(c0.size() == 1);
    CHECK(c0[0] == ct({0}));

    auto c2 = sl2.enumerate_contents(2);
    REQUIRE(c2.size() == 3);
    CHECK(c2[0] == ct({0}));
    CHECK(c2[1] == ct({1}));
    CHECK(c2[2] == ct({2}));

    CartanData sl3 = qcbtest::sl3();
    auto d2 = sl3.enumerate_contents(2);
    REQUIRE(d2.size() == 6);
    CHECK(d2[0] == ct({0, 0}));
    CHECK(d2[1] == ct({1, 0}));
    CHECK(d2[2] == ct({0, 1}));
    CHECK(d2[3] == ct({2, 0}));
    CHECK(d2[4] == ct({1, 1}));
    CHECK(d2[5] == ct({0, 2}));
}

TEST_CASE("weight and content json") {
    CartanData sl3 = qcbtest::sl3();
    DominantWeight w = weight_from_json(sl3, Json::parse(R"({"i":1,"j":0})"));
    CHECK(w == DominantWeight({1, 0}));
    CHECK(weight_to_json(sl3, w) == Json::parse(R"({"i":1,"j":0})"));
    // Sparse maps are accepted.
    CHECK(weight_from_json(sl3, Json::parse(R"({"j":2})")) == DominantWeight({0, 2}));
    CHECK_THROWS_AS(weight_from_json(sl3, Json::parse(R"({"z":1})")), input_error);
    CHECK_THROWS_AS(content_from_json(sl3, Json::parse(R"({"i":-1})")), input_error);
}
