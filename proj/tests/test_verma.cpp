#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <thread>

#include "qcb/verma.hpp"
#include "test_util.hpp"

using namespace qcb;
using qcbtest::ct;

namespace {

FWord word(std::vector<FLetter> ls) { return FWord(std::move(ls)); }

// F/E/K applied to formal word sums in the free Verma module, for checking
// contravariance at the M(omega) level.
FormalWordSum f_free(size_t i, long n, const FormalWordSum& v) {
    FormalWordSum out;
    for (const auto& [w, c] : v) {
        FWord nw = w;
        for (long s = 0; s < n; ++s) nw = nw.prepend(i);
        add_term(out, nw, c / RatQ(qfact(n)));
    }
    return out;
}

FormalWordSum e_free(IrreducibleModule& m, size_t i, long n, const FormalWordSum& v) {
    FormalWordSum cur = v;
    for (long s = 0; s < n; ++s) {
        FormalWordSum next;
        for (const auto& [w, c] : cur)
            for (const auto& [ww, d] : m.e_action_free(i, w)) add_term(next, ww, c * d);
        cur = std::move(next);
    }
    if (n > 1) {
        FormalWordSum scaled;
        for (const auto& [w, c] : cur) add_term(scaled, w, c / RatQ(qfact(n)));
        cur = std::move(scaled);
    }
    return cur;
}

FormalWordSum k_free(IrreducibleModule& m, size_t i, long power, const FormalWordSum& v) {
    FormalWordSum out;
    for (const auto& [w, c] : v) {
        long e = m.k_exponent(w.content(m.cartan().rank()), i);
        add_term(out, w, c * RatQ(LaurentInt::q_power(e * power)));
    }
    return out;
}

RatQ form_sums(IrreducibleModule& m, const FormalWordSum& u, const FormalWordSum& w) {
    RatQ acc;
    for (const auto& [uw, uc] : u)
        for (const auto& [ww, wc] : w) acc += uc * wc * m.shapovalov(uw, ww);
    return acc;
}

FormalWordSum random_word_sum(qcbtest::Rng& rng, const CartanData& cd, const Content& nu,
                              int terms) {
    auto words = plain_words_of_content(nu);
    FormalWordSum s;
    for (int t = 0; t < terms; ++t)
        add_term(s, words[static_cast<size_t>(rng.range(0, static_cast<long>(words.size()) - 1))],
                 RatQ(rng.laurent(2, 3)));
    return s;
}

}  // namespace

TEST_CASE("e_action on free words") {
    CartanData cd = qcbtest::sl2();
    for (long n = 0; n <= 4; ++n) {
        IrreducibleModule m(cd, DominantWeight({n}));
        CHECK(m.e_action_free(0, FWord()).empty());  // E eta = 0
        FormalWordSum r = m.e_action_free(0, word({{0, 1}}));
        if (n == 0) {
            CHECK(r.empty());
        } else {
            REQUIRE(r.size() == 1);
            CHECK(r.begin()->first == FWord());
            CHECK(r.begin()->second == RatQ(qint(n)));  // E F eta = [n] eta
        }
    }
    CartanData sl3 = qcbtest::sl3();
    IrreducibleModule m(sl3, DominantWeight({1, 1}));
    // E_i F_j F_i eta = F_j eta (E_i commutes past F_j, then [1] eta).
    FormalWordSum r = m.e_action_free(0, word({{1, 1}, {0, 1}}));
    REQUIRE(r.size() == 1);
    CHECK(r.begin()->first == word({{1, 1}}));
    CHECK(r.begin()->second == RatQ(1));
}

TEST_CASE("shapovalov values") {
    CartanData cd = qcbtest::sl2();
    IrreducibleModule m2(cd, DominantWeight({2}));
    CHECK(m2.shapovalov(FWord(), FWord()) == RatQ(1));
    // (F eta, F eta) = q^{1-2} [2] = 1 + q^-2 at omega = 2.
    CHECK(m2.shapovalov(word({{0, 1}}), word({{0, 1}})) ==
          RatQ(LaurentInt(1) + LaurentInt::q_power(-2)));

    // Closed form (F^(r) eta, F^(r) eta) = q^{-r(d-r)} [d choose r].
    for (long d = 0; d <= 5; ++d) {
        IrreducibleModule m(cd, DominantWeight({d}));
        for (long r = 1; r <= d; ++r) {
            RatQ v = m.shapovalov(word({{0, r}}), word({{0, r}}));
            CHECK(v == RatQ(qbinom(d, r).shifted(-r * (d - r))));
        }
    }

    // (F_i F_j^(2) F_i eta, F_i F_j^(2) F_i eta) = 1 in the sl3 adjoint.
    CartanData sl3 = qcbtest::sl3();
    IrreducibleModule adj(sl3, DominantWeight({1, 1}));
    FWord w = word({{0, 1}, {1, 2}, {0, 1}});
    CHECK(adj.shapovalov(w, w) == RatQ(1));
}

TEST_CASE("shapovalov symmetry and orthogonality of contents") {
    CartanData sl3 = qcbtest::sl3();
    IrreducibleModule m(sl3, DominantWeight({2, 1}));
    auto contents = sl3.enumerate_contents(3);
    for (const auto& nu : contents) {
        auto words = plain_words_of_content(nu);
        for (const auto& u : words)
            for (const auto& w : words) CHECK(m.shapovalov(u, w) == m.shapovalov(w, u));
    }
    CHECK(m.shapovalov(word({{0, 1}}), word({{1, 1}})) == RatQ());
}

TEST_CASE("contravariance of the form on random word vectors") {
    for (CartanData cd : {qcbtest::sl3(), qcbtest::affine_a1()}) {
        IrreducibleModule m(cd, DominantWeight({1, 1}));
        qcbtest::Rng rng(22);
        for (int t = 0; t < 8; ++t) {
            Content nu({rng.range(0, 2), rng.range(0, 2)});
            FormalWordSum u = random_word_sum(rng, cd, nu, 2);
            for (size_t i = 0; i < cd.rank(); ++i) {
                // (K_i u, w) = (u, K_i w)
                FormalWordSum w0 = random_word_sum(rng, cd, nu, 2);
                CHECK(form_sums(m, k_free(m, i, 1, u), w0) == form_sums(m, u, k_free(m, i, 1, w0)));
                // (E_i u, w) = (u, q K_i F_i w), w of content nu - i
                Content down = nu.plus(i, -1);
                if (down.nonnegative()) {
                    FormalWordSum w1 = random_word_sum(rng, cd, down, 2);
                    RatQ lhs = form_sums(m, e_free(m, i, 1, u), w1);
                    RatQ rhs = form_sums(m, u, k_free(m, i, 1, f_free(i, 1, w1))) *
                               RatQ(LaurentInt::q_power(1));
                    CHECK(lhs == rhs);
                }
                // (F_i u, w) = (u, q K_i^-1 E_i w), w of content nu + i
                FormalWordSum w2 = random_word_sum(rng, cd, nu.plus(i, 1), 2);
                RatQ lhs = form_sums(m, f_free(i, 1, u), w2);
                RatQ rhs = form_sums(m, u, k_free(m, i, -1, e_free(m, i, 1, w2))) *
                           RatQ(LaurentInt::q_power(1));
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("divided-power adjunction carries q^{n^2}") {
    CartanData sl3 = qcbtest::sl3();
    IrreducibleModule m(sl3, DominantWeight({2, 2}));
    qcbtest::Rng rng(23);
    for (long n = 1; n <= 3; ++n) {
        Content nu({n, 1});
        FormalWordSum u = random_word_sum(rng, sl3, nu, 2);
        FormalWordSum w = random_word_sum(rng, sl3, nu.plus(0, -n), 2);
        // (E^(n) u, w) = q^{n^2} (u, K^n F^(n) w)
        RatQ lhs = form_sums(m, e_free(m, 0, n, u), w);
        RatQ rhs = form_sums(m, u, k_free(m, 0, n, f_free(0, n, w))) *
                   RatQ(LaurentInt::q_power(n * n));
        CHECK(lhs == rhs);
        // (F^(n) u, w) = q^{n^2} (u, K^-n E^(n) w)
        FormalWordSum w2 = random_word_sum(rng, sl3, nu.plus(0, n), 2);
        RatQ lhs2 = form_sums(m, f_free(0, n, u), w2);
        RatQ rhs2 = form_sums(m, u, k_free(m, 0, -n, e_free(m, 0, n, w2))) *
                    RatQ(LaurentInt::q_power(n * n));
        CHECK(lhs2 == rhs2);
    }
}

TEST_CASE("weight space dimensions") {
    CartanData cd = qcbtest::sl2();
    for (long d = 0; d <= 4; ++d) {
        IrreducibleModule m(cd, DominantWeight({d}));
        for (long r = 0; r <= 6; ++r) CHECK(m.dim(ct({r})) == (r <= d ? 1u : 0u));
    }
    CartanData sl3 = qcbtest::sl3();
    IrreducibleModule adj(sl3, DominantWeight({1, 1}));
    CHECK(adj.dim(ct({0, 0})) == 1);
    CHECK(adj.dim(ct({1, 0})) == 1);
    CHECK(adj.dim(ct({1, 1})) == 2);
    CHECK(adj.dim(ct({2, 1})) == 1);
    CHECK(adj.dim(ct({2, 2})) == 1);
    CHECK(adj.dim(ct({2, 0})) == 0);
    CHECK(adj.dim(ct({3, 1})) == 0);

    // Pivot Gram is nonsingular (nondegeneracy on the quotient).
    const WeightSpace& ws = adj.space(ct({1, 1}));
    CHECK(ws.dim == 2);
    CHECK(echelon_info(ws.pivot_gram).rank == 2);
    CHECK(ws.words.size() == 2);
}

TEST_CASE("reduce_to_basis") {
    CartanData cd = qcbtest::sl2();
    IrreducibleModule m1(cd, DominantWeight({1}));
    // A pivot word reduces to a unit coordinate vector.
    {
        IrreducibleModule m(cd, DominantWeight({3}));
        const WeightSpace& ws = m.space(ct({2}));
        FormalWordSum v;
        add_term(v, ws.words[ws.pivots[0]], RatQ(1));
        ModuleVector r = m.reduce(ct({2}), v);
        REQUIRE(r.coeffs.size() == 1);
        CHECK(r.coeffs.begin()->second == RatQ(1));
    }
    // F^2 eta lies in the radical of Lambda(1).
    {
        FormalWordSum v;
        add_term(v, word({{0, 1}, {0, 1}}), RatQ(1));
        CHECK(m1.reduce(ct({2}), v).is_zero());
    }
    // The quantum Serre combination vanishes in the sl3 quotient.
    {
        CartanData sl3 = qcbtest::sl3();
        IrreducibleModule m(sl3, DominantWeight({1, 1}));
        FormalWordSum v;
        add_term(v, word({{0, 1}, {0, 1}, {1, 1}}), RatQ(1));
        add_term(v, word({{0, 1}, {1, 1}, {0, 1}}), -RatQ(qint(2)));
        add_term(v, word({{1, 1}, {0, 1}, {0, 1}}), RatQ(1));
        CHECK(m.reduce(ct({2, 1}), v).is_zero());
    }
}

TEST_CASE("generator action on reduced vectors") {
    CartanData cd = qcbtest::sl2();
    IrreducibleModule m(cd, DominantWeight({1}));
    ModuleVector eta{ct({0}), {}};
    eta.add(0, RatQ(1));
    // K eta = q^{omega} eta
    ModuleVector k = m.apply(Gen{Gen::K, 0, 1}, eta);
    REQUIRE(k.coeffs.size() == 1);
    CHECK(k.coeffs.at(0) == RatQ(LaurentInt::q_power(1)));
    // F^(2) kills Lambda(1)
    CHECK(m.apply(Gen{Gen::F, 0, 2}, eta).is_zero());
    ModuleVector feta = m.apply(Gen{Gen::F, 0, 1}, eta);
    CHECK(!feta.is_zero());
    CHECK(m.apply(Gen{Gen::F, 0, 1}, feta).is_zero());

    // sl3 adjoint: E_i of the content-(2,2) basis vector has coefficients in
    // N[q,q^-1] over the (1,2) pivot basis.
    CartanData sl3 = qcbtest::sl3();
    IrreducibleModule adj(sl3, DominantWeight({1, 1}));
    FormalWordSum v;
    add_term(v, word({{0, 1}, {1, 1}, {1, 1}, {0, 1}}), RatQ(LaurentInt(1), qfact(2)));
    ModuleVector b = adj.reduce(ct({2, 2}), v);  // F_i F_j^(2) F_i eta
    REQUIRE(!b.is_zero());
    ModuleVector e = adj.apply(Gen{Gen::E, 0, 1}, b);
    REQUIRE(!e.is_zero());
    for (const auto& [k2, c] : e.coeffs) {
        CHECK(c.is_laurent());
        CHECK(c.num().is_nonneg());
    }
}

TEST_CASE("integrability bound") {
    // F_i^N kills a weight vector once N exceeds k_exponent + nu_i.
    CartanData cd = qcbtest::sl2();
    for (long d = 0; d <= 4; ++d) {
        IrreducibleModule m(cd, DominantWeight({d}));
        for (long r = 0; r <= d; ++r) {
            ModuleVector v{ct({r}), {}};
            v.add(0, RatQ(1));
            long bound = m.k_exponent(ct({r}), 0) + r;  // = d - r
            if (bound >= 1) CHECK(!m.apply(Gen{Gen::F, 0, bound}, v).is_zero());
            CHECK(m.apply(Gen{Gen::F, 0, bound + 1}, v).is_zero());
        }
    }
    CartanData sl3 = qcbtest::sl3();
    IrreducibleModule adj(sl3, DominantWeight({1, 1}));
    for (const Content& nu : sl3.enumerate_contents(4)) {
        size_t dim = adj.dim(nu);
        for (size_t k = 0; k < dim; ++k) {
            ModuleVector v{nu, {}};
            v.add(k, RatQ(1));
            for (size_t i = 0; i < 2; ++i) {
                long bound = adj.k_exponent(nu, i) + nu[i];
                ModuleVector cur = v;
                for (long s = 0; s < bound + 1; ++s) cur = adj.apply(Gen{Gen::F, i, 1}, cur);
                CHECK(cur.is_zero());
                // String tops die one past the exponent.
                if (adj.apply(Gen{Gen::E, i, 1}, v).is_zero()) {
                    ModuleVector top = v;
                    long e = adj.k_exponent(nu, i);
                    for (long s = 0; s < std::max(e, 0l) + 1; ++s)
                        top = adj.apply(Gen{Gen::F, i, 1}, top);
                    CHECK(top.is_zero());
                }
            }
        }
    }
}

TEST_CASE("weight spaces built concurrently agree with serial results") {
    CartanData sl3 = qcbtest::sl3();
    IrreducibleModule serial(sl3, DominantWeight({1, 1}));
    IrreducibleModule shared(sl3, DominantWeight({1, 1}));
    auto contents = sl3.enumerate_contents(4);
    std::vector<std::thread> threads;
    for (int t = 0; t < 4; ++t)
        threads.emplace_back([&shared, &contents, t]() {
            for (size_t k = static_cast<size_t>(t); k < contents.size(); k += 4)
                (void)shared.space(contents[k]);
        });
    for (auto& th : threads) th.join();
    for (const auto& nu : contents) {
        const WeightSpace& a = serial.space(nu);
        const WeightSpace& b = shared.space(nu);
        CHECK(a.dim == b.dim);
        CHECK(a.pivots == b.pivots);
        CHECK(a.gram == b.gram);
    }
}
