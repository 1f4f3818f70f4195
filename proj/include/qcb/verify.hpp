/*
 * Property-check harness over realized modules: the defining relations of
 * the quantum group, the divided-power operator identities
 *
 *   E_i^{(n-1)} E_i = [n] E_i^{(n)},   F_i^{(n-1)} F_i = [n] F_i^{(n)},
 *   E_i F_i - F_i E_i = [k-exponent] id,   E_i F_j = F_j E_i (i != j),
 *
 * and the contravariant-form identities (symmetry, contravariance for every
 * generator, the divided-power adjunction with its q^{n^2} factor,
 * nondegeneracy, and N[q,q^-1]-integrality of standard-vector Gram entries).
 * Checks run on every basis vector of every weight space up to the depth
 * cutoff and are collected into a deterministic report; the first failing
 * vector in order is kept as the witness.
 */
#pragma once

#include "qcb/canon.hpp"

namespace qcb {

struct CheckResult {
    std::string id;
    bool pass = true;
    size_t checked = 0;
    std::string witness;  // set on first failure

    void count() { ++checked; }
    void fail(const std::string& w) {
        if (pass) witness = w;
        pass = false;
    }
};

struct RelationReport {
    std::string module_id;
    long depth = 0;
    std::vector<CheckResult> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    size_t fail_count() const {
        size_t n = 0;
        for (const auto& c : checks) n += !c.pass;
        return n;
    }
};

inline std::string weight_str(const CartanData& cd, const DominantWeight& w) {
    std::string s;
    for (size_t i = 0; i < cd.rank(); ++i) {
        if (w[i] == 0) continue;
        if (!s.empty()) s += "+";
        if (w[i] != 1) s += std::to_string(w[i]);
        s += cd.vertex_name(i);
    }
    return s.empty() ? "0" : s;
}

inline std::string content_str(const CartanData& cd, const Content& nu) {
    std::string s;
    for (size_t i = 0; i < cd.rank(); ++i) {
        if (nu[i] == 0) continue;
        if (!s.empty()) s += "+";
        if (nu[i] != 1) s += std::to_string(nu[i]);
        s += cd.vertex_name(i);
    }
    return s.empty() ? "0" : s;
}

inline std::string tower_name(const CartanData& cd, const std::vector<DominantWeight>& factors) {
    if (factors.empty()) return "L()";
    std::string s;
    for (size_t a = 0; a < factors.size(); ++a) {
        if (a) s += " x ";
        s += "L(" + weight_str(cd, factors[a]) + ")";
    }
    return s;
}

namespace detail {

inline std::string witness_str(const TensorModule& tm, const Content& nu, size_t k,
                               const std::string& what) {
    return what + " at nu = " + content_str(tm.cartan(), nu) + ", basis vector " +
           std::to_string(k);
}

inline TensorVector unit_vector(const Content& nu, size_t k) {
    TensorVector v{nu, {}};
    v.add(k, RatQ(1));
    return v;
}

}  // namespace detail

// Defining relations of the quantum group on every basis vector up to depth:
// K-commutations, K_i K_i^-1 = 1, the E-F commutator, both Serre sums.
inline RelationReport verify_relations(const TensorModule& tm, long depth) {
    const CartanData& cd = tm.cartan();
    RelationReport rep;
    rep.module_id = tower_name(cd, tm.factors());
    rep.depth = depth;
    CheckResult kk_inv{"rel.K_Kinv"}, kk{"rel.KK"}, ke{"rel.KE"}, kf{"rel.KF"},
        ef{"rel.EF_comm"}, serre_e{"rel.serre_E"}, serre_f{"rel.serre_F"};

    for (const Content& nu : cd.enumerate_contents(depth)) {
        const size_t dim = tm.dim(nu);
        for (size_t k = 0; k < dim; ++k) {
            TensorVector v = detail::unit_vector(nu, k);
            for (size_t i = 0; i < cd.rank(); ++i) {
                Gen Ki{Gen::K, i, 1}, Kiv{Gen::Kinv, i, 1};
                kk_inv.count();
                if (!(tm.apply(Kiv, tm.apply(Ki, v)) == v))
                    kk_inv.fail(detail::witness_str(tm, nu, k, "K_i K_i^-1 != 1"));
                for (size_t j = 0; j < cd.rank(); ++j) {
                    Gen Kj{Gen::K, j, 1}, Ej{Gen::E, j, 1}, Fj{Gen::F, j, 1};
                    kk.count();
                    if (!(tm.apply(Ki, tm.apply(Kj, v)) == tm.apply(Kj, tm.apply(Ki, v))))
                        kk.fail(detail::witness_str(tm, nu, k, "K_i K_j != K_j K_i"));
                    ke.count();
                    {
                        TensorVector lhs = tm.apply(Ki, tm.apply(Ej, v));
                        TensorVector rhs =
                            tm.apply(Ej, tm.apply(Ki, v)).scaled(RatQ(LaurentInt::q_power(cd.a(i, j))));
                        if (!(lhs == rhs))
                            ke.fail(detail::witness_str(tm, nu, k, "K_i E_j != q^{a_ij} E_j K_i"));
                    }
                    kf.count();
                    {
                        TensorVector lhs = tm.apply(Ki, tm.apply(Fj, v));
                        TensorVector rhs = tm.apply(Fj, tm.apply(Ki, v))
                                               .scaled(RatQ(LaurentInt::q_power(-cd.a(i, j))));
                        if (!(lhs == rhs))
                            kf.fail(detail::witness_str(tm, nu, k, "K_i F_j != q^{-a_ij} F_j K_i"));
                    }
                    ef.count();
                    {
                        Gen Ei{Gen::E, i, 1};
                        TensorVector lhs = tm.apply(Ei, tm.apply(Fj, v));
                        lhs.add_scaled(tm.apply(Fj, tm.apply(Ei, v)), RatQ(-1));
                        bool ok = (i == j)
                                      ? lhs == v.scaled(RatQ(qint(tm.k_exponent(nu, i))))
                                      : lhs.is_zero();
                        if (!ok)
                            ef.fail(detail::witness_str(
                                tm, nu, k, "E_i F_j - F_j E_i != delta_ij [exponent]"));
                    }
                    if (i != j) {
                        const long top = 1 - cd.a(i, j);
                        auto serre = [&](Gen::Kind kind, CheckResult& res) {
                            res.count();
                            std::optional<TensorVector> acc;
                            for (long m = 0; m <= top; ++m) {
                                TensorVector t = v;
                                if (top - m > 0) t = tm.apply(Gen{kind, i, top - m}, t);
                                t = tm.apply(Gen{kind, j, 1}, t);
                                if (m > 0) t = tm.apply(Gen{kind, i, m}, t);
                                if (!acc) acc = std::move(t);
                                else acc->add_scaled(t, RatQ(m % 2 == 0 ? 1 : -1));
                            }
                            if (!acc->is_zero())
                                res.fail(detail::witness_str(
                                    tm, nu, k,
                                    std::string("Serre sum in ") +
                                        (kind == Gen::F ? "F" : "E") + " nonzero (i=" +
                                        cd.vertex_name(i) + ", j=" + cd.vertex_name(j) + ")"));
                        };
                        serre(Gen::E, serre_e);
                        serre(Gen::F, serre_f);
                    }
                }
            }
        }
    }
    rep.checks = {kk_inv, kk, ke, kf, ef, serre_e, serre_f};
    return rep;
}

// Divided-power operator identities on every basis vector up to depth.
inline RelationReport verify_kef_shadow(const TensorModule& tm, long depth) {
    const CartanData& cd = tm.cartan();
    RelationReport rep;
    rep.module_id = tower_name(cd, tm.factors());
    rep.depth = depth;
    CheckResult kef4{"kef.4"}, kef5{"kef.5"}, kef6{"kef.6"}, kef7{"kef.7"};

    for (const Content& nu : cd.enumerate_contents(depth)) {
        const size_t dim = tm.dim(nu);
        for (size_t k = 0; k < dim; ++k) {
            TensorVector v = detail::unit_vector(nu, k);
            for (size_t i = 0; i < cd.rank(); ++i) {
                for (long n = 2; n <= std::min<long>(4, nu[i] + 1); ++n) {
                    kef4.count();
                    TensorVector lhs =
                        tm.apply(Gen{Gen::E, i, n - 1}, tm.apply(Gen{Gen::E, i, 1}, v));
                    TensorVector rhs = tm.apply(Gen{Gen::E, i, n}, v).scaled(RatQ(qint(n)));
                    if (!(lhs == rhs))
                        kef4.fail(detail::witness_str(tm, nu, k,
                                                      "E^(n-1) E != [n] E^(n), n=" +
                                                          std::to_string(n)));
                }
                for (long n = 2; n <= std::min<long>(3, depth + 1 - nu.total()); ++n) {
                    kef5.count();
                    TensorVector lhs =
                        tm.apply(Gen{Gen::F, i, n - 1}, tm.apply(Gen{Gen::F, i, 1}, v));
                    TensorVector rhs = tm.apply(Gen{Gen::F, i, n}, v).scaled(RatQ(qint(n)));
                    if (!(lhs == rhs))
                        kef5.fail(detail::witness_str(tm, nu, k,
                                                      "F^(n-1) F != [n] F^(n), n=" +
                                                          std::to_string(n)));
                }
                for (size_t j = 0; j < cd.rank(); ++j) {
                    Gen Ei{Gen::E, i, 1}, Fj{Gen::F, j, 1};
                    if (i == j) {
                        kef6.count();
                        TensorVector lhs = tm.apply(Ei, tm.apply(Fj, v));
                        lhs.add_scaled(tm.apply(Fj, tm.apply(Ei, v)), RatQ(-1));
                        if (!(lhs == v.scaled(RatQ(qint(tm.k_exponent(nu, i))))))
                            kef6.fail(detail::witness_str(tm, nu, k,
                                                          "E_i F_i - F_i E_i != [exponent]"));
                    } else {
                        kef7.count();
                        if (!(tm.apply(Ei, tm.apply(Fj, v)) == tm.apply(Fj, tm.apply(Ei, v))))
                            kef7.fail(detail::witness_str(tm, nu, k, "E_i F_j != F_j E_i"));
                    }
                }
            }
        }
    }
    rep.checks = {kef4, kef5, kef6, kef7};
    return rep;
}

// Contravariant-form identities up to depth.
inline RelationReport verify_forms(const TensorModule& tm, long depth) {
    const CartanData& cd = tm.cartan();
    RelationReport rep;
    rep.module_id = tower_name(cd, tm.factors());
    rep.depth = depth;
    CheckResult sym{"form.symmetry"}, contra_k{"form.contravariance.K"},
        contra_e{"form.contravariance.E"}, contra_f{"form.contravariance.F"},
        adj_e{"form.adjunction.E"}, adj_f{"form.adjunction.F"}, nondeg{"form.nondegeneracy"},
        lpos{"form.L_integrality"};

    std::vector<Content> contents = cd.enumerate_contents(depth);
    for (const Content& nu : contents) {
        const size_t dim = tm.dim(nu);
        if (dim == 0) continue;

        // Symmetry and nondegeneracy of the weight-space Gram matrix.
        Matrix<RatQ> gram(dim, dim);
        for (size_t a = 0; a < dim; ++a)
            for (size_t b = 0; b < dim; ++b) {
                gram.at(a, b) =
                    tm.form(detail::unit_vector(nu, a), detail::unit_vector(nu, b));
                if (b < a) {
                    sym.count();
                    if (!(gram.at(a, b) == gram.at(b, a)))
                        sym.fail(detail::witness_str(tm, nu, a, "(u,w) != (w,u)"));
                }
            }
        nondeg.count();
        if (echelon_info(gram).rank != dim)
            nondeg.fail("singular Gram matrix at nu = " + content_str(cd, nu));

        // Standard-vector Gram entries lie in N[q,q^-1].
        {
            std::vector<TensorVector> ls;
            for (const auto& mu : tm.enumerate_mu(nu)) ls.push_back(tm.l_vector(mu));
            for (size_t a = 0; a < ls.size(); ++a)
                for (size_t b = a; b < ls.size(); ++b) {
                    lpos.count();
                    RatQ g = tm.form(ls[a], ls[b]);
                    if (!ratq_in_nonneg(g))
                        lpos.fail("standard Gram entry " + g.str() + " at nu = " +
                                  content_str(cd, nu) + " outside N[q,q^-1]");
                }
        }

        // Contravariance (x u, w) = (u, rho(x) w) for the generators, and the
        // divided-power adjunction with the q^{n^2} factor.
        for (size_t i = 0; i < cd.rank(); ++i) {
            Gen Ki{Gen::K, i, 1}, Kinv{Gen::Kinv, i, 1}, Ei{Gen::E, i, 1}, Fi{Gen::F, i, 1};
            // (K_i u, w) = (u, K_i w) on the same content.
            for (size_t a = 0; a < dim; ++a)
                for (size_t b = 0; b < dim; ++b) {
                    contra_k.count();
                    TensorVector u = detail::unit_vector(nu, a), w = detail::unit_vector(nu, b);
                    if (!(tm.form(tm.apply(Ki, u), w) == tm.form(u, tm.apply(Ki, w))))
                        contra_k.fail(detail::witness_str(tm, nu, a, "(K u, w) != (u, K w)"));
                }
            // (E_i u, w) = (u, q K_i F_i w): u at nu, w at nu - i.
            Content down = nu.plus(i, -1);
            if (down.nonnegative()) {
                const size_t ddim = tm.dim(down);
                for (size_t a = 0; a < dim; ++a)
                    for (size_t b = 0; b < ddim; ++b) {
                        contra_e.count();
                        TensorVector u = detail::unit_vector(nu, a);
                        TensorVector w = detail::unit_vector(down, b);
                        RatQ lhs = tm.form(tm.apply(Ei, u), w);
                        RatQ rhs = tm.form(
                            u, tm.apply(Ki, tm.apply(Fi, w)).scaled(RatQ(LaurentInt::q_power(1))));
                        if (!(lhs == rhs))
                            contra_e.fail(
                                detail::witness_str(tm, nu, a, "(E u, w) != (u, q K F w)"));
                    }
            }
            // (F_i u, w) = (u, q K_i^-1 E_i w): u at nu, w at nu + i.
            Content up = nu.plus(i, 1);
            if (up.total() <= depth) {
                const size_t udim = tm.dim(up);
                for (size_t a = 0; a < dim; ++a)
                    for (size_t b = 0; b < udim; ++b) {
                        contra_f.count();
                        TensorVector u = detail::unit_vector(nu, a);
                        TensorVector w = detail::unit_vector(up, b);
                        RatQ lhs = tm.form(tm.apply(Fi, u), w);
                        RatQ rhs = tm.form(u, tm.apply(Kinv, tm.apply(Ei, w))
                                                  .scaled(RatQ(LaurentInt::q_power(1))));
                        if (!(lhs == rhs))
                            contra_f.fail(
                                detail::witness_str(tm, nu, a, "(F u, w) != (u, q K^-1 E w)"));
                    }
            }
            // (E^{(n)} u, w) = q^{n^2} (u, K^n F^{(n)} w) and
            // (F^{(n)} u, w) = q^{n^2} (u, K^-n E^{(n)} w).
            for (long n = 1; n <= 3; ++n) {
                Content en = nu.plus(i, -n);
                if (en.nonnegative() && tm.dim(en) > 0) {
                    const size_t edim = tm.dim(en);
                    for (size_t a = 0; a < dim; ++a)
                        for (size_t b = 0; b < edim; ++b) {
                            adj_e.count();
                            TensorVector u = detail::unit_vector(nu, a);
                            TensorVector w = detail::unit_vector(en, b);
                            RatQ lhs = tm.form(tm.apply(Gen{Gen::E, i, n}, u), w);
                            RatQ rhs =
                                tm.form(u, tm.apply(Gen{Gen::K, i, n},
                                                    tm.apply(Gen{Gen::F, i, n}, w))) *
                                RatQ(LaurentInt::q_power(n * n));
                            if (!(lhs == rhs))
                                adj_e.fail(detail::witness_str(
                                    tm, nu, a,
                                    "(E^(n) u, w) != q^{n^2} (u, K^n F^(n) w), n=" +
                                        std::to_string(n)));
                        }
                }
                Content fn = nu.plus(i, n);
                if (fn.total() <= depth && tm.dim(fn) > 0) {
                    const size_t fdim = tm.dim(fn);
                    for (size_t a = 0; a < dim; ++a)
                        for (size_t b = 0; b < fdim; ++b) {
                            adj_f.count();
                            TensorVector u = detail::unit_vector(nu, a);
                            TensorVector w = detail::unit_vector(fn, b);
                            RatQ lhs = tm.form(tm.apply(Gen{Gen::F, i, n}, u), w);
                            RatQ rhs =
                                tm.form(u, tm.apply(Gen{Gen::Kinv, i, n},
                                                    tm.apply(Gen{Gen::E, i, n}, w))) *
                                RatQ(LaurentInt::q_power(n * n));
                            if (!(lhs == rhs))
                                adj_f.fail(detail::witness_str(
                                    tm, nu, a,
                                    "(F^(n) u, w) != q^{n^2} (u, K^-n E^(n) w), n=" +
                                        std::to_string(n)));
                        }
                }
            }
        }
    }
    rep.checks = {sym, contra_k, contra_e, contra_f, adj_e, adj_f, nondeg, lpos};
    return rep;
}

}  // namespace qcb
