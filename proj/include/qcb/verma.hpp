/*
 * Weight spaces of the irreducible highest weight integrable module
 * Lambda(omega), realized as the quotient of the word-spanned Verma weight
 * space by the radical of the contravariant form.
 *
 * The contravariant form is the unique one with (eta, eta) = 1 for the
 * anti-isomorphism sending F_i to q K_i^{-1} E_i. Peeling the leftmost
 * letter of u gives the closed recursion
 *
 *   (F_i u', w) = q^{1 - e'} (u', E_i w),   e' = k_exponent at content(w) - i,
 *
 * and E_i acts on free words by the commutation recursion
 *
 *   E_i (F_j w eta) = F_j (E_i w eta) + delta_ij [e]_q (w eta),
 *   e = k_exponent at content(w).
 *
 * A weight space keeps all plain words of its content, the full Gram matrix,
 * and the leftmost-independent pivot columns; the pivot words descend to a
 * basis of Lambda(omega)_nu. Everything is exact, memoized per module, and
 * guarded by a coarse lock so completed spaces can be shared across tasks.
 */
#pragma once

#include <mutex>
#include <optional>

#include "qcb/matrix.hpp"
#include "qcb/words.hpp"

namespace qcb {

struct WeightSpace {
    DominantWeight omega;
    Content nu;
    std::vector<FWord> words;        // all plain words of content nu, lex order
    std::map<FWord, size_t> index;   // word -> position in words
    Matrix<RatQ> gram;               // symmetric, |words| x |words|
    std::vector<size_t> pivots;      // leftmost independent columns
    size_t dim = 0;                  // = |pivots| = rank(gram)
    Matrix<RatQ> pivot_gram;         // nonsingular principal submatrix
};

// Coordinates over the pivot words of one weight space; absent key = 0.
struct ModuleVector {
    Content nu;
    std::map<size_t, RatQ> coeffs;

    bool is_zero() const { return coeffs.empty(); }
    void add(size_t k, const RatQ& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = coeffs.emplace(k, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) coeffs.erase(it);
        }
    }
    friend bool operator==(const ModuleVector& a, const ModuleVector& b) {
        return a.nu == b.nu && a.coeffs == b.coeffs;
    }
};

struct Gen {
    enum Kind { E, F, K, Kinv } kind;
    size_t vertex;
    long n = 1;  // divided power for E/F, plain power for K/Kinv

    friend bool operator<(const Gen& a, const Gen& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        if (a.vertex != b.vertex) return a.vertex < b.vertex;
        return a.n < b.n;
    }
    std::string str(const CartanData& cd) const {
        std::string base;
        switch (kind) {
            case E: base = "E_" + cd.vertex_name(vertex); break;
            case F: base = "F_" + cd.vertex_name(vertex); break;
            case K: base = "K_" + cd.vertex_name(vertex); break;
            case Kinv: base = "K_" + cd.vertex_name(vertex) + "^-1"; break;
        }
        if ((kind == E || kind == F) && n > 1) base += "^(" + std::to_string(n) + ")";
        return base;
    }
};

class IrreducibleModule {
public:
    IrreducibleModule(CartanData cd, DominantWeight omega)
        : cd_(std::move(cd)), omega_(std::move(omega)) {
        if (omega_.size() != cd_.rank())
            throw input_error("weight size does not match Cartan rank");
    }

    const CartanData& cartan() const { return cd_; }
    const DominantWeight& omega() const { return omega_; }

    const WeightSpace& space(const Content& nu) {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        return space_nolock(nu);
    }

    size_t dim(const Content& nu) {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        return nu.nonnegative() ? space_nolock(nu).dim : 0;
    }

    // E_i applied to a plain word in the free Verma module.
    FormalWordSum e_action_free(size_t i, const FWord& w) {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        return e_action_nolock(i, w);
    }

    // The contravariant form of two monomials (divided powers allowed).
    RatQ shapovalov(const FWord& u, const FWord& w) {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        FWord up = u.plain_expansion(), wp = w.plain_expansion();
        RatQ v = shapovalov_plain(up, wp);
        return v / RatQ(u.divided_power_factor() * w.divided_power_factor());
    }

    // Expansion of a formal plain-word sum over the pivot basis: the unique
    // vector c with Gram(piv, piv) c = Gram(piv, v).
    ModuleVector reduce(const Content& nu, const FormalWordSum& v) {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        return reduce_nolock(nu, v);
    }

    // The pivot-word representative of a reduced vector.
    FormalWordSum lift(const ModuleVector& v) {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        const WeightSpace& ws = space_nolock(v.nu);
        FormalWordSum s;
        for (const auto& [k, c] : v.coeffs) add_term(s, ws.words[ws.pivots[k]], c);
        return s;
    }

    ModuleVector apply(const Gen& g, const ModuleVector& v) {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        ModuleVector out{target_content(g, v.nu), {}};
        if (!out.nu.nonnegative()) return out;
        for (const auto& [k, c] : v.coeffs) {
            const ModuleVector& img = apply_basis_nolock(g, v.nu, k);
            for (const auto& [j, d] : img.coeffs) out.add(j, c * d);
        }
        return out;
    }

    RatQ form(const ModuleVector& u, const ModuleVector& w) {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        if (u.nu != w.nu) return RatQ();
        const WeightSpace& ws = space_nolock(u.nu);
        RatQ acc;
        for (const auto& [a, ca] : u.coeffs)
            for (const auto& [b, cb] : w.coeffs)
                acc += ca * cb * ws.pivot_gram.at(a, b);
        return acc;
    }

    long k_exponent(const Content& nu, size_t i) const {
        return cd_.k_exponent(omega_, nu, i);
    }

    Content target_content(const Gen& g, const Content& nu) const {
        switch (g.kind) {
            case Gen::F: return nu.plus(g.vertex, g.n);
            case Gen::E: return nu.plus(g.vertex, -g.n);
            default: return nu;
        }
    }

private:
    const WeightSpace& space_nolock(const Content& nu) {
        auto it = spaces_.find(nu);
        if (it != spaces_.end()) return it->second;
        WeightSpace ws;
        ws.omega = omega_;
        ws.nu = nu;
        if (nu.nonnegative()) {
            ws.words = plain_words_of_content(nu);
            for (size_t k = 0; k < ws.words.size(); ++k) ws.index[ws.words[k]] = k;
            const size_t n = ws.words.size();
            ws.gram = Matrix<RatQ>(n, n);
            for (size_t i = 0; i < n; ++i)
                for (size_t j = i; j < n; ++j) {
                    RatQ v = shapovalov_plain(ws.words[i], ws.words[j]);
                    ws.gram.at(i, j) = v;
                    ws.gram.at(j, i) = v;
                }
            EchelonInfo info = echelon_info(ws.gram);
            ws.pivots = info.pivot_cols;
            ws.dim = info.rank;
            ws.pivot_gram = Matrix<RatQ>(ws.dim, ws.dim);
            for (size_t a = 0; a < ws.dim; ++a)
                for (size_t b = 0; b < ws.dim; ++b)
                    ws.pivot_gram.at(a, b) = ws.gram.at(ws.pivots[a], ws.pivots[b]);
        }
        return spaces_.emplace(nu, std::move(ws)).first->second;
    }

    const FormalWordSum& e_action_nolock(size_t i, const FWord& w) {
        auto key = std::make_pair(i, w);
        auto it = e_memo_.find(key);
        if (it != e_memo_.end()) return it->second;
        FormalWordSum out;
        if (!w.is_empty()) {
            const size_t j = w.letter(0).vertex;
            FWord rest = w.tail();
            const FormalWordSum& sub = e_action_nolock(i, rest);
            for (const auto& [sw, c] : sub) add_term(out, sw.prepend(j), c);
            if (i == j) {
                long e = k_exponent(rest.content(cd_.rank()), i);
                add_term(out, rest, RatQ(qint(e)));
            }
        }
        return e_memo_.emplace(std::move(key), std::move(out)).first->second;
    }

    RatQ shapovalov_plain(const FWord& u, const FWord& w) {
        if (u.content(cd_.rank()) != w.content(cd_.rank())) return RatQ();
        if (u.is_empty()) return RatQ(1);
        std::pair<FWord, FWord> key(u, w);
        auto it = shap_memo_.find(key);
        if (it != shap_memo_.end()) return it->second;
        const size_t i = u.letter(0).vertex;
        FWord rest = u.tail();
        Content target = w.content(cd_.rank()).plus(i, -1);
        RatQ acc;
        if (target.nonnegative()) {
            long e = k_exponent(target, i);
            RatQ scale(LaurentInt::q_power(1 - e));
            for (const auto& [ww, c] : e_action_nolock(i, w))
                acc += scale * c * shapovalov_plain(rest, ww);
        }
        shap_memo_.emplace(std::move(key), acc);
        return acc;
    }

    ModuleVector reduce_nolock(const Content& nu, const FormalWordSum& v) {
        const WeightSpace& ws = space_nolock(nu);
        ModuleVector out{nu, {}};
        if (ws.dim == 0 || v.empty()) return out;
        Matrix<RatQ> rhs(ws.dim, 1);
        for (const auto& [w, c] : v) {
            auto it = ws.index.find(w);
            if (it == ws.index.end())
                throw std::logic_error("reduce: word of foreign content");
            for (size_t a = 0; a < ws.dim; ++a)
                rhs.at(a, 0) += c * ws.gram.at(ws.pivots[a], it->second);
        }
        SolveResult sol = solve_exact(ws.pivot_gram, rhs);
        for (size_t a = 0; a < ws.dim; ++a) out.add(a, sol.solution.at(a, 0));
        return out;
    }

    const ModuleVector& apply_basis_nolock(const Gen& g, const Content& nu, size_t k) {
        auto key = std::make_tuple(g, nu, k);
        auto it = act_memo_.find(key);
        if (it != act_memo_.end()) return it->second;

        const WeightSpace& ws = space_nolock(nu);
        const FWord& word = ws.words[ws.pivots[k]];
        ModuleVector out{target_content(g, nu), {}};
        switch (g.kind) {
            case Gen::K:
            case Gen::Kinv: {
                long e = k_exponent(nu, g.vertex) * g.n;
                if (g.kind == Gen::Kinv) e = -e;
                out.add(k, RatQ(LaurentInt::q_power(e)));
                break;
            }
            case Gen::F: {
                if (out.nu.nonnegative()) {
                    FWord w = word;
                    for (long s = 0; s < g.n; ++s) w = w.prepend(g.vertex);
                    FormalWordSum sum;
                    add_term(sum, w, RatQ(LaurentInt(1), qfact(g.n)));
                    out = reduce_nolock(out.nu, sum);
                }
                break;
            }
            case Gen::E: {
                if (out.nu.nonnegative()) {
                    ModuleVector cur{nu, {}};
                    cur.add(k, RatQ(1));
                    for (long s = 0; s < g.n; ++s) {
                        Content t = cur.nu.plus(g.vertex, -1);
                        FormalWordSum acc;
                        const WeightSpace& src = space_nolock(cur.nu);
                        for (const auto& [a, c] : cur.coeffs)
                            for (const auto& [ww, d] :
                                 e_action_nolock(g.vertex, src.words[src.pivots[a]]))
                                add_term(acc, ww, c * d);
                        cur = reduce_nolock(t, acc);
                    }
                    if (g.n > 1) {
                        RatQ inv(LaurentInt(1), qfact(g.n));
                        for (auto& [j, c] : cur.coeffs) c *= inv;
                    }
                    out = std::move(cur);
                }
                break;
            }
        }
        return act_memo_.emplace(std::move(key), std::move(out)).first->second;
    }

    CartanData cd_;
    DominantWeight omega_;
    std::map<Content, WeightSpace> spaces_;
    std::map<std::pair<size_t, FWord>, FormalWordSum> e_memo_;
    std::map<std::pair<FWord, FWord>, RatQ> shap_memo_;
    std::map<std::tuple<Gen, Content, size_t>, ModuleVector> act_memo_;
    mutable std::recursive_mutex mu_;
};

}  // namespace qcb
