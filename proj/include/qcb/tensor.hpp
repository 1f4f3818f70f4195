/*
 * Tensor products Lambda(omega^1) x ... x Lambda(omega^t) with generator
 * actions through the iterated comultiplication
 *
 *   Delta K_i = K_i x K_i
 *   Delta E_i = E_i x 1 + K_i x E_i
 *   Delta F_i = F_i x K_i^{-1} + 1 x F_i
 *
 * the product contravariant form (u1 x u2, w1 x w2) = (u1, w1)(u2, w2), and
 * the standard vectors obtained from the vacuum by mixed sequences of
 * type I / type II steps.
 *
 * A module of length t keeps a pointer to its length t-1 prefix; the empty
 * tensor product is the trivial module Q(q) with basis element "1". The
 * per-content basis consists of pure tensors: a composition of the content
 * into component contents plus a pivot-word index in each component.
 */
#pragma once

#include <memory>

#include "qcb/verma.hpp"

namespace qcb {

struct PureTensor {
    std::vector<Content> parts;
    std::vector<size_t> idx;

    friend bool operator==(const PureTensor& a, const PureTensor& b) {
        return a.parts == b.parts && a.idx == b.idx;
    }
    friend bool operator<(const PureTensor& a, const PureTensor& b) {
        if (a.parts != b.parts) {
            for (size_t k = 0; k < a.parts.size(); ++k)
                if (a.parts[k] != b.parts[k]) return graded_order_less(b.parts[k], a.parts[k]);
        }
        return a.idx < b.idx;
    }
};

struct TensorBasis {
    Content nu;
    std::vector<PureTensor> elems;
    std::map<PureTensor, size_t> index;
    size_t dim() const { return elems.size(); }
};

struct TensorVector {
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
    void add_scaled(const TensorVector& o, const RatQ& c) {
        for (const auto& [k, v] : o.coeffs) add(k, v * c);
    }
    TensorVector scaled(const RatQ& c) const {
        TensorVector r{nu, {}};
        for (const auto& [k, v] : coeffs) r.add(k, v * c);
        return r;
    }
    friend bool operator==(const TensorVector& a, const TensorVector& b) {
        return a.nu == b.nu && a.coeffs == b.coeffs;
    }
    friend bool operator<(const TensorVector& a, const TensorVector& b) {
        if (a.nu != b.nu) return a.nu < b.nu;
        return a.coeffs < b.coeffs;
    }
};

class TensorModule {
public:
    // The empty tensor product: the trivial module, one basis element "1".
    explicit TensorModule(CartanData cd) : cd_(std::move(cd)) {}

    // Extension of a prefix module by one more highest weight factor.
    TensorModule(std::shared_ptr<const TensorModule> prefix,
                 std::shared_ptr<IrreducibleModule> comp)
        : cd_(prefix->cd_), prefix_(std::move(prefix)), comps_(prefix_->comps_) {
        comps_.push_back(std::move(comp));
        factors_ = prefix_->factors_;
        factors_.push_back(comps_.back()->omega());
    }

    const CartanData& cartan() const { return cd_; }
    const std::vector<DominantWeight>& factors() const { return factors_; }
    size_t length() const { return factors_.size(); }
    const std::shared_ptr<const TensorModule>& prefix() const { return prefix_; }
    const std::shared_ptr<IrreducibleModule>& component(size_t a) const { return comps_[a]; }

    const TensorBasis& basis(const Content& nu) const {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        return basis_nolock(nu);
    }

    size_t dim(const Content& nu) const {
        return nu.nonnegative() ? basis(nu).dim() : 0;
    }

    // K-eigenvalue exponent of the whole tensor at content nu.
    long k_exponent(const Content& nu, size_t i) const {
        long e = 0;
        for (const auto& w : factors_) e += w[i];
        for (size_t j = 0; j < cd_.rank(); ++j) e -= cd_.a(i, j) * nu[j];
        return e;
    }

    Content target_content(const Gen& g, const Content& nu) const {
        switch (g.kind) {
            case Gen::F: return nu.plus(g.vertex, g.n);
            case Gen::E: return nu.plus(g.vertex, -g.n);
            default: return nu;
        }
    }

    TensorVector apply(const Gen& g, const TensorVector& v) const {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        if (g.kind == Gen::K || g.kind == Gen::Kinv) {
            long e = k_exponent(v.nu, g.vertex) * g.n;
            if (g.kind == Gen::Kinv) e = -e;
            return v.scaled(RatQ(LaurentInt::q_power(e)));
        }
        TensorVector cur = v;
        for (long s = 0; s < g.n; ++s) cur = apply_plain_nolock(g.kind, g.vertex, cur);
        if (g.n > 1) cur = cur.scaled(RatQ(LaurentInt(1), qfact(g.n)));
        return cur;
    }

    RatQ form(const TensorVector& u, const TensorVector& w) const {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        if (u.nu != w.nu) return RatQ();
        const TensorBasis& tb = basis_nolock(u.nu);
        RatQ acc;
        for (const auto& [a, ca] : u.coeffs)
            for (const auto& [b, cb] : w.coeffs)
                acc += ca * cb * pure_form_nolock(tb.elems[a], tb.elems[b]);
        return acc;
    }

    // u |-> u x eta for the last factor; u lives in the prefix module.
    TensorVector embed_last(const TensorVector& u) const {
        if (!prefix_) throw std::logic_error("embed_last: empty tensor product");
        std::lock_guard<std::recursive_mutex> lock(mu_);
        const TensorBasis& pre = prefix_->basis(u.nu);
        const TensorBasis& tb = basis_nolock(u.nu);
        TensorVector out{u.nu, {}};
        for (const auto& [k, c] : u.coeffs) {
            PureTensor pt = pre.elems[k];
            pt.parts.push_back(Content(cd_.rank()));
            pt.idx.push_back(0);
            out.add(tb.index.at(pt), c);
        }
        return out;
    }

    // The highest vector eta x ... x eta (the vacuum class for t = 0).
    TensorVector highest() const {
        TensorVector v{Content(cd_.rank()), {}};
        v.add(0, RatQ(1));
        return v;
    }

    // The standard vector indexed by a mixed sequence. The type II
    // subsequence must equal the factor sequence.
    TensorVector l_vector(const MuSeq& mu) const {
        std::vector<const TensorModule*> chain(length() + 1);
        const TensorModule* m = this;
        for (size_t l = length() + 1; l-- > 0;) {
            chain[l] = m;
            m = m ? m->prefix_.get() : nullptr;
        }
        std::vector<DominantWeight> type2;
        Content total(cd_.rank());
        for (const auto& e : mu) {
            if (e.type2) type2.push_back(e.omega);
            else total[e.vertex] += e.n;
        }
        if (type2 != factors_)
            throw input_error("mu sequence: type II subsequence does not match the factors");

        size_t len = 0;
        TensorVector cur = chain[0]->highest();
        for (const auto& e : mu) {
            if (e.type2) {
                ++len;
                cur = chain[len]->embed_last(cur);
            } else {
                cur = chain[len]->apply(Gen{Gen::F, e.vertex, e.n}, cur);
            }
        }
        return cur;
    }

    // All mu > factors with the given type I total, in deterministic
    // depth-first order: at each position, type I letters (vertices in
    // declared order, n ascending up to the cap) come before the next
    // type II entry; adjacent equal-vertex type I entries are merged, and
    // leading type I entries are skipped since they annihilate the vacuum.
    std::vector<MuSeq> enumerate_mu(const Content& nu,
                                    const std::vector<long>& caps = {}) const {
        std::vector<long> cap(cd_.rank());
        for (size_t i = 0; i < cd_.rank(); ++i)
            cap[i] = caps.empty() ? nu[i] : std::min(caps[i], nu[i]);
        std::vector<MuSeq> out;
        MuSeq cur;
        Content left = nu;
        enumerate_mu_rec(0, true, cur, left, cap, out);
        return out;
    }

private:
    void enumerate_mu_rec(size_t placed2, bool leading, MuSeq& cur, Content& left,
                          const std::vector<long>& cap, std::vector<MuSeq>& out) const {
        if (placed2 == factors_.size() && left.is_zero()) {
            out.push_back(cur);
            return;
        }
        if (!leading) {
            const bool prev_i = !cur.empty() && !cur.back().type2;
            for (size_t v = 0; v < cd_.rank(); ++v) {
                if (prev_i && cur.back().vertex == v) continue;
                for (long n = 1; n <= std::min(left[v], cap[v]); ++n) {
                    cur.push_back(MuEntry::type_i(v, n));
                    left[v] -= n;
                    enumerate_mu_rec(placed2, false, cur, left, cap, out);
                    left[v] += n;
                    cur.pop_back();
                }
            }
        }
        if (placed2 < factors_.size()) {
            cur.push_back(MuEntry::type_ii(factors_[placed2]));
            enumerate_mu_rec(placed2 + 1, false, cur, left, cap, out);
            cur.pop_back();
        }
    }

    const TensorBasis& basis_nolock(const Content& nu) const {
        auto it = bases_.find(nu);
        if (it != bases_.end()) return it->second;
        TensorBasis tb;
        tb.nu = nu;
        if (nu.nonnegative()) {
            std::vector<Content> parts(length(), Content(cd_.rank()));
            build_basis_rec(0, nu, parts, tb);
            std::sort(tb.elems.begin(), tb.elems.end());
            for (size_t k = 0; k < tb.elems.size(); ++k) tb.index[tb.elems[k]] = k;
        }
        return bases_.emplace(nu, std::move(tb)).first->second;
    }

    void build_basis_rec(size_t a, const Content& left, std::vector<Content>& parts,
                         TensorBasis& tb) const {
        if (a == length()) {
            if (!left.is_zero()) return;
            expand_indices(parts, tb);
            return;
        }
        if (a + 1 == length()) {
            parts[a] = left;
            build_basis_rec(a + 1, Content(cd_.rank()), parts, tb);
            return;
        }
        for (const Content& c : cd_.enumerate_contents(left.total())) {
            if (!left.dominates(c)) continue;
            parts[a] = c;
            build_basis_rec(a + 1, left - c, parts, tb);
        }
        parts[a] = Content(cd_.rank());
    }

    void expand_indices(const std::vector<Content>& parts, TensorBasis& tb) const {
        std::vector<size_t> dims(length());
        for (size_t a = 0; a < length(); ++a) {
            dims[a] = comps_[a]->dim(parts[a]);
            if (dims[a] == 0) return;
        }
        std::vector<size_t> idx(length(), 0);
        for (;;) {
            tb.elems.push_back({parts, idx});
            size_t a = length();
            while (a > 0) {
                --a;
                if (++idx[a] < dims[a]) break;
                idx[a] = 0;
                if (a == 0) return;
            }
            if (length() == 0) return;
        }
    }

    TensorVector apply_plain_nolock(Gen::Kind kind, size_t i, const TensorVector& v) const {
        TensorVector out{target_content(Gen{kind, i, 1}, v.nu), {}};
        if (!out.nu.nonnegative()) return out;
        const TensorBasis& src = basis_nolock(v.nu);
        const TensorBasis& dst = basis_nolock(out.nu);
        for (const auto& [k, c] : v.coeffs) {
            const PureTensor& pt = src.elems[k];
            for (size_t a = 0; a < length(); ++a) {
                // K-twists of Delta on the other factors.
                long twist = 0;
                if (kind == Gen::F)
                    for (size_t b = a + 1; b < length(); ++b)
                        twist -= comps_[b]->k_exponent(pt.parts[b], i);
                else
                    for (size_t b = 0; b < a; ++b)
                        twist += comps_[b]->k_exponent(pt.parts[b], i);
                ModuleVector unit{pt.parts[a], {}};
                unit.add(pt.idx[a], RatQ(1));
                ModuleVector img = comps_[a]->apply(Gen{kind, i, 1}, unit);
                if (img.is_zero()) continue;
                RatQ scale = c * RatQ(LaurentInt::q_power(twist));
                PureTensor npt = pt;
                npt.parts[a] = img.nu;
                for (const auto& [j, d] : img.coeffs) {
                    npt.idx[a] = j;
                    out.add(dst.index.at(npt), scale * d);
                }
            }
        }
        return out;
    }

    RatQ pure_form_nolock(const PureTensor& u, const PureTensor& w) const {
        RatQ acc(1);
        for (size_t a = 0; a < length(); ++a) {
            if (u.parts[a] != w.parts[a]) return RatQ();
            const WeightSpace& ws = comps_[a]->space(u.parts[a]);
            acc *= ws.pivot_gram.at(u.idx[a], w.idx[a]);
            if (acc.is_zero()) return acc;
        }
        return acc;
    }

    CartanData cd_;
    std::shared_ptr<const TensorModule> prefix_;
    std::vector<std::shared_ptr<IrreducibleModule>> comps_;
    std::vector<DominantWeight> factors_;
    mutable std::map<Content, TensorBasis> bases_;
    mutable std::recursive_mutex mu_;
};

// Builds the chain of prefix modules for the factor sequence, sharing
// component realizations for repeated weights.
inline std::shared_ptr<const TensorModule> make_tensor_tower(
    const CartanData& cd, const std::vector<DominantWeight>& factors,
    std::map<DominantWeight, std::shared_ptr<IrreducibleModule>>* registry = nullptr) {
    std::map<DominantWeight, std::shared_ptr<IrreducibleModule>> local;
    auto& reg = registry ? *registry : local;
    std::shared_ptr<const TensorModule> m = std::make_shared<TensorModule>(cd);
    for (const auto& w : factors) {
        auto it = reg.find(w);
        if (it == reg.end())
            it = reg.emplace(w, std::make_shared<IrreducibleModule>(cd, w)).first;
        m = std::make_shared<TensorModule>(m, it->second);
    }
    return m;
}

}  // namespace qcb
