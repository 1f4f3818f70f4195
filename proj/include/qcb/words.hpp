/*
 * Monomials F_{i1}^{(n1)} ... F_{ik}^{(nk)} in the lowering generators and
 * formal Q(q)-linear combinations of them. The leftmost letter is applied
 * last: the word (i, j) means F_i F_j eta, with F_j acting first.
 */
#pragma once

#include <map>
#include <vector>

#include "qcb/cartan.hpp"
#include "qcb/ratq.hpp"

namespace qcb {

struct FLetter {
    size_t vertex = 0;
    long n = 1;  // divided power exponent, >= 1

    friend bool operator==(const FLetter& a, const FLetter& b) {
        return a.vertex == b.vertex && a.n == b.n;
    }
    friend bool operator<(const FLetter& a, const FLetter& b) {
        if (a.vertex != b.vertex) return a.vertex < b.vertex;
        return a.n < b.n;
    }
};

class FWord {
public:
    FWord() = default;
    explicit FWord(std::vector<FLetter> letters) : letters_(std::move(letters)) {
        for (const auto& l : letters_)
            if (l.n < 1) throw std::invalid_argument("FWord: letter exponent must be >= 1");
    }

    static FWord empty() { return FWord(); }

    bool is_empty() const { return letters_.empty(); }
    size_t length() const { return letters_.size(); }
    const std::vector<FLetter>& letters() const { return letters_; }
    const FLetter& letter(size_t k) const { return letters_[k]; }

    bool is_plain() const {
        for (const auto& l : letters_)
            if (l.n != 1) return false;
        return true;
    }

    Content content(size_t rank) const {
        Content c(rank);
        for (const auto& l : letters_) c[l.vertex] += l.n;
        return c;
    }

    // Word with the leftmost letter removed.
    FWord tail() const {
        FWord w;
        w.letters_.assign(letters_.begin() + 1, letters_.end());
        return w;
    }

    // New leftmost letter (acts last).
    FWord prepend(size_t vertex, long n = 1) const {
        FWord w;
        w.letters_.reserve(letters_.size() + 1);
        w.letters_.push_back({vertex, n});
        w.letters_.insert(w.letters_.end(), letters_.begin(), letters_.end());
        return w;
    }

    // The same monomial with divided powers spelled out as plain letters.
    FWord plain_expansion() const {
        FWord w;
        for (const auto& l : letters_)
            for (long k = 0; k < l.n; ++k) w.letters_.push_back({l.vertex, 1});
        return w;
    }

    // Product of [n]! over the letters: word = plain_expansion / this factor.
    LaurentInt divided_power_factor() const {
        LaurentInt f(1);
        for (const auto& l : letters_)
            if (l.n > 1) f *= qfact(l.n);
        return f;
    }

    friend bool operator==(const FWord& a, const FWord& b) { return a.letters_ == b.letters_; }
    friend bool operator!=(const FWord& a, const FWord& b) { return !(a == b); }
    friend bool operator<(const FWord& a, const FWord& b) { return a.letters_ < b.letters_; }

    std::string str(const CartanData& cd) const {
        if (letters_.empty()) return "eta";
        std::string s;
        for (const auto& l : letters_) {
            s += "F_" + cd.vertex_name(l.vertex);
            if (l.n > 1) s += "^(" + std::to_string(l.n) + ")";
            s += " ";
        }
        return s + "eta";
    }

private:
    std::vector<FLetter> letters_;
};

// Formal sum of plain words within one content.
using FormalWordSum = std::map<FWord, RatQ>;

inline void add_term(FormalWordSum& s, const FWord& w, const RatQ& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = s.emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) s.erase(it);
    }
}

// One entry of a mixed sequence indexing a standard vector: either a
// tensor-with-highest-vector step (type II, a dominant weight) or a divided
// lowering step (type I, a vertex with multiplicity n >= 1).
struct MuEntry {
    bool type2 = false;
    DominantWeight omega;  // type II payload
    size_t vertex = 0;     // type I payload
    long n = 1;

    static MuEntry type_ii(DominantWeight w) {
        MuEntry e;
        e.type2 = true;
        e.omega = std::move(w);
        return e;
    }
    static MuEntry type_i(size_t vertex, long n) {
        MuEntry e;
        e.vertex = vertex;
        e.n = n;
        return e;
    }

    friend bool operator==(const MuEntry& a, const MuEntry& b) {
        if (a.type2 != b.type2) return false;
        return a.type2 ? a.omega == b.omega : (a.vertex == b.vertex && a.n == b.n);
    }
    friend bool operator<(const MuEntry& a, const MuEntry& b) {
        if (a.type2 != b.type2) return a.type2 < b.type2;
        if (a.type2) return a.omega < b.omega;
        if (a.vertex != b.vertex) return a.vertex < b.vertex;
        return a.n < b.n;
    }
};

using MuSeq = std::vector<MuEntry>;

inline std::string mu_str(const CartanData& cd, const MuSeq& mu) {
    std::string s = "(";
    for (size_t k = 0; k < mu.size(); ++k) {
        if (k) s += ", ";
        if (mu[k].type2) {
            s += "w[";
            bool first = true;
            for (size_t i = 0; i < cd.rank(); ++i) {
                if (mu[k].omega[i] == 0) continue;
                if (!first) s += "+";
                if (mu[k].omega[i] != 1) s += std::to_string(mu[k].omega[i]);
                s += cd.vertex_name(i);
                first = false;
            }
            if (first) s += "0";
            s += "]";
        } else {
            s += "(" + cd.vertex_name(mu[k].vertex) + "," + std::to_string(mu[k].n) + ")";
        }
    }
    return s + ")";
}

// All plain words of the given content, in lexicographic order with respect
// to the declared vertex order.
inline std::vector<FWord> plain_words_of_content(const Content& nu) {
    std::vector<FWord> out;
    std::vector<FLetter> cur;
    Content left = nu;
    auto rec = [&](auto&& self) -> void {
        if (left.total() == 0) {
            out.emplace_back(cur);
            return;
        }
        for (size_t v = 0; v < nu.size(); ++v) {
            if (left[v] == 0) continue;
            left[v] -= 1;
            cur.push_back({v, 1});
            self(self);
            cur.pop_back();
            left[v] += 1;
        }
    };
    rec(rec);
    return out;
}

}  // namespace qcb
