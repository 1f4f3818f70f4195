/*
 * Quiver input and weight bookkeeping: the symmetric generalized Cartan
 * matrix of a finite graph without circle edges, dominant weights, contents
 * (weight-space labels), and the K-eigenvalue exponents shared by all
 * modules. All deterministic orders derive from the declared vertex order.
 */
#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcb/laurent.hpp"

namespace qcb {

// Thrown on malformed user input; the CLI maps it to exit code 2.
class input_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A content: how many lowering steps were taken at each vertex.
class Content {
public:
    Content() = default;
    explicit Content(size_t n) : v_(n, 0) {}
    explicit Content(std::vector<long> v) : v_(std::move(v)) {}
    Content(std::initializer_list<long> v) : v_(v) {}

    size_t size() const { return v_.size(); }
    long operator[](size_t i) const { return v_[i]; }
    long& operator[](size_t i) { return v_[i]; }

    long total() const {
        long t = 0;
        for (long x : v_) t += x;
        return t;
    }
    bool is_zero() const { return total() == 0; }

    Content plus(size_t vertex, long n) const {
        Content r = *this;
        r.v_[vertex] += n;
        return r;
    }
    Content operator+(const Content& o) const {
        Content r = *this;
        for (size_t i = 0; i < v_.size(); ++i) r.v_[i] += o.v_[i];
        return r;
    }
    Content operator-(const Content& o) const {
        Content r = *this;
        for (size_t i = 0; i < v_.size(); ++i) r.v_[i] -= o.v_[i];
        return r;
    }
    bool dominates(const Content& o) const {
        for (size_t i = 0; i < v_.size(); ++i)
            if (v_[i] < o.v_[i]) return false;
        return true;
    }
    bool nonnegative() const {
        for (long x : v_)
            if (x < 0) return false;
        return true;
    }

    friend bool operator==(const Content& a, const Content& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Content& a, const Content& b) { return !(a == b); }
    friend bool operator<(const Content& a, const Content& b) { return a.v_ < b.v_; }

    const std::vector<long>& raw() const { return v_; }

private:
    std::vector<long> v_;
};

// Graded order: lower total degree first; within a degree, lexicographically
// larger vector first (so for sl3: 0, i, j, 2i, i+j, 2j).
inline bool graded_order_less(const Content& a, const Content& b) {
    if (a.total() != b.total()) return a.total() < b.total();
    return b < a;
}

// A dominant weight; the same coordinate representation as Content.
class DominantWeight {
public:
    DominantWeight() = default;
    explicit DominantWeight(size_t n) : v_(n, 0) {}
    explicit DominantWeight(std::vector<long> v) : v_(std::move(v)) {
        for (long x : v_)
            if (x < 0) throw input_error("dominant weight must be nonnegative");
    }
    DominantWeight(std::initializer_list<long> v) : DominantWeight(std::vector<long>(v)) {}

    size_t size() const { return v_.size(); }
    long operator[](size_t i) const { return v_[i]; }
    const std::vector<long>& raw() const { return v_; }

    friend bool operator==(const DominantWeight& a, const DominantWeight& b) { return a.v_ == b.v_; }
    friend bool operator!=(const DominantWeight& a, const DominantWeight& b) { return !(a == b); }
    friend bool operator<(const DominantWeight& a, const DominantWeight& b) { return a.v_ < b.v_; }

private:
    std::vector<long> v_;
};

class CartanData {
public:
    // Builds the symmetric GCM from a graph: a_ii = 2 and -a_ij = the number
    // of edges joining i and j.
    static CartanData from_graph(std::vector<std::string> vertices,
                                 const std::vector<std::pair<std::string, std::string>>& edges) {
        CartanData cd;
        cd.vertices_ = std::move(vertices);
        for (size_t k = 0; k < cd.vertices_.size(); ++k) {
            if (cd.index_.count(cd.vertices_[k]))
                throw input_error("duplicate vertex: " + cd.vertices_[k]);
            cd.index_[cd.vertices_[k]] = k;
        }
        const size_t n = cd.vertices_.size();
        cd.a_.assign(n, std::vector<long>(n, 0));
        for (size_t k = 0; k < n; ++k) cd.a_[k][k] = 2;
        for (const auto& [u, v] : edges) {
            auto iu = cd.index_.find(u), iv = cd.index_.find(v);
            if (iu == cd.index_.end()) throw input_error("unknown vertex: " + u);
            if (iv == cd.index_.end()) throw input_error("unknown vertex: " + v);
            if (iu->second == iv->second) throw input_error("circle edges forbidden");
            cd.a_[iu->second][iv->second] -= 1;
            cd.a_[iv->second][iu->second] -= 1;
            cd.edges_.emplace_back(std::min(iu->second, iv->second),
                                   std::max(iu->second, iv->second));
        }
        std::sort(cd.edges_.begin(), cd.edges_.end());
        return cd;
    }

    // Builds from an explicitly given matrix, validating the GCM axioms.
    static CartanData from_matrix(std::vector<std::string> vertices,
                                  const std::vector<std::vector<long>>& a) {
        const size_t n = vertices.size();
        if (a.size() != n) throw input_error("matrix size does not match vertex count");
        for (const auto& row : a)
            if (row.size() != n) throw input_error("matrix is not square");
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                if (a[i][j] != a[j][i]) throw input_error("matrix not symmetric");
        for (size_t i = 0; i < n; ++i) {
            if (a[i][i] != 2) throw input_error("matrix diagonal must be 2");
            for (size_t j = 0; j < n; ++j)
                if (i != j && a[i][j] > 0) throw input_error("off-diagonal entries must be <= 0");
        }
        std::vector<std::pair<std::string, std::string>> edges;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                for (long m = 0; m < -a[i][j]; ++m) edges.emplace_back(vertices[i], vertices[j]);
        return from_graph(std::move(vertices), edges);
    }

    size_t rank() const { return vertices_.size(); }
    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::string& vertex_name(size_t i) const { return vertices_[i]; }

    size_t vertex_index(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw input_error("unknown vertex: " + name);
        return it->second;
    }

    long a(size_t i, size_t j) const { return a_[i][j]; }
    const std::vector<std::pair<size_t, size_t>>& edges() const { return edges_; }

    // K_i acts on the weight space of content nu in a highest weight module
    // of weight omega by q^{k_exponent}.
    long k_exponent(const DominantWeight& omega, const Content& nu, size_t i) const {
        long e = omega[i];
        for (size_t j = 0; j < rank(); ++j) e -= a_[i][j] * nu[j];
        return e;
    }

    // All contents with total degree <= depth, in graded order.
    std::vector<Content> enumerate_contents(long depth) const {
        std::vector<Content> out;
        Content cur(rank());
        enumerate_rec(0, depth, cur, out);
        std::sort(out.begin(), out.end(), graded_order_less);
        return out;
    }

private:
    void enumerate_rec(size_t pos, long budget, Content& cur, std::vector<Content>& out) const {
        if (pos == rank()) { out.push_back(cur); return; }
        for (long n = 0; n <= budget; ++n) {
            cur[pos] = n;
            enumerate_rec(pos + 1, budget - n, cur, out);
        }
        cur[pos] = 0;
    }

    std::vector<std::string> vertices_;
    std::map<std::string, size_t> index_;
    std::vector<std::vector<long>> a_;
    std::vector<std::pair<size_t, size_t>> edges_;
};

}  // namespace qcb
