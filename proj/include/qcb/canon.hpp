/*
 * Canonical bases of tensor-module weight spaces, computed from the
 * characterizing properties: bar-fixedness, almost-orthonormality
 * ((b, b') in delta + q^{-1} N[q^{-1}]), positive structure constants, and
 * compatibility with tensoring by highest vectors.
 *
 * The solver works in the standard basis of pure tensors of component
 * canonical elements (pivot words for a single factor, "1" for the empty
 * product). It computes the matrix of the bar involution there, finds a
 * total order making it unitriangular, and runs the usual Kazhdan-Lusztig
 * style recursion: the unique family b_k = s_k + sum_{j<k} p_jk s_j with
 * p_jk in q^{-1} Z[q^{-1}] and bar(b_k) = b_k. Whatever comes out is checked
 * against the space-local characterization; on any failure the space falls
 * back to an independent brute-force oracle over the standard-vector basis.
 */
#pragma once

#include <functional>

#include "qcb/involution.hpp"

namespace qcb {

class canon_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class oracle_bound_error : public canon_error {
public:
    using canon_error::canon_error;
};

struct SolverOptions {
    std::optional<long> degree_bound;  // default per space: max Gram |exponent| + 2
    long height_bound = 16;
    size_t oracle_dim_cap = 3;
    long complexity_cap = 10;
    size_t visit_cap = 500000;
    int escalations = 2;  // bounds are doubled this many times on exhaustion
    enum OracleMode { Off, Check, Force } oracle_mode = Check;
};

// Canonical bases of one irreducible factor, as pivot-coordinate vectors.
using ComponentCanon = std::map<Content, std::vector<ModuleVector>>;

struct StandardBasis {
    Content nu;
    std::vector<TensorVector> vectors;  // pure-tensor coordinates
    Matrix<RatQ> to_tensor;             // columns = vectors
    Matrix<RatQ> to_standard;           // inverse
    size_t dim() const { return vectors.size(); }
};

struct CanonicalBasis {
    Content nu;
    std::vector<TensorVector> elements;
    Matrix<RatQ> standard_expansion;  // columns over the standard basis
    std::string solver;               // "kl" | "oracle"
    std::vector<std::string> notes;   // fallback reports
};

// ---- membership tests in the relevant lattices ----

inline bool ratq_in_nonneg(const RatQ& v) {
    return v.is_laurent() && v.num().is_nonneg();
}
inline bool ratq_in_qinv_int(const RatQ& v) {
    return v.is_laurent() && v.num().in_qinv_lattice();
}
inline bool ratq_in_qinv_nonneg(const RatQ& v) {
    return ratq_in_qinv_int(v) && v.num().is_nonneg();
}
inline bool ratq_in_one_plus_qinv_int(const RatQ& v) {
    return v.is_laurent() && (v.num() - LaurentInt(1)).in_qinv_lattice();
}
inline bool ratq_in_one_plus_qinv_nonneg(const RatQ& v) {
    if (!v.is_laurent()) return false;
    LaurentInt r = v.num() - LaurentInt(1);
    return r.in_qinv_lattice() && r.is_nonneg();
}

// The strictly negative-exponent part of a Laurent value.
inline LaurentInt negative_part(const LaurentInt& a) {
    if (a.is_zero() || a.hi() <= -1) return a;
    if (a.lo() >= 0) return LaurentInt();
    std::vector<BigInt> c(static_cast<size_t>(-a.lo()));
    for (long e = a.lo(); e <= -1; ++e) c[static_cast<size_t>(e - a.lo())] = a.coeff(e);
    return LaurentInt(a.lo(), std::move(c));
}

// ---- standard basis construction ----

// Pure tensors of component canonical elements, ordered by composition
// (heavier first factors first), then by component index tuples. For a
// single factor the standard basis is the pivot words; for the empty tensor
// product it is the vacuum class.
inline StandardBasis build_standard_basis(
    const TensorModule& tm, const Content& nu,
    const std::vector<const ComponentCanon*>& component_canon) {
    const TensorBasis& tb = tm.basis(nu);
    StandardBasis sb;
    sb.nu = nu;
    const size_t t = tm.length();

    if (t <= 1) {
        for (size_t k = 0; k < tb.dim(); ++k) {
            TensorVector v{nu, {}};
            v.add(k, RatQ(1));
            sb.vectors.push_back(std::move(v));
        }
    } else {
        std::vector<std::vector<Content>> comps;
        for (const auto& pt : tb.elems)
            if (comps.empty() || comps.back() != pt.parts) comps.push_back(pt.parts);
        for (const auto& parts : comps) {
            std::vector<const std::vector<ModuleVector>*> factor(t);
            for (size_t a = 0; a < t; ++a) {
                auto it = component_canon[a]->find(parts[a]);
                if (it == component_canon[a]->end() || it->second.empty())
                    throw canon_error("standard basis: missing component canonical basis");
                factor[a] = &it->second;
            }
            std::vector<size_t> pick(t, 0);
            for (;;) {
                // Tensor product of the picked component canonical elements.
                std::vector<std::pair<PureTensor, RatQ>> terms;
                terms.push_back({PureTensor{parts, std::vector<size_t>(t)}, RatQ(1)});
                for (size_t a = 0; a < t; ++a) {
                    const ModuleVector& ba = (*factor[a])[pick[a]];
                    std::vector<std::pair<PureTensor, RatQ>> next;
                    for (const auto& [pt, c] : terms)
                        for (const auto& [j, d] : ba.coeffs) {
                            PureTensor npt = pt;
                            npt.idx[a] = j;
                            next.push_back({std::move(npt), c * d});
                        }
                    terms = std::move(next);
                }
                TensorVector v{nu, {}};
                for (const auto& [pt, c] : terms) v.add(tb.index.at(pt), c);
                sb.vectors.push_back(std::move(v));
                size_t a = t;
                bool done = true;
                while (a > 0) {
                    --a;
                    if (++pick[a] < factor[a]->size()) { done = false; break; }
                    pick[a] = 0;
                }
                if (done) break;
            }
        }
    }

    const size_t d = sb.vectors.size();
    if (d != tb.dim())
        throw canon_error("standard basis: size mismatch (got " + std::to_string(d) +
                          ", expected " + std::to_string(tb.dim()) + ")");
    sb.to_tensor = Matrix<RatQ>(d, d);
    for (size_t c = 0; c < d; ++c)
        for (const auto& [k, v] : sb.vectors[c].coeffs) sb.to_tensor.at(k, c) = v;
    if (d > 0) {
        SolveResult inv = solve_exact(sb.to_tensor, Matrix<RatQ>::identity(d));
        if (!inv.consistent || inv.rank != d)
            throw canon_error("standard basis: not linearly independent");
        sb.to_standard = std::move(inv.solution);
    }
    return sb;
}

// Coordinates of v over the basis whose inverse change matrix is given.
inline std::vector<RatQ> coords_via(const Matrix<RatQ>& inverse, const TensorVector& v) {
    std::vector<RatQ> out(inverse.rows());
    for (size_t r = 0; r < inverse.rows(); ++r) {
        RatQ acc;
        for (const auto& [k, c] : v.coeffs) acc += inverse.at(r, k) * c;
        out[r] = acc;
    }
    return out;
}

// ---- space-local certification ----

struct LocalCert {
    bool bar_fixed = true;
    bool almost_orthonormal = true;
    bool l_positive = true;
    std::vector<std::string> failures;
    bool pass() const { return bar_fixed && almost_orthonormal && l_positive; }
};

inline LocalCert certify_local(const TensorModule& tm, const BarBasis& barb,
                               const std::vector<TensorVector>& elements) {
    LocalCert cert;
    for (size_t k = 0; k < elements.size(); ++k)
        if (!(barb.bar(elements[k]) == elements[k])) {
            cert.bar_fixed = false;
            cert.failures.push_back("bar(b_" + std::to_string(k) + ") != b_" + std::to_string(k));
        }
    for (size_t a = 0; a < elements.size(); ++a)
        for (size_t b = a; b < elements.size(); ++b) {
            RatQ g = tm.form(elements[a], elements[b]);
            bool ok = (a == b) ? ratq_in_one_plus_qinv_nonneg(g) : ratq_in_qinv_nonneg(g);
            if (!ok) {
                cert.almost_orthonormal = false;
                cert.failures.push_back("(b_" + std::to_string(a) + ", b_" + std::to_string(b) +
                                        ") = " + g.str() + " violates delta + q^-1 N[q^-1]");
            }
        }
    if (!elements.empty()) {
        const size_t d = elements.size();
        Matrix<RatQ> bmat(d, d);
        for (size_t c = 0; c < d; ++c)
            for (const auto& [k, v] : elements[c].coeffs) bmat.at(k, c) = v;
        for (const auto& mu : barb.enumerated()) {
            TensorVector l = tm.l_vector(mu);
            Matrix<RatQ> rhs(d, 1);
            for (const auto& [k, c] : l.coeffs) rhs.at(k, 0) = c;
            SolveResult sol = solve_exact(bmat, rhs);
            if (!sol.consistent) {
                cert.l_positive = false;
                cert.failures.push_back("standard vector " + mu_str(tm.cartan(), mu) +
                                        " outside the span of the basis");
                continue;
            }
            for (size_t r = 0; r < d; ++r)
                if (!ratq_in_nonneg(sol.solution.at(r, 0))) {
                    cert.l_positive = false;
                    cert.failures.push_back("expansion of " + mu_str(tm.cartan(), mu) +
                                            " has coefficient " + sol.solution.at(r, 0).str() +
                                            " outside N[q,q^-1]");
                    break;
                }
        }
    }
    return cert;
}

// ---- brute-force oracle ----

// Exhaustive search for the full family of canonical elements among
// bar-symmetric integer Laurent combinations of the standard vectors:
// (b,b) in 1 + q^-1 Z[q^-1], pairwise (b,b') in q^-1 Z[q^-1], full rank,
// and (b, L_j) in N[q,q^-1] (the positivity sign fix).
//
// The combinations range over every enumerated standard vector of the
// content, not only the selected basis: canonical elements are integer
// Laurent combinations of the full spanning set, but not in general of an
// arbitrary basis extracted from it (already in rank one: the first
// spanning vector may be a quantum-integer multiple of the canonical one).
//
// Candidates are visited in increasing coefficient complexity, where a term
// m (q^e + q^-e) costs |m| (e + 1); the first complete family found is the
// minimal one.
inline std::vector<TensorVector> oracle_basis(const TensorModule& tm, const Content& nu,
                                              const BarBasis& barb, long degree_bound,
                                              long height_bound, long complexity_cap,
                                              size_t visit_cap) {
    const size_t dim = barb.dim();
    std::vector<TensorVector> lvecs;
    for (const MuSeq& mu : barb.enumerated()) {
        TensorVector v = tm.l_vector(mu);
        if (v.is_zero()) continue;
        if (std::find(lvecs.begin(), lvecs.end(), v) == lvecs.end()) lvecs.push_back(std::move(v));
    }
    const size_t n = lvecs.size();
    Matrix<RatQ> lgram(n, n);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a; b < n; ++b) {
            lgram.at(a, b) = tm.form(lvecs[a], lvecs[b]);
            lgram.at(b, a) = lgram.at(a, b);
        }

    struct Candidate {
        TensorVector vec;
        std::vector<LaurentInt> coeff;  // over the standard vectors
        std::vector<RatQ> pairings;     // (b, L_j)
    };
    std::vector<Candidate> pool;
    size_t visited = 0;
    bool budget_hit = false;

    auto consider = [&](const std::vector<LaurentInt>& coeff) {
        if (++visited >= visit_cap) budget_hit = true;
        std::vector<RatQ> pair(n);
        for (size_t j = 0; j < n; ++j) {
            RatQ acc;
            for (size_t k = 0; k < n; ++k)
                if (!coeff[k].is_zero()) acc += RatQ(coeff[k]) * lgram.at(k, j);
            pair[j] = acc;
        }
        RatQ norm;
        for (size_t k = 0; k < n; ++k)
            if (!coeff[k].is_zero()) norm += RatQ(coeff[k]) * pair[k];
        if (!ratq_in_one_plus_qinv_int(norm)) return;
        for (size_t j = 0; j < n; ++j)
            if (!ratq_in_nonneg(pair[j])) return;
        TensorVector b{nu, {}};
        for (size_t k = 0; k < n; ++k)
            if (!coeff[k].is_zero()) b.add_scaled(lvecs[k], RatQ(coeff[k]));
        for (const auto& c : pool)
            if (c.vec == b) return;  // redundant spanning vectors give duplicates
        pool.push_back({std::move(b), coeff, std::move(pair)});
    };

    // First pool subset of size dim that is pairwise almost orthogonal and
    // of full rank, in pool (= complexity, then enumeration) order.
    std::vector<size_t> chosen;
    std::function<std::optional<std::vector<size_t>>(size_t, const RankTracker&)> assemble =
        [&](size_t from, const RankTracker& tracker) -> std::optional<std::vector<size_t>> {
        if (chosen.size() == dim) return chosen;
        for (size_t p = from; p < pool.size(); ++p) {
            if (pool.size() - p < dim - chosen.size()) break;
            bool compat = true;
            for (size_t c : chosen) {
                RatQ g;
                for (size_t k = 0; k < n; ++k)
                    if (!pool[c].coeff[k].is_zero())
                        g += RatQ(pool[c].coeff[k]) * pool[p].pairings[k];
                if (!ratq_in_qinv_int(g)) { compat = false; break; }
            }
            if (!compat) continue;
            std::vector<RatQ> row(dim);
            for (const auto& [k, c] : pool[p].vec.coeffs) row[k] = c;
            RankTracker next = tracker;
            if (!next.offer(row)) continue;
            chosen.push_back(p);
            auto res = assemble(p + 1, next);
            if (res) return res;
            chosen.pop_back();
        }
        return std::nullopt;
    };

    // Weighted-complexity enumeration over the slots (k, e): putting
    // m (q^e + q^-e) into coefficient k costs |m| (e + 1), so low exponents
    // are explored first and the search still exhausts every combination
    // within the bounds as the level grows.
    const long max_complexity = std::min<long>(
        complexity_cap, static_cast<long>(n) * (degree_bound + 1) * height_bound *
                            (degree_bound + 1));
    std::vector<LaurentInt> coeff(n);
    std::function<void(size_t, long, long)> enumerate = [&](size_t k, long e, long remaining) {
        if (budget_hit) return;
        if (remaining == 0) { consider(coeff); return; }
        if (k == n) return;
        const size_t nk = (e == degree_bound) ? k + 1 : k;
        const long ne = (e == degree_bound) ? 0 : e + 1;
        enumerate(nk, ne, remaining);  // no mass on this slot
        if (remaining < e + 1) return;
        const LaurentInt unit =
            (e == 0) ? LaurentInt(1) : LaurentInt::q_power(e) + LaurentInt::q_power(-e);
        const long max_m = std::min(remaining / (e + 1), height_bound);
        for (long m = 1; m <= max_m; ++m) {
            coeff[k] += unit * LaurentInt(m);  // +m
            enumerate(nk, ne, remaining - m * (e + 1));
            coeff[k] -= unit * LaurentInt(2 * m);  // -m
            enumerate(nk, ne, remaining - m * (e + 1));
            coeff[k] += unit * LaurentInt(m);  // back to 0
        }
    };

    for (long level = 1; level <= max_complexity && !budget_hit; ++level) {
        const size_t pool_before = pool.size();
        enumerate(0, 0, level);
        if (pool.size() == pool_before) continue;
        chosen.clear();
        if (auto family = assemble(0, RankTracker(dim))) {
            std::vector<TensorVector> out;
            for (size_t p : *family) out.push_back(pool[p].vec);
            std::sort(out.begin(), out.end());
            return out;
        }
    }
    throw oracle_bound_error(budget_hit ? "bound exhausted (visit budget)" : "bound exhausted");
}

// Largest |exponent| in the pure-tensor Gram matrix of the weight space,
// the reference scale for the oracle's default degree bound.
inline long gram_exponent_scale(const TensorModule& tm, const Content& nu) {
    const TensorBasis& tb = tm.basis(nu);
    long m = 0;
    for (size_t a = 0; a < tb.dim(); ++a)
        for (size_t b = a; b < tb.dim(); ++b) {
            TensorVector u{nu, {}}, w{nu, {}};
            u.add(a, RatQ(1));
            w.add(b, RatQ(1));
            RatQ g = tm.form(u, w);
            m = std::max(m, g.num().max_abs_exponent());
            m = std::max(m, g.den().max_abs_exponent());
        }
    return m;
}

// ---- the Kazhdan-Lusztig style solver with oracle fallback ----

namespace detail {

// Topological order in which the bar matrix is unitriangular: column k may
// involve only earlier rows. Smallest-index-first; nullopt on a cycle or a
// non-unit diagonal.
inline std::optional<std::vector<size_t>> triangular_order(const Matrix<RatQ>& bar_matrix) {
    const size_t d = bar_matrix.rows();
    for (size_t k = 0; k < d; ++k)
        if (!(bar_matrix.at(k, k) == RatQ(1))) return std::nullopt;
    std::vector<size_t> indeg(d, 0);
    for (size_t k = 0; k < d; ++k)
        for (size_t j = 0; j < d; ++j)
            if (j != k && !bar_matrix.at(j, k).is_zero()) ++indeg[k];
    std::vector<size_t> order;
    std::vector<bool> used(d, false);
    for (size_t step = 0; step < d; ++step) {
        size_t pick = d;
        for (size_t k = 0; k < d; ++k)
            if (!used[k] && indeg[k] == 0) { pick = k; break; }
        if (pick == d) return std::nullopt;
        used[pick] = true;
        order.push_back(pick);
        for (size_t k = 0; k < d; ++k)
            if (!used[k] && !bar_matrix.at(pick, k).is_zero()) --indeg[k];
    }
    return order;
}

}  // namespace detail

// The canonical basis of one weight space. The standard basis and the bar
// basis must belong to (tm, nu).
inline CanonicalBasis canonical_basis_tensor(const TensorModule& tm, const Content& nu,
                                             const BarBasis& barb, const StandardBasis& sb,
                                             const SolverOptions& opts) {
    CanonicalBasis out;
    out.nu = nu;
    out.solver = "kl";
    const size_t d = sb.dim();
    if (d == 0) return out;

    std::vector<std::string> notes;
    std::vector<TensorVector> elements;
    bool solved = false;

    if (opts.oracle_mode != SolverOptions::Force) {
        // Bar matrix over the standard basis.
        Matrix<RatQ> bar_matrix(d, d);
        for (size_t k = 0; k < d; ++k) {
            std::vector<RatQ> col = coords_via(sb.to_standard, barb.bar(sb.vectors[k]));
            for (size_t j = 0; j < d; ++j) bar_matrix.at(j, k) = col[j];
        }
        auto order = detail::triangular_order(bar_matrix);
        if (!order) {
            notes.push_back("triangularization failure");
        } else {
            const std::vector<size_t>& perm = *order;
            // R'[a][b] = bar_matrix[perm[a]][perm[b]] is unitriangular.
            Matrix<RatQ> corr(d, d);  // corr[a][b] in the permuted indexing
            bool ok = true;
            std::string why;
            for (size_t b = 0; b < d && ok; ++b) {
                corr.at(b, b) = RatQ(1);
                for (size_t a = b; a-- > 0 && ok;) {
                    RatQ f;
                    for (size_t m = a + 1; m <= b; ++m)
                        f += bar_matrix.at(perm[a], perm[m]) * corr.at(m, b).bar();
                    if (!f.is_laurent()) {
                        ok = false;
                        why = "correction not in q^-1 Z[q^-1]: " + f.str();
                        break;
                    }
                    const LaurentInt& fl = f.num();
                    if (!(fl.bar() == -fl)) {
                        ok = false;
                        why = "correction not in q^-1 Z[q^-1]: " + fl.str() +
                              " is not bar-antisymmetric";
                        break;
                    }
                    corr.at(a, b) = RatQ(negative_part(fl));
                }
            }
            if (!ok) {
                notes.push_back(why);
            } else {
                // Element with leader s_{perm[b]}; emit in leader order.
                std::vector<TensorVector> elems(d);
                for (size_t b = 0; b < d; ++b) {
                    TensorVector v{nu, {}};
                    for (size_t a = 0; a <= b; ++a)
                        if (!corr.at(a, b).is_zero())
                            v.add_scaled(sb.vectors[perm[a]], corr.at(a, b));
                    elems[perm[b]] = std::move(v);
                }
                LocalCert cert = certify_local(tm, barb, elems);
                if (cert.pass()) {
                    elements = std::move(elems);
                    solved = true;
                } else {
                    notes.push_back("certification failure:");
                    for (const auto& f : cert.failures) notes.push_back("  " + f);
                }
            }
        }
    } else {
        notes.push_back("oracle forced");
    }

    if (!solved) {
        if (opts.oracle_mode == SolverOptions::Off) {
            std::string msg = "canonical basis solve failed with oracle disabled";
            for (const auto& n : notes) msg += "; " + n;
            throw canon_error(msg);
        }
        if (d > opts.oracle_dim_cap)
            throw canon_error("canonical basis solve failed and dimension " + std::to_string(d) +
                              " exceeds the oracle cap " + std::to_string(opts.oracle_dim_cap) +
                              (notes.empty() ? "" : "; " + notes.front()));
        long deg = opts.degree_bound.value_or(gram_exponent_scale(tm, nu) + 2);
        long height = opts.height_bound;
        long complexity = opts.complexity_cap;
        size_t visits = opts.visit_cap;
        for (int attempt = 0;; ++attempt) {
            try {
                elements = oracle_basis(tm, nu, barb, deg, height, complexity, visits);
                break;
            } catch (const oracle_bound_error& e) {
                if (attempt >= opts.escalations) throw;
                deg *= 2;
                height *= 2;
                complexity *= 2;
                visits *= 2;
                notes.push_back(std::string("oracle escalation after: ") + e.what());
            }
        }
        LocalCert cert = certify_local(tm, barb, elements);
        if (!cert.pass()) {
            std::string msg = "certification failure after oracle fallback";
            for (const auto& f : cert.failures) msg += "; " + f;
            throw canon_error(msg);
        }
        out.solver = "oracle";
    }

    out.elements = std::move(elements);
    out.notes = std::move(notes);
    out.standard_expansion = Matrix<RatQ>(d, d);
    for (size_t c = 0; c < d; ++c) {
        std::vector<RatQ> col = coords_via(sb.to_standard, out.elements[c]);
        for (size_t r = 0; r < d; ++r) out.standard_expansion.at(r, c) = col[r];
    }
    return out;
}

}  // namespace qcb
