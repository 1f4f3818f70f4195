/*
 * Orchestration and the command surface behind the CLI: configuration
 * parsing, the session that realizes towers of tensor modules and their
 * canonical bases (components first, then every prefix, then the full
 * sequence), family-wide certification, and deterministic JSON / pretty
 * output. Exit codes: 0 success, 1 certification or verification failure,
 * 2 input error.
 */
#pragma once

#include <future>
#include <sstream>

#include "qcb/json_io.hpp"
#include "qcb/verify.hpp"

namespace qcb {

struct Config {
    CartanData cd;
    std::vector<DominantWeight> factors;
    long depth = 4;
    SolverOptions solver;
    std::string format = "pretty";  // "pretty" | "json"
    bool parallel = true;           // solve weight spaces concurrently
};

// The verma-module weight-space encoding.
inline Json weight_space_to_json(const CartanData& cd, const WeightSpace& ws) {
    Json words = Json::array();
    for (size_t p : ws.pivots) words.push_back(word_to_json(cd, ws.words[p]));
    return Json{{"omega", weight_to_json(cd, ws.omega)},
                {"nu", weight_to_json(cd, ws.nu)},
                {"dim", ws.dim},
                {"pivot_words", words}};
}

inline Config detail_parse_config(const Json& j);

// JSON type mismatches surface as input errors, not internal ones.
inline Config parse_config(const Json& j) {
    try {
        return detail_parse_config(j);
    } catch (const Json::exception& e) {
        throw input_error(std::string("config: ") + e.what());
    }
}

inline Config detail_parse_config(const Json& j) {
    Config cfg;
    if (!j.contains("cartan")) throw input_error("config: missing \"cartan\"");
    const Json& cj = j.at("cartan");
    if (!cj.contains("vertices")) throw input_error("config: missing cartan.vertices");
    std::vector<std::string> vertices = cj.at("vertices").get<std::vector<std::string>>();
    std::vector<std::pair<std::string, std::string>> edges;
    if (cj.contains("edges"))
        for (const auto& e : cj.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw input_error("config: bad edge");
            edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
        }
    if (cj.contains("matrix")) {
        auto m = cj.at("matrix").get<std::vector<std::vector<long>>>();
        cfg.cd = CartanData::from_matrix(vertices, m);
        if (cj.contains("edges")) {
            CartanData from_edges = CartanData::from_graph(vertices, edges);
            for (size_t a = 0; a < vertices.size(); ++a)
                for (size_t b = 0; b < vertices.size(); ++b)
                    if (from_edges.a(a, b) != cfg.cd.a(a, b))
                        throw input_error("config: matrix disagrees with edges");
        }
    } else {
        cfg.cd = CartanData::from_graph(vertices, edges);
    }
    if (j.contains("highest_weights"))
        for (const auto& w : j.at("highest_weights"))
            cfg.factors.push_back(weight_from_json(cfg.cd, w));
    if (j.contains("depth")) cfg.depth = j.at("depth").get<long>();
    if (cfg.depth < 0) throw input_error("config: depth must be >= 0");
    if (j.contains("format")) {
        cfg.format = j.at("format").get<std::string>();
        if (cfg.format != "pretty" && cfg.format != "json")
            throw input_error("config: format must be pretty or json");
    }
    if (j.contains("parallel")) cfg.parallel = j.at("parallel").get<bool>();
    if (j.contains("oracle")) {
        const Json& oj = j.at("oracle");
        if (oj.contains("degree_bound")) cfg.solver.degree_bound = oj.at("degree_bound").get<long>();
        if (oj.contains("height_bound")) cfg.solver.height_bound = oj.at("height_bound").get<long>();
        if (oj.contains("dim_cap")) cfg.solver.oracle_dim_cap = oj.at("dim_cap").get<size_t>();
        if (oj.contains("complexity_cap"))
            cfg.solver.complexity_cap = oj.at("complexity_cap").get<long>();
        if (oj.contains("visit_cap")) cfg.solver.visit_cap = oj.at("visit_cap").get<size_t>();
        if (oj.contains("escalations")) cfg.solver.escalations = oj.at("escalations").get<int>();
        if (oj.contains("mode")) {
            std::string m = oj.at("mode").get<std::string>();
            if (m == "off") cfg.solver.oracle_mode = SolverOptions::Off;
            else if (m == "check") cfg.solver.oracle_mode = SolverOptions::Check;
            else if (m == "force") cfg.solver.oracle_mode = SolverOptions::Force;
            else throw input_error("config: oracle.mode must be off, check or force");
        }
    }
    return cfg;
}

struct Certificate {
    bool bar_fixed = true;
    bool almost_orthonormal = true;
    bool positivity = true;     // structure constants and standard-vector expansions
    bool tensor_compat = true;  // b x eta lands in the longer basis
    std::vector<std::string> failures;

    bool pass() const { return bar_fixed && almost_orthonormal && positivity && tensor_compat; }

    Json to_json() const {
        Json j{{"bar_fixed", bar_fixed},
               {"almost_orthonormal", almost_orthonormal},
               {"positivity", positivity},
               {"tensor_compat", tensor_compat}};
        if (!failures.empty()) j["failures"] = failures;
        return j;
    }
};

struct TowerCanon {
    std::shared_ptr<const TensorModule> tm;
    std::vector<Content> contents;  // graded order, nonzero dimension only
    std::map<Content, BarBasis> bars;
    std::map<Content, StandardBasis> standards;
    std::map<Content, CanonicalBasis> spaces;
    std::map<Content, Certificate> certificates;

    size_t total_elements() const {
        size_t n = 0;
        for (const auto& [nu, cb] : spaces) n += cb.elements.size();
        return n;
    }
    bool all_certified() const {
        for (const auto& [nu, c] : certificates)
            if (!c.pass()) return false;
        return true;
    }
};

class Session {
public:
    explicit Session(Config cfg) : cfg_(std::move(cfg)) {}

    const Config& config() const { return cfg_; }

    std::shared_ptr<const TensorModule> module(const std::vector<DominantWeight>& factors) {
        auto it = modules_.find(factors);
        if (it != modules_.end()) return it->second;
        std::shared_ptr<const TensorModule> m;
        if (factors.empty()) {
            m = std::make_shared<TensorModule>(cfg_.cd);
        } else {
            std::vector<DominantWeight> prefix(factors.begin(), factors.end() - 1);
            auto reg = registry_.find(factors.back());
            if (reg == registry_.end())
                reg = registry_
                          .emplace(factors.back(),
                                   std::make_shared<IrreducibleModule>(cfg_.cd, factors.back()))
                          .first;
            m = std::make_shared<TensorModule>(module(prefix), reg->second);
        }
        modules_.emplace(factors, m);
        return m;
    }

    // Canonical bases of every weight space of the tower up to depth,
    // computing component and prefix towers first.
    const TowerCanon& tower(const std::vector<DominantWeight>& factors) {
        auto it = towers_.find(factors);
        if (it != towers_.end()) return it->second;

        std::vector<const ComponentCanon*> comp_canons;
        if (factors.size() >= 2)
            for (const auto& w : factors) comp_canons.push_back(&component_canon(w));
        if (!factors.empty()) {
            std::vector<DominantWeight> prefix(factors.begin(), factors.end() - 1);
            tower(prefix);
        }

        TowerCanon tc;
        tc.tm = module(factors);
        for (const Content& nu : cfg_.cd.enumerate_contents(cfg_.depth))
            if (tc.tm->dim(nu) > 0) tc.contents.push_back(nu);

        // Weight spaces are independent once the component bases exist, so
        // they may be solved concurrently; results merge in content order,
        // which keeps the output schedule-independent.
        std::vector<std::future<SpaceJob>> futures;
        if (cfg_.parallel && tc.contents.size() > 1)
            for (const Content& nu : tc.contents)
                futures.push_back(std::async(std::launch::async, [&, nu] {
                    return solve_space(*tc.tm, nu, comp_canons);
                }));
        for (size_t k = 0; k < tc.contents.size(); ++k) {
            const Content& nu = tc.contents[k];
            SpaceJob job = futures.empty() ? solve_space(*tc.tm, nu, comp_canons)
                                           : futures[k].get();
            tc.bars.emplace(nu, std::move(*job.barb));
            tc.standards.emplace(nu, std::move(job.sb));
            tc.spaces.emplace(nu, std::move(job.cb));
        }
        certify_tower(tc, factors);
        return towers_.emplace(factors, std::move(tc)).first->second;
    }

    // Canonical bases of an irreducible factor, in pivot coordinates.
    const ComponentCanon& component_canon(const DominantWeight& w) {
        auto it = component_canons_.find(w);
        if (it != component_canons_.end()) return it->second;
        const TowerCanon& tc = tower({w});
        ComponentCanon cc;
        for (const auto& [nu, cb] : tc.spaces) {
            std::vector<ModuleVector> elems;
            for (const TensorVector& b : cb.elements) {
                ModuleVector v{nu, {}};
                for (const auto& [k, c] : b.coeffs) v.add(k, c);
                elems.push_back(std::move(v));
            }
            cc.emplace(nu, std::move(elems));
        }
        return component_canons_.emplace(w, std::move(cc)).first->second;
    }

private:
    struct SpaceJob {
        std::optional<BarBasis> barb;
        StandardBasis sb;
        CanonicalBasis cb;
    };

    SpaceJob solve_space(const TensorModule& tm, const Content& nu,
                         const std::vector<const ComponentCanon*>& comp_canons) {
        SpaceJob job;
        job.barb.emplace(build_bar_basis(tm, nu));
        job.sb = build_standard_basis(tm, nu, comp_canons);
        job.cb = canonical_basis_tensor(tm, nu, *job.barb, job.sb, cfg_.solver);
        if (cfg_.solver.oracle_mode == SolverOptions::Check && job.cb.solver == "kl" &&
            job.sb.dim() > 0 && job.sb.dim() <= cfg_.solver.oracle_dim_cap)
            cross_check_oracle(tm, nu, *job.barb, job.cb);
        return job;
    }

    void cross_check_oracle(const TensorModule& tm, const Content& nu, const BarBasis& barb,
                            const CanonicalBasis& cb) {
        long deg = cfg_.solver.degree_bound.value_or(gram_exponent_scale(tm, nu) + 2);
        long height = cfg_.solver.height_bound;
        long complexity = cfg_.solver.complexity_cap;
        size_t visits = cfg_.solver.visit_cap;
        std::vector<TensorVector> found;
        for (int attempt = 0;; ++attempt) {
            try {
                found = oracle_basis(tm, nu, barb, deg, height, complexity, visits);
                break;
            } catch (const oracle_bound_error&) {
                if (attempt >= cfg_.solver.escalations) throw;
                deg *= 2;
                height *= 2;
                complexity *= 2;
                visits *= 2;
            }
        }
        std::vector<TensorVector> solver_sorted = cb.elements;
        std::sort(solver_sorted.begin(), solver_sorted.end());
        if (!(solver_sorted == found))
            throw canon_error("oracle cross-check mismatch at nu = " +
                              content_str(cfg_.cd, nu));
    }

    void certify_tower(TowerCanon& tc, const std::vector<DominantWeight>& factors) {
        const TensorModule& tm = *tc.tm;
        for (const Content& nu : tc.contents) {
            Certificate cert;
            const CanonicalBasis& cb = tc.spaces.at(nu);
            const BarBasis& barb = tc.bars.at(nu);
            LocalCert local = certify_local(tm, barb, cb.elements);
            cert.bar_fixed = local.bar_fixed;
            cert.almost_orthonormal = local.almost_orthonormal;
            if (!local.l_positive) cert.positivity = false;
            cert.failures = local.failures;

            // Structure constants of K^{+-1}, E^{(n)}, F^{(n)} over the basis.
            for (size_t k = 0; k < cb.elements.size(); ++k) {
                for (size_t i = 0; i < cfg_.cd.rank(); ++i) {
                    std::vector<Gen> gens{{Gen::K, i, 1}, {Gen::Kinv, i, 1}};
                    for (long n = 1; n <= nu[i]; ++n) gens.push_back({Gen::E, i, n});
                    for (long n = 1; n + nu.total() <= cfg_.depth; ++n)
                        gens.push_back({Gen::F, i, n});
                    for (const Gen& g : gens) {
                        TensorVector img = tm.apply(g, cb.elements[k]);
                        Content target = tm.target_content(g, nu);
                        if (!expand_nonneg(tc, target, img)) {
                            cert.positivity = false;
                            cert.failures.push_back(
                                g.str(cfg_.cd) + " b_" + std::to_string(k) + " at nu = " +
                                content_str(cfg_.cd, nu) +
                                " has a structure constant outside N[q,q^-1]");
                        }
                    }
                }
            }

            // b x eta of every prefix element of this content must be a member.
            if (!factors.empty()) {
                std::vector<DominantWeight> prefix(factors.begin(), factors.end() - 1);
                const TowerCanon& pre = towers_.at(prefix);
                auto pit = pre.spaces.find(nu);
                if (pit != pre.spaces.end()) {
                    for (const TensorVector& b : pit->second.elements) {
                        TensorVector ext = tm.embed_last(b);
                        bool member = false;
                        for (const TensorVector& own : cb.elements)
                            if (own == ext) { member = true; break; }
                        if (!member) {
                            cert.tensor_compat = false;
                            cert.failures.push_back("prefix element x eta at nu = " +
                                                    content_str(cfg_.cd, nu) +
                                                    " is not a basis member");
                        }
                    }
                }
            }
            tc.certificates.emplace(nu, std::move(cert));
        }
    }

    // Expands v over the canonical basis at `target` and checks N[q,q^-1]
    // coefficients; a zero vector against an empty basis passes.
    bool expand_nonneg(const TowerCanon& tc, const Content& target, const TensorVector& v) {
        auto it = tc.spaces.find(target);
        if (it == tc.spaces.end() || it->second.elements.empty()) return v.is_zero();
        const auto& elems = it->second.elements;
        const size_t d = elems.size();
        Matrix<RatQ> bmat(d, d), rhs(d, 1);
        for (size_t c = 0; c < d; ++c)
            for (const auto& [k, val] : elems[c].coeffs) bmat.at(k, c) = val;
        for (const auto& [k, val] : v.coeffs) rhs.at(k, 0) = val;
        SolveResult sol = solve_exact(bmat, rhs);
        if (!sol.consistent) return false;
        // The expansion must also reproduce v exactly (the basis spans).
        for (size_t r = 0; r < d; ++r)
            if (!ratq_in_nonneg(sol.solution.at(r, 0))) return false;
        Matrix<RatQ> back = bmat * sol.solution;
        for (size_t k = 0; k < back.rows(); ++k) {
            RatQ expect;
            auto f = v.coeffs.find(k);
            if (f != v.coeffs.end()) expect = f->second;
            if (!(back.at(k, 0) == expect)) return false;
        }
        return true;
    }

    Config cfg_;
    std::map<DominantWeight, std::shared_ptr<IrreducibleModule>> registry_;
    std::map<std::vector<DominantWeight>, std::shared_ptr<const TensorModule>> modules_;
    std::map<std::vector<DominantWeight>, TowerCanon> towers_;
    std::map<DominantWeight, ComponentCanon> component_canons_;
};

// ---- vector and mu parsing for the inspection commands ----

inline MuSeq mu_from_json(const CartanData& cd, const Json& j) {
    if (!j.is_array()) throw input_error("mu: expected an array of entries");
    MuSeq mu;
    for (const auto& e : j) {
        if (!e.is_object() || !e.contains("type")) throw input_error("mu: bad entry");
        std::string t = e.at("type").get<std::string>();
        if (t == "II") mu.push_back(MuEntry::type_ii(weight_from_json(cd, e.at("omega"))));
        else if (t == "I")
            mu.push_back(MuEntry::type_i(cd.vertex_index(e.at("vertex").get<std::string>()),
                                         e.at("n").get<long>()));
        else throw input_error("mu: type must be I or II");
    }
    return mu;
}

inline Json mu_to_json(const CartanData& cd, const MuSeq& mu) {
    Json j = Json::array();
    for (const auto& e : mu) {
        if (e.type2) j.push_back(Json{{"type", "II"}, {"omega", weight_to_json(cd, e.omega)}});
        else j.push_back(Json{{"type", "I"}, {"vertex", cd.vertex_name(e.vertex)}, {"n", e.n}});
    }
    return j;
}

// A vector given as a sum of pure tensors of words:
//   [{"tensor": [word, ...], "coeff": <ratq>}, ...]
inline TensorVector vector_from_json(const TensorModule& tm, const Json& j) {
    if (!j.is_array() || j.empty()) throw input_error("vector: expected a nonempty term array");
    const CartanData& cd = tm.cartan();
    std::optional<TensorVector> acc;
    for (const auto& term : j) {
        if (!term.is_object() || !term.contains("tensor"))
            throw input_error("vector: each term needs \"tensor\"");
        const Json& tens = term.at("tensor");
        if (!tens.is_array() || tens.size() != tm.length())
            throw input_error("vector: tensor length must match the factor count");
        RatQ coeff = term.contains("coeff") ? ratq_from_json(term.at("coeff")) : RatQ(1);
        Content total(cd.rank());
        std::vector<ModuleVector> comps;
        for (size_t a = 0; a < tm.length(); ++a) {
            FWord w = word_from_json(cd, tens.at(a));
            Content c = w.content(cd.rank());
            FormalWordSum sum;
            add_term(sum, w.plain_expansion(), RatQ(LaurentInt(1), w.divided_power_factor()));
            comps.push_back(tm.component(a)->reduce(c, sum));
            total = total + c;
        }
        const TensorBasis& tb = tm.basis(total);
        TensorVector v{total, {}};
        std::vector<std::pair<PureTensor, RatQ>> terms;
        std::vector<Content> parts;
        for (const auto& mv : comps) parts.push_back(mv.nu);
        terms.push_back({PureTensor{parts, std::vector<size_t>(tm.length())}, coeff});
        for (size_t a = 0; a < tm.length(); ++a) {
            std::vector<std::pair<PureTensor, RatQ>> next;
            for (const auto& [pt, c] : terms)
                for (const auto& [k, d] : comps[a].coeffs) {
                    PureTensor npt = pt;
                    npt.idx[a] = k;
                    next.push_back({std::move(npt), c * d});
                }
            terms = std::move(next);
        }
        for (const auto& [pt, c] : terms) v.add(tb.index.at(pt), c);
        if (!acc) acc = std::move(v);
        else {
            if (acc->nu != v.nu) throw input_error("vector: terms of mixed content");
            for (const auto& [k, c] : v.coeffs) acc->add(k, c);
        }
    }
    return *acc;
}

// ---- output assembly ----

inline std::string pure_tensor_str(const TensorModule& tm, const PureTensor& pt) {
    if (tm.length() == 0) return "1";
    std::string s;
    for (size_t a = 0; a < tm.length(); ++a) {
        if (a) s += " (x) ";
        const WeightSpace& ws = tm.component(a)->space(pt.parts[a]);
        s += ws.words[ws.pivots[pt.idx[a]]].str(tm.cartan());
    }
    return s;
}

inline std::string tensor_vector_str(const TensorModule& tm, const TensorVector& v) {
    if (v.is_zero()) return "0";
    const TensorBasis& tb = tm.basis(v.nu);
    std::string s;
    for (const auto& [k, c] : v.coeffs) {
        if (!s.empty()) s += " + ";
        std::string cs = c.str();
        if (cs != "1") s += (cs.find_first_of("+- ", 1) != std::string::npos ? "(" + cs + ")" : cs) + " * ";
        s += "[" + pure_tensor_str(tm, tb.elems[k]) + "]";
    }
    return s;
}

inline Json tensor_vector_to_json(const TensorVector& v) {
    Json terms = Json::array();
    for (const auto& [k, c] : v.coeffs)
        terms.push_back(Json{{"index", k}, {"c", to_json(c)}});
    return terms;
}

inline Json canon_output_json(Session& s, const TowerCanon& tc) {
    const TensorModule& tm = *tc.tm;
    const CartanData& cd = tm.cartan();
    Json spaces = Json::array();
    for (const Content& nu : tc.contents) {
        const CanonicalBasis& cb = tc.spaces.at(nu);
        const Certificate& cert = tc.certificates.at(nu);
        const TensorBasis& tb = tm.basis(nu);
        Json pure = Json::array();
        for (const auto& pt : tb.elems) {
            Json parts = Json::array(), words = Json::array();
            for (size_t a = 0; a < tm.length(); ++a) {
                parts.push_back(weight_to_json(cd, pt.parts[a]));
                const WeightSpace& ws = tm.component(a)->space(pt.parts[a]);
                words.push_back(word_to_json(cd, ws.words[ws.pivots[pt.idx[a]]]));
            }
            pure.push_back(Json{{"parts", parts}, {"words", words}});
        }
        Json basis = Json::array();
        for (size_t k = 0; k < cb.elements.size(); ++k) {
            Json std_exp = Json::array();
            for (size_t r = 0; r < cb.standard_expansion.rows(); ++r)
                std_exp.push_back(to_json(cb.standard_expansion.at(r, k)));
            basis.push_back(Json{{"standard_expansion", std_exp},
                                 {"word_expansion", tensor_vector_to_json(cb.elements[k])}});
        }
        Json space{{"nu", weight_to_json(cd, nu)},
                   {"dim", cb.elements.size()},
                   {"solver", cb.solver},
                   {"pure_tensors", pure},
                   {"basis", basis},
                   {"certificate", cert.to_json()}};
        if (!cb.notes.empty()) space["notes"] = cb.notes;
        spaces.push_back(std::move(space));
    }
    Json out{{"module", tower_name(cd, tm.factors())},
             {"depth", s.config().depth},
             {"weight_spaces", spaces},
             {"summary",
              Json{{"elements", tc.total_elements()}, {"all_certified", tc.all_certified()}}}};
    return out;
}

inline std::string canon_output_pretty(Session& s, const TowerCanon& tc) {
    const TensorModule& tm = *tc.tm;
    const CartanData& cd = tm.cartan();
    std::ostringstream os;
    os << "module " << tower_name(cd, tm.factors()) << ", depth " << s.config().depth << "\n";
    for (const Content& nu : tc.contents) {
        const CanonicalBasis& cb = tc.spaces.at(nu);
        const Certificate& cert = tc.certificates.at(nu);
        os << "\nnu = " << content_str(cd, nu) << "  (dim " << cb.elements.size() << ", solver "
           << cb.solver << ", certificate " << (cert.pass() ? "pass" : "FAIL") << ")\n";
        for (size_t k = 0; k < cb.elements.size(); ++k)
            os << "  b" << k + 1 << " = " << tensor_vector_str(tm, cb.elements[k]) << "\n";
        for (const auto& f : cert.failures) os << "  ! " << f << "\n";
    }
    os << "\ntotal " << tc.total_elements() << " elements, "
       << (tc.all_certified() ? "all certificates pass" : "CERTIFICATION FAILURES") << "\n";
    return os.str();
}

inline Json report_to_json(const RelationReport& rep) {
    Json checks = Json::array();
    size_t pass = 0, fail = 0;
    for (const auto& c : rep.checks) {
        Json jc{{"id", c.id}, {"pass", c.pass}, {"checked", c.checked}};
        if (!c.pass) jc["witness"] = c.witness;
        (c.pass ? pass : fail) += 1;
        checks.push_back(std::move(jc));
    }
    return Json{{"module", rep.module_id},
                {"depth", rep.depth},
                {"checks", checks},
                {"summary", Json{{"pass", pass}, {"fail", fail}}}};
}

inline std::string report_pretty(const RelationReport& rep) {
    std::ostringstream os;
    os << "module " << rep.module_id << ", depth " << rep.depth << "\n";
    for (const auto& c : rep.checks) {
        os << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.id << " (" << c.checked
           << " checks)";
        if (!c.pass) os << "  witness: " << c.witness;
        os << "\n";
    }
    return os.str();
}

// ---- command entry points (shared by the CLI and the acceptance suite) ----

struct CommandResult {
    int exit_code = 0;
    Json json;
    std::string pretty;
};

inline CommandResult cmd_canon(const Config& cfg) {
    CommandResult res;
    Session s(cfg);
    try {
        const TowerCanon& tc = s.tower(cfg.factors);
        res.json = canon_output_json(s, tc);
        res.pretty = canon_output_pretty(s, tc);
        res.exit_code = tc.all_certified() ? 0 : 1;
    } catch (const input_error& e) {
        res.exit_code = 2;
        res.json = Json{{"error", e.what()}};
        res.pretty = std::string("input error: ") + e.what() + "\n";
    } catch (const Json::exception& e) {
        res.exit_code = 2;
        res.json = Json{{"error", e.what()}};
        res.pretty = std::string("input error: ") + e.what() + "\n";
    } catch (const std::exception& e) {
        res.exit_code = 1;
        res.json = Json{{"error", e.what()}};
        res.pretty = std::string("error: ") + e.what() + "\n";
    }
    return res;
}

inline CommandResult cmd_verify(const Config& cfg) {
    CommandResult res;
    Session s(cfg);
    try {
        auto tm = s.module(cfg.factors);
        std::vector<RelationReport> reps{verify_relations(*tm, cfg.depth),
                                         verify_kef_shadow(*tm, cfg.depth),
                                         verify_forms(*tm, cfg.depth)};
        Json jr = Json::array();
        bool ok = true;
        std::string pretty;
        for (const auto& r : reps) {
            jr.push_back(report_to_json(r));
            pretty += report_pretty(r);
            ok = ok && r.all_pass();
        }
        res.json = Json{{"reports", jr}, {"all_pass", ok}};
        res.pretty = pretty;
        res.exit_code = ok ? 0 : 1;
    } catch (const input_error& e) {
        res.exit_code = 2;
        res.json = Json{{"error", e.what()}};
        res.pretty = std::string("input error: ") + e.what() + "\n";
    } catch (const Json::exception& e) {
        res.exit_code = 2;
        res.json = Json{{"error", e.what()}};
        res.pretty = std::string("input error: ") + e.what() + "\n";
    } catch (const std::exception& e) {
        res.exit_code = 1;
        res.json = Json{{"error", e.what()}};
        res.pretty = std::string("error: ") + e.what() + "\n";
    }
    return res;
}

inline CommandResult cmd_gram(const Config& cfg, const Json& mu1_json,
                              const std::optional<Json>& mu2_json) {
    CommandResult res;
    Session s(cfg);
    try {
        auto tm = s.module(cfg.factors);
        MuSeq mu1 = mu_from_json(cfg.cd, mu1_json);
        MuSeq mu2 = mu2_json ? mu_from_json(cfg.cd, *mu2_json) : mu1;
        TensorVector v1 = tm->l_vector(mu1);
        TensorVector v2 = tm->l_vector(mu2);
        if (v1.nu.total() > cfg.depth || v2.nu.total() > cfg.depth)
            throw input_error("content exceeds depth; raise --depth");
        RatQ g = v1.nu == v2.nu ? tm->form(v1, v2) : RatQ();
        res.json = Json{{"mu1", mu_to_json(cfg.cd, mu1)},
                        {"mu2", mu_to_json(cfg.cd, mu2)},
                        {"value", to_json(g)}};
        res.pretty = g.str() + "\n";
    } catch (const input_error& e) {
        res.exit_code = 2;
        res.json = Json{{"error", e.what()}};
        res.pretty = std::string("input error: ") + e.what() + "\n";
    } catch (const Json::exception& e) {
        res.exit_code = 2;
        res.json = Json{{"error", e.what()}};
        res.pretty = std::string("input error: ") + e.what() + "\n";
    } catch (const std::exception& e) {
        res.exit_code = 1;
        res.json = Json{{"error", e.what()}};
        res.pretty = std::string("error: ") + e.what() + "\n";
    }
    return res;
}

inline CommandResult cmd_bar(const Config& cfg, const Json& vector_json) {
    CommandResult res;
    Session s(cfg);
    try {
        auto tm = s.module(cfg.factors);
        TensorVector v = vector_from_json(*tm, vector_json);
        if (v.nu.total() > cfg.depth)
            throw input_error("content exceeds depth; raise --depth");
        BarBasis barb = build_bar_basis(*tm, v.nu);
        TensorVector b = barb.bar(v);
        res.json = Json{{"nu", weight_to_json(cfg.cd, v.nu)},
                        {"input", tensor_vector_to_json(v)},
                        {"bar", tensor_vector_to_json(b)}};
        res.pretty = tensor_vector_str(*tm, b) + "\n";
    } catch (const input_error& e) {
        res.exit_code = 2;
        res.json = Json{{"error", e.what()}};
        res.pretty = std::string("input error: ") + e.what() + "\n";
    } catch (const Json::exception& e) {
        res.exit_code = 2;
        res.json = Json{{"error", e.what()}};
        res.pretty = std::string("input error: ") + e.what() + "\n";
    } catch (const std::exception& e) {
        res.exit_code = 1;
        res.json = Json{{"error", e.what()}};
        res.pretty = std::string("error: ") + e.what() + "\n";
    }
    return res;
}

// Applies a generator to every canonical element of a content and prints the
// structure-constant table over the target canonical basis.
inline CommandResult cmd_act(const Config& cfg, const Gen& g, const Json& nu_json) {
    CommandResult res;
    Session s(cfg);
    try {
        Content nu = content_from_json(cfg.cd, nu_json);
        if (nu.total() > cfg.depth) throw input_error("content exceeds depth; raise --depth");
        const TowerCanon& tc = s.tower(cfg.factors);
        auto it = tc.spaces.find(nu);
        if (it == tc.spaces.end())
            throw input_error("no weight space of that content within depth");
        const TensorModule& tm = *tc.tm;
        Content target = tm.target_content(g, nu);
        Json rows = Json::array();
        std::ostringstream os;
        auto tgt = tc.spaces.find(target);
        for (size_t k = 0; k < it->second.elements.size(); ++k) {
            TensorVector img = tm.apply(g, it->second.elements[k]);
            Json row = Json::array();
            os << g.str(cfg.cd) << " b" << k + 1 << " =";
            if (tgt == tc.spaces.end() || tgt->second.elements.empty()) {
                if (!img.is_zero())
                    throw input_error("target content exceeds depth; raise --depth");
                os << " 0";
            } else {
                const auto& elems = tgt->second.elements;
                const size_t d = elems.size();
                Matrix<RatQ> bmat(d, d), rhs(d, 1);
                for (size_t c = 0; c < d; ++c)
                    for (const auto& [kk, val] : elems[c].coeffs) bmat.at(kk, c) = val;
                for (const auto& [kk, val] : img.coeffs) rhs.at(kk, 0) = val;
                SolveResult sol = solve_exact(bmat, rhs);
                bool first = true;
                for (size_t r = 0; r < d; ++r) {
                    row.push_back(to_json(sol.solution.at(r, 0)));
                    if (!sol.solution.at(r, 0).is_zero()) {
                        os << (first ? " " : " + ") << "(" << sol.solution.at(r, 0).str()
                           << ") b'" << r + 1;
                        first = false;
                    }
                }
                if (first) os << " 0";
            }
            os << "\n";
            rows.push_back(std::move(row));
        }
        res.json = Json{{"generator", g.str(cfg.cd)},
                        {"nu", weight_to_json(cfg.cd, nu)},
                        {"target_nu", weight_to_json(cfg.cd, target)},
                        {"table", rows}};
        res.pretty = os.str();
    } catch (const input_error& e) {
        res.exit_code = 2;
        res.json = Json{{"error", e.what()}};
        res.pretty = std::string("input error: ") + e.what() + "\n";
    } catch (const Json::exception& e) {
        res.exit_code = 2;
        res.json = Json{{"error", e.what()}};
        res.pretty = std::string("input error: ") + e.what() + "\n";
    } catch (const std::exception& e) {
        res.exit_code = 1;
        res.json = Json{{"error", e.what()}};
        res.pretty = std::string("error: ") + e.what() + "\n";
    }
    return res;
}

}  // namespace qcb
