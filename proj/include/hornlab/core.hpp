#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hornlab {

class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

class signature_error : public error {
public:
    explicit signature_error(const std::string& what) : error(what) {}
};

class budget_error : public error {
public:
    budget_error(const std::string& what, std::uint64_t used)
        : error(what), work_used(used) {}
    std::uint64_t work_used;
};

class inconsistency_error : public error {
public:
    explicit inconsistency_error(const std::string& what) : error(what) {}
};

using Tuple = std::vector<std::string>;

/// Finite relational signature: symbol name -> arity (>= 1).
class Signature {
public:
    Signature() = default;

    void add(const std::string& name, int arity) {
        if (name.empty() || name == "=")
            throw signature_error("illegal relation symbol '" + name + "'");
        if (arity < 1)
            throw signature_error("arity of '" + name + "' must be >= 1");
        auto [it, fresh] = arities_.emplace(name, arity);
        if (!fresh && it->second != arity)
            throw signature_error("conflicting arity for '" + name + "'");
    }

    bool has(const std::string& name) const { return arities_.count(name) != 0; }

    int arity(const std::string& name) const {
        auto it = arities_.find(name);
        if (it == arities_.end())
            throw signature_error("unknown relation symbol '" + name + "'");
        return it->second;
    }

    const std::map<std::string, int>& symbols() const { return arities_; }
    bool empty() const { return arities_.empty(); }

    friend bool operator==(const Signature&, const Signature&) = default;

private:
    std::map<std::string, int> arities_;
};

struct Atom {
    std::string symbol;
    std::vector<std::string> args;

    friend auto operator<=>(const Atom&, const Atom&) = default;

    std::string str() const {
        std::string s = symbol + "(";
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i) s += ",";
            s += args[i];
        }
        return s + ")";
    }
};

inline void check_atom(const Atom& a, const Signature& sig) {
    if (static_cast<int>(a.args.size()) != sig.arity(a.symbol))
        throw signature_error("atom " + a.str() + " has wrong arity for '" + a.symbol +
                              "/" + std::to_string(sig.arity(a.symbol)) + "'");
}

inline std::vector<Atom> sorted_unique(std::vector<Atom> atoms) {
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    return atoms;
}

inline void collect_vars(const Atom& a, std::set<std::string>& out) {
    out.insert(a.args.begin(), a.args.end());
}

inline std::set<std::string> atom_vars(const std::vector<Atom>& atoms) {
    std::set<std::string> vs;
    for (const auto& a : atoms) collect_vars(a, vs);
    return vs;
}

/// Horn clause: premise conjunction implying a single atom, or bottom
/// (empty conclusion). Premise is kept sorted and deduplicated.
struct HornClause {
    std::vector<Atom> premise;
    std::optional<Atom> conclusion;  // nullopt = bottom

    static HornClause make(std::vector<Atom> prem, std::optional<Atom> concl) {
        return HornClause{sorted_unique(std::move(prem)), std::move(concl)};
    }

    bool is_bottom() const { return !conclusion.has_value(); }

    std::set<std::string> variables() const {
        auto vs = atom_vars(premise);
        if (conclusion) collect_vars(*conclusion, vs);
        return vs;
    }

    friend bool operator==(const HornClause&, const HornClause&) = default;
    friend auto operator<=>(const HornClause&, const HornClause&) = default;
};

/// Clause with arbitrary disjunctive conclusion. Horn iff |positives| <= 1.
struct GeneralClause {
    std::vector<Atom> negatives;  // premise atoms
    std::vector<Atom> positives;  // conclusion disjuncts

    static GeneralClause make(std::vector<Atom> neg, std::vector<Atom> pos) {
        return GeneralClause{sorted_unique(std::move(neg)), sorted_unique(std::move(pos))};
    }

    bool is_horn() const { return positives.size() <= 1; }

    HornClause to_horn_clause() const {
        if (!is_horn()) throw error("clause with " + std::to_string(positives.size()) +
                                    " positive disjuncts is not Horn");
        std::optional<Atom> concl;
        if (!positives.empty()) concl = positives.front();
        return HornClause{negatives, std::move(concl)};
    }

    static GeneralClause from_horn(const HornClause& c) {
        std::vector<Atom> pos;
        if (c.conclusion) pos.push_back(*c.conclusion);
        return GeneralClause{c.premise, std::move(pos)};
    }

    std::set<std::string> variables() const {
        auto vs = atom_vars(negatives);
        for (const auto& a : positives) collect_vars(a, vs);
        return vs;
    }

    friend bool operator==(const GeneralClause&, const GeneralClause&) = default;
};

struct UniversalSentence {
    Signature signature;
    std::vector<GeneralClause> clauses;

    bool is_horn() const {
        return std::all_of(clauses.begin(), clauses.end(),
                           [](const GeneralClause& c) { return c.is_horn(); });
    }

    std::set<std::string> variables() const {
        std::set<std::string> vs;
        for (const auto& c : clauses)
            for (const auto& v : c.variables()) vs.insert(v);
        return vs;
    }

    void validate() const {
        for (const auto& c : clauses) {
            for (const auto& a : c.negatives) check_atom(a, signature);
            for (const auto& a : c.positives) check_atom(a, signature);
        }
    }

    friend bool operator==(const UniversalSentence&, const UniversalSentence&) = default;
};

/// All-Horn universal sentence, the input type of the saturation and
/// resolution engines.
struct HornSentence {
    Signature signature;
    std::vector<HornClause> clauses;

    UniversalSentence to_universal() const {
        UniversalSentence s{signature, {}};
        s.clauses.reserve(clauses.size());
        for (const auto& c : clauses) s.clauses.push_back(GeneralClause::from_horn(c));
        return s;
    }

    void validate() const {
        for (const auto& c : clauses) {
            for (const auto& a : c.premise) check_atom(a, signature);
            if (c.conclusion) check_atom(*c.conclusion, signature);
        }
    }

    friend bool operator==(const HornSentence&, const HornSentence&) = default;
};

inline HornSentence horn_from_universal(const UniversalSentence& s) {
    HornSentence h{s.signature, {}};
    h.clauses.reserve(s.clauses.size());
    for (std::size_t i = 0; i < s.clauses.size(); ++i) {
        if (!s.clauses[i].is_horn())
            throw error("clause " + std::to_string(i) + " is not Horn");
        h.clauses.push_back(s.clauses[i].to_horn_clause());
    }
    return h;
}

/// Finite structure: sorted domain of named elements plus one tuple set per
/// relation symbol. Immutable by convention once built.
struct FinStructure {
    Signature signature;
    std::vector<std::string> domain;  // sorted, unique
    std::map<std::string, std::set<Tuple>> relations;

    static FinStructure make(Signature sig, std::vector<std::string> dom,
                             std::map<std::string, std::set<Tuple>> rels = {}) {
        FinStructure s{std::move(sig), std::move(dom), std::move(rels)};
        std::sort(s.domain.begin(), s.domain.end());
        s.domain.erase(std::unique(s.domain.begin(), s.domain.end()), s.domain.end());
        for (const auto& [name, arity] : s.signature.symbols()) {
            (void)arity;
            s.relations.try_emplace(name);
        }
        s.validate();
        return s;
    }

    void validate() const {
        std::set<std::string> dom(domain.begin(), domain.end());
        for (const auto& [sym, tuples] : relations) {
            int ar = signature.arity(sym);
            for (const auto& t : tuples) {
                if (static_cast<int>(t.size()) != ar)
                    throw signature_error("tuple arity mismatch for '" + sym + "'");
                for (const auto& e : t)
                    if (!dom.count(e))
                        throw error("element '" + e + "' not in domain");
            }
        }
    }

    bool has_element(const std::string& e) const {
        return std::binary_search(domain.begin(), domain.end(), e);
    }

    bool holds(const std::string& sym, const Tuple& t) const {
        auto it = relations.find(sym);
        return it != relations.end() && it->second.count(t) != 0;
    }

    void add_fact(const std::string& sym, Tuple t) {
        int ar = signature.arity(sym);
        if (static_cast<int>(t.size()) != ar)
            throw signature_error("tuple arity mismatch for '" + sym + "'");
        for (const auto& e : t)
            if (!has_element(e)) throw error("element '" + e + "' not in domain");
        relations[sym].insert(std::move(t));
    }

    std::size_t fact_count() const {
        std::size_t n = 0;
        for (const auto& [sym, tuples] : relations) {
            (void)sym;
            n += tuples.size();
        }
        return n;
    }

    friend bool operator==(const FinStructure&, const FinStructure&) = default;
};

using VarAssignment = std::map<std::string, std::string>;

inline Tuple apply_assignment(const std::vector<std::string>& args, const VarAssignment& asg) {
    Tuple t;
    t.reserve(args.size());
    for (const auto& v : args) {
        auto it = asg.find(v);
        if (it == asg.end()) throw error("assignment is not total: missing '" + v + "'");
        t.push_back(it->second);
    }
    return t;
}

inline bool atom_holds(const FinStructure& s, const Atom& a, const VarAssignment& asg) {
    return s.holds(a.symbol, apply_assignment(a.args, asg));
}

namespace detail_core {

/// Enumerates all assignments of `vars` (sorted) into `domain` (sorted) in
/// lexicographic order of the value tuple; stops early when f returns false.
/// An empty domain yields no assignments, so universally quantified clauses
/// are vacuously true on the empty structure.
template <typename Fn>
bool for_each_assignment(const std::vector<std::string>& vars,
                         const std::vector<std::string>& domain, Fn&& f) {
    if (domain.empty()) return true;
    std::vector<std::size_t> idx(vars.size(), 0);
    VarAssignment asg;
    for (;;) {
        for (std::size_t i = 0; i < vars.size(); ++i) asg[vars[i]] = domain[idx[i]];
        if (!f(asg)) return false;
        std::size_t pos = vars.size();
        while (pos > 0) {
            --pos;
            if (++idx[pos] < domain.size()) break;
            idx[pos] = 0;
            if (pos == 0) return true;
        }
        if (vars.empty()) return true;
    }
}

}  // namespace detail_core

inline bool satisfies_clause(const FinStructure& s, const GeneralClause& c) {
    for (const auto& a : c.negatives) check_atom(a, s.signature);
    for (const auto& a : c.positives) check_atom(a, s.signature);
    auto vset = c.variables();
    std::vector<std::string> vars(vset.begin(), vset.end());
    return detail_core::for_each_assignment(vars, s.domain, [&](const VarAssignment& asg) {
        for (const auto& a : c.negatives)
            if (!atom_holds(s, a, asg)) return true;  // premise fails, next assignment
        for (const auto& a : c.positives)
            if (atom_holds(s, a, asg)) return true;
        return false;  // violated, stop
    });
}

inline bool satisfies_clause(const FinStructure& s, const HornClause& c) {
    return satisfies_clause(s, GeneralClause::from_horn(c));
}

inline bool satisfies(const FinStructure& s, const UniversalSentence& phi) {
    if (s.signature != phi.signature)
        throw signature_error("structure and sentence signatures differ");
    for (const auto& c : phi.clauses)
        if (!satisfies_clause(s, c)) return false;
    return true;
}

inline bool satisfies(const FinStructure& s, const HornSentence& phi) {
    return satisfies(s, phi.to_universal());
}

inline std::string product_element(const std::string& a, const std::string& b) {
    return "(" + a + "," + b + ")";
}

/// Direct product: tuples hold iff both projections hold.
inline FinStructure product(const FinStructure& a, const FinStructure& b) {
    if (a.signature != b.signature) throw signature_error("product of different signatures");
    std::vector<std::string> dom;
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& x : a.domain)
        for (const auto& y : b.domain) {
            dom.push_back(product_element(x, y));
            pairs.emplace_back(x, y);
        }
    FinStructure p = FinStructure::make(a.signature, std::move(dom));
    for (const auto& [sym, arity] : a.signature.symbols()) {
        const auto& ta = a.relations.at(sym);
        const auto& tb = b.relations.at(sym);
        for (const auto& ua : ta)
            for (const auto& ub : tb) {
                Tuple t;
                t.reserve(arity);
                for (int i = 0; i < arity; ++i) t.push_back(product_element(ua[i], ub[i]));
                p.relations[sym].insert(std::move(t));
            }
    }
    return p;
}

struct DisjointUnion {
    FinStructure structure;
    VarAssignment left;   // element of A -> element of the union
    VarAssignment right;  // element of B -> element of the union
};

/// Tagged union with "#1"/"#2" suffixes; returns the embeddings.
inline DisjointUnion disjoint_union(const FinStructure& a, const FinStructure& b) {
    if (a.signature != b.signature) throw signature_error("union of different signatures");
    DisjointUnion du;
    std::vector<std::string> dom;
    for (const auto& x : a.domain) {
        du.left[x] = x + "#1";
        dom.push_back(x + "#1");
    }
    for (const auto& y : b.domain) {
        du.right[y] = y + "#2";
        dom.push_back(y + "#2");
    }
    du.structure = FinStructure::make(a.signature, std::move(dom));
    auto copy_in = [&](const FinStructure& src, const VarAssignment& tag) {
        for (const auto& [sym, tuples] : src.relations)
            for (const auto& t : tuples) {
                Tuple u;
                u.reserve(t.size());
                for (const auto& e : t) u.push_back(tag.at(e));
                du.structure.relations[sym].insert(std::move(u));
            }
    };
    copy_in(a, du.left);
    copy_in(b, du.right);
    return du;
}

enum class MapMode { homomorphism, embedding };

inline bool is_homomorphism(const FinStructure& a, const FinStructure& b,
                            const VarAssignment& h) {
    for (const auto& x : a.domain) {
        auto it = h.find(x);
        if (it == h.end() || !b.has_element(it->second)) return false;
    }
    for (const auto& [sym, tuples] : a.relations)
        for (const auto& t : tuples) {
            Tuple u;
            u.reserve(t.size());
            for (const auto& e : t) u.push_back(h.at(e));
            if (!b.holds(sym, u)) return false;
        }
    return true;
}

inline bool is_embedding(const FinStructure& a, const FinStructure& b, const VarAssignment& h) {
    if (!is_homomorphism(a, b, h)) return false;
    std::set<std::string> image;
    for (const auto& [x, y] : h) {
        (void)x;
        if (!image.insert(y).second) return false;  // not injective
    }
    // Reflection: a tuple over the image is in B iff its preimage is in A.
    for (const auto& [sym, arity] : a.signature.symbols()) {
        std::vector<std::string> elems(a.domain);
        std::vector<std::size_t> idx(arity, 0);
        if (elems.empty()) continue;
        for (;;) {
            Tuple pre, post;
            for (int i = 0; i < arity; ++i) {
                pre.push_back(elems[idx[i]]);
                post.push_back(h.at(elems[idx[i]]));
            }
            if (a.holds(sym, pre) != b.holds(sym, post)) return false;
            int pos = arity;
            bool done = true;
            while (pos > 0) {
                --pos;
                if (++idx[pos] < elems.size()) {
                    done = false;
                    break;
                }
                idx[pos] = 0;
            }
            if (done) break;
        }
    }
    return true;
}

/// Backtracking search for structure maps A -> B. Embedding mode demands
/// injectivity and reflection of all relations. Deterministic output order.
inline std::vector<VarAssignment> find_homomorphisms(const FinStructure& a,
                                                     const FinStructure& b, MapMode mode,
                                                     std::size_t limit = SIZE_MAX) {
    if (a.signature != b.signature) throw signature_error("map search across signatures");
    std::vector<VarAssignment> found;
    if (limit == 0) return found;

    const auto& av = a.domain;
    VarAssignment partial;
    std::set<std::string> used;

    // Check only constraints whose elements are all assigned, and only those
    // involving the element assigned last.
    auto consistent = [&](const std::string& just) {
        for (const auto& [sym, tuples] : a.relations) {
            for (const auto& t : tuples) {
                if (std::find(t.begin(), t.end(), just) == t.end()) continue;
                Tuple u;
                bool total = true;
                for (const auto& e : t) {
                    auto it = partial.find(e);
                    if (it == partial.end()) {
                        total = false;
                        break;
                    }
                    u.push_back(it->second);
                }
                if (total && !b.holds(sym, u)) return false;
            }
        }
        if (mode == MapMode::embedding) {
            // Reflection on fully-assigned tuples touching `just`.
            for (const auto& [sym, arity] : a.signature.symbols()) {
                std::vector<std::string> assigned;
                for (const auto& [x, y] : partial) {
                    (void)y;
                    assigned.push_back(x);
                }
                std::vector<std::size_t> idx(arity, 0);
                if (assigned.empty()) continue;
                for (;;) {
                    bool touches = false;
                    Tuple pre, post;
                    for (int i = 0; i < arity; ++i) {
                        const auto& e = assigned[idx[i]];
                        if (e == just) touches = true;
                        pre.push_back(e);
                        post.push_back(partial.at(e));
                    }
                    if (touches && b.holds(sym, post) && !a.holds(sym, pre)) return false;
                    int pos = arity;
                    bool done = true;
                    while (pos > 0) {
                        --pos;
                        if (++idx[pos] < assigned.size()) {
                            done = false;
                            break;
                        }
                        idx[pos] = 0;
                    }
                    if (done) break;
                }
            }
        }
        return true;
    };

    auto search = [&](auto&& self, std::size_t depth) -> bool {
        if (depth == av.size()) {
            found.push_back(partial);
            return found.size() < limit;
        }
        const auto& x = av[depth];
        for (const auto& y : b.domain) {
            if (mode == MapMode::embedding && used.count(y)) continue;
            partial[x] = y;
            used.insert(y);
            bool keep_going = true;
            if (consistent(x)) keep_going = self(self, depth + 1);
            partial.erase(x);
            used.erase(y);
            if (!keep_going) return false;
        }
        return true;
    };
    search(search, 0);
    return found;
}

/// Induced substructure on S.
inline FinStructure substructure(const FinStructure& a, const std::set<std::string>& s) {
    for (const auto& e : s)
        if (!a.has_element(e)) throw error("element '" + e + "' not in domain");
    FinStructure r = FinStructure::make(a.signature, {s.begin(), s.end()});
    for (const auto& [sym, tuples] : a.relations)
        for (const auto& t : tuples) {
            bool inside = std::all_of(t.begin(), t.end(),
                                      [&](const std::string& e) { return s.count(e) != 0; });
            if (inside) r.relations[sym].insert(t);
        }
    return r;
}

/// Structure whose domain is the variables of the conjunction and whose
/// tuples are exactly its atoms; the identity assignment comes with it.
inline std::pair<FinStructure, VarAssignment> canonical_structure(const std::vector<Atom>& conj,
                                                                  const Signature& sig) {
    for (const auto& a : conj) check_atom(a, sig);
    auto vars = atom_vars(conj);
    FinStructure s = FinStructure::make(sig, {vars.begin(), vars.end()});
    for (const auto& a : conj) s.relations[a.symbol].insert(a.args);
    VarAssignment id;
    for (const auto& v : vars) id[v] = v;
    return {std::move(s), std::move(id)};
}

}  // namespace hornlab
