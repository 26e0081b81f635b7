#pragma once

// Seeded generators and independent oracles shared by the unit and
// acceptance suites. Everything here must stay independent of the engine
// code paths it is used to check.

#include <hornlab/core.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace test_support {

using namespace hornlab;

// mt19937 with modulo picking: portable, deterministic streams.
class Rng {
public:
    explicit Rng(std::uint32_t seed) : gen_(seed) {}

    std::uint32_t pick(std::uint32_t n) { return n ? gen_() % n : 0; }
    bool chance(std::uint32_t num, std::uint32_t den) { return pick(den) < num; }

private:
    std::mt19937 gen_;
};

inline Signature random_signature(Rng& rng, int max_symbols, int max_arity) {
    static const char* unary_pool[] = {"P", "Q", "M"};
    static const char* binary_pool[] = {"E", "F", "G"};
    Signature sig;
    int n = 1 + rng.pick(max_symbols);
    int u = 0, b = 0;
    for (int i = 0; i < n; ++i) {
        int arity = 1 + rng.pick(max_arity);
        if (arity == 1 && u < 3)
            sig.add(unary_pool[u++], 1);
        else if (b < 3)
            sig.add(binary_pool[b++], 2);
        else if (u < 3)
            sig.add(unary_pool[u++], 1);
    }
    return sig;
}

inline std::vector<std::string> var_names(int k) {
    std::vector<std::string> vs;
    for (int i = 1; i <= k; ++i) vs.push_back("v" + std::to_string(i));
    return vs;
}

inline Atom random_atom(Rng& rng, const Signature& sig, const std::vector<std::string>& vars) {
    std::vector<std::string> syms;
    for (const auto& [name, arity] : sig.symbols()) {
        (void)arity;
        syms.push_back(name);
    }
    const auto& sym = syms[rng.pick(syms.size())];
    Atom a{sym, {}};
    for (int i = 0; i < sig.arity(sym); ++i) a.args.push_back(vars[rng.pick(vars.size())]);
    return a;
}

inline std::vector<Atom> random_conjunction(Rng& rng, const Signature& sig, int max_atoms,
                                            int max_vars) {
    auto vars = var_names(1 + rng.pick(max_vars));
    std::vector<Atom> atoms;
    int n = rng.pick(max_atoms + 1);
    for (int i = 0; i < n; ++i) atoms.push_back(random_atom(rng, sig, vars));
    return sorted_unique(std::move(atoms));
}

inline HornClause random_horn_clause(Rng& rng, const Signature& sig, int max_vars,
                                     int max_premise) {
    auto vars = var_names(1 + rng.pick(max_vars));
    std::vector<Atom> prem;
    int n = rng.pick(max_premise + 1);
    for (int i = 0; i < n; ++i) prem.push_back(random_atom(rng, sig, vars));
    std::optional<Atom> concl;
    if (!rng.chance(1, 5)) concl = random_atom(rng, sig, vars);
    // A bottom clause with an empty premise makes the theory unsatisfiable;
    // keep those out of the generated families.
    if (!concl && prem.empty()) concl = random_atom(rng, sig, vars);
    return HornClause::make(std::move(prem), std::move(concl));
}

inline HornSentence random_horn_sentence(Rng& rng, const Signature& sig, int max_clauses,
                                         int max_vars, int max_premise = 3) {
    HornSentence phi{sig, {}};
    int n = 1 + rng.pick(max_clauses);
    for (int i = 0; i < n; ++i)
        phi.clauses.push_back(random_horn_clause(rng, sig, max_vars, max_premise));
    return phi;
}

inline UniversalSentence random_universal_sentence(Rng& rng, const Signature& sig,
                                                   int max_clauses, int max_vars) {
    UniversalSentence phi{sig, {}};
    int n = 1 + rng.pick(max_clauses);
    for (int i = 0; i < n; ++i) {
        auto vars = var_names(1 + rng.pick(max_vars));
        std::vector<Atom> neg, pos;
        int nn = rng.pick(3);
        for (int j = 0; j < nn; ++j) neg.push_back(random_atom(rng, sig, vars));
        int np = rng.pick(4);
        for (int j = 0; j < np; ++j) pos.push_back(random_atom(rng, sig, vars));
        if (neg.empty() && pos.empty()) pos.push_back(random_atom(rng, sig, vars));
        phi.clauses.push_back(GeneralClause::make(std::move(neg), std::move(pos)));
    }
    return phi;
}

inline FinStructure random_structure(Rng& rng, const Signature& sig, int max_size) {
    int n = 1 + rng.pick(max_size);
    std::vector<std::string> dom;
    for (int i = 0; i < n; ++i) dom.push_back("e" + std::to_string(i + 1));
    auto s = FinStructure::make(sig, dom);
    for (const auto& [sym, arity] : sig.symbols()) {
        std::vector<std::size_t> idx(arity, 0);
        for (;;) {
            if (rng.chance(1, 3)) {
                Tuple t;
                for (int i = 0; i < arity; ++i) t.push_back(dom[idx[i]]);
                s.relations[sym].insert(std::move(t));
            }
            int pos = arity;
            bool done = true;
            while (pos > 0) {
                --pos;
                if (++idx[pos] < dom.size()) {
                    done = false;
                    break;
                }
                idx[pos] = 0;
            }
            if (done) break;
        }
    }
    return s;
}

// --- independent oracles -------------------------------------------------

// Enumerates every structure on the given domain over sig, invoking f until
// it returns false. Used for brute-force model searches in tests.
template <typename Fn>
inline bool for_each_structure(const Signature& sig, const std::vector<std::string>& dom,
                               Fn&& f) {
    std::vector<std::pair<std::string, Tuple>> slots;
    for (const auto& [sym, arity] : sig.symbols()) {
        std::vector<std::size_t> idx(arity, 0);
        if (dom.empty()) break;
        for (;;) {
            Tuple t;
            for (int i = 0; i < arity; ++i) t.push_back(dom[idx[i]]);
            slots.emplace_back(sym, std::move(t));
            int pos = arity;
            bool done = true;
            while (pos > 0) {
                --pos;
                if (++idx[pos] < dom.size()) {
                    done = false;
                    break;
                }
                idx[pos] = 0;
            }
            if (done) break;
        }
    }
    if (slots.size() > 24) throw error("oracle structure space too large");
    for (std::uint64_t mask = 0; mask < (1ull << slots.size()); ++mask) {
        auto s = FinStructure::make(sig, dom);
        for (std::size_t i = 0; i < slots.size(); ++i)
            if (mask & (1ull << i)) s.relations[slots[i].first].insert(slots[i].second);
        if (!f(s)) return false;
    }
    return true;
}

// Set partitions of vars, each rendered as a var -> representative map.
inline std::vector<VarAssignment> all_partitions(const std::vector<std::string>& vars) {
    std::vector<VarAssignment> out;
    std::vector<int> block(vars.size(), 0);
    auto rec = [&](auto&& self, std::size_t i, int blocks) -> void {
        if (i == vars.size()) {
            VarAssignment m;
            for (std::size_t j = 0; j < vars.size(); ++j) {
                // representative = first variable of the block
                for (std::size_t k = 0; k <= j; ++k)
                    if (block[k] == block[j]) {
                        m[vars[j]] = vars[k];
                        break;
                    }
            }
            out.push_back(std::move(m));
            return;
        }
        for (int b = 0; b <= blocks; ++b) {
            block[i] = b;
            self(self, i + 1, b == blocks ? blocks + 1 : blocks);
        }
    };
    if (vars.empty())
        out.push_back({});
    else
        rec(rec, 0, 0);
    return out;
}

// Brute-force semantic entailment of a Horn clause: search all variable
// identifications and all structures on the quotient domain for a
// countermodel. Independent of the saturation engine.
inline bool brute_entails_horn(const HornSentence& phi, const HornClause& psi) {
    auto vset = psi.variables();
    std::vector<std::string> vars(vset.begin(), vset.end());
    auto universal = phi.to_universal();
    for (const auto& part : all_partitions(vars)) {
        std::set<std::string> reps;
        for (const auto& [v, r] : part) {
            (void)v;
            reps.insert(r);
        }
        std::vector<std::string> dom(reps.begin(), reps.end());
        bool counter_found = !for_each_structure(phi.signature, dom, [&](const FinStructure& s) {
            for (const auto& a : psi.premise)
                if (!s.holds(a.symbol, apply_assignment(a.args, part))) return true;
            if (psi.conclusion &&
                s.holds(psi.conclusion->symbol, apply_assignment(psi.conclusion->args, part)))
                return true;
            if (!satisfies(s, universal)) return true;
            return false;  // countermodel
        });
        if (counter_found) return false;
    }
    return true;
}

}  // namespace test_support
