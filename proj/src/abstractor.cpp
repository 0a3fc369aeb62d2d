// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dcbound/abstractor.hpp"

#include <algorithm>
#include <set>

#include "dcbound/graph.hpp"

namespace dcbound {

namespace {

std::set<std::string> concrete_variables(const Program& prog, const LinExpr& e) {
    std::set<std::string> out;
    for (const auto& v : e.variables()) {
        if (!prog.is_param(v)) out.insert(v);
    }
    return out;
}

bool all_in(const std::set<std::string>& xs, const std::set<std::string>& ys) {
    return std::includes(ys.begin(), ys.end(), xs.begin(), xs.end());
}

// x := x + c with c != 0
bool moves_by_constant(const ProgramTransition& t, const std::string& var) {
    const auto* a = t.assignment_of(var);
    if (!a || !a->value) return false;
    const auto delta = *a->value - LinExpr::variable(var);
    return delta.is_constant() && delta.constant_term() != 0;
}

} // namespace

std::vector<LinExpr> guess_norms(const Program& prog, std::size_t cycle_cap) {
    const auto& locs = prog.locations();
    auto loc_index = [&](const std::string& l) {
        return static_cast<std::size_t>(std::lower_bound(locs.begin(), locs.end(), l) - locs.begin());
    };
    std::vector<graph::Edge> edges;
    for (const auto& t : prog.transitions()) edges.push_back({loc_index(t.source), loc_index(t.target)});
    const auto cycles = graph::simple_cycles(locs.size(), edges, cycle_cap);
    if (!cycles) throw CycleCapExceeded(cycle_cap);

    std::vector<LinExpr> norms;
    const auto& ts = prog.transitions();
    for (std::size_t t = 0; t < ts.size(); ++t) {
        for (const auto& atom : ts[t].guard) {
            const auto norm = atom.positive_form();
            if (!norm) continue;
            const auto vars = concrete_variables(prog, *norm);
            if (vars.empty()) continue;
            const bool counted = std::any_of(cycles->begin(), cycles->end(), [&](const graph::EdgePath& cycle) {
                if (std::find(cycle.begin(), cycle.end(), t) == cycle.end()) return false;
                return std::any_of(cycle.begin(), cycle.end(), [&](std::size_t u) {
                    return std::any_of(vars.begin(), vars.end(),
                                       [&](const std::string& v) { return moves_by_constant(ts[u], v); });
                });
            });
            if (counted && std::find(norms.begin(), norms.end(), *norm) == norms.end()) norms.push_back(*norm);
        }
    }
    return norms;
}

std::optional<LinExpr> symbolic_execute(const LinExpr& norm, const ProgramTransition& t) {
    std::map<std::string, LinExpr> subst;
    for (const auto& a : t.updates) {
        if (norm.coefficient(a.var) == 0) continue;
        if (!a.value) return std::nullopt;
        subst.emplace(a.var, *a.value);
    }
    return norm.substitute(subst);
}

bool infer_guard(const LinExpr& norm, const ProgramTransition& t) {
    if (norm.is_constant()) return norm.constant_term() > 0;
    return std::any_of(t.guard.begin(), t.guard.end(), [&](const Comparison& c) { return c.positive_form() == norm; });
}

std::vector<std::string> Abstraction::comments() const {
    std::vector<std::string> out;
    for (const auto& n : norms) {
        if (n.name != n.norm.str()) out.push_back(n.name + " = " + n.norm.str());
    }
    for (const auto& [name, expr] : fresh_constants) out.push_back(name + " = " + expr.str());
    return out;
}

namespace {

struct NormState {
    LinExpr norm;
    std::size_t depth{0};
};

// e' <= rhs + offset, with rhs a norm index, a symbolic constant or an integer.
struct AbstractUpdate {
    std::size_t lhs{};
    std::optional<std::size_t> rhs_norm;
    Atom rhs_atom;
    std::int64_t offset{0};
};

class Abstractor {
  public:
    Abstractor(const Program& prog, const AbstractionOptions& options) : prog_(prog), options_(options) {
        for (const auto& p : prog.params()) taken_.insert(p);
        for (const auto& v : prog.variables()) taken_.insert(v);
    }

    Abstraction run() {
        for (auto& n : guess_norms(prog_, options_.cycle_cap)) add_norm(std::move(n), 0);
        updates_.resize(prog_.transitions().size());
        guards_.resize(prog_.transitions().size());
        for (std::size_t n = 0; n < norms_.size(); ++n) {
            if (norms_[n].depth > options_.depth_limit) continue;
            explore(n);
        }
        for (std::size_t n = 0; n < norms_.size(); ++n) {
            for (std::size_t t = 0; t < prog_.transitions().size(); ++t) {
                const auto& tr = prog_.transitions()[t];
                if (all_in(concrete_variables(prog_, norms_[n].norm), prog_.must_defined_at(tr.source)) &&
                    infer_guard(norms_[n].norm, tr)) {
                    guards_[t].push_back(n);
                }
            }
        }
        return finish();
    }

  private:
    std::size_t add_norm(LinExpr norm, std::size_t depth) {
        norms_.push_back({std::move(norm), depth});
        return norms_.size() - 1;
    }

    std::string fresh_name(const std::string& prefix) {
        for (std::size_t k = 1;; ++k) {
            auto name = prefix + std::to_string(k);
            if (taken_.insert(name).second) return name;
        }
    }

    Atom parameter_atom(const LinExpr& expr) {
        const auto& coefs = expr.coefficients();
        if (coefs.size() == 1 && coefs.begin()->second == 1) return Atom::symbolic(coefs.begin()->first);
        for (const auto& [name, e] : fresh_) {
            if (e == expr) return Atom::symbolic(name);
        }
        auto name = fresh_name("c");
        fresh_.emplace(name, expr);
        return Atom::symbolic(name);
    }

    void explore(std::size_t n) {
        const auto& ts = prog_.transitions();
        for (std::size_t t = 0; t < ts.size(); ++t) {
            // Copy: add_norm may reallocate.
            const LinExpr norm = norms_[n].norm;
            if (!all_in(concrete_variables(prog_, norm), prog_.must_defined_at(ts[t].target))) continue;
            const auto after = symbolic_execute(norm, ts[t]);
            if (!after) continue;
            AbstractUpdate up{n, std::nullopt, Atom::integer(0), 0};
            const auto moving = after->without_constant();
            if (after->is_constant()) {
                up.rhs_atom = Atom::integer(after->constant_term());
            } else if (concrete_variables(prog_, moving).empty()) {
                up.rhs_atom = parameter_atom(moving);
                up.offset = after->constant_term();
            } else if (const auto self = *after - norm; self.is_constant()) {
                up.rhs_norm = n;
                up.offset = self.constant_term();
            } else {
                for (std::size_t m = 0; m < norms_.size() && !up.rhs_norm; ++m) {
                    if (const auto diff = *after - norms_[m].norm; diff.is_constant()) {
                        up.rhs_norm = m;
                        up.offset = diff.constant_term();
                    }
                }
                if (!up.rhs_norm) {
                    up.rhs_norm = add_norm(moving, norms_[n].depth + 1);
                    up.offset = after->constant_term();
                }
            }
            updates_[t].push_back(up);
        }
    }

    Dcp build(const std::set<std::size_t>& dropped, const std::vector<std::string>& names) const {
        std::vector<std::string> vars;
        for (std::size_t n = 0; n < norms_.size(); ++n) {
            if (!dropped.contains(n)) vars.push_back(names[n]);
        }
        std::vector<std::string> consts = prog_.params();
        for (const auto& [name, e] : fresh_) consts.push_back(name);

        std::vector<Transition> out;
        const auto& ts = prog_.transitions();
        for (std::size_t t = 0; t < ts.size(); ++t) {
            Transition tr;
            tr.id = ts[t].id;
            tr.source = ts[t].source;
            tr.target = ts[t].target;
            tr.pos = ts[t].pos;
            for (auto n : guards_[t]) {
                if (!dropped.contains(n)) tr.guard.insert(names[n]);
            }
            for (const auto& up : updates_[t]) {
                if (dropped.contains(up.lhs) || (up.rhs_norm && dropped.contains(*up.rhs_norm))) continue;
                const Atom rhs = up.rhs_norm ? Atom::variable(names[*up.rhs_norm]) : up.rhs_atom;
                tr.updates.push_back({names[up.lhs], rhs, up.offset});
            }
            std::sort(tr.updates.begin(), tr.updates.end(),
                      [](const DifferenceConstraint& a, const DifferenceConstraint& b) { return a.lhs < b.lhs; });
            out.push_back(std::move(tr));
        }
        return Dcp(std::move(consts), std::move(vars), prog_.entry(), prog_.exit(), std::move(out));
    }

    Abstraction finish() {
        std::vector<std::string> printed;
        for (const auto& n : norms_) printed.push_back(n.norm.str());

        std::set<std::size_t> dropped;
        for (std::size_t n = 0; n < norms_.size(); ++n) {
            if (norms_[n].depth > options_.depth_limit) dropped.insert(n);
        }
        const auto over_limit = dropped;
        // Dropping a norm removes the constraints that read it, which can leave
        // other norms undefined where they are needed; drop those as well.
        for (;;) {
            const auto undefined = undefined_live_variables(build(dropped, printed));
            if (undefined.empty()) break;
            for (std::size_t n = 0; n < norms_.size(); ++n) {
                if (undefined.contains(printed[n])) dropped.insert(n);
            }
        }

        std::vector<std::string> names(norms_.size());
        for (std::size_t n = 0; n < norms_.size(); ++n) {
            if (dropped.contains(n)) continue;
            const auto& norm = norms_[n].norm;
            const bool bare = norm.coefficients().size() == 1 && norm.constant_term() == 0 &&
                              norm.coefficients().begin()->second == 1;
            names[n] = options_.keep_names || bare ? printed[n] : fresh_name("v");
        }

        Abstraction out;
        out.dcp = build(dropped, names);
        out.fresh_constants = fresh_;
        for (std::size_t n = 0; n < norms_.size(); ++n) {
            if (!dropped.contains(n)) {
                out.norms.push_back({names[n], norms_[n].norm});
                continue;
            }
            out.discarded.push_back(printed[n]);
            if (over_limit.contains(n)) {
                out.warnings.push_back("norm " + printed[n] + " exceeds abstraction depth " +
                                       std::to_string(options_.depth_limit) + " and was discarded");
            } else {
                out.warnings.push_back("norm " + printed[n] + " depends on a discarded norm and was discarded");
            }
        }
        return out;
    }

    const Program& prog_;
    AbstractionOptions options_;
    std::vector<NormState> norms_;
    std::vector<std::vector<AbstractUpdate>> updates_;
    std::vector<std::vector<std::size_t>> guards_;
    std::map<std::string, LinExpr> fresh_;
    std::set<std::string> taken_;
};

} // namespace

Abstraction abstract_program(const Program& prog, const AbstractionOptions& options) {
    return Abstractor(prog, options).run();
}

} // namespace dcbound
