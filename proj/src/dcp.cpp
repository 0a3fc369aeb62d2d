// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dcbound/dcp.hpp"

#include <algorithm>
#include <sstream>

namespace dcbound {

const DifferenceConstraint* Transition::update_of(std::string_view var) const {
    for (const auto& dc : updates) {
        if (dc.lhs == var) return &dc;
    }
    return nullptr;
}

Dcp::Dcp(std::vector<std::string> sym_consts, std::vector<std::string> variables, std::string entry,
         std::string exit, std::vector<Transition> transitions, std::vector<std::string> extra_locations)
    : sym_consts_(std::move(sym_consts)), variables_(std::move(variables)), locations_(std::move(extra_locations)),
      entry_(std::move(entry)), exit_(std::move(exit)), transitions_(std::move(transitions)) {
    index();
}

void Dcp::index() {
    std::sort(sym_consts_.begin(), sym_consts_.end());
    sym_consts_.erase(std::unique(sym_consts_.begin(), sym_consts_.end()), sym_consts_.end());
    std::sort(variables_.begin(), variables_.end());
    variables_.erase(std::unique(variables_.begin(), variables_.end()), variables_.end());
    std::stable_sort(transitions_.begin(), transitions_.end(),
                     [](const Transition& a, const Transition& b) { return a.id < b.id; });

    locations_.push_back(entry_);
    locations_.push_back(exit_);
    for (const auto& t : transitions_) {
        locations_.push_back(t.source);
        locations_.push_back(t.target);
    }
    std::sort(locations_.begin(), locations_.end());
    locations_.erase(std::unique(locations_.begin(), locations_.end()), locations_.end());

    outgoing_.clear();
    incoming_.clear();
    for (const auto& loc : locations_) {
        outgoing_[loc];
        incoming_[loc];
    }
    for (TransitionIndex i = 0; i < transitions_.size(); ++i) {
        outgoing_[transitions_[i].source].push_back(i);
        incoming_[transitions_[i].target].push_back(i);
    }

    defined_.clear();
    for (const auto& loc : locations_) {
        auto& defined = defined_[loc];
        if (loc == entry_) continue;
        for (const auto& v : variables_) {
            const auto& in = incoming_[loc];
            if (std::all_of(in.begin(), in.end(),
                            [&](TransitionIndex t) { return transitions_[t].update_of(v) != nullptr; })) {
                defined.insert(v);
            }
        }
    }
}

std::optional<TransitionIndex> Dcp::find_transition(std::string_view id) const {
    auto it = std::lower_bound(transitions_.begin(), transitions_.end(), id,
                               [](const Transition& t, std::string_view key) { return t.id < key; });
    if (it == transitions_.end() || it->id != id) return std::nullopt;
    return static_cast<TransitionIndex>(it - transitions_.begin());
}

TransitionIndex Dcp::transition_index(std::string_view id) const {
    auto t = find_transition(id);
    if (!t) throw InputError("unknown transition '" + std::string(id) + "'");
    return *t;
}

namespace {
const std::vector<TransitionIndex>& lookup(const std::map<std::string, std::vector<TransitionIndex>, std::less<>>& m,
                                           const std::string& loc) {
    static const std::vector<TransitionIndex> none;
    auto it = m.find(loc);
    return it == m.end() ? none : it->second;
}
} // namespace

std::span<const TransitionIndex> Dcp::outgoing(const std::string& loc) const { return lookup(outgoing_, loc); }
std::span<const TransitionIndex> Dcp::incoming(const std::string& loc) const { return lookup(incoming_, loc); }

bool Dcp::is_variable(std::string_view name) const {
    return std::binary_search(variables_.begin(), variables_.end(), name);
}

bool Dcp::is_sym_const(std::string_view name) const {
    return std::binary_search(sym_consts_.begin(), sym_consts_.end(), name);
}

const std::set<std::string>& Dcp::defined_at(const std::string& loc) const {
    static const std::set<std::string> none;
    auto it = defined_.find(loc);
    return it == defined_.end() ? none : it->second;
}

Dcp Dcp::without_variables(const std::set<std::string>& removed) const {
    std::vector<std::string> vars;
    for (const auto& v : variables_) {
        if (!removed.contains(v)) vars.push_back(v);
    }
    std::vector<Transition> ts = transitions_;
    for (auto& t : ts) {
        std::erase_if(t.updates, [&](const DifferenceConstraint& dc) {
            return removed.contains(dc.lhs) || (dc.rhs.is_variable() && removed.contains(dc.rhs.name));
        });
        std::erase_if(t.guard, [&](const std::string& g) { return removed.contains(g); });
    }
    return Dcp(sym_consts_, std::move(vars), entry_, exit_, std::move(ts), locations_);
}

std::vector<Reset> resets(const Dcp& dcp, std::string_view var) {
    if (!dcp.is_variable(var)) throw InputError("unknown variable '" + std::string(var) + "'");
    std::vector<Reset> out;
    for (TransitionIndex t = 0; t < dcp.transitions().size(); ++t) {
        const auto* dc = dcp.transition(t).update_of(var);
        if (dc && !(dc->rhs.is_variable() && dc->rhs.name == var)) out.push_back({t, dc->rhs, dc->offset});
    }
    return out;
}

std::vector<Increment> increments(const Dcp& dcp, std::string_view var) {
    if (!dcp.is_variable(var)) throw InputError("unknown variable '" + std::string(var) + "'");
    std::vector<Increment> out;
    for (TransitionIndex t = 0; t < dcp.transitions().size(); ++t) {
        const auto* dc = dcp.transition(t).update_of(var);
        if (dc && dc->rhs.is_variable() && dc->rhs.name == var && dc->offset > 0) out.push_back({t, dc->offset});
    }
    return out;
}

std::vector<TransitionIndex> back_edges(const Dcp& dcp) {
    enum class Color { White, Gray, Black };
    std::map<std::string, Color, std::less<>> color;
    for (const auto& l : dcp.locations()) color[l] = Color::White;

    struct Frame {
        std::string loc;
        std::size_t next{0};
    };
    std::vector<TransitionIndex> out;
    std::vector<Frame> stack{{dcp.entry(), 0}};
    color[dcp.entry()] = Color::Gray;
    while (!stack.empty()) {
        auto& frame = stack.back();
        const auto succ = dcp.outgoing(frame.loc);
        if (frame.next == succ.size()) {
            color[frame.loc] = Color::Black;
            stack.pop_back();
            continue;
        }
        const TransitionIndex t = succ[frame.next++];
        const auto& target = dcp.transition(t).target;
        switch (color[target]) {
        case Color::Gray: out.push_back(t); break;
        case Color::White:
            color[target] = Color::Gray;
            stack.push_back({target, 0});
            break;
        case Color::Black: break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::set<std::string> used_by(const Transition& t) {
    std::set<std::string> used(t.guard.begin(), t.guard.end());
    for (const auto& dc : t.updates) {
        if (dc.rhs.is_variable()) used.insert(dc.rhs.name);
    }
    return used;
}

} // namespace

std::map<std::string, std::set<std::string>> live_variables(const Dcp& dcp) {
    std::map<std::string, std::set<std::string>> live;
    for (const auto& loc : dcp.locations()) live[loc];
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& loc : dcp.locations()) {
            auto& set = live[loc];
            const auto before = set.size();
            for (auto t : dcp.outgoing(loc)) {
                const auto& tr = dcp.transition(t);
                for (const auto& v : used_by(tr)) set.insert(v);
                const auto& defined = dcp.defined_at(tr.target);
                for (const auto& v : live[tr.target]) {
                    if (!defined.contains(v)) set.insert(v);
                }
            }
            changed |= set.size() != before;
        }
    }
    return live;
}

std::set<std::string> undefined_live_variables(const Dcp& dcp) {
    std::set<std::string> out;
    for (const auto& [loc, vars] : live_variables(dcp)) {
        const auto& defined = dcp.defined_at(loc);
        for (const auto& v : vars) {
            if (!defined.contains(v)) out.insert(v);
        }
    }
    return out;
}

std::vector<Diagnostic> validate(const Dcp& dcp) {
    std::vector<Diagnostic> out;
    const auto& ts = dcp.transitions();

    for (const auto& c : dcp.sym_consts()) {
        if (dcp.is_variable(c)) out.push_back({{}, "'" + c + "' is declared both as a variable and a constant"});
    }
    for (std::size_t i = 1; i < ts.size(); ++i) {
        if (ts[i].id == ts[i - 1].id) out.push_back({ts[i].pos, "duplicate transition id '" + ts[i].id + "'"});
    }
    for (const auto& t : ts) {
        std::set<std::string> seen;
        for (const auto& dc : t.updates) {
            if (!dcp.is_variable(dc.lhs)) {
                out.push_back(
                    {t.pos, "transition '" + t.id + "' constrains '" + dc.lhs + "', which is not a variable"});
            } else if (!seen.insert(dc.lhs).second) {
                out.push_back({t.pos, "transition '" + t.id + "' is not deterministic: two constraints on '" +
                                          dc.lhs + "'"});
            }
            if (dc.rhs.kind == Atom::Kind::Var && !dcp.is_variable(dc.rhs.name)) {
                out.push_back({t.pos, "transition '" + t.id + "' reads unknown variable '" + dc.rhs.name + "'"});
            }
            if (dc.rhs.kind == Atom::Kind::Sym && !dcp.is_sym_const(dc.rhs.name)) {
                out.push_back({t.pos, "transition '" + t.id + "' reads unknown constant '" + dc.rhs.name + "'"});
            }
        }
        for (const auto& g : t.guard) {
            if (!dcp.is_variable(g)) {
                out.push_back({t.pos, "transition '" + t.id + "' guards '" + g + "', which is not a variable"});
            }
        }
    }
    if (!dcp.incoming(dcp.entry()).empty()) {
        const auto& t = dcp.transition(dcp.incoming(dcp.entry()).front());
        out.push_back({t.pos, "transition '" + t.id + "' enters the entry location '" + dcp.entry() + "'"});
    }
    if (!dcp.outgoing(dcp.exit()).empty()) {
        const auto& t = dcp.transition(dcp.outgoing(dcp.exit()).front());
        out.push_back({t.pos, "transition '" + t.id + "' leaves the exit location '" + dcp.exit() + "'"});
    }
    if (dcp.entry() == dcp.exit()) out.push_back({{}, "entry and exit location coincide"});
    if (!out.empty()) return out;

    auto live = live_variables(dcp);
    for (const auto& loc : dcp.locations()) {
        const auto& defined = dcp.defined_at(loc);
        for (const auto& v : live[loc]) {
            if (defined.contains(v)) continue;
            if (loc == dcp.entry()) {
                const auto& t = dcp.transition(dcp.outgoing(loc).front());
                out.push_back({t.pos, "variable '" + v + "' is read after entry location '" + loc +
                                          "' before any transition constrains it"});
                continue;
            }
            for (auto t : dcp.incoming(loc)) {
                const auto& tr = dcp.transition(t);
                if (!tr.update_of(v)) {
                    out.push_back({tr.pos, "transition '" + tr.id + "' leaves '" + v +
                                               "' undefined, but it is read after location '" + loc + "'"});
                }
            }
        }
    }
    return out;
}

std::string to_text(const Dcp& dcp, std::span<const std::string> comments) {
    auto list = [](const std::vector<std::string>& xs) {
        std::string out;
        for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : " ") + xs[i];
        return out;
    };
    std::ostringstream os;
    for (const auto& c : comments) os << "# " << c << '\n';
    os << "dcp\n";
    os << "consts:" << list(dcp.sym_consts()) << '\n';
    os << "vars:" << list(dcp.variables()) << '\n';
    os << "entry: " << dcp.entry() << '\n';
    os << "exit: " << dcp.exit() << '\n';
    for (const auto& t : dcp.transitions()) {
        os << "trans " << t.id << ": " << t.source << " -> " << t.target;
        if (!t.guard.empty()) {
            os << " guard(";
            bool first = true;
            for (const auto& g : t.guard) {
                os << (first ? "" : ", ") << g;
                first = false;
            }
            os << ')';
        }
        os << " {";
        for (const auto& dc : t.updates) {
            os << ' ' << dc.lhs << "' <= " << dc.rhs.str();
            if (dc.offset > 0) os << " + " << dc.offset;
            if (dc.offset < 0) os << " - " << -dc.offset;
            os << ';';
        }
        os << " }\n";
    }
    return os.str();
}

} // namespace dcbound
