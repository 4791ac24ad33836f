#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "term.hpp"

namespace cwf {

// States are canonical integer vectors so that equal states compare equal.
using AutomatonState = std::vector<std::uint32_t>;

// Bottom-up automaton over clique terms. A Join folds its children one at a time starting from
// join_unit(); the fold must not depend on the order of the children.
class TermAutomaton {
public:
    virtual ~TermAutomaton() = default;
    virtual std::string name() const = 0;
    // Largest color the automaton handles.
    virtual int max_color() const = 0;
    virtual AutomatonState empty() const = 0;
    virtual AutomatonState constant(int color) const = 0;
    virtual AutomatonState recolor(const std::vector<ColorPair>& moves, const AutomatonState& s) const = 0;
    virtual AutomatonState join_unit(const std::vector<ColorPair>& pairs) const = 0;
    virtual AutomatonState join_step(const std::vector<ColorPair>& pairs, const AutomatonState& acc,
                                     const AutomatonState& child) const = 0;
    virtual AutomatonState join_finalize(const std::vector<ColorPair>&, const AutomatonState& acc) const { return acc; }
    virtual bool accepting(const AutomatonState& s) const = 0;
    virtual std::string describe(const AutomatonState& s) const;
};

struct RunResult {
    AutomatonState state;
    bool accepted = false;
};

// Throws InputError for malformed terms or colors above the automaton's range.
RunResult run(const TermAutomaton& a, const CliqueTerm& t);

// Number of vertices divisible by p.
std::unique_ptr<TermAutomaton> automaton_mod_p(int p);

// Nonempty and connected. The state is the multiset of color sets of the connected components,
// each multiplicity capped at 2. Within a Join, whether two components merge depends only on
// their color sets and on coming from different children, and every group of signatures linked
// by join pairs collapses into a single component, so counts beyond 2 never change a later
// decision or the final verdict.
std::unique_ptr<TermAutomaton> automaton_connectivity(int k);

// "modp:<p>" or "connected".
std::unique_ptr<TermAutomaton> automaton_from_spec(std::string_view spec, int k);

}  // namespace cwf
