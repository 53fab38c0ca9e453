#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gengeo/errors.hpp"

namespace gengeo {

// Atoms are the indeterminates of the symbolic layer: chart variables and
// one-argument function symbols (a(t), a'(t), ...).  They are interned in a
// process-wide append-only registry so that expressions from different
// modules can mix freely; registration is idempotent and re-registration
// with conflicting data raises SymbolConflict.
using AtomId = std::uint32_t;

enum class AtomKind : std::uint8_t { Variable, Function };

struct AtomInfo {
    std::string name;
    AtomKind kind = AtomKind::Variable;
    AtomId conj = 0;                    // conjugate atom; == own id for real atoms
    AtomId arg = 0;                     // Function only: the variable it depends on
    std::optional<AtomId> deriv;        // Function only: derivative symbol, created on demand
};

namespace symbols {

// Intern a chart variable.  Returns the existing atom if the name is already
// registered as a variable; conflicts with a function symbol raise.
AtomId variable(const std::string& name);

// Intern a function symbol of one variable.  derivName, when given, names the
// derivative symbol; otherwise a fresh primed name is minted on first use.
AtomId function(const std::string& name, AtomId argVar,
                const std::optional<std::string>& derivName = std::nullopt);

// Derivative atom of a function symbol (created on demand, name + "'").
AtomId derivative(AtomId fn);

// Mark two variables as complex conjugates of each other.
void linkConjugates(AtomId a, AtomId b);

const AtomInfo& info(AtomId id);

// Look up an atom by name; nullopt when not registered.
std::optional<AtomId> find(const std::string& name);

} // namespace symbols

// A chart is an ordered list of variables.  Complex-paired charts list the
// holomorphic coordinates first and their conjugates second, with conjugation
// links installed between the two halves; all other variables are real
// (self-conjugate).
struct Chart {
    std::string name;
    std::vector<AtomId> vars;
    bool complexPaired = false;

    // Number of holomorphic coordinates (complex-paired charts only).
    int m() const { return complexPaired ? static_cast<int>(vars.size()) / 2 : 0; }
    int dim() const { return static_cast<int>(vars.size()); }

    bool hasVar(AtomId v) const {
        for (AtomId w : vars)
            if (w == v) return true;
        return false;
    }
    int varIndex(AtomId v) const {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == v) return static_cast<int>(i);
        return -1;
    }

    // Real chart with the given variable names.
    static Chart real(const std::string& name, const std::vector<std::string>& varNames);

    // Complex-paired chart: baseNames z1..zm plus conjugates named z1b..zmb.
    static Chart complexified(const std::string& name, const std::vector<std::string>& baseNames);
};

} // namespace gengeo
