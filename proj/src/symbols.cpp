#include "gengeo/symbols.hpp"

#include <mutex>
#include <unordered_map>

namespace gengeo {
namespace symbols {
namespace {

struct Registry {
    std::mutex mu;
    std::vector<AtomInfo> atoms;
    std::unordered_map<std::string, AtomId> byName;
};

Registry& reg() {
    static Registry r;
    return r;
}

AtomId insertLocked(Registry& r, AtomInfo info) {
    AtomId id = static_cast<AtomId>(r.atoms.size());
    r.byName.emplace(info.name, id);
    if (info.conj == 0 && info.kind == AtomKind::Variable) info.conj = id;
    if (info.kind == AtomKind::Function) info.conj = id;  // function symbols are real
    r.atoms.push_back(std::move(info));
    return id;
}

} // namespace

AtomId variable(const std::string& name) {
    Registry& r = reg();
    std::scoped_lock lk(r.mu);
    auto it = r.byName.find(name);
    if (it != r.byName.end()) {
        if (r.atoms[it->second].kind != AtomKind::Variable)
            throw SymbolConflict("'" + name + "' is already a function symbol");
        return it->second;
    }
    AtomInfo info;
    info.name = name;
    info.kind = AtomKind::Variable;
    return insertLocked(r, std::move(info));
}

AtomId function(const std::string& name, AtomId argVar,
                const std::optional<std::string>& derivName) {
    Registry& r = reg();
    std::scoped_lock lk(r.mu);
    if (argVar >= r.atoms.size() || r.atoms[argVar].kind != AtomKind::Variable)
        throw SymbolConflict("function argument of '" + name + "' is not a variable");
    if (r.atoms[argVar].conj != argVar)
        throw SymbolConflict("function symbols take a real variable; '" +
                             r.atoms[argVar].name + "' has a distinct conjugate");
    auto it = r.byName.find(name);
    if (it != r.byName.end()) {
        const AtomInfo& ex = r.atoms[it->second];
        if (ex.kind != AtomKind::Function || ex.arg != argVar)
            throw SymbolConflict("'" + name + "' is already registered differently");
        if (derivName) {
            if (ex.deriv) {
                if (r.atoms[*ex.deriv].name != *derivName)
                    throw SymbolConflict("'" + name + "' already has derivative '" +
                                         r.atoms[*ex.deriv].name + "'");
            } else {
                // Attach the requested derivative symbol now.
                AtomId fid = it->second;
                auto dIt = r.byName.find(*derivName);
                AtomId did;
                if (dIt != r.byName.end()) {
                    did = dIt->second;
                    if (r.atoms[did].kind != AtomKind::Function || r.atoms[did].arg != argVar)
                        throw SymbolConflict("derivative name '" + *derivName +
                                             "' is already registered differently");
                } else {
                    AtomInfo dInfo;
                    dInfo.name = *derivName;
                    dInfo.kind = AtomKind::Function;
                    dInfo.arg = argVar;
                    did = insertLocked(r, std::move(dInfo));
                }
                r.atoms[fid].deriv = did;
            }
        }
        return it->second;
    }
    AtomInfo info;
    info.name = name;
    info.kind = AtomKind::Function;
    info.arg = argVar;
    AtomId id = insertLocked(r, std::move(info));
    if (derivName) {
        auto dIt = r.byName.find(*derivName);
        AtomId did;
        if (dIt != r.byName.end()) {
            did = dIt->second;
            if (r.atoms[did].kind != AtomKind::Function || r.atoms[did].arg != argVar)
                throw SymbolConflict("derivative name '" + *derivName +
                                     "' is already registered differently");
        } else {
            AtomInfo dInfo;
            dInfo.name = *derivName;
            dInfo.kind = AtomKind::Function;
            dInfo.arg = argVar;
            did = insertLocked(r, std::move(dInfo));
        }
        r.atoms[id].deriv = did;
    }
    return id;
}

AtomId derivative(AtomId fn) {
    Registry& r = reg();
    std::scoped_lock lk(r.mu);
    if (fn >= r.atoms.size() || r.atoms[fn].kind != AtomKind::Function)
        throw SymbolConflict("derivative symbol requested for a non-function atom");
    if (r.atoms[fn].deriv) return *r.atoms[fn].deriv;
    // Mint a fresh primed name.
    std::string name = r.atoms[fn].name + "'";
    while (r.byName.count(name)) name += "'";
    AtomInfo dInfo;
    dInfo.name = name;
    dInfo.kind = AtomKind::Function;
    dInfo.arg = r.atoms[fn].arg;
    AtomId did = insertLocked(r, std::move(dInfo));
    r.atoms[fn].deriv = did;
    return did;
}

void linkConjugates(AtomId a, AtomId b) {
    Registry& r = reg();
    std::scoped_lock lk(r.mu);
    if (a >= r.atoms.size() || b >= r.atoms.size())
        throw SymbolConflict("conjugate link on unregistered atoms");
    AtomInfo& ia = r.atoms[a];
    AtomInfo& ib = r.atoms[b];
    if (ia.kind != AtomKind::Variable || ib.kind != AtomKind::Variable)
        throw SymbolConflict("conjugate links are between variables");
    if ((ia.conj != a && ia.conj != b) || (ib.conj != b && ib.conj != a))
        throw SymbolConflict("atom already conjugate-linked elsewhere");
    ia.conj = b;
    ib.conj = a;
}

const AtomInfo& info(AtomId id) {
    Registry& r = reg();
    std::scoped_lock lk(r.mu);
    if (id >= r.atoms.size()) throw InternalError("atom id out of range");
    return r.atoms[id];
}

std::optional<AtomId> find(const std::string& name) {
    Registry& r = reg();
    std::scoped_lock lk(r.mu);
    auto it = r.byName.find(name);
    if (it == r.byName.end()) return std::nullopt;
    return it->second;
}

} // namespace symbols

Chart Chart::real(const std::string& name, const std::vector<std::string>& varNames) {
    Chart c;
    c.name = name;
    for (const auto& v : varNames) c.vars.push_back(symbols::variable(v));
    return c;
}

Chart Chart::complexified(const std::string& name, const std::vector<std::string>& baseNames) {
    Chart c;
    c.name = name;
    c.complexPaired = true;
    std::vector<AtomId> holo, anti;
    for (const auto& v : baseNames) {
        AtomId z = symbols::variable(v);
        AtomId zb = symbols::variable(v + "b");
        symbols::linkConjugates(z, zb);
        holo.push_back(z);
        anti.push_back(zb);
    }
    c.vars = holo;
    c.vars.insert(c.vars.end(), anti.begin(), anti.end());
    return c;
}

} // namespace gengeo
