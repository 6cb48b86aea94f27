#include "nqsvdd/measure.hpp"

#include <algorithm>

namespace nqsvdd {

ObservableSet select_observables(int n_f, int d) {
    if (n_f < 1 || n_f > 8)
        throw std::out_of_range("select_observables: n_f out of range");
    const std::size_t total = (std::size_t{1} << (2 * n_f)) - 1;  // 4^n_f - 1
    if (d < 1 || static_cast<std::size_t>(d) > total)
        throw std::out_of_range("select_observables: d out of range");

    static const char* chars = "IXYZ";
    std::vector<std::string> names;
    names.reserve(total);
    for (std::size_t code = 1; code <= total; ++code) {
        std::string s(n_f, 'I');
        std::size_t c = code;
        for (int pos = n_f - 1; pos >= 0; --pos) {
            s[pos] = chars[c & 3];
            c >>= 2;
        }
        names.push_back(std::move(s));
    }
    // Base-4 enumeration is already lexicographic in I<X<Y<Z; a stable sort
    // by weight keeps that order within each weight class.
    auto weight_of = [](const std::string& s) {
        return static_cast<int>(std::count_if(
            s.begin(), s.end(), [](char c) { return c != 'I'; }));
    };
    std::stable_sort(names.begin(), names.end(),
                     [&](const std::string& a, const std::string& b) {
                         return weight_of(a) < weight_of(b);
                     });
    names.resize(d);
    return ObservableSet{n_f, std::move(names)};
}

std::vector<PauliString> lift_observables(const ObservableSet& obs,
                                          std::span<const int> active,
                                          int n_total) {
    if (static_cast<int>(active.size()) != obs.n_f)
        throw StructuralError("lift_observables: active count != n_f");
    for (int q : active)
        if (q < 0 || q >= n_total)
            throw StructuralError("lift_observables: active qubit out of range");

    std::vector<PauliString> lifted;
    lifted.reserve(obs.names.size());
    for (const auto& name : obs.names) {
        std::string full(n_total, 'I');
        for (int pos = 0; pos < obs.n_f; ++pos) full[active[pos]] = name[pos];
        lifted.push_back(PauliString::from_name(full));
    }
    return lifted;
}

std::vector<double> latent(const PureState& psi,
                           const std::vector<PauliString>& observables) {
    std::vector<double> out;
    out.reserve(observables.size());
    for (const auto& p : observables) out.push_back(expectation(psi, p));
    return out;
}

std::vector<double> latent(const MixedState& rho,
                           const std::vector<PauliString>& observables) {
    std::vector<double> out;
    out.reserve(observables.size());
    for (const auto& p : observables) out.push_back(expectation(rho, p));
    return out;
}

}  // namespace nqsvdd
