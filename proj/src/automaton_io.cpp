#include "autostab/automaton.hpp"

#include <sstream>

namespace autostab {

using nlohmann::json;

json big_to_json(const BigInt& x) {
    if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
        return json((long long)x);
    return json(x.str());
}

BigInt big_from_json(const json& j) {
    if (j.is_number_integer()) return BigInt(j.get<long long>());
    if (j.is_string()) return BigInt(j.get<std::string>());
    throw std::invalid_argument("expected an integer");
}

json letter_to_json(const Letter& l) {
    json a = json::array();
    for (auto& x : l) a.push_back(big_to_json(x));
    return a;
}

Letter letter_from_json(const json& j) {
    Letter l;
    if (j.is_array())
        for (auto& x : j) l.push_back(big_from_json(x));
    else
        l.push_back(big_from_json(j));
    return l;
}

json to_json(const Dfa& A) {
    json j;
    j["base"] = A.base;
    json al = json::array();
    for (auto& l : A.alphabet) al.push_back(letter_to_json(l));
    j["alphabet"] = al;
    j["states"] = A.n;
    j["start"] = A.start;
    json f = json::array();
    for (int q = 0; q < A.n; ++q)
        if (A.final(q)) f.push_back(q);
    j["finals"] = f;
    json tr = json::array();
    for (int q = 0; q < A.n; ++q)
        for (int a = 0; a < A.k(); ++a) tr.push_back(json::array({q, a, A.next(q, a)}));
    j["transitions"] = tr;
    return j;
}

Dfa dfa_from_json(const json& j) {
    Dfa A;
    A.base = j.value("base", 2);
    for (auto& l : j.at("alphabet")) A.alphabet.push_back(letter_from_json(l));
    int n = j.at("states").get<int>();
    A.n = n;
    A.start = j.at("start").get<int>();
    A.fin.assign(n, 0);
    for (auto& f : j.at("finals")) {
        int q = f.get<int>();
        if (q < 0 || q >= n) throw std::invalid_argument("final state out of range");
        A.fin[q] = 1;
    }
    A.delta.assign((size_t)n * A.k(), -1);
    for (auto& t : j.at("transitions")) {
        int q = t.at(0).get<int>(), a = t.at(1).get<int>(), r = t.at(2).get<int>();
        if (q < 0 || q >= n || a < 0 || a >= A.k()) throw std::invalid_argument("transition out of range");
        A.at(q, a) = r;
    }
    A.validate();
    return A;
}

std::string to_dot(const Dfa& A, const std::string& name) {
    std::ostringstream o;
    o << "digraph \"" << name << "\" {\n  rankdir=LR;\n  __start [shape=point];\n";
    for (int q = 0; q < A.n; ++q)
        o << "  q" << q << " [shape=" << (A.final(q) ? "doublecircle" : "circle") << ", label=\"" << q << "\"];\n";
    o << "  __start -> q" << A.start << ";\n";
    for (int q = 0; q < A.n; ++q) {
        std::map<int, std::string> labels;
        for (int a = 0; a < A.k(); ++a) {
            auto& s = labels[A.next(q, a)];
            if (!s.empty()) s += ",";
            const Letter& l = A.alphabet[a];
            s += l.size() == 1 ? l[0].str() : format_letter(l);
        }
        for (auto& [t, s] : labels) o << "  q" << q << " -> q" << t << " [label=\"" << s << "\"];\n";
    }
    o << "}\n";
    return o.str();
}

}  // namespace autostab
