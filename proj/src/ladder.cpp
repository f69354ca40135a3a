#include "autostab/ladder.hpp"

#include "autostab/automaton.hpp"

namespace autostab {

using nlohmann::json;

Relation Relation::atom(int row, int col, Tuple offset) {
    Relation r;
    r.op = Op::Atom;
    r.row = row;
    r.col = col;
    r.offset = std::move(offset);
    return r;
}

Relation Relation::coset(BigInt res, BigInt mod, int row, int col, Tuple offset) {
    Relation r = atom(row, col, std::move(offset));
    r.op = Op::Coset;
    r.r = std::move(res);
    r.s = std::move(mod);
    return r;
}

Relation Relation::neg(Relation x) {
    Relation r;
    r.op = Op::Not;
    r.kids.push_back(std::move(x));
    return r;
}

Relation Relation::all(std::vector<Relation> xs) {
    if (xs.size() == 1) return xs[0];
    Relation r;
    r.op = Op::And;
    r.kids = std::move(xs);
    return r;
}

Relation Relation::any(std::vector<Relation> xs) {
    if (xs.size() == 1) return xs[0];
    Relation r;
    r.op = Op::Or;
    r.kids = std::move(xs);
    return r;
}

Relation Relation::exclusive(Relation a, Relation b) {
    Relation r;
    r.op = Op::Xor;
    r.kids = {std::move(a), std::move(b)};
    return r;
}

int Relation::arity_rows() const {
    int m = (op == Op::Atom || op == Op::Coset) ? row + 1 : 0;
    for (auto& k : kids) m = std::max(m, k.arity_rows());
    return m;
}

int Relation::arity_cols() const {
    int m = (op == Op::Atom || op == Op::Coset) ? col + 1 : 0;
    for (auto& k : kids) m = std::max(m, k.arity_cols());
    return m;
}

bool Relation::eval(const std::vector<Tuple>& x, const std::vector<Tuple>& y,
                    const std::function<bool(const Tuple&)>& member) const {
    switch (op) {
        case Op::Atom:
        case Op::Coset: {
            const Tuple& a = x.at(row);
            const Tuple& b = y.at(col);
            Tuple s(a.size());
            for (size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i] + (offset.empty() ? BigInt(0) : offset[i]);
            if (op == Op::Atom) return member(s);
            return pos_mod(s[0] - r, this->s) == 0;
        }
        case Op::Not:
            return !kids[0].eval(x, y, member);
        case Op::And:
            for (auto& k : kids)
                if (!k.eval(x, y, member)) return false;
            return true;
        case Op::Or:
            for (auto& k : kids)
                if (k.eval(x, y, member)) return true;
            return false;
        case Op::Xor:
            return kids[0].eval(x, y, member) != kids[1].eval(x, y, member);
    }
    return false;
}

std::string Relation::str() const {
    auto term = [&] {
        std::string t = "x" + std::to_string(row) + " + y" + std::to_string(col);
        if (!offset.empty()) {
            bool nz = false;
            for (auto& o : offset) nz = nz || o != 0;
            if (nz) t += " + " + format_tuple(offset);
        }
        return t;
    };
    switch (op) {
        case Op::Atom:
            return term() + " in A";
        case Op::Coset:
            return term() + " in " + r.str() + "+" + s.str() + "Z";
        case Op::Not:
            return "not (" + kids[0].str() + ")";
        case Op::And:
        case Op::Or:
        case Op::Xor: {
            std::string sep = op == Op::And ? " and " : op == Op::Or ? " or " : " xor ";
            std::string s;
            for (size_t i = 0; i < kids.size(); ++i) {
                if (i) s += sep;
                s += "(" + kids[i].str() + ")";
            }
            return s;
        }
    }
    return "";
}

Ladder Ladder::plain(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    Ladder L;
    L.N = (int)a.size() - 1;
    for (auto& x : a) L.rows.push_back({Tuple{x}});
    for (auto& y : b) L.cols.push_back({Tuple{y}});
    return L;
}

static void negate_rel(Relation& r) {
    for (auto& o : r.offset) o = -o;
    if (r.op == Relation::Op::Coset) r.r = -r.r;
    for (auto& k : r.kids) negate_rel(k);
}

Ladder Ladder::negated() const {
    Ladder L = *this;
    for (auto& row : L.rows)
        for (auto& t : row)
            for (auto& x : t) x = -x;
    for (auto& col : L.cols)
        for (auto& t : col)
            for (auto& x : t) x = -x;
    negate_rel(L.relation);
    return L;
}

LadderCheck verify_ladder(const Ladder& L, const std::function<bool(const Tuple&)>& member) {
    LadderCheck c;
    c.ok = (int)L.rows.size() == L.N + 1 && (int)L.cols.size() == L.N + 1;
    if (!c.ok) return c;
    c.bits.assign(L.N + 1, std::vector<char>(L.N + 1, 0));
    for (int i = 0; i <= L.N; ++i)
        for (int j = 0; j <= L.N; ++j) {
            bool v = L.relation.eval(L.rows[i], L.cols[j], member);
            c.bits[i][j] = v;
            if (v != (i <= j)) c.ok = false;
        }
    return c;
}

json to_json(const Relation& r) {
    json j;
    switch (r.op) {
        case Relation::Op::Atom:
        case Relation::Op::Coset: {
            j["op"] = r.op == Relation::Op::Atom ? "in" : "coset";
            j["row"] = r.row;
            j["col"] = r.col;
            if (!r.offset.empty()) j["offset"] = letter_to_json(r.offset);
            if (r.op == Relation::Op::Coset) {
                j["r"] = big_to_json(r.r);
                j["s"] = big_to_json(r.s);
            }
            break;
        }
        default: {
            j["op"] = r.op == Relation::Op::Not ? "not" : r.op == Relation::Op::And ? "and" : r.op == Relation::Op::Or ? "or" : "xor";
            json ks = json::array();
            for (auto& k : r.kids) ks.push_back(to_json(k));
            j["args"] = ks;
        }
    }
    return j;
}

Relation relation_from_json(const json& j) {
    std::string op = j.at("op").get<std::string>();
    if (op == "in" || op == "coset") {
        Tuple off;
        if (j.contains("offset")) off = letter_from_json(j["offset"]);
        if (op == "in") return Relation::atom(j.at("row").get<int>(), j.at("col").get<int>(), off);
        return Relation::coset(big_from_json(j.at("r")), big_from_json(j.at("s")), j.at("row").get<int>(),
                               j.at("col").get<int>(), off);
    }
    std::vector<Relation> ks;
    for (auto& k : j.at("args")) ks.push_back(relation_from_json(k));
    Relation r;
    if (op == "not") r.op = Relation::Op::Not;
    else if (op == "and") r.op = Relation::Op::And;
    else if (op == "or") r.op = Relation::Op::Or;
    else if (op == "xor") r.op = Relation::Op::Xor;
    else throw std::invalid_argument("unknown relation op " + op);
    r.kids = std::move(ks);
    return r;
}

static json side_to_json(const std::vector<std::vector<Tuple>>& side) {
    json a = json::array();
    for (auto& row : side) {
        json r = json::array();
        for (auto& t : row) r.push_back(letter_to_json(t));
        a.push_back(r);
    }
    return a;
}

static std::vector<std::vector<Tuple>> side_from_json(const json& j) {
    std::vector<std::vector<Tuple>> side;
    for (auto& r : j) {
        std::vector<Tuple> row;
        for (auto& t : r) row.push_back(letter_from_json(t));
        side.push_back(row);
    }
    return side;
}

json to_json(const Ladder& L, const LadderCheck* check) {
    json j;
    j["N"] = L.N;
    j["rows"] = side_to_json(L.rows);
    j["cols"] = side_to_json(L.cols);
    j["relation"] = to_json(L.relation);
    j["relation_text"] = L.relation.str();
    if (check) {
        json b = json::array();
        for (auto& row : check->bits) {
            std::string s;
            for (char c : row) s += c ? '1' : '0';
            b.push_back(s);
        }
        j["bits"] = b;
        j["verified"] = check->ok;
    }
    return j;
}

Ladder ladder_from_json(const json& j) {
    Ladder L;
    L.N = j.at("N").get<int>();
    L.rows = side_from_json(j.at("rows"));
    L.cols = side_from_json(j.at("cols"));
    L.relation = relation_from_json(j.at("relation"));
    return L;
}

}  // namespace autostab
