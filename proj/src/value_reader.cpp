#include "autostab/value_reader.hpp"

#include <algorithm>
#include <deque>

namespace autostab {

size_t ValueReader::VecHash::operator()(const std::vector<int>& v) const {
    size_t h = v.size() * 0x9e3779b97f4a7c15ULL;
    for (int x : v) h ^= (size_t)x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

ValueReader::ValueReader(const Dfa& src, int d, Tuple offset, size_t shift)
    : ValueReader(to_nfa(src), d, std::move(offset), shift) {}

ValueReader::ValueReader(const Nfa& src, int d, Tuple offset, size_t shift) : src_(src), d_(d) {
    (void)Base{d};
    dim_ = src.alphabet.empty() ? (int)offset.size() : (int)src.alphabet[0].size();
    if ((int)offset.size() != dim_) throw std::invalid_argument("ValueReader: offset dimension mismatch");
    size_t keys = 1;
    for (int i = 0; i < dim_; ++i) keys *= d;
    by_residue_.assign(keys, {});
    for (int a = 0; a < src_.k(); ++a) {
        std::vector<long long> r(dim_);
        for (int i = 0; i < dim_; ++i) r[i] = (long long)pos_mod(src_.alphabet[a][i], BigInt(d));
        by_residue_[residue_key(r)].push_back(a);
    }
    std::vector<int> init;
    for (int s : src_.starts) init.push_back(intern_node(s, offset));
    start_ = intern_subset(init);
    Letter zero(dim_, BigInt(0));
    for (size_t i = 0; i < shift; ++i) start_ = step(start_, zero);
}

int ValueReader::residue_key(const std::vector<long long>& r) const {
    long long k = 0;
    for (int i = dim_ - 1; i >= 0; --i) k = k * d_ + r[i];
    return (int)k;
}

int ValueReader::intern_node(int q, const Tuple& c) {
    auto key = std::make_pair(q, c);
    auto it = node_id_.find(key);
    if (it != node_id_.end()) return it->second;
    int id = (int)nodes_.size();
    nodes_.push_back({q, c});
    node_acc_.push_back(-1);
    node_id_.emplace(std::move(key), id);
    return id;
}

int ValueReader::intern_subset(std::vector<int> s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    auto it = subset_id_.find(s);
    if (it != subset_id_.end()) return it->second;
    int id = (int)subsets_.size();
    subset_id_.emplace(s, id);
    subsets_.push_back(std::move(s));
    subset_acc_.push_back(-1);
    trans_.emplace_back(letter_list_.size(), -1);
    return id;
}

int ValueReader::letter_id(const Letter& y) {
    auto it = letters_.find(y);
    if (it != letters_.end()) return it->second;
    if ((int)y.size() != dim_) throw std::invalid_argument("ValueReader: letter dimension mismatch");
    int id = (int)letter_list_.size();
    letters_.emplace(y, id);
    letter_list_.push_back(y);
    for (auto& row : trans_) row.push_back(-1);
    return id;
}

void ValueReader::node_step(int node, const Letter& y, std::vector<int>& out) {
    // copy: interning may reallocate nodes_
    int q = nodes_[node].q;
    Tuple v = nodes_[node].carry;
    for (int i = 0; i < dim_; ++i) v[i] += y[i];
    std::vector<long long> r(dim_);
    bool zero_res = true;
    for (int i = 0; i < dim_; ++i) {
        r[i] = (long long)pos_mod(v[i], BigInt(d_));
        zero_res = zero_res && r[i] == 0;
    }
    if (q >= 0) {
        for (int a : by_residue_[residue_key(r)]) {
            const auto& targets = src_.next(q, a);
            if (targets.empty()) continue;
            Tuple c(dim_);
            for (int i = 0; i < dim_; ++i) c[i] = (v[i] - src_.alphabet[a][i]) / d_;
            for (int t : targets) out.push_back(intern_node(t, c));
        }
    }
    if ((q < 0 || src_.fin[q]) && zero_res) {
        Tuple c(dim_);
        for (int i = 0; i < dim_; ++i) c[i] = v[i] / d_;
        out.push_back(intern_node(-1, c));
    }
}

bool ValueReader::node_accepting(int node) {
    if (node_acc_[node] >= 0) return node_acc_[node];
    // forward search along y = 0; carries shrink once large, so the search is finite
    Letter zero(dim_, BigInt(0));
    std::vector<int> seen{node};
    std::vector<char> mark;
    auto marked = [&](int x) {
        if ((int)mark.size() <= x) mark.resize(nodes_.size() + 64, 0);
        return mark[x] != 0;
    };
    auto set_mark = [&](int x) {
        if ((int)mark.size() <= x) mark.resize(nodes_.size() + 64, 0);
        mark[x] = 1;
    };
    set_mark(node);
    bool found = false;
    for (size_t i = 0; i < seen.size() && !found; ++i) {
        int x = seen[i];
        if (node_acc_[x] == 1) {
            found = true;
            break;
        }
        if (node_acc_[x] == 0) continue;
        const Node& nd = nodes_[x];
        bool zero_carry = std::all_of(nd.carry.begin(), nd.carry.end(), [](const BigInt& c) { return c == 0; });
        if (zero_carry && (nd.q < 0 || src_.fin[nd.q])) {
            found = true;
            break;
        }
        std::vector<int> out;
        node_step(x, zero, out);
        for (int t : out)
            if (!marked(t)) {
                set_mark(t);
                seen.push_back(t);
            }
    }
    if (found) {
        node_acc_[node] = 1;
    } else {
        for (int x : seen) node_acc_[x] = 0;
    }
    return found;
}

bool ValueReader::accepting(int s) {
    if (subset_acc_[s] >= 0) return subset_acc_[s];
    bool acc = false;
    for (int x : subsets_[s])
        if (node_accepting(x)) {
            acc = true;
            break;
        }
    subset_acc_[s] = acc;
    return acc;
}

int ValueReader::step(int s, const Letter& y) { return step(s, letter_id(y)); }

int ValueReader::step(int s, int lid) {
    int cached = trans_[s][lid];
    if (cached >= 0) return cached;
    std::vector<int> out;
    std::vector<int> members = subsets_[s];
    Letter y = letter_list_[lid];
    for (int x : members) node_step(x, y, out);
    int t = intern_subset(std::move(out));
    trans_[s][lid] = t;
    return t;
}

Dfa ValueReader::explore(const std::vector<Letter>& alphabet, size_t state_limit) {
    std::vector<int> lids;
    for (auto& l : alphabet) lids.push_back(letter_id(l));
    Dfa D;
    D.base = d_;
    D.alphabet = alphabet;
    std::unordered_map<int, int> id;
    std::vector<int> order{start_};
    id[start_] = D.add_state(accepting(start_));
    D.start = 0;
    for (size_t i = 0; i < order.size(); ++i) {
        int s = order[i];
        for (size_t a = 0; a < lids.size(); ++a) {
            int t = step(s, lids[a]);
            auto it = id.find(t);
            int tid;
            if (it == id.end()) {
                if ((size_t)D.n >= state_limit) throw std::runtime_error("ValueReader: state limit exceeded");
                tid = D.add_state(accepting(t));
                id[t] = tid;
                order.push_back(t);
            } else {
                tid = it->second;
            }
            D.at(id[s], (int)a) = tid;
        }
    }
    return D;
}

}  // namespace autostab
