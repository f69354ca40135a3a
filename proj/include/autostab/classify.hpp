// Stability classification of automatic subsets of Z with certificates.
#pragma once

#include "autostab/fsets.hpp"
#include "autostab/ldelta.hpp"
#include "autostab/presburger.hpp"

namespace autostab {

// alpha + { [sigma_1^{e_1}] + ... + [sigma_n^{e_n}] : e_1 <= ... <= e_n }, all |sigma_i| = N
struct CycleComponent {
    Tuple alpha;
    std::vector<Word> sigma;
    size_t N = 1;
};
struct CycleDecomposition {
    int d = 2;
    int dim = 1;
    std::vector<CycleComponent> components;
};

// [u0 v1* ... vn* un] as a union of [a tau_1* ... tau_k*], |tau_i| = |v_i| (all equal)
struct PowerForm {
    Word a;
    std::vector<Word> tau;
};
std::vector<PowerForm> telescope(const std::vector<Word>& u, const std::vector<Word>& v);

CycleDecomposition sparse_to_cycles(const AutoSet& A, const Sparse& S);
CycleDecomposition sparse_to_cycles(const AutoSet& A);   // throws when A is not sparse

// elements whose largest exponent is at most emax
std::vector<Tuple> component_elements(const CycleComponent& c, int d, long long emax);
nlohmann::json to_json(const CycleDecomposition& D);

struct Verdict {
    enum class Kind { Stable, Unstable, Inconclusive };
    Kind kind = Kind::Inconclusive;
    bool sparse = false;

    // Stable
    std::optional<FSetDescription> fset;
    std::vector<std::string> evidence;     // one L_delta formula per component

    // Unstable
    std::optional<Ladder> ladder;
    std::string construction;              // sparse-rewriter | nongen-Lq | mixed-coset | brute-force
    std::vector<std::vector<char>> bits;   // relation(a_i, b_j), rechecked by membership
    std::optional<Ladder> plain_ladder;    // x + y in A, when bounded search finds one

    std::vector<std::string> diagnostics;
    nlohmann::json parameters = nlohmann::json::object();
    double seconds = 0;

    std::string kind_name() const;
};

struct ClassifyOptions {
    int N = 5;
    BigInt bound = 0;             // ladder search box; 0 means d^12
    unsigned seed = 0;
    long long node_limit = 4000000;
};

Verdict classify_sparse(const AutoSet& A, const CycleDecomposition& dec, const ClassifyOptions& opt = {});
Verdict classify_nonsparse(const AutoSet& A, const ClassifyOptions& opt = {});
Verdict classify(const AutoSet& A, const ClassifyOptions& opt = {});

// the image of a locus of exponent tuples under e -> sum [sigma_i^{e_i}]
FSetDescription locus_image(const Locus& L, const CycleComponent& c, long long delta, int d, int dim);

// rechecks a certificate with membership only
bool verify_verdict(const Verdict& v, const AutoSet& A, std::string* why = nullptr);

nlohmann::json to_json(const Verdict& v);

}  // namespace autostab
