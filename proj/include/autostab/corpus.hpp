// Named example sets with their expected classification.
#pragma once

#include "autostab/autoset.hpp"

#include <string>
#include <vector>

namespace autostab {

struct CorpusExpect {
    bool sparse = false;
    bool generic_in_Z = false;
    std::string verdict;   // StableCertified | UnstableCertified | Inconclusive
};

struct CorpusEntry {
    std::string name;
    int d = 2;
    std::string construction;
    CorpusExpect expected;
    std::string note;
    bool predicate_only = false;   // no automaton exists; checked through a membership predicate
};

const std::vector<CorpusEntry>& corpus_entries();   // the manifest
std::vector<std::string> corpus_names();
AutoSet corpus_build(const std::string& name, int d);

// B = d^N  union  { [7^i 6^j 4^i] : i, j >= 0 },  d >= 8
bool bset_member(const BigInt& a, int d);

struct BsetInjectivity {
    bool injective = false;
    size_t triples = 0;
    size_t collisions = 0;
    std::vector<std::string> report;   // colliding triples
    bool digit_recovery = false;       // x, y, z read back from the digits
};
BsetInjectivity bset_injectivity_check(int d, int bound);

struct BsetDefinability {
    bool ok = false;
    size_t triples = 0;
    size_t failures = 0;               // the equivalence as stated, membership in B alone
    size_t repaired_failures = 0;      // with the extra conjunct: combination != 1
    bool powers_recovered = false;     // a in d^N iff a = 1 or (0 != a in B and d | a), on a box
    std::vector<std::string> report;   // triples where the stated equivalence fails
    bool repaired_ok = false;
};
BsetDefinability bset_definability_check(int d, int bound);

}  // namespace autostab
