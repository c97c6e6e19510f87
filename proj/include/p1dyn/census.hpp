#pragma once

// Exhaustive census of degree-2 maps over GF(q): every coefficient 6-tuple
// with nonzero resultant, grouped by moduli point, with the exact Aut order
// compared against the locus verdict. The enumeration kernel has an OpenMP
// parallel implementation and a serial reference used to validate it.

#include "p1dyn/moduli2.hpp"

namespace p1dyn {

struct CensusRow {
    uint64_t s1_key = 0, s2_key = 0;
    uint64_t count = 0;           // maps landing on this moduli point
    uint64_t max_aut_order = 0;   // max over representatives in the census field
    uint64_t min_aut_order = 0;
    bool on_S = false;
    bool on_Per11 = false;
    SpecialPoint special = SpecialPoint::None;
    PredictedAut predicted = PredictedAut::Trivial;
    bool agrees = false;          // max_aut_order equals the predicted order
};

struct CensusTable {
    uint64_t q = 0;
    uint32_t ext_degree = 0;
    std::vector<CensusRow> rows;  // sorted by (s1_key, s2_key)

    bool all_agree() const;
    const CensusRow* row(uint64_t s1_key, uint64_t s2_key) const;
    std::string to_csv() const;
};

struct CensusOptions {
    uint64_t q = 2;
    uint32_t ext_degree = 6;      // Aut computed over GF(q^ext_degree)
    uint64_t oracle_bound = 5;    // brute-force cross-check when q <= bound
    int jobs = 0;                 // 0 = library default (all threads)
};

// serial reference implementation
CensusTable census_serial(const CensusOptions& opt);
// OpenMP kernel (falls back to the serial path when built without OpenMP)
CensusTable census_parallel(const CensusOptions& opt);
// dispatches on opt.jobs: 1 = serial, otherwise parallel
CensusTable census(const CensusOptions& opt);

}  // namespace p1dyn
