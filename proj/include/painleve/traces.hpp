#pragma once

#include "painleve/types.hpp"

#include <vector>

namespace painleve {

// Q_ij = diag_i delta_ij + (1 - delta_ij) i g / (denom_i - denom_j).
struct CalogeroMatrixSpec {
    Vec diag;
    Vec denom;
    double g = 1.0;
};

// Pieces of Tr A^4 for A_ij = i/(x_i - x_j), i != j.
struct TraceA4Parts {
    Cplx pairs;
    Cplx triples;
    Cplx quadruples;
    Cplx total() const { return pairs + triples + quadruples; }
};
TraceA4Parts trace_a4_parts(const Vec& x);

Mat assemble(const CalogeroMatrixSpec& s);
Cplx trace_power_oracle(const CalogeroMatrixSpec& s, int l);
Cplx tr_q3_closed(const CalogeroMatrixSpec& s);

struct TrQ4Parts {
    Cplx d4;           // sum q_i^4
    Cplx g2_block;     // 2 g^2 [2 Tr(D^2 A^2) + Tr(DADA)]
    Cplx a4_pairs;     // g^4 sum_{i<j} 2 / d^4
    Cplx a4_triples;   // g^4 4 sum over triples and centres 1 / (d^2 d^2)
    Cplx a4_quadruples;  // g^4 8 sum over 4-sets and their three cycles 1 / (d d d d)
    Cplx total() const { return d4 + g2_block + a4_pairs + a4_triples + a4_quadruples; }
};

TrQ4Parts tr_q4_parts(const CalogeroMatrixSpec& s);
Cplx tr_q4_closed(const CalogeroMatrixSpec& s);

struct EvennessReport {
    int l = 0;
    double max_pair_deviation = 0.0;  // max over g of |Tr Q^l(g) - Tr Q^l(-g)| / max(1e-300, |Tr Q^l(g)|)
    std::vector<Cplx> coefficients;   // fitted coefficients of g^0 .. g^l
    double odd_to_even_ratio = 0.0;   // max |odd| / max |even|
    bool ok = false;
};

// Fits the degree-l polynomial by a DFT on l + 1 points of |g| = radius.
EvennessReport evenness_check(const CalogeroMatrixSpec& s, int l, const std::vector<double>& g_values,
                              double radius = 1.0);

}  // namespace painleve
