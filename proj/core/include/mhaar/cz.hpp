#pragma once

#include "mhaar/lattice.hpp"
#include "mhaar/step.hpp"

#include <string>
#include <vector>

namespace mhaar {

// m-adic Calderon-Zygmund decomposition of f on [0,1] at level lambda.
struct CZResult {
    int m = 2;
    Rational lambda;
    StepFunction f, g, b;
    std::vector<MAdicInterval> cells; // selected cells, left to right
    std::vector<Rational> eta;        // average of |f| on each selected cell
    Rational omega_measure;           // total length of the selected cells
};

// Selection on |f| with the strict rule eta > lambda; g takes signed averages of f on the cells.
CZResult cz_decompose(const StepFunction& f, const Rational& lambda, int m);

struct CZProperty {
    std::string name;
    bool pass = true;
    std::string witness;
};

struct CZReport {
    std::vector<CZProperty> properties;
    bool pass = true;
};

// Checks (cz1)-(cz7), f = g + b, disjointness and maximality; cz6 for each p in ps.
CZReport cz_verify(const CZResult& r, const std::vector<double>& ps = {1.0, 2.0, 3.0});

} // namespace mhaar
