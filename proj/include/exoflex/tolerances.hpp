#pragma once

#include <map>
#include <string>

namespace exoflex {

// Default tolerance ledger. Geometric identities are checked to 1e-9,
// constructed-value roundtrips to 1e-12, and sampling-oracle comparisons to
// a multiple of the reported standard error.
struct Tolerances {
    double geometry = 1e-9;       // residuals of geometric identities
    double roundtrip = 1e-12;     // constructed values recomputed a second way
    double oracle_sigmas = 4.0;   // Monte Carlo agreement band, in standard errors
    double clamp_band = 1e-9;     // acos/sqrt arguments may exceed their domain by this much
    double area_endpoint = 1e-6;  // relaxed band where arccos arguments reach +-1
    double spread_min = 1e-3;     // volume-profile non-constancy threshold
    double degenerate_sin = 1e-7; // |sin(dihedral)| below this counts as 0 or pi
    double fit_residual = 1e-8;   // structural fit acceptance

    // Applies "key=value" overrides (keys named as the fields above).
    // Throws std::invalid_argument on an unknown key.
    void apply(const std::map<std::string, double>& overrides);
};

}  // namespace exoflex
