#include "pulseshare/encoded_gate.hpp"

#include "pulseshare/errors.hpp"
#include "pulseshare/fock.hpp"

#include <numbers>

namespace pulseshare {

double encoded_sm_infidelity(int n_logical, double nbar) {
    if (n_logical < 0) throw ConfigError("logical qubit count must be non-negative");
    if (!(nbar > 0.0)) throw ConfigError("nbar must be positive");
    if (n_logical == 0) return 0.0;
    const double lambda = std::numbers::pi * n_logical / nbar;
    return 0.5 * (1.0 - displaced_char(nbar, lambda).real());
}

}  // namespace pulseshare
