#include "pulseshare/acceptance.hpp"

#include "pulseshare/bounds.hpp"
#include "pulseshare/encoded_gate.hpp"
#include "pulseshare/fit.hpp"
#include "pulseshare/oracles.hpp"
#include "pulseshare/phase_model.hpp"
#include "pulseshare/serialize.hpp"
#include "pulseshare/sweep.hpp"
#include "pulseshare/tavis_cummings.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace pulseshare {

namespace {

using Clock = std::chrono::steady_clock;

// Collects the worst observed value of each check so the detail line is
// short and deterministic.
class Checker {
public:
    void require(bool ok, const std::string& what) {
        if (!ok && failures_.size() < 4) failures_.push_back(what);
        all_ &= ok;
    }
    bool passed() const { return all_; }
    std::string failures() const {
        std::string s;
        for (const auto& f : failures_) s += "; FAIL " + f;
        return s;
    }

private:
    bool all_ = true;
    std::vector<std::string> failures_;
};

std::string num(double v, int digits = 6) {
    std::ostringstream os;
    os << std::setprecision(digits) << v;
    return os.str();
}

std::string point(int n, double nbar) { return "N=" + std::to_string(n) + ",nbar=" + num(nbar); }

CriterionResult finish(int id, std::string title, const Checker& c, std::string detail) {
    return {id, std::move(title), c.passed(), detail + c.failures()};
}

CriterionResult pi_scaling(const AcceptanceTolerances& tol) {
    Checker c;
    const double nbar = 1e4;
    double lo = 1e9, hi = -1e9;
    const auto start = Clock::now();
    for (int n : {1, 2, 4, 6}) {
        c.require(double(n * n) / nbar <= tol.pi_max_n2_over_nbar, point(n, nbar) + " outside N^2/nbar range");
        const double ratio = pi_infidelity_sim(n, nbar, 0.0) / bound_phase_pi(n, nbar);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        c.require(ratio >= tol.pi_ratio_lo && ratio <= tol.pi_ratio_hi,
                  point(n, nbar) + " ratio " + num(ratio));
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    c.require(seconds < tol.pi_runtime_s, "runtime over " + num(tol.pi_runtime_s) + " s");
    return finish(1, "pi-pulse scaling N^2/4nbar", c,
                  "sim/(N^2/4nbar) in [" + num(lo) + ", " + num(hi) + "] for N in {1,2,4,6}, nbar=1e4");
}

CriterionResult pi2_scaling(const AcceptanceTolerances& tol) {
    Checker c;
    const double nbar = 1e4;
    double lo = 1e9, hi = -1e9, margin = 1e9;
    for (int n : {1, 2, 4, 6}) {
        const double sim = pi2_infidelity_sim(n, nbar);
        const double ratio = sim / bound_phase_pi2(n, nbar);
        const double eq8 = bound_general_pi2(n, nbar);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        margin = std::min(margin, sim / eq8);
        c.require(ratio >= tol.pi2_ratio_lo && ratio <= tol.pi2_ratio_hi,
                  point(n, nbar) + " ratio " + num(ratio));
        c.require(sim > eq8, point(n, nbar) + " below general bound");
    }
    return finish(2, "pi/2-pulse scaling N(N+1)/16nbar", c,
                  "sim/(N(N+1)/16nbar) in [" + num(lo) + ", " + num(hi) +
                      "], min sim/general-bound " + num(margin));
}

CriterionResult exponent_fits(const AcceptanceTolerances& tol, unsigned workers) {
    Checker c;
    SweepConfig by_n;
    by_n.model = Model::phase;
    by_n.gate = GateKind::pi;
    by_n.n_list = {2, 3, 4, 6, 8};
    by_n.nbar_list = {1e6};
    const FitResult fit_n = fit_exponent(run_sweep(by_n, workers), FitAxis::n_atoms);

    SweepConfig by_nbar = by_n;
    by_nbar.n_list = {4};
    by_nbar.nbar_list = {1e4, 1e5, 1e6};
    const FitResult fit_nbar = fit_exponent(run_sweep(by_nbar, workers), FitAxis::nbar);

    c.require(std::abs(fit_n.exponent - 2.0) <= tol.exponent_tol, "N slope " + num(fit_n.exponent));
    c.require(std::abs(fit_nbar.exponent + 1.0) <= tol.exponent_tol,
              "nbar slope " + num(fit_nbar.exponent));
    return finish(3, "exponent fits", c,
                  "slope vs N = " + num(fit_n.exponent, 8) + " (r2 " + num(fit_n.r_squared, 8) +
                      "), slope vs nbar = " + num(fit_nbar.exponent, 8) + " (r2 " +
                      num(fit_nbar.r_squared, 8) + ")");
}

CriterionResult exact_sum(const AcceptanceTolerances& tol) {
    Checker c;
    double worst_rel = 0.0;
    for (int n = 1; n <= 6; ++n)
        for (double nbar : {1.0, 10.0, 50.0, 100.0}) {
            const auto cutoff = static_cast<std::int64_t>(std::ceil(nbar + 20.0 * std::sqrt(nbar) + 60.0)) + n;
            const double dense = oracle::n2sq_dense(n, nbar, cutoff);
            const double rel = std::abs(n2sq_exact(n, nbar) - dense) / dense;
            worst_rel = std::max(worst_rel, rel);
            c.require(rel <= tol.n2sq_rel, point(n, nbar) + " rel err " + num(rel));
        }
    double worst_asym = 0.0;
    for (int n = 1; n <= 6; ++n)
        for (double scale : {10.0, 30.0, 100.0, 1000.0, 1e4}) {
            const double nbar = scale * n * n;
            const double x = n * n / nbar;
            if (x > tol.n2sq_asym_max_x) continue;
            const double residual = n2sq_ratio(n, nbar) - (1.0 + x);
            worst_asym = std::max(worst_asym, std::abs(residual) / (x * x));
            c.require(std::abs(residual) <= tol.n2sq_asym_coeff * x * x,
                      point(n, nbar) + " asymptotic residual " + num(residual));
        }
    return finish(4, "exact normal-ordering sum", c,
                  "max rel err vs dense matrices " + num(worst_rel, 3) +
                      ", max |ratio-(1+x)|/x^2 = " + num(worst_asym, 4));
}

CriterionResult bitflip(const AcceptanceTolerances& tol) {
    Checker c;
    double worst = 0.0, lead_lo = 1e9, lead_hi = -1e9;
    for (int n = 1; n <= 4; ++n) {
        for (double nbar : {100.0 * n * n, 1e3, 1e4}) {
            const FieldVector field = coherent_state(
                CoherentSpec::from_nbar(nbar), default_cutoff(nbar) + n, default_floor(nbar));
            const JointState psi = bitflip_entangled_state(n, field);
            const double projected = 1.0 - fidelity_atomic(psi, ghz_atomic(n, 0.0));
            const double exact = bitflip_infidelity_exact(n, nbar);
            worst = std::max(worst, std::abs(projected - exact));
            c.require(std::abs(projected - exact) <= tol.bitflip_abs,
                      point(n, nbar) + " |register-exact| " + num(std::abs(projected - exact)));
            if (nbar == 100.0 * n * n) {
                for (double v : {projected, exact}) {
                    const double ratio = v / bound_phase_pi(n, nbar);
                    lead_lo = std::min(lead_lo, ratio);
                    lead_hi = std::max(lead_hi, ratio);
                    c.require(std::abs(ratio - 1.0) <= tol.bitflip_leading_rel,
                              point(n, nbar) + " leading-order ratio " + num(ratio));
                }
            }
        }
    }
    return finish(5, "bit-flip entanglement infidelity", c,
                  "max |register-exact| " + num(worst, 3) + ", ratio to N^2/4nbar at nbar=100N^2 in [" +
                      num(lead_lo) + ", " + num(lead_hi) + "]");
}

CriterionResult encoded(const AcceptanceTolerances& tol) {
    Checker c;
    double worst = 0.0, lo = 1e9, hi = -1e9;
    for (int n : {1, 2, 4, 8}) {
        for (double scale : {100.0, 300.0, 1000.0, 1e4}) {
            const double nbar = scale * n * n;
            const double closed = encoded_sm_infidelity(n, nbar);
            const double direct = oracle::encoded_infidelity_direct(n, nbar);
            worst = std::max(worst, std::abs(closed - direct));
            c.require(std::abs(closed - direct) <= tol.encoded_abs,
                      point(n, nbar) + " |closed-direct| " + num(std::abs(closed - direct)));
            if (double(n * n) / nbar > tol.encoded_max_x) continue;
            const double ratio = closed / (std::numbers::pi * std::numbers::pi * n * n / (4.0 * nbar));
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
            c.require(ratio >= tol.encoded_ratio_lo && ratio <= tol.encoded_ratio_hi,
                      point(n, nbar) + " ratio " + num(ratio));
        }
    }
    return finish(6, "encoded Sorensen-Molmer gate", c,
                  "max |closed-direct| " + num(worst, 3) + ", ratio to pi^2N^2/4nbar in [" + num(lo) +
                      ", " + num(hi) + "] for N^2/nbar in [1e-4, 1e-2]");
}

CriterionResult d_squared(const AcceptanceTolerances& tol) {
    Checker c;
    double margin = 1e9, resum = 0.0;
    for (double nbar : {1e3, 1e4})
        for (int n = 1; n <= 6; ++n) {
            const DSquaredReport r = d_squared_pi2(n, nbar);
            margin = std::min(margin, r.d_squared / r.lower_bound);
            const double err = std::abs(r.even_sum + r.odd_sum - r.d_squared);
            resum = std::max(resum, err);
            c.require(r.d_squared >= r.lower_bound, point(n, nbar) + " below bound");
            c.require(err <= tol.d2_resum_abs, point(n, nbar) + " re-sum err " + num(err));
        }
    return finish(7, "<D^2> lower bound and parity decomposition", c,
                  "min <D^2>/bound " + num(margin) + " (N=1..6, odd and even), max re-sum err " +
                      num(resum, 3));
}

CriterionResult conservation(const AcceptanceTolerances& tol) {
    Checker c;
    const double nbar = 400.0;
    const double duration = calibrate_tc_pulse(GateKind::pi, nbar);
    double worst_l = 0.0, worst_u = 0.0, min_ratio = 1e9, delta0_min = 1e9;
    for (int n = 1; n <= 4; ++n) {
        double worst_case = 0.0;
        for (int k = 0; k < 16; ++k) {
            const double delta = k * std::numbers::pi / 8.0;
            const TcGateResult r = simulate_tc_gate(GateKind::pi, n, nbar, delta, 1.0, {}, duration);
            worst_l = std::max(worst_l, std::abs(r.l_after - r.l_before));
            worst_u = std::max(worst_u, r.unitarity_defect);
            c.require(std::abs(r.l_after - r.l_before) <= tol.l_abs, point(n, nbar) + " L drift");
            c.require(r.unitarity_defect <= tol.unitarity, point(n, nbar) + " unitarity defect");
            worst_case = std::max(worst_case, r.infidelity);
            if (k == 0) delta0_min = std::min(delta0_min, r.infidelity / bound_phase_pi(n, nbar));
        }
        const double ratio = worst_case / bound_phase_pi(n, nbar);
        min_ratio = std::min(min_ratio, ratio);
        c.require(ratio >= 1.0, point(n, nbar) + " worst-case TC infidelity below N^2/4nbar");
    }
    return finish(8, "conservation law and TC vs phase-model bound", c,
                  "max |dL| " + num(worst_l, 3) + ", max unitarity defect " + num(worst_u, 3) +
                      ", min over N of max_delta TC/(N^2/4nbar) " + num(min_ratio) +
                      " (delta=0 alone: " + num(delta0_min) + ")");
}

CriterionResult bound_ordering() {
    Checker c;
    double min_gap = 1e9;
    for (int n = 1; n <= 64; ++n)
        for (int e = 0; e <= 24; ++e) {
            const double nbar = std::pow(10.0, 2.0 + 0.25 * e);
            const double eq12 = bound_phase_pi2(n, nbar);
            const double eq8 = bound_general_pi2(n, nbar);
            min_gap = std::min(min_gap, eq12 / eq8);
            c.require(eq12 >= eq8, point(n, nbar));
        }
    return finish(9, "bound ordering N(N+1)/16nbar >= general bound", c,
                  "min ratio " + num(min_gap, 8) + " over N in [1,64], nbar in [1e2,1e8]");
}

CriterionResult free_space(const AcceptanceTolerances& tol) {
    Checker c;
    double worst_simple = 0.0, worst_full = 0.0, worst_budget = 0.0;
    for (double area : {100.0, 300.0, 1000.0, 1e4})
        for (int n : {1, 2, 4, 8})
            for (double nbar : {1e6, 1e7, 1e8}) {
                const double p = resonant_emission_prob(nbar, area);
                const FreeSpaceSpec spec{n, nbar, p, 0.0};
                const double eq18 = free_space_failure_resonant(n, nbar, area);
                const double simple = std::abs(free_space_failure(spec) / eq18 - 1.0);
                const double full = std::abs(free_space_failure_full(spec) / eq18 - 1.0);
                worst_simple = std::max(worst_simple, simple);
                worst_full = std::max(worst_full, full);
                c.require(simple <= tol.free_space_rel && full <= tol.free_space_rel,
                          point(n, nbar) + ",area=" + num(area));
            }
    for (double area : {100.0, 1000.0, 1e4})
        for (int n : {1, 2, 4})
            for (double eps : {1e-3, 1e-4}) {
                const double needed = min_nbar_free_space(n, area, eps);
                // at the threshold the failure probability is exactly Nε
                const double at = free_space_failure_resonant(n, needed, area);
                c.require(std::abs(at / (n * eps) - 1.0) <= 1e-12, "budget inversion");
                // and the threshold approaches (π²A/4λ²)/ε when π²A/λ² ≫ N
                const double corollary = area / 4.0 / eps;
                c.require(needed > corollary, "budget below corollary");
                if (area >= 100.0 * n) {
                    const double rel = needed / corollary - 1.0;
                    worst_budget = std::max(worst_budget, rel);
                    c.require(rel <= tol.free_space_rel * (1.0 + 1e-12), "budget far from corollary");
                }
                c.require(needed > min_nbar_single_mode(n, eps), "budget below single-mode");
            }
    return finish(10, "free-space failure model", c,
                  "max rel dev from resonant form: simplified " + num(worst_simple, 3) + ", full " +
                      num(worst_full, 3) + "; budget vs (pi^2A/4lambda^2)/eps max rel " +
                      num(worst_budget, 3));
}

SweepConfig determinism_config() {
    SweepConfig cfg;
    cfg.model = Model::phase;
    cfg.gate = GateKind::pi_half;
    cfg.n_list = {1, 2, 3, 4, 5, 6};
    cfg.nbar_list = {1e3, 1e4, 1e5};
    return cfg;
}

CriterionResult determinism(unsigned workers, const std::optional<std::filesystem::path>& out) {
    Checker c;
    const SweepConfig cfg = determinism_config();
    const unsigned many = 4;
    const auto serial = run_sweep(cfg, 1);
    const auto parallel = run_sweep(cfg, many);
    const auto again = run_sweep(cfg, workers);
    const std::string csv = records_to_csv(serial);
    c.require(csv == records_to_csv(parallel) && csv == records_to_csv(again), "CSV differs");
    c.require(records_to_json(serial) == records_to_json(parallel), "JSON differs");
    c.require(records_from_json(records_to_json(parallel)) == serial, "JSON round trip");
    if (out) write_text(*out, csv);
    return finish(11, "determinism across worker counts", c,
                  std::to_string(serial.size()) + " records byte-identical across worker counts");
}

CriterionResult guarded(int id, const std::string& title, const std::function<CriterionResult()>& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        return {id, title, false, std::string("exception: ") + e.what()};
    }
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
    const AcceptanceTolerances& tol = options.tolerances;
    const unsigned workers = std::max(1u, options.workers);
    return {
        guarded(1, "pi-pulse scaling", [&] { return pi_scaling(tol); }),
        guarded(2, "pi/2-pulse scaling", [&] { return pi2_scaling(tol); }),
        guarded(3, "exponent fits", [&] { return exponent_fits(tol, workers); }),
        guarded(4, "exact normal-ordering sum", [&] { return exact_sum(tol); }),
        guarded(5, "bit-flip entanglement infidelity", [&] { return bitflip(tol); }),
        guarded(6, "encoded gate", [&] { return encoded(tol); }),
        guarded(7, "<D^2> bound", [&] { return d_squared(tol); }),
        guarded(8, "conservation law", [&] { return conservation(tol); }),
        guarded(9, "bound ordering", [&] { return bound_ordering(); }),
        guarded(10, "free-space model", [&] { return free_space(tol); }),
        guarded(11, "determinism", [&] { return determinism(workers, options.sweep_output); }),
    };
}

std::string format_result_line(const CriterionResult& r) {
    return std::string(r.passed ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.title +
           ": " + r.detail;
}

}  // namespace pulseshare
